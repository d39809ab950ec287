"""ASCII and SVG pictures of assemblies restricted to a window."""

from __future__ import annotations

import hashlib
from collections.abc import Mapping
from xml.sax.saxutils import escape

from tilepump.model import Pos, Side, TileType, Window

CELL = 12


def render_ascii(a: Mapping[Pos, TileType], w: Window) -> str:
    """One character per position (first letter of the type name), north up."""
    xmin, xmax, ymin, ymax = w.bounds
    rows = []
    for y in range(ymax, ymin - 1, -1):
        rows.append("".join(a[(x, y)].name[0] if (x, y) in a else "." for x in range(xmin, xmax + 1)))
    return "\n".join(rows) + "\n"


def type_color(name: str) -> str:
    """A stable pastel color derived from the type name."""
    digest = hashlib.sha256(name.encode("utf-8")).digest()
    r, g, b = (128 + digest[k] // 2 for k in range(3))
    return f"#{r:02x}{g:02x}{b:02x}"


def render_svg(a: Mapping[Pos, TileType], w: Window) -> str:
    """One square per tile, colored by type, with a tick on each active glue."""
    xmin, xmax, ymin, ymax = w.bounds
    width = (xmax - xmin + 1) * CELL
    height = (ymax - ymin + 1) * CELL
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
    ]
    ticks = {
        Side.NORTH: (0.5, 0.0, 0.5, 0.25),
        Side.EAST: (1.0, 0.5, 0.75, 0.5),
        Side.SOUTH: (0.5, 1.0, 0.5, 0.75),
        Side.WEST: (0.0, 0.5, 0.25, 0.5),
    }
    for (x, y), ty in sorted(a.items(), key=lambda kv: (-kv[0][1], kv[0][0])):
        if not w.contains((x, y)):
            continue
        left = (x - xmin) * CELL
        top = (ymax - y) * CELL
        out.append(
            f'<rect x="{left}" y="{top}" width="{CELL}" height="{CELL}" '
            f'fill="{type_color(ty.name)}" stroke="black" stroke-width="0.5">'
            f"<title>{escape(ty.name)} ({x},{y})</title></rect>"
        )
        for side, (x1, y1, x2, y2) in ticks.items():
            if ty.glue(side).active:
                out.append(
                    f'<line x1="{left + x1 * CELL:g}" y1="{top + y1 * CELL:g}" '
                    f'x2="{left + x2 * CELL:g}" y2="{top + y2 * CELL:g}" '
                    f'stroke="black" stroke-width="1"/>'
                )
    out.append("</svg>")
    return "\n".join(out) + "\n"
