"""Line-based file formats for tile sets and decompositions.

Tile sets::

    # comment
    tile A N=-:0 E=g:1 S=-:0 W=g:1
    seed A 0 0

A glue is ``label:strength``; ``-`` (optionally ``-:0``) is the inert glue
and omitted sides are inert.  Decompositions::

    class=SIMPLY_PERIODIC v=(1,0)
    window=15 bound=64
    provenance center=(0,0) margin=6 sha256=<hex>
    linear p=(0,0) u=(1,0) v=(0,0) type=A
"""

from __future__ import annotations

import hashlib
import re
from dataclasses import dataclass, field
from importlib import resources

from tilepump.errors import DisconnectedSeed, ParseError, UnknownTile
from tilepump.model import Assembly, Glue, Pos, TileAssemblySystem, TileType, _connected, binding_graph

_SIDE_KEYS = ("N", "E", "S", "W")
_NAME = re.compile(r"^[A-Za-z0-9_.\-]+$")


@dataclass(frozen=True)
class TileSetDocument:
    """The parsed contents of a tile-set file, before validation as a system."""

    tiles: tuple[TileType, ...]
    seeds: tuple[tuple[str, Pos], ...]


def _parse_glue(token: str, line: int) -> Glue:
    if token in ("-", "-:0"):
        return Glue()
    label, sep, strength = token.partition(":")
    if not sep:
        raise ParseError(line, f"glue {token!r} must look like label:strength")
    if not label or label == "-":
        if strength.strip() not in ("", "0"):
            raise ParseError(line, "the inert glue must have strength 0")
        return Glue()
    if not _NAME.match(label):
        raise ParseError(line, f"bad glue label {label!r}")
    try:
        value = int(strength)
    except ValueError:
        raise ParseError(line, f"glue strength {strength!r} is not an integer") from None
    if value < 0:
        raise ParseError(line, "glue strength must be nonnegative")
    return Glue(label, value)


def _parse_int(token: str, line: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(line, f"{token!r} is not an integer") from None


def parse_tileset_document(text: str) -> TileSetDocument:
    """Parse tile and seed declarations; raises ``ParseError`` on bad lines."""
    tiles: dict[str, TileType] = {}
    seeds: list[tuple[str, Pos]] = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        words = line.split()
        keyword = words[0]
        if keyword == "tile":
            if len(words) < 2:
                raise ParseError(number, "tile needs a name")
            name = words[1]
            if not _NAME.match(name):
                raise ParseError(number, f"bad tile name {name!r}")
            if name in tiles:
                raise ParseError(number, f"duplicate tile name {name!r}")
            glues = {}
            for token in words[2:]:
                key, eq, value = token.partition("=")
                if not eq or key not in _SIDE_KEYS:
                    raise ParseError(number, f"expected N=, E=, S= or W=, got {token!r}")
                if key in glues:
                    raise ParseError(number, f"side {key} given twice")
                glues[key] = _parse_glue(value, number)
            tiles[name] = TileType(name, glues.get("N", Glue()), glues.get("E", Glue()),
                                   glues.get("S", Glue()), glues.get("W", Glue()))
        elif keyword == "seed":
            if len(words) != 4:
                raise ParseError(number, "seed needs a tile name and two coordinates")
            seeds.append((words[1], (_parse_int(words[2], number), _parse_int(words[3], number))))
        else:
            raise ParseError(number, f"unknown keyword {keyword!r}")
    return TileSetDocument(tuple(tiles.values()), tuple(seeds))


def build_system(doc: TileSetDocument) -> TileAssemblySystem:
    """Validate a document and build the temperature-1 system."""
    by_name = {t.name: t for t in doc.tiles}
    if not doc.seeds:
        raise DisconnectedSeed("no seed tiles declared")
    placed: dict[Pos, TileType] = {}
    for name, pos in doc.seeds:
        if name not in by_name:
            raise UnknownTile(f"seed uses undeclared tile {name!r}", name=name)
        if pos in placed:
            raise DisconnectedSeed(f"two seed tiles at {pos}")
        placed[pos] = by_name[name]
    if not _connected(placed, lambda p, q: True):
        raise DisconnectedSeed("seed positions are not connected")
    graph = binding_graph(placed)
    if not _connected(placed, lambda p, q: q in graph[p]):
        raise DisconnectedSeed("seed tiles do not bind into one piece")
    return TileAssemblySystem(doc.tiles, Assembly(placed))


def parse_tileset(text: str) -> TileAssemblySystem:
    """Parse a tile-set file into a system at temperature 1."""
    return build_system(parse_tileset_document(text))


def _format_glue(g: Glue) -> str:
    return f"{g.label}:{g.strength}" if g.label else "-:0"


def serialize_tileset(t: TileAssemblySystem, comment: str = "") -> str:
    lines = [f"# {row}" if row else "#" for row in comment.splitlines()]
    for ty in t.tile_types:
        sides = " ".join(f"{k}={_format_glue(g)}" for k, g in zip(_SIDE_KEYS, ty.glues))
        lines.append(f"tile {ty.name} {sides}")
    for p, ty in sorted(t.seed.items(), key=lambda kv: (kv[0][1], kv[0][0])):
        lines.append(f"seed {ty.name} {p[0]} {p[1]}")
    return "\n".join(lines) + "\n"


FIXTURES = ("line", "grid", "comb", "checkerboard", "two_backbone",
            "appendix_a", "appendix_a_reduced", "appendix_c")


def fixture_text(name: str) -> str:
    """The text of a bundled fixture file."""
    if name not in FIXTURES:
        raise KeyError(f"unknown fixture {name!r}")
    return resources.files("tilepump").joinpath("fixtures", f"{name}.tiles").read_text()


def load_fixture(name: str) -> TileAssemblySystem:
    return parse_tileset(fixture_text(name))


def text_digest(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


# Decomposition documents ---------------------------------------------------


@dataclass(frozen=True)
class DecompositionDocument:
    """A semilinear description plus its classification and provenance."""

    classification: str
    vectors: tuple[tuple[int, int], ...]
    radius: int
    bound: int
    center: Pos
    margin: int
    digest: str
    sets: tuple = field(default=())


_VEC = r"\((-?\d+),(-?\d+)\)"
_LINEAR = re.compile(rf"^linear p={_VEC} u={_VEC} v={_VEC} type=(\S+)$")
_CLASS = re.compile(r"^class=(\w+)((?: \w+=\(-?\d+,-?\d+\))*)$")
_WINDOW = re.compile(r"^window=(\d+) bound=(\d+)$")
_PROV = re.compile(rf"^provenance center={_VEC} margin=(\d+) sha256=([0-9a-f]*)$")
_VEC_NAMES = ("u", "v")


def serialize_decomposition(doc: DecompositionDocument) -> str:
    """Render a decomposition document; the inverse of ``parse_decomposition``."""
    names = ("v",) if len(doc.vectors) == 1 else _VEC_NAMES
    vecs = "".join(f" {name}=({x},{y})" for name, (x, y) in zip(names, doc.vectors))
    lines = [
        f"class={doc.classification}{vecs}",
        f"window={doc.radius} bound={doc.bound}",
        f"provenance center=({doc.center[0]},{doc.center[1]}) margin={doc.margin} sha256={doc.digest}",
    ]
    for s in doc.sets:
        lines.append(
            f"linear p=({s.base[0]},{s.base[1]}) u=({s.u[0]},{s.u[1]}) "
            f"v=({s.v[0]},{s.v[1]}) type={s.tile_type}"
        )
    return "\n".join(lines) + "\n"


def parse_decomposition(text: str) -> DecompositionDocument:
    """Parse a decomposition document; raises ``ParseError`` on bad lines."""
    from tilepump.decomposition import LinearSet

    rows = [(n, raw.strip()) for n, raw in enumerate(text.splitlines(), start=1)]
    rows = [(n, r) for n, r in rows if r and not r.startswith("#")]
    if len(rows) < 3:
        raise ParseError(len(rows) + 1, "missing header lines")
    (n1, head), (n2, win), (n3, prov) = rows[:3]
    m = _CLASS.match(head)
    if not m:
        raise ParseError(n1, "expected class=<NAME> [u=(x,y)] [v=(x,y)]")
    vectors = tuple((int(a), int(b)) for a, b in re.findall(_VEC, m.group(2)))
    w = _WINDOW.match(win)
    if not w:
        raise ParseError(n2, "expected window=<r> bound=<b>")
    p = _PROV.match(prov)
    if not p:
        raise ParseError(n3, "expected provenance center=(x,y) margin=<m> sha256=<hex>")
    sets = []
    for n, row in rows[3:]:
        lm = _LINEAR.match(row)
        if not lm:
            raise ParseError(n, "expected linear p=(x,y) u=(x,y) v=(x,y) type=<name>")
        g = [int(x) for x in lm.groups()[:6]]
        sets.append(LinearSet((g[0], g[1]), (g[2], g[3]), (g[4], g[5]), lm.group(7)))
    return DecompositionDocument(
        m.group(1), vectors, int(w.group(1)), int(w.group(2)),
        (int(p.group(1)), int(p.group(2))), int(p.group(3)), p.group(4), tuple(sets),
    )
