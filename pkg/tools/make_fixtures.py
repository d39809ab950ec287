"""Regenerate the bundled fixture files.

The two worked examples are transcribed as chains of drawn positions: two
consecutive positions of a chain bind through a glue that is unique to that
pair, and the labelled outer glues are listed explicitly.  Positions are the
drawing coordinates; only their relative offsets matter for non-seed tiles.

Run from the repository root: ``python3 tools/make_fixtures.py``.
"""

from __future__ import annotations

from pathlib import Path

OUT = Path(__file__).resolve().parents[1] / "src" / "tilepump" / "fixtures"
SIDES = {(0, 1): "N", (1, 0): "E", (0, -1): "S", (-1, 0): "W"}
OPP = {"N": "S", "S": "N", "E": "W", "W": "E"}


class Group:
    """Tiles named ``prefix + index`` in order of first appearance."""

    def __init__(self, prefix: str, width: int = 2) -> None:
        self.prefix = prefix
        self.width = width
        self.names: dict[tuple[int, int], str] = {}
        self.glues: dict[tuple[int, int], dict[str, str]] = {}

    def _name(self, p):
        if p not in self.names:
            self.names[p] = f"{self.prefix}{len(self.names) + 1:0{self.width}d}"
            self.glues[p] = {}
        return self.names[p]

    def chain(self, *points):
        for k, p in enumerate(points):
            self._name(p)
            if k:
                q = points[k - 1]
                side = SIDES[(p[0] - q[0], p[1] - q[1])]
                label = f"{self.names[q]}_{self.names[p]}".lower()
                self.glues[q][side] = label
                self.glues[p][OPP[side]] = label
        return self

    def glue(self, p, side, label):
        self._name(p)
        self.glues[p][side] = label
        return self

    def lines(self):
        out = []
        for p, name in self.names.items():
            parts = [f"{s}={self.glues[p][s]}:1" if s in self.glues[p] else f"{s}=-:0"
                     for s in "NESW"]
            out.append(f"tile {name} " + " ".join(parts))
        return out


def hline(x0, x1, y):
    step = 1 if x1 >= x0 else -1
    return [(x, y) for x in range(x0, x1 + step, step)]


def vline(x, y0, y1):
    step = 1 if y1 >= y0 else -1
    return [(x, y) for y in range(y0, y1 + step, step)]


def write(name, header, groups, seeds):
    lines = [f"# {h}" for h in header]
    for g in groups:
        lines.extend(g.lines())
    for tile, x, y in seeds:
        lines.append(f"seed {tile} {x} {y}")
    (OUT / f"{name}.tiles").write_text("\n".join(lines) + "\n")


def simple_fixtures():
    files = {
        "line": ["# A single tile type growing east and west forever.",
                 "tile A N=-:0 E=g:1 S=-:0 W=g:1", "seed A 0 0"],
        "grid": ["# One tile type with the same glue on all four sides.",
                 "tile A N=g:1 E=g:1 S=g:1 W=g:1", "seed A 0 0"],
        "comb": ["# A horizontal backbone with a tooth growing north from every backbone tile.",
                 "tile B N=t:1 E=b:1 S=-:0 W=b:1",
                 "tile T N=t:1 E=-:0 S=t:1 W=-:0", "seed B 0 0"],
        "checkerboard": ["# Two types alternating east-west, each stacking north-south.",
                         "tile X N=x:1 E=a:1 S=x:1 W=b:1",
                         "tile Y N=y:1 E=b:1 S=y:1 W=a:1", "seed X 0 0"],
        "two_backbone": ["# Two periodic rows joined by a column of rungs.",
                         "tile L N=k:1 E=l:1 S=-:0 W=l:1",
                         "tile K N=k2:1 E=-:0 S=k:1 W=-:0",
                         "tile U N=-:0 E=u:1 S=k2:1 W=u:1", "seed L 0 0"],
    }
    for name, lines in files.items():
        (OUT / f"{name}.tiles").write_text("\n".join(lines) + "\n")


def appendix_a():
    seed_chain = [(2, 5), (1, 5), (1, 4), (1, 3), (1, 2), (1, 1), (2, 1), (3, 1), (4, 1), (5, 1), (5, 2)]
    seed = Group("S").chain(*seed_chain).glue((2, 5), "N", "g2").glue((5, 2), "E", "g1")
    green = Group("G", 1).chain((0, 0), (1, 0), (2, 0))
    green.glue((0, 0), "W", "g1").glue((2, 0), "E", "g1").glue((0, 0), "N", "g3")
    blue = Group("B", 1).chain((0, 0), (0, 1), (0, 2))
    blue.glue((0, 0), "S", "g2").glue((0, 2), "N", "g2").glue((0, 0), "E", "g4")
    red_chain = [(0, 0), (0, -1), (0, -2), (-1, -2), (-1, -3), (-1, -4), (0, -4), (1, -4),
                 (1, -3), (2, -3), (3, -3)]
    red = Group("R").chain(*red_chain).glue((0, 0), "W", "g4").glue((3, -3), "S", "g3")
    header = ["Counterexample to seed reduction: an eleven-tile seed, two simply",
              "pumpable paths (green along x, blue along y) and an eleven-tile red",
              "link joining their first periods."]
    groups = [seed, green, blue, red]
    write("appendix_a", header, groups, [(seed.names[p], *p) for p in seed_chain])
    write("appendix_a_reduced", header + ["Seed reduced to the corner tile."], groups,
          [(seed.names[(1, 1)], 1, 1)])


def appendix_c():
    seed = Group("S")
    seed.chain(*hline(16, 21, 21), *vline(21, 22, 31))
    seed.chain(*vline(16, 21, 17), *hline(17, 24, 17), *vline(24, 18, 19), *hline(25, 27, 19))
    for y in (20, 19, 18):
        seed.chain(*hline(16, 18, y))
    seed.glue((16, 19), "W", "g2").glue((18, 19), "E", "g1")

    a = Group("A")
    a.chain(*hline(9, 8, 19), *vline(8, 20, 24), *hline(7, 6, 24), *vline(6, 23, 14))
    a.chain(*hline(6, 4, 21), *vline(4, 22, 27), *hline(5, 10, 27), *vline(10, 26, 23),
            *hline(11, 12, 23), (12, 24))
    a.glue((9, 19), "E", "g2").glue((6, 14), "W", "g7").glue((12, 24), "N", "g3")

    red = Group("R", 1).chain((12, 28), (12, 29), (12, 30))
    red.glue((12, 28), "S", "g3").glue((12, 30), "N", "g3")
    red.glue((12, 29), "E", "g4").glue((12, 29), "W", "g5")

    row = Group("L", 1).chain((8, 29), (7, 29), (6, 29))
    row.glue((8, 29), "E", "g5").glue((6, 29), "W", "g5").glue((7, 29), "N", "g6")
    hook = Group("H", 1).chain((7, 33), (7, 34), (6, 34), (5, 34), (5, 33))
    hook.glue((7, 33), "S", "g6")
    diag = Group("D", 1).chain((16, 29), (17, 29), (17, 30), (17, 31))
    diag.glue((16, 29), "W", "g4").glue((17, 31), "E", "g4")

    orange = Group("O").chain(*hline(25, 29, 26), *vline(29, 27, 31))
    orange.glue((25, 26), "W", "g1").glue((29, 31), "E", "g1")

    blue = Group("B").chain(*hline(2, 1, 14), *vline(1, 13, 12), *hline(2, 6, 12),
                            *vline(6, 11, 10), *hline(5, 3, 10))
    blue.glue((2, 14), "E", "g7").glue((3, 10), "W", "g7").glue((1, 13), "E", "g8")

    link = Group("E", 1).chain(*hline(12, 15, 13), *vline(15, 14, 15), *hline(16, 18, 15))
    link.glue((12, 13), "W", "g8").glue((18, 15), "E", "g9")

    green = Group("G", 1).chain(*hline(22, 27, 5))
    green.glue((22, 5), "W", "g9").glue((27, 5), "E", "g9").glue((23, 5), "N", "g10")

    rise = Group("F", 1).chain((23, 9), (23, 10), (24, 10), (25, 10))
    rise.glue((23, 9), "S", "g10").glue((25, 10), "E", "g11")

    dark = Group("K", 1).chain((30, 10), *vline(31, 10, 14), (32, 14), (32, 13))
    dark.glue((30, 10), "W", "g11").glue((30, 10), "N", "g12").glue((32, 13), "E", "g11")

    step = Group("M", 1).chain((30, 16), (29, 16), (29, 17))
    step.glue((30, 16), "S", "g12").glue((29, 17), "E", "g13")

    upper = Group("N", 1).chain(*vline(30, 20, 23), (31, 23), (32, 23))
    upper.glue((30, 20), "W", "g13").glue((32, 23), "E", "g13")

    header = ["Aperiodic example: a 39-tile seed and simply pumpable paths whose",
              "growths are themselves pumpable.  Every tile type is unique."]
    groups = [seed, a, red, row, hook, diag, orange, blue, link, green, rise, dark, step, upper]
    write("appendix_c", header, groups, [(n, *p) for p, n in seed.names.items()])


if __name__ == "__main__":
    OUT.mkdir(parents=True, exist_ok=True)
    simple_fixtures()
    appendix_a()
    appendix_c()
