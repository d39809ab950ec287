"""Shared builders for the test suite: random paths, curves and fixtures."""

from __future__ import annotations

import random
import time
from contextlib import contextmanager

from tilepump.decomposition import default_window
from tilepump.geometry import BiInfinitePeriodicCurve, PolyCurve
from tilepump.io import load_fixture
from tilepump.model import OFFSETS, Glue, Side, Tile, TileType, Window, side_towards
from tilepump.paths import Path
from tilepump.pumping import is_good_candidate

FIXTURE_RADIUS = {
    "line": 15,
    "grid": 15,
    "comb": 15,
    "checkerboard": 15,
    "two_backbone": 15,
    "appendix_a": 20,
    "appendix_a_reduced": 20,
    "appendix_c": 25,
}

ACCEPTANCE_RESULTS: list[str] = []


def fixture_system(name: str, radius: int | None = None):
    """The system and its default window."""
    t = load_fixture(name)
    return t, default_window(t, FIXTURE_RADIUS[name] if radius is None else radius)


@contextmanager
def criterion(number: int, title: str):
    """Record a PASS or FAIL line (with the elapsed time) for a criterion."""
    start = time.perf_counter()
    try:
        yield
    except BaseException:
        ACCEPTANCE_RESULTS.append(f"criterion {number:2d} FAIL  {title} "
                                  f"({time.perf_counter() - start:.2f} s)")
        raise
    ACCEPTANCE_RESULTS.append(f"criterion {number:2d} PASS  {title} "
                              f"({time.perf_counter() - start:.2f} s)")


def random_walk(rng: random.Random, steps: int) -> list[tuple[int, int]] | None:
    """A self-avoiding lattice walk with ``steps`` unit steps, or ``None``."""
    walk = [(0, 0)]
    seen = {(0, 0)}
    for _ in range(steps):
        x, y = walk[-1]
        options = [(x + dx, y + dy) for dx, dy in OFFSETS if (x + dx, y + dy) not in seen]
        if not options:
            return None
        nxt = rng.choice(options)
        walk.append(nxt)
        seen.add(nxt)
    return walk


def chain_path(walk: list[tuple[int, int]], close: bool = True) -> Path | None:
    """A path along ``walk`` whose consecutive tiles bind through private
    glues; with ``close`` the last tile reuses the first tile's type."""
    n = len(walk)
    glues: list[dict[Side, Glue]] = [{} for _ in range(n)]
    for k in range(n - 1):
        side = side_towards(walk[k], walk[k + 1])
        label = Glue(f"e{k}", 1)
        glues[k][side] = label
        glues[k + 1][side.opposite] = label
    if close:
        for side, g in glues[-1].items():
            if side in glues[0]:
                return None
            glues[0][side] = g
    types = []
    for k in range(n - 1 if close else n):
        g = glues[k]
        types.append(TileType(f"T{k}", g.get(Side.NORTH, Glue()), g.get(Side.EAST, Glue()),
                              g.get(Side.SOUTH, Glue()), g.get(Side.WEST, Glue())))
    if close:
        types.append(types[0])
    return Path(tuple(Tile(p, ty) for p, ty in zip(walk, types)))


def random_good_candidate(rng: random.Random, max_len: int = 10) -> Path:
    """A random good candidate with 2 to ``max_len`` tiles."""
    while True:
        walk = random_walk(rng, rng.randint(1, max_len - 1))
        if walk is None:
            continue
        p = chain_path(walk)
        if p is not None and p[0].pos != p[-1].pos and is_good_candidate(p):
            return p


def side_set_path(walk: list[tuple[int, int]]) -> Path:
    """A path along ``walk`` whose tile types are determined by the set of
    sides used inside the path (one shared glue label), so that types
    repeat wherever the local shape repeats."""
    tiles = []
    for k, p in enumerate(walk):
        sides = set()
        if k:
            sides.add(side_towards(p, walk[k - 1]))
        if k + 1 < len(walk):
            sides.add(side_towards(p, walk[k + 1]))
        name = "".join(s.name[0] for s in Side if s in sides)
        g = {s: (Glue("g", 1) if s in sides else Glue()) for s in Side}
        tiles.append(Tile(p, TileType(name, g[Side.NORTH], g[Side.EAST], g[Side.SOUTH], g[Side.WEST])))
    return Path(tuple(tiles))


def random_simple_curve(rng: random.Random, max_segments: int = 12) -> BiInfinitePeriodicCurve:
    """A random simple bi-infinite periodic curve with unit segments."""
    while True:
        walk = random_walk(rng, rng.randint(1, max_segments))
        if walk is None or walk[-1] == (0, 0):
            continue
        curve = BiInfinitePeriodicCurve(PolyCurve(tuple(walk)), walk[-1])
        if curve.is_simple():
            return curve


def window_points(w: Window) -> list[tuple[int, int]]:
    return list(w.positions())
