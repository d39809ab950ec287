"""Tile types, assemblies, tile assembly systems and growth at temperature 1.

Positions are plain ``(x, y)`` integer tuples with ``y`` pointing north.
Assemblies are immutable mappings from positions to tile types.
"""

from __future__ import annotations

import random
from collections import deque
from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache

import networkx as nx
import numpy as np

from tilepump import kernels
from tilepump.errors import (
    BudgetExceeded,
    ConflictDetected,
    ConflictError,
    DisconnectedError,
    WindowTooSmall,
)

Pos = tuple[int, int]
Vec = tuple[int, int]


class Side(Enum):
    """The four sides of a tile, in the canonical N, E, S, W order."""

    NORTH = 0
    EAST = 1
    SOUTH = 2
    WEST = 3

    @property
    def offset(self) -> Vec:
        return OFFSETS[self.value]

    @property
    def opposite(self) -> Side:
        return Side((self.value + 2) % 4)


OFFSETS: tuple[Vec, ...] = ((0, 1), (1, 0), (0, -1), (-1, 0))


def add(p: Pos, v: Vec) -> Pos:
    return (p[0] + v[0], p[1] + v[1])


def sub(p: Pos, q: Pos) -> Vec:
    return (p[0] - q[0], p[1] - q[1])


def scale(v: Vec, k: int) -> Vec:
    return (v[0] * k, v[1] * k)


def neighbors(p: Pos) -> Iterator[tuple[Side, Pos]]:
    """Yield ``(side, position)`` for the four lattice neighbours of ``p``."""
    for side in Side:
        yield side, add(p, side.offset)


def side_towards(p: Pos, q: Pos) -> Side | None:
    """The side of the tile at ``p`` that faces ``q``, if they are adjacent."""
    delta = sub(q, p)
    try:
        return Side(OFFSETS.index(delta))
    except ValueError:
        return None


@dataclass(frozen=True)
class Glue:
    """A glue label with its strength; the empty label is always inert."""

    label: str = ""
    strength: int = 0

    def __post_init__(self) -> None:
        if self.strength < 0:
            raise ValueError("glue strength must be nonnegative")

    @property
    def active(self) -> bool:
        return self.label != "" and self.strength >= 1

    def binds(self, other: Glue) -> bool:
        """True iff the labels match and both strengths are at least 1."""
        return self.active and other.active and self.label == other.label

    def __str__(self) -> str:
        return f"{self.label or '-'}:{self.strength}"


NULL_GLUE = Glue()


@dataclass(frozen=True)
class TileType:
    """A named unit square with one glue per side."""

    name: str
    north: Glue = NULL_GLUE
    east: Glue = NULL_GLUE
    south: Glue = NULL_GLUE
    west: Glue = NULL_GLUE

    @property
    def glues(self) -> tuple[Glue, Glue, Glue, Glue]:
        return (self.north, self.east, self.south, self.west)

    def glue(self, side: Side) -> Glue:
        return self.glues[side.value]

    def __repr__(self) -> str:
        return f"TileType({self.name!r})"


@dataclass(frozen=True)
class Tile:
    """A tile type placed at a lattice position."""

    pos: Pos
    ty: TileType

    def translate(self, v: Vec) -> Tile:
        return Tile(add(self.pos, v), self.ty)

    def __repr__(self) -> str:
        return f"{self.ty.name}@{self.pos}"


def interacts(a: Tile, b: Tile) -> bool:
    """True iff the tiles are 4-adjacent and their abutting glues bind."""
    side = side_towards(a.pos, b.pos)
    if side is None:
        return False
    return a.ty.glue(side).binds(b.ty.glue(side.opposite))


def _connected(positions: Iterable[Pos], adjacent) -> bool:
    nodes = set(positions)
    if not nodes:
        return True
    start = next(iter(nodes))
    seen = {start}
    queue = deque([start])
    while queue:
        p = queue.popleft()
        for _, q in neighbors(p):
            if q in nodes and q not in seen and adjacent(p, q):
                seen.add(q)
                queue.append(q)
    return len(seen) == len(nodes)


class Assembly(Mapping):
    """An immutable partial map from positions to tile types.

    Regular assemblies must have a nonempty, 4-connected domain.  Internal
    code that needs window restrictions or fundamental domains (which may be
    disconnected or empty) passes ``fragment=True``.
    """

    __slots__ = ("_tiles", "_hash", "fragment")

    def __init__(self, tiles: Mapping[Pos, TileType] | Iterable[Tile] = (),
                 *, fragment: bool = False) -> None:
        if isinstance(tiles, Mapping):
            data = dict(tiles)
        else:
            data = {}
            for tile in tiles:
                if tile.pos in data and data[tile.pos] != tile.ty:
                    raise ConflictError(f"two types at {tile.pos}", position=tile.pos)
                data[tile.pos] = tile.ty
        if not fragment:
            if not data:
                raise ValueError("empty assembly (use fragment=True for the empty sentinel)")
            if not _connected(data, lambda p, q: True):
                raise DisconnectedError("assembly domain is not connected")
        self._tiles = data
        self._hash = None
        self.fragment = fragment

    @classmethod
    def empty(cls) -> Assembly:
        return cls({}, fragment=True)

    def __getitem__(self, p: Pos) -> TileType:
        return self._tiles[p]

    def __iter__(self) -> Iterator[Pos]:
        return iter(self._tiles)

    def __len__(self) -> int:
        return len(self._tiles)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Assembly):
            return self._tiles == other._tiles
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._tiles.items()))
        return self._hash

    def __repr__(self) -> str:
        shown = ", ".join(f"{t.name}@{p}" for p, t in sorted(self._tiles.items())[:6])
        more = "" if len(self) <= 6 else f", ... ({len(self)} tiles)"
        return f"Assembly({shown}{more})"

    def tiles(self) -> list[Tile]:
        """Tiles sorted by (y, x)."""
        return [Tile(p, t) for p, t in sorted(self._tiles.items(), key=lambda kv: (kv[0][1], kv[0][0]))]

    def as_dict(self) -> dict[Pos, TileType]:
        return dict(self._tiles)

    def restrict(self, keep) -> Assembly:
        """The fragment of tiles whose position satisfies ``keep``."""
        return Assembly({p: t for p, t in self._tiles.items() if keep(p)}, fragment=True)

    def is_subassembly_of(self, other: Mapping[Pos, TileType]) -> bool:
        return all(other.get(p) == t for p, t in self._tiles.items())

    def bounding_box(self) -> tuple[int, int, int, int]:
        xs = [p[0] for p in self._tiles]
        ys = [p[1] for p in self._tiles]
        return min(xs), max(xs), min(ys), max(ys)


def binding_graph(a: Mapping[Pos, TileType]) -> dict[Pos, list[Pos]]:
    """Adjacency lists of the binding graph (edges between interacting tiles)."""
    graph: dict[Pos, list[Pos]] = {p: [] for p in a}
    for p, t in a.items():
        for side, q in neighbors(p):
            u = a.get(q)
            if u is not None and t.glue(side).binds(u.glue(side.opposite)):
                graph[p].append(q)
    return graph


def is_tau_stable(a: Mapping[Pos, TileType], tau: int = 1) -> bool:
    """True iff every cut of the binding graph has weight at least ``tau``.

    At temperature 1 this is connectivity of the binding graph; for larger
    temperatures the global minimum cut is computed with Stoer-Wagner.
    """
    if len(a) == 0:
        raise ValueError("is_tau_stable needs a nonempty assembly")
    if len(a) == 1:
        return True
    graph = binding_graph(a)
    if not _connected(a, lambda p, q: q in graph[p]):
        return False
    if tau <= 1:
        return True
    g = nx.Graph()
    for p, t in a.items():
        for side, q in neighbors(p):
            if q in graph[p]:
                g.add_edge(p, q, weight=min(t.glue(side).strength,
                                            a[q].glue(side.opposite).strength))
    cut, _ = nx.stoer_wagner(g)
    return cut >= tau


@dataclass(frozen=True)
class Window:
    """An L-infinity ball of lattice positions."""

    center: Pos = (0, 0)
    radius: int = 0

    def __post_init__(self) -> None:
        if self.radius < 0:
            raise ValueError("window radius must be nonnegative")

    def contains(self, p: Pos) -> bool:
        return (abs(p[0] - self.center[0]) <= self.radius
                and abs(p[1] - self.center[1]) <= self.radius)

    __contains__ = contains

    def inner(self, margin: int) -> Window:
        """The window shrunk by ``margin`` on every side."""
        if margin > self.radius:
            raise ValueError("margin exceeds the window radius")
        return Window(self.center, self.radius - margin)

    @property
    def bounds(self) -> tuple[int, int, int, int]:
        """``(xmin, xmax, ymin, ymax)``, inclusive."""
        cx, cy = self.center
        r = self.radius
        return cx - r, cx + r, cy - r, cy + r

    def positions(self) -> Iterator[Pos]:
        xmin, xmax, ymin, ymax = self.bounds
        for y in range(ymin, ymax + 1):
            for x in range(xmin, xmax + 1):
                yield (x, y)

    def distance_to_outside(self, p: Pos) -> int:
        """Number of steps from ``p`` to the first position outside."""
        return self.radius - max(abs(p[0] - self.center[0]), abs(p[1] - self.center[1])) + 1


@dataclass(frozen=True)
class TileAssemblySystem:
    """A tile set, a seed assembly and the (fixed) temperature 1."""

    tile_types: tuple[TileType, ...]
    seed: Assembly
    temperature: int = 1
    _index: dict = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        if self.temperature != 1:
            raise ValueError("only temperature 1 is supported")
        types = tuple(sorted(self.tile_types, key=lambda t: t.name))
        names = [t.name for t in types]
        if len(set(names)) != len(names):
            raise ValueError("tile type names must be unique")
        object.__setattr__(self, "tile_types", types)
        known = set(types)
        for p, t in self.seed.items():
            if t not in known:
                raise ValueError(f"seed tile {t.name} at {p} is not in the tile set")
        if not is_tau_stable(self.seed, self.temperature):
            raise ValueError("seed is not tau-stable")
        object.__setattr__(self, "_index", _build_index(types))

    def type_named(self, name: str) -> TileType:
        return self._index["by_name"][name]

    def offers(self, side: Side, glue: Glue) -> tuple[TileType, ...]:
        """Tile types whose ``side`` glue binds ``glue``."""
        if not glue.active:
            return ()
        return self._index["offers"].get((side, glue.label), ())


def _build_index(types: tuple[TileType, ...]) -> dict:
    by_name = {t.name: t for t in types}
    offers: dict[tuple[Side, str], list[TileType]] = {}
    labels: dict[str, int] = {}
    for t in types:
        for side in Side:
            g = t.glue(side)
            if g.active:
                offers.setdefault((side, g.label), []).append(t)
                labels.setdefault(g.label, len(labels) + 1)
    glue_ids = np.zeros((len(types), 4), dtype=np.int64)
    for i, t in enumerate(types):
        for side in Side:
            g = t.glue(side)
            glue_ids[i, side.value] = labels[g.label] if g.active else 0
    n_glues = len(labels)
    ptr = np.zeros((4, n_glues + 2), dtype=np.int64)
    flat: list[int] = []
    for s in range(4):
        for gid in range(n_glues + 2):
            ptr[s, gid] = len(flat)
            if 1 <= gid <= n_glues:
                flat.extend(i for i in range(len(types)) if glue_ids[i, s] == gid)
    return {
        "by_name": by_name,
        "offers": {k: tuple(v) for k, v in offers.items()},
        "type_id": {t: i for i, t in enumerate(types)},
        "glue_ids": glue_ids,
        "offer_ptr": ptr,
        "offer_types": np.asarray(flat, dtype=np.int64),
    }


def translate(a: Mapping[Pos, TileType], v: Vec) -> Assembly:
    """The assembly ``a + v``."""
    fragment = getattr(a, "fragment", True)
    return Assembly({add(p, v): t for p, t in a.items()}, fragment=fragment)


def union(a: Assembly, b: Assembly) -> Assembly:
    """Union of two agreeing assemblies that overlap or bind to each other."""
    shared = False
    for p, t in b.items():
        u = a.get(p)
        if u is not None:
            if u != t:
                raise ConflictError(f"assemblies disagree at {p}", position=p)
            shared = True
    if not shared:
        attached = any(
            interacts(Tile(p, t), Tile(q, b[q]))
            for p, t in a.items()
            for _, q in neighbors(p)
            if q in b
        )
        if not attached:
            raise DisconnectedError("assemblies neither overlap nor bind")
    merged = dict(a.items())
    merged.update(b.items())
    return Assembly(merged, fragment=a.fragment and b.fragment)


def attach_sites(t: TileAssemblySystem, a: Mapping[Pos, TileType],
                 window: Window | None = None) -> set[Tile]:
    """All single-tile attachments ``(position, type)`` available to ``a``."""
    sites: set[Tile] = set()
    for p, ty in a.items():
        for side, q in neighbors(p):
            if q in a or (window is not None and q not in window):
                continue
            for u in t.offers(side.opposite, ty.glue(side)):
                sites.add(Tile(q, u))
    return sites


def is_periodic_on_window(a: Mapping[Pos, TileType], v: Vec, w: Window,
                          margin: int = 2) -> bool:
    """Window approximation of ``a + v == a`` on the inner region of ``w``.

    Every position ``p`` of the inner window (radius shrunk by ``margin``)
    is compared with ``p + v``; both must be empty or hold the same type.
    """
    if v == (0, 0):
        raise ValueError("the null vector is not a period")
    inner = w.inner(margin)
    for p in inner.positions():
        if a.get(p) != a.get(add(p, v)):
            return False
    return True


@dataclass(frozen=True)
class GrowthTrace:
    """A window-terminal assembly with the canonical attachment history.

    ``order`` lists positions in attachment order; ``parent`` maps each
    non-seed position to the tile it bound to when it attached, so the
    parent pointers form a breadth-first forest rooted at the seed tiles.
    """

    assembly: Assembly
    order: tuple[Pos, ...]
    parent: Mapping[Pos, Pos | None]
    generation: Mapping[Pos, int]
    complete: bool

    def children(self) -> dict[Pos, list[Pos]]:
        kids: dict[Pos, list[Pos]] = {p: [] for p in self.order}
        for p in self.order:
            q = self.parent[p]
            if q is not None:
                kids[q].append(p)
        return kids

    def root_path(self, p: Pos) -> list[Pos]:
        """Positions from the seed tile down to ``p`` along parent pointers."""
        path = [p]
        while self.parent[path[-1]] is not None:
            path.append(self.parent[path[-1]])
        return path[::-1]


def _check_seed(t: TileAssemblySystem, w: Window) -> None:
    for p in t.seed:
        if p not in w:
            raise WindowTooSmall(f"seed position {p} lies outside the window", position=p)


@lru_cache(maxsize=64)
def grow_trace(t: TileAssemblySystem, w: Window, check_conflicts: bool = False) -> GrowthTrace:
    """Canonical growth inside ``w`` with its attachment history."""
    _check_seed(t, w)
    idx = t._index
    types = t.tile_types
    seed = sorted(t.seed.items(), key=lambda kv: (kv[0][1], kv[0][0]))
    xs, ys, ts, parents, gens, conflict = kernels.grow(
        idx["glue_ids"], idx["offer_ptr"], idx["offer_types"],
        np.array([p[0] for p, _ in seed], dtype=np.int64),
        np.array([p[1] for p, _ in seed], dtype=np.int64),
        np.array([idx["type_id"][ty] for _, ty in seed], dtype=np.int64),
        w.center[0], w.center[1], w.radius, check_conflicts,
    )
    if conflict is not None:
        x, y, t1, t2 = conflict
        raise ConflictDetected(
            f"types {types[t1].name} and {types[t2].name} both attach at {(x, y)}",
            position=(x, y), types=(types[t1].name, types[t2].name),
        )
    order = [(int(x), int(y)) for x, y in zip(xs, ys)]
    tiles = {p: types[int(k)] for p, k in zip(order, ts)}
    parent = {p: (order[int(k)] if k >= 0 else None) for p, k in zip(order, parents)}
    generation = {p: int(g) for p, g in zip(order, gens)}
    assembly = Assembly(tiles, fragment=True)
    complete = not attach_sites(t, assembly)
    return GrowthTrace(assembly, tuple(order), parent, generation, complete)


def grow_to_terminal(t: TileAssemblySystem, w: Window, *,
                     rng: random.Random | None = None,
                     check_conflicts: bool = False) -> Assembly:
    """Grow the seed inside ``w`` until no tile can attach inside ``w``.

    Without ``rng`` the canonical breadth-first order is used; with ``rng``
    every step attaches a uniformly random available site, which is how the
    order-independence of directed systems is exercised.
    """
    if rng is None:
        return grow_trace(t, w, check_conflicts).assembly
    _check_seed(t, w)
    tiles = dict(t.seed.items())
    pending = list(attach_sites(t, tiles, w))
    pending.sort(key=lambda s: (s.pos[1], s.pos[0], s.ty.name))
    while pending:
        k = rng.randrange(len(pending))
        pending[k], pending[-1] = pending[-1], pending[k]
        site = pending.pop()
        if site.pos in tiles:
            continue
        tiles[site.pos] = site.ty
        for side, q in neighbors(site.pos):
            if q in tiles or q not in w:
                continue
            for u in t.offers(side.opposite, site.ty.glue(side)):
                pending.append(Tile(q, u))
    return Assembly(tiles, fragment=True)


@dataclass(frozen=True)
class Conflict:
    """Two producible assemblies that disagree at ``position``."""

    position: Pos
    placed: TileType
    alternative: TileType
    assembly_a: Assembly
    assembly_b: Assembly


@dataclass(frozen=True)
class DirectednessReport:
    directed: bool
    conflicts: tuple[Conflict, ...] = ()
    explored: int = 0

    @property
    def witness(self) -> Conflict | None:
        return self.conflicts[0] if self.conflicts else None


def _separation_oracle(graph: dict[Pos, list[Pos]], roots: list[Pos]):
    """Articulation data for "is ``q`` still tied to the seed without ``p``?".

    A depth-first search from a virtual root joined to every seed tile gives
    discovery/finish times and low-links; ``q`` is cut off by removing ``p``
    exactly when ``q`` sits in the subtree of a child ``c`` of ``p`` whose
    low-link does not climb above ``p``.
    """
    disc: dict[Pos, int] = {}
    fin: dict[Pos, int] = {}
    low: dict[Pos, int] = {}
    dfs_parent: dict[Pos, Pos | None] = {}
    kids: dict[Pos, list[Pos]] = {}
    clock = 0
    root = ("root",)
    disc[root] = clock
    clock += 1
    adjacency = dict(graph)
    adjacency[root] = list(roots)
    stack = [(root, iter(adjacency[root]))]
    dfs_parent[root] = None
    low[root] = 0
    kids[root] = []
    while stack:
        node, it = stack[-1]
        advanced = False
        for nxt in it:
            if nxt not in disc:
                disc[nxt] = low[nxt] = clock
                clock += 1
                dfs_parent[nxt] = node
                kids[node].append(nxt)
                kids[nxt] = []
                stack.append((nxt, iter(adjacency[nxt])))
                advanced = True
                break
            if nxt != dfs_parent[node]:
                low[node] = min(low[node], disc[nxt])
        if not advanced:
            stack.pop()
            fin[node] = clock
            clock += 1
            up = dfs_parent[node]
            if up is not None:
                low[up] = min(low[up], low[node])
    # Seed tiles are mutually reachable through the virtual root.
    for r in roots:
        low[r] = 0

    def cut_off(p: Pos, q: Pos) -> bool:
        if q not in disc:
            return True
        for c in kids.get(p, ()):
            if low[c] >= disc[p] and disc[c] <= disc[q] and fin[q] <= fin[c]:
                return True
        return False

    return cut_off


def check_directed(t: TileAssemblySystem, w: Window, max_tiles: int) -> DirectednessReport:
    """Exact directedness test restricted to the window ``w``.

    Let ``alpha`` be the canonical window-terminal assembly.  The system is
    not directed inside ``w`` iff some non-seed position ``p`` of ``alpha``
    has a neighbour ``q`` and a type ``u != alpha(p)`` binding ``alpha(q)``
    such that ``q`` stays connected to the seed in the binding graph of
    ``alpha`` without ``p``.  Then the seed component of ``alpha - p`` plus
    ``u`` at ``p`` is producible and conflicts with ``alpha``.  Conversely,
    along any producible assembly the first placement that disagrees with
    ``alpha`` has exactly this shape, so no witness means every producible
    assembly inside ``w`` is a subassembly of ``alpha``.
    """
    trace = grow_trace(t, w)
    alpha = trace.assembly
    if len(alpha) > max_tiles:
        raise BudgetExceeded(f"{len(alpha)} placements exceed the budget of {max_tiles}")
    graph = binding_graph(alpha)
    cut_off = None
    conflicts: list[Conflict] = []
    explored = len(alpha)
    for p in trace.order:
        if p in t.seed:
            continue
        here = alpha[p]
        for side, q in neighbors(p):
            other = alpha.get(q)
            if other is None:
                continue
            for u in t.offers(side, other.glue(side.opposite)):
                if u == here:
                    continue
                explored += 1
                if explored > max_tiles:
                    raise BudgetExceeded(f"exploration exceeded {max_tiles} placements")
                if cut_off is None:
                    cut_off = _separation_oracle(graph, sorted(t.seed))
                if cut_off(p, q):
                    continue
                conflicts.append(_conflict_witness(t, alpha, graph, p, u))
                break
            if conflicts and conflicts[-1].position == p:
                break
    return DirectednessReport(not conflicts, tuple(conflicts), explored)


def _conflict_witness(t: TileAssemblySystem, alpha: Assembly, graph, p: Pos,
                      u: TileType) -> Conflict:
    seen = set(t.seed)
    queue = deque(sorted(t.seed))
    while queue:
        x = queue.popleft()
        for y in graph[x]:
            if y != p and y not in seen:
                seen.add(y)
                queue.append(y)
    other = {q: alpha[q] for q in seen}
    other[p] = u
    return Conflict(p, alpha[p], u, Assembly(alpha.as_dict()), Assembly(other))
