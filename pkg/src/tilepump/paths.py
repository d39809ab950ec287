"""Paths of tiles: validity, classification, turns, connecting paths and arcs."""

from __future__ import annotations

from collections import deque
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
from enum import Enum

from tilepump.errors import InvalidPath, InvalidStep, NoPath, WindowTooSmall
from tilepump.model import (
    Assembly,
    Pos,
    Tile,
    TileAssemblySystem,
    TileType,
    Vec,
    Window,
    binding_graph,
    grow_to_terminal,
    interacts,
    neighbors,
    sub,
)


@dataclass(frozen=True)
class Path:
    """A finite simple sequence of tiles, each interacting with the next."""

    tiles: tuple[Tile, ...]

    def __post_init__(self) -> None:
        tiles = tuple(self.tiles)
        object.__setattr__(self, "tiles", tiles)
        if not tiles:
            raise InvalidPath("a path needs at least one tile")
        seen: set[Pos] = set()
        for k, tile in enumerate(tiles):
            if tile.pos in seen:
                raise InvalidPath(f"position {tile.pos} repeats at index {k}", index=k)
            seen.add(tile.pos)
            if k and not interacts(tiles[k - 1], tile):
                raise InvalidPath(f"tiles {k - 1} and {k} do not interact", index=k)

    @classmethod
    def of(cls, items: Iterable[tuple[Pos, TileType]]) -> Path:
        return cls(tuple(Tile(p, t) for p, t in items))

    def __len__(self) -> int:
        return len(self.tiles)

    def __getitem__(self, k: int) -> Tile:
        return self.tiles[k]

    def __iter__(self):
        return iter(self.tiles)

    @property
    def positions(self) -> tuple[Pos, ...]:
        return tuple(t.pos for t in self.tiles)

    @property
    def types(self) -> tuple[TileType, ...]:
        return tuple(t.ty for t in self.tiles)

    @property
    def vector(self) -> Vec:
        """The vector from the first to the last position."""
        return sub(self.tiles[-1].pos, self.tiles[0].pos)

    def sub(self, i: int, j: int) -> Path:
        """The subpath ``P_i .. P_j`` (both inclusive)."""
        if not 0 <= i <= j < len(self):
            raise IndexError(f"bad subpath bounds {i}..{j}")
        return Path(self.tiles[i:j + 1])

    def prefix(self, j: int) -> Path:
        return self.sub(0, j)

    def suffix(self, i: int) -> Path:
        return self.sub(i, len(self) - 1)

    def reverse(self) -> Path:
        return Path(self.tiles[::-1])

    def translate(self, v: Vec) -> Path:
        return Path(tuple(t.translate(v) for t in self.tiles))

    def concat(self, other: Path) -> Path:
        """``self`` followed by ``other``; raises ``InvalidPath`` if invalid."""
        return Path(self.tiles + other.tiles)

    def __repr__(self) -> str:
        inner = ", ".join(repr(t) for t in self.tiles[:8])
        more = "" if len(self) <= 8 else f", ... ({len(self)} tiles)"
        return f"Path({inner}{more})"


class PathClass(Enum):
    PRODUCIBLE_FROM_SEED = "producible"
    PATH_OF_ALPHA = "of_alpha"
    NEITHER = "neither"


class Turn(Enum):
    LEFT = "left"
    STRAIGHT = "straight"
    RIGHT = "right"


def path_assembly(p: Path) -> Assembly:
    """The assembly made of the tiles of ``p``."""
    return Assembly({t.pos: t.ty for t in p.tiles})


def extents(p: Path) -> tuple[int, int]:
    """``(vertical height, horizontal width)`` of the path."""
    xs = [q[0] for q in p.positions]
    ys = [q[1] for q in p.positions]
    return max(ys) - min(ys), max(xs) - min(xs)


def agrees_with(p: Path, a: Mapping[Pos, TileType]) -> bool:
    """True iff every tile of ``p`` appears in ``a``."""
    return all(a.get(t.pos) == t.ty for t in p.tiles)


def classify_path(t: TileAssemblySystem, p: Path, w: Window, margin: int = 2) -> PathClass:
    """Whether ``p`` is producible from the seed, a path of the terminal
    assembly (checked on the window), or neither."""
    inner = w.inner(margin)
    if any(q not in inner for q in p.positions):
        raise WindowTooSmall("path reaches the window margin")
    seed = t.seed
    if all(q not in seed for q in p.positions):
        first = p[0]
        if any(interacts(first, Tile(q, seed[q]))
               for _, q in neighbors(first.pos) if q in seed):
            return PathClass.PRODUCIBLE_FROM_SEED
    if agrees_with(p, grow_to_terminal(t, w)):
        return PathClass.PATH_OF_ALPHA
    return PathClass.NEITHER


def _rot_cw(v: Vec) -> Vec:
    return (v[1], -v[0])


def turn_direction(prefix: Path, a: Tile, reference: Tile | None = None) -> Turn:
    """Compare the step from the head of ``prefix`` to ``a`` with the
    ``reference`` continuation (straight ahead by default).

    Directions are ordered clockwise starting just after the way back, so a
    step that comes earlier in that order is a left turn relative to the
    reference and a later one is a right turn.
    """
    if len(prefix) < 2:
        raise InvalidStep("turns need a prefix of at least two tiles")
    head = prefix[-1].pos
    back = sub(prefix[-2].pos, head)
    order = []
    d = back
    for _ in range(3):
        d = _rot_cw(d)
        order.append(d)
    step = sub(a.pos, head)
    if step not in order:
        raise InvalidStep(f"{a.pos} is not a forward neighbour of {head}")
    ref_step = sub(reference.pos, head) if reference is not None else (-back[0], -back[1])
    if ref_step not in order:
        raise InvalidStep(f"reference {reference} is not a forward neighbour of {head}")
    i, j = order.index(step), order.index(ref_step)
    if i == j:
        return Turn.STRAIGHT
    return Turn.LEFT if i < j else Turn.RIGHT


def find_connecting_path(fragment: Mapping[Pos, TileType], a: Pos, b: Pos) -> Path:
    """The lexicographically least shortest binding path from ``a`` to ``b``."""
    if a not in fragment or b not in fragment:
        raise NoPath("endpoints must lie in the fragment")
    graph = binding_graph(fragment)
    dist = {b: 0}
    queue = deque([b])
    while queue and a not in dist:
        x = queue.popleft()
        for y in graph[x]:
            if y not in dist:
                dist[y] = dist[x] + 1
                queue.append(y)
    if a not in dist:
        raise NoPath(f"{a} and {b} lie in different binding components")
    walk = [a]
    while walk[-1] != b:
        here = walk[-1]
        walk.append(min(y for y in graph[here] if dist.get(y) == dist[here] - 1))
    return Path.of((q, fragment[q]) for q in walk)


def _intersections(q: Path, p: Path) -> list[tuple[int, int]]:
    index = {pos: i for i, pos in enumerate(p.positions)}
    return [(k, index[pos]) for k, pos in enumerate(q.positions) if pos in index]


def grows_on(q: Path, p: Path) -> int | None:
    """Index ``i`` such that ``q`` meets ``p`` only at ``pos(Q_0) = pos(P_i)``
    with agreeing types, else ``None``."""
    hits = _intersections(q, p)
    if len(hits) != 1 or hits[0][0] != 0:
        return None
    i = hits[0][1]
    return i if q[0].ty == p[i].ty else None


@dataclass(frozen=True)
class Arc:
    path: Path
    i: int
    j: int

    @property
    def width(self) -> int:
        return abs(self.j - self.i)


def find_arcs(p: Path, candidates: Iterable[Path]) -> list[Arc]:
    """Candidates meeting ``p`` exactly twice, at their two ends, agreeing."""
    arcs = []
    for q in candidates:
        hits = _intersections(q, p)
        if len(hits) != 2:
            continue
        (k0, i), (k1, j) = hits
        if k0 != 0 or k1 != len(q) - 1:
            continue
        if q[0].ty != p[i].ty or q[-1].ty != p[j].ty:
            continue
        if len(q) == 2 and abs(i - j) == 1:
            continue
        arcs.append(Arc(q, i, j))
    return arcs


def simple_paths_from(a: Mapping[Pos, TileType], start: Pos, max_len: int,
                      avoid: Sequence[Pos] = ()) -> Iterable[Path]:
    """All binding paths of ``a`` starting at ``start`` with at most
    ``max_len`` tiles, avoiding ``avoid`` except at the start."""
    graph = binding_graph(a)
    blocked = set(avoid) - {start}
    stack = [[start]]
    while stack:
        walk = stack.pop()
        yield Path.of((q, a[q]) for q in walk)
        if len(walk) >= max_len:
            continue
        on = set(walk)
        for y in sorted(graph[walk[-1]], reverse=True):
            if y not in on and y not in blocked:
                stack.append(walk + [y])


def arcs_of(a: Mapping[Pos, TileType], p: Path, max_len: int | None = None) -> list[Arc]:
    """Every arc of ``a`` on ``p``: binding paths of ``a`` that leave ``p`` and
    come back to it, touching it only at their two ends (exhaustive search
    over simple paths, optionally capped at ``max_len`` tiles)."""
    graph = binding_graph(a)
    index = {q: i for i, q in enumerate(p.positions)}
    cap = len(a) + 2 if max_len is None else max_len
    found: list[list[Pos]] = []
    for i, start in enumerate(p.positions):
        for y in graph[start]:
            if y in index:
                if index[y] > i + 1:
                    found.append([start, y])
                continue
            stack = [[start, y]]
            while stack:
                walk = stack.pop()
                for z in graph[walk[-1]]:
                    if z in index:
                        if z != start and index[z] > i:
                            found.append(walk + [z])
                    elif z not in walk and len(walk) < cap:
                        stack.append(walk + [z])
    return find_arcs(p, (Path.of((q, a[q]) for q in walk) for walk in found))
