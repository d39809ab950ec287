"""Pumping and bi-pumping of paths, good candidates and pumpability search.

Infinite paths are never materialised: an :class:`EventuallyPeriodicPath`
stores a finite prefix, one repeating block and the translation applied
per repetition, and answers index queries on demand.
"""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass
from enum import Enum

from tilepump.errors import (
    BadIndices,
    Collinear,
    NullVector,
    TypeMismatch,
    WindowTooSmall,
)
from tilepump.lattice import collinear, hermite_basis, residue
from tilepump.model import (
    Pos,
    Tile,
    TileAssemblySystem,
    TileType,
    Vec,
    Window,
    add,
    grow_to_terminal,
    scale,
    sub,
)
from tilepump.paths import Path, extents

DEFAULT_BOUND = 64


class Domain(Enum):
    NAT = "NAT"
    INT = "INT"


@dataclass(frozen=True)
class EventuallyPeriodicPath:
    """``prefix`` followed by ``block + q * shift`` for q = 0, 1, 2, ...

    With ``domain == INT`` the prefix is empty and ``q`` also ranges over
    negative integers.  Index ``k`` (counted from the start of the prefix)
    past the prefix is ``block[r] + q * shift`` with
    ``(q, r) = divmod(k - len(prefix), len(block))``.
    """

    prefix: tuple[Tile, ...]
    block: tuple[Tile, ...]
    shift: Vec
    domain: Domain = Domain.NAT

    def __post_init__(self) -> None:
        object.__setattr__(self, "prefix", tuple(self.prefix))
        object.__setattr__(self, "block", tuple(self.block))
        if self.shift == (0, 0):
            raise NullVector("the pumping vector must be non-null")
        if not self.block:
            raise ValueError("the repeating block must be nonempty")
        if self.domain is Domain.INT and self.prefix:
            raise ValueError("bi-infinite pumpings have no prefix")

    @property
    def period(self) -> int:
        return len(self.block)

    @property
    def start(self) -> int:
        """Index of the first element of the periodic part."""
        return len(self.prefix)

    def __getitem__(self, k: int) -> Tile:
        if k < len(self.prefix):
            if k < 0 and self.domain is Domain.NAT:
                raise IndexError("negative index on a one-way infinite path")
            if k >= 0:
                return self.prefix[k]
        q, r = divmod(k - len(self.prefix), len(self.block))
        return self.block[r].translate(scale(self.shift, q))

    def tiles(self, lo: int, hi: int) -> list[Tile]:
        """Elements ``lo .. hi - 1``."""
        return [self[k] for k in range(lo, hi)]

    def period_tiles(self, q: int) -> list[Tile]:
        """The block translated by ``q * shift``."""
        v = scale(self.shift, q)
        return [t.translate(v) for t in self.block]


def _check_pump(p: Path) -> None:
    if len(p) < 2:
        raise BadIndices("pumping needs at least two tiles")
    if p[0].ty != p[-1].ty:
        raise TypeMismatch("first and last tile types differ")
    if p[0].pos == p[-1].pos:
        raise NullVector("first and last positions coincide")


def pump(p: Path) -> EventuallyPeriodicPath:
    """One-way infinite repetition of ``p`` along its endpoint vector."""
    _check_pump(p)
    return EventuallyPeriodicPath((), p.tiles[:-1], p.vector, Domain.NAT)


def bipump(p: Path) -> EventuallyPeriodicPath:
    """Two-way infinite repetition of ``p`` along its endpoint vector."""
    _check_pump(p)
    return EventuallyPeriodicPath((), p.tiles[:-1], p.vector, Domain.INT)


def pump_between(p: Path, i: int, j: int) -> EventuallyPeriodicPath:
    """``P_0 .. P_{i-1}`` followed by the repetition of ``P_i .. P_{j-1}``."""
    if not 0 <= i < j <= len(p) - 1:
        raise BadIndices(f"need 0 <= i < j <= {len(p) - 1}, got {i}, {j}")
    if p[i].ty != p[j].ty:
        raise TypeMismatch(f"types at {i} and {j} differ")
    return EventuallyPeriodicPath(p.tiles[:i], p.tiles[i:j], sub(p[j].pos, p[i].pos))


def is_good_candidate(p: Path) -> bool:
    """True iff ``p`` and ``p + vector`` meet only at ``P_0 + vector = P_last``."""
    _check_pump(p)
    v = p.vector
    own = set(p.positions)
    hits = [q for q in p.positions if add(q, v) in own]
    return hits == [p[0].pos]


class Verdict(Enum):
    BI_PUMPABLE = "BI_PUMPABLE"
    SIMPLY_PUMPABLE = "SIMPLY_PUMPABLE"
    NOT_PUMPABLE_WITHIN_BOUND = "NOT_PUMPABLE_WITHIN_BOUND"


@dataclass(frozen=True)
class PumpabilityVerdict:
    kind: Verdict
    i: int | None = None
    j: int | None = None
    vector: Vec | None = None

    @property
    def witness(self) -> tuple[int, int, Vec] | None:
        if self.i is None:
            return None
        return self.i, self.j, self.vector


class Check(Enum):
    OK = "ok"
    FAIL = "fail"
    NO_ROOM = "no_room"


def _bbox(tiles: list[Tile]) -> tuple[int, int, int, int]:
    xs = [t.pos[0] for t in tiles]
    ys = [t.pos[1] for t in tiles]
    return min(xs), max(xs), min(ys), max(ys)


def _outside(box: tuple[int, int, int, int], w: Window) -> bool:
    xmin, xmax, ymin, ymax = w.bounds
    return box[1] < xmin or box[0] > xmax or box[3] < ymin or box[2] > ymax


def _inside(tiles: list[Tile], w: Window) -> bool:
    return all(t.pos in w for t in tiles)


def _max_periods(e: EventuallyPeriodicPath, w: Window, direction: int) -> int:
    """Number of periods (in one direction) until the block leaves ``w``."""
    box = _bbox(list(e.block))
    dx, dy = e.shift
    q = 0
    while True:
        shifted = (box[0] + q * dx * direction, box[1] + q * dx * direction,
                   box[2] + q * dy * direction, box[3] + q * dy * direction)
        if _outside(shifted, w):
            return q
        q += 1


def check_forward(e: EventuallyPeriodicPath, alpha: Mapping[Pos, TileType],
                  w: Window, margin: int) -> Check:
    """Window verification that the one-way pumping is a path of ``alpha``.

    The generated tiles must be pairwise distinct up to the period where
    the block leaves ``w``, the block must be a good candidate, every tile
    inside the inner window must agree with ``alpha``, and the prefix plus
    two full periods must fit inside the inner window.
    """
    inner = w.inner(margin)
    block_path = Path(e.block + (e.block[0].translate(e.shift),))
    if not is_good_candidate(block_path):
        return Check.FAIL
    covered = list(e.prefix) + e.period_tiles(0) + e.period_tiles(1)
    room = _inside(covered, inner)
    seen: set[Pos] = set()
    tiles = list(e.prefix)
    for q in range(_max_periods(e, w, 1) + 1):
        tiles.extend(e.period_tiles(q))
    for tile in tiles:
        if tile.pos in seen:
            return Check.FAIL
        seen.add(tile.pos)
        if tile.pos in inner and alpha.get(tile.pos) != tile.ty:
            return Check.FAIL
    return Check.OK if room else Check.NO_ROOM


def check_backward(e: EventuallyPeriodicPath, alpha: Mapping[Pos, TileType],
                   w: Window, margin: int) -> Check:
    """Window verification that the periods before the block also lie in
    ``alpha``, so that the bi-infinite repetition of the block is a path of
    ``alpha``; the first backward period must fit in the inner window."""
    inner = w.inner(margin)
    if not _inside(e.period_tiles(-1), inner):
        return Check.NO_ROOM
    seen = {t.pos for q in range(_max_periods(e, w, 1) + 1) for t in e.period_tiles(q)}
    for q in range(1, _max_periods(e, w, -1) + 1):
        for tile in e.period_tiles(-q):
            if tile.pos in seen:
                return Check.FAIL
            seen.add(tile.pos)
            if tile.pos in inner and alpha.get(tile.pos) != tile.ty:
                return Check.FAIL
    return Check.OK


def search_pumpable(t: TileAssemblySystem, p: Path, w: Window,
                    bound: int = DEFAULT_BOUND, margin: int = 2,
                    alpha: Mapping[Pos, TileType] | None = None) -> PumpabilityVerdict:
    """Find the first pair ``i < j`` (by ``j``, then ``i``) with equal types
    whose pumping between ``i`` and ``j`` is verified on the window.

    Pairs whose prefix ``P_0 .. P_j`` exceeds ``bound`` in height or width
    are skipped.  The verdict is window-relative: a negative answer only
    says that nothing was certified inside ``w``.
    """
    if alpha is None:
        alpha = grow_to_terminal(t, w)
    inner = w.inner(margin)
    prefix_ok = 0
    while prefix_ok < len(p) and (p[prefix_ok].pos not in inner
                                  or alpha.get(p[prefix_ok].pos) == p[prefix_ok].ty):
        prefix_ok += 1
    starved = False
    for j in range(1, len(p)):
        if max(extents(p.prefix(j))) > bound:
            break
        if j >= prefix_ok:
            break
        for i in range(j):
            if p[i].ty != p[j].ty:
                continue
            e = pump_between(p, i, j)
            forward = check_forward(e, alpha, w, margin)
            if forward is Check.NO_ROOM:
                starved = True
                continue
            if forward is Check.FAIL:
                continue
            kind = Verdict.SIMPLY_PUMPABLE
            if check_backward(e, alpha, w, margin) is Check.OK:
                kind = Verdict.BI_PUMPABLE
            return PumpabilityVerdict(kind, i, j, e.shift)
    if starved:
        raise WindowTooSmall("pumping candidates do not fit inside the inner window")
    return PumpabilityVerdict(Verdict.NOT_PUMPABLE_WITHIN_BOUND)


def extract_without_redundancy(p: Path, i: int, j: int) -> tuple[int, int]:
    """Indices ``i <= i' < j' <= j`` of a redundancy-free subpath: ``j'`` is
    the first index repeating a type seen since ``i``."""
    if not 0 <= i < j < len(p) or p[i].ty != p[j].ty:
        raise BadIndices("need i < j with equal types")
    first_seen: dict[TileType, int] = {}
    for k in range(i, j + 1):
        ty = p[k].ty
        if ty in first_seen:
            return first_seen[ty], k
        first_seen[ty] = k
    raise AssertionError("unreachable: type(P_i) repeats at j")


def is_without_redundancy(p: Path) -> bool:
    """No tile type repeats except possibly the two endpoints."""
    types = p.types
    inner = types[:-1]
    if len(set(inner)) != len(inner):
        return False
    return types[-1] not in types[1:-1]


def _translates_meet(positions: tuple[Pos, ...], v: Vec) -> bool:
    """True iff ``positions`` meets ``positions + l*v`` for some l >= 1."""
    own = set(positions)
    for a in positions:
        for b in own:
            d = sub(b, a)
            if d == (0, 0):
                continue
            if v[0] * d[1] - v[1] * d[0] != 0:
                continue
            num = d[0] * v[0] + d[1] * v[1]
            den = v[0] * v[0] + v[1] * v[1]
            if num > 0 and num % den == 0:
                return True
    return False


def is_v_self_avoiding(p: Path, v: Vec, t: TileAssemblySystem, w: Window,
                       margin: int = 2,
                       alpha: Mapping[Pos, TileType] | None = None) -> bool:
    """True iff ``p`` never meets ``p + l*v`` (l >= 1) and the translates
    that fit in the inner window are paths of the terminal assembly from
    some ``l`` onwards (including the last one that fits)."""
    if v == (0, 0):
        raise NullVector("v must be non-null")
    if _translates_meet(p.positions, v):
        return False
    if alpha is None:
        alpha = grow_to_terminal(t, w)
    inner = w.inner(margin)
    fits = []
    ell = 1
    far = max(max(abs(q[0] - w.center[0]), abs(q[1] - w.center[1])) for q in p.positions)
    limit = (far + w.radius) // max(abs(v[0]), abs(v[1])) + 1
    while ell <= limit:
        moved = [add(q, scale(v, ell)) for q in p.positions]
        if all(q in inner for q in moved):
            fits.append(ell)
        elif fits:
            break
        ell += 1
    if len(fits) < 2:
        raise WindowTooSmall("fewer than two translates fit inside the inner window")
    good = [all(alpha.get(add(tile.pos, scale(v, ell))) == tile.ty for tile in p.tiles)
            for ell in fits]
    if not good[-1]:
        return False
    k = len(good) - 1
    while k > 0 and good[k - 1]:
        k -= 1
    return all(good[k:])


def is_uv_self_avoiding(p: Path, u: Vec, v: Vec) -> bool:
    """True iff no two positions of ``p`` differ by a nonzero lattice vector
    ``l*u + l'*v``; decided exactly through residues modulo the lattice."""
    if u == (0, 0) or v == (0, 0) or collinear(u, v):
        raise Collinear("u and v must be non-null and non-collinear")
    basis = hermite_basis(u, v)
    classes = [residue(q, basis) for q in p.positions]
    return len(set(classes)) == len(classes)
