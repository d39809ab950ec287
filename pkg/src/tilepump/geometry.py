"""Polygonal curves, Jordan partitions and the ordering of good candidates.

All arithmetic is exact.  Curves with rational vertices are scaled by a
common denominator before the integer kernels run, so crossing parities
are never affected by rounding.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import gcd, lcm

import numpy as np

from tilepump import kernels
from tilepump.errors import (
    NotClosed,
    NotGoodCandidate,
    NotSimple,
    PreconditionViolated,
)
from tilepump.lattice import collinear
from tilepump.model import Pos, Vec, add, scale, sub
from tilepump.paths import Path
from tilepump.pumping import bipump, is_good_candidate

Point = tuple[Fraction | int, Fraction | int]


class SideClassification(Enum):
    STRICT_LEFT = 1
    ON_CURVE = 0
    STRICT_RIGHT = -1


class Order(Enum):
    GREATER = "GREATER"
    LESS = "LESS"
    EQUAL = "EQUAL"
    INCOMPARABLE = "INCOMPARABLE"


def _denominator(points: Iterable[Point]) -> int:
    d = 1
    for x, y in points:
        for c in (x, y):
            if isinstance(c, Fraction):
                d = lcm(d, c.denominator)
    return d


def _scaled(points: Sequence[Point], d: int) -> tuple[np.ndarray, np.ndarray]:
    xs = np.array([int(x * d) for x, _ in points], dtype=np.int64)
    ys = np.array([int(y * d) for _, y in points], dtype=np.int64)
    return xs, ys


def _segments_meet(a: Point, b: Point, c: Point, d: Point) -> bool:
    """Closed axis-parallel or general segments ``ab`` and ``cd`` intersect."""
    def orient(p, q, r):
        v = (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])
        return (v > 0) - (v < 0)

    def on(p, q, r):
        return min(p[0], q[0]) <= r[0] <= max(p[0], q[0]) and min(p[1], q[1]) <= r[1] <= max(p[1], q[1])

    o1, o2, o3, o4 = orient(a, b, c), orient(a, b, d), orient(c, d, a), orient(c, d, b)
    if o1 != o2 and o3 != o4:
        return True
    return ((o1 == 0 and on(a, b, c)) or (o2 == 0 and on(a, b, d))
            or (o3 == 0 and on(c, d, a)) or (o4 == 0 and on(c, d, b)))


@dataclass(frozen=True)
class PolyCurve:
    """A polygonal curve through ``vertices`` (exact rationals or ints)."""

    vertices: tuple[Point, ...]

    def __post_init__(self) -> None:
        exact = lambda c: Fraction(c) if isinstance(c, float) else c
        object.__setattr__(self, "vertices",
                           tuple(tuple(exact(c) for c in v) for v in self.vertices))
        if not self.vertices:
            raise ValueError("a curve needs at least one vertex")

    @property
    def closed(self) -> bool:
        return len(self.vertices) > 1 and self.vertices[0] == self.vertices[-1]

    def segments(self) -> list[tuple[Point, Point]]:
        v = self.vertices
        return [(v[k], v[k + 1]) for k in range(len(v) - 1)]

    def is_simple(self) -> bool:
        """No self-intersection other than consecutive segments sharing an
        endpoint (and the first/last vertex of a closed curve)."""
        segs = self.segments()
        n = len(segs)
        for i in range(n):
            if segs[i][0] == segs[i][1]:
                return False
            for j in range(i + 1, n):
                adjacent = j == i + 1 or (self.closed and i == 0 and j == n - 1)
                if adjacent:
                    a, b = segs[i]
                    c, d = segs[j]
                    shared = b if j == i + 1 else a
                    # Adjacent segments may only share their common vertex.
                    if _collinear_overlap(a, b, c, d, shared):
                        return False
                    continue
                if _segments_meet(*segs[i], *segs[j]):
                    return False
        return True

    def reverse(self) -> PolyCurve:
        return PolyCurve(self.vertices[::-1])

    def translate(self, v: Point) -> PolyCurve:
        return PolyCurve(tuple((x + v[0], y + v[1]) for x, y in self.vertices))


def _collinear_overlap(a, b, c, d, shared) -> bool:
    """Adjacent segments overlap in more than their shared vertex."""
    u = (b[0] - a[0], b[1] - a[1])
    w = (d[0] - c[0], d[1] - c[1])
    if u[0] * w[1] - u[1] * w[0] != 0:
        return False
    other_ab = a if shared == b else b
    other_cd = d if shared == c else c
    du = (other_ab[0] - shared[0], other_ab[1] - shared[1])
    dw = (other_cd[0] - shared[0], other_cd[1] - shared[1])
    return du[0] * dw[0] + du[1] * dw[1] > 0


def embed(p: Path) -> PolyCurve:
    """The curve through the positions of ``p`` with unit segments."""
    return PolyCurve(p.positions)


def height(p: Point, w: Vec) -> Fraction | int:
    """Signed distance-like height ``-w_y * x + w_x * y`` of ``p`` along ``w``."""
    return -w[1] * p[0] + w[0] * p[1]


@dataclass(frozen=True)
class BiInfinitePeriodicCurve:
    """The concatenation of ``block + k * direction`` over all integers k.

    ``block`` runs from ``c(a)`` to ``c(b) = c(a) + direction``.
    """

    block: PolyCurve
    direction: Vec

    def __post_init__(self) -> None:
        if self.direction == (0, 0):
            raise ValueError("the direction must be non-null")
        first, last = self.block.vertices[0], self.block.vertices[-1]
        if (last[0] - first[0], last[1] - first[1]) != tuple(self.direction):
            raise ValueError("block must end at its start plus the direction")

    @property
    def origin(self) -> Point:
        return self.block.vertices[0]

    def period_curve(self, k_lo: int, k_hi: int) -> PolyCurve:
        """The finite piece covering periods ``k_lo .. k_hi``."""
        out: list[Point] = []
        body = self.block.vertices[:-1]
        for k in range(k_lo, k_hi + 1):
            v = scale(self.direction, k)
            out.extend((x + v[0], y + v[1]) for x, y in body)
        v = scale(self.direction, k_hi)
        last = self.block.vertices[-1]
        out.append((last[0] + v[0], last[1] + v[1]))
        return PolyCurve(tuple(out))

    def is_simple(self) -> bool:
        """The block is simple and meets its translates only at the shared
        endpoints of consecutive periods."""
        if not self.block.is_simple():
            return False
        w = self.direction
        ss = [w[0] * x + w[1] * y for x, y in self.block.vertices]
        span = max(ss) - min(ss)
        period = w[0] * w[0] + w[1] * w[1]
        reach = int(span // period) + 2
        piece = self.period_curve(-reach, reach)
        return piece.is_simple()


def curve_of_candidate(p: Path) -> BiInfinitePeriodicCurve:
    """The bi-infinite curve traced by the bi-pumping of a good candidate."""
    if len(p) < 2 or p[0].ty != p[-1].ty or p[0].pos == p[-1].pos or not is_good_candidate(p):
        raise NotGoodCandidate("path is not a good candidate")
    return BiInfinitePeriodicCurve(embed(p), p.vector)


def classify_sides(c: BiInfinitePeriodicCurve, points: Sequence[Pos]) -> np.ndarray:
    """Vectorised :func:`classify_side`; returns 1 / 0 / -1 per point."""
    d = _denominator(c.block.vertices)
    bx, by = _scaled(c.block.vertices, d)
    px = np.array([int(p[0]) * d for p in points], dtype=np.int64)
    py = np.array([int(p[1]) * d for p in points], dtype=np.int64)
    return kernels.classify_periodic(bx, by, c.direction[0] * d, c.direction[1] * d, px, py)


def classify_side(c: BiInfinitePeriodicCurve, p: Pos) -> SideClassification:
    """Which side of the simple bi-infinite curve ``c`` the point lies on.

    A ray is cast from ``p`` in the direction of ``c.direction`` rotated
    clockwise by a quarter turn; an odd number of crossings below ``p``
    means ``p`` is strictly on the left.  Only the finitely many periods
    whose projection straddles ``p`` are examined.
    """
    return SideClassification(int(classify_sides(c, [p])[0]))


def sides_of_bipump(p: Path):
    """Predicates ``(left, right)`` for the two sides of ``bipump(p)``; both
    contain the positions of the curve itself."""
    curve = curve_of_candidate(p)

    def left(q: Pos) -> bool:
        return classify_side(curve, q) is not SideClassification.STRICT_RIGHT

    def right(q: Pos) -> bool:
        return classify_side(curve, q) is not SideClassification.STRICT_LEFT

    return left, right


def _primitive(v: Vec) -> tuple[Vec, int]:
    g = gcd(*v)
    return (v[0] // g, v[1] // g), g


def _reduced_tiles(p: Path) -> frozenset:
    """Tiles of one period of ``bipump(p)`` moved into a canonical strip."""
    v = p.vector
    period = v[0] * v[0] + v[1] * v[1]
    out = set()
    for tile in p.tiles[:-1]:
        s = v[0] * tile.pos[0] + v[1] * tile.pos[1]
        k = s // period
        out.add((sub(tile.pos, scale(v, k)), tile.ty))
    return frozenset(out)


def compare_candidates(p: Path, q: Path) -> Order:
    """Order two good candidates by the sides of their bi-pumpings.

    ``p`` is greater than ``q`` when every position of ``bipump(p)`` lies on
    the left side of ``bipump(q)`` and the two bi-infinite paths differ.
    Vectors that are not collinear always give crossing curves.
    """
    cp, cq = curve_of_candidate(p), curve_of_candidate(q)
    vp, vq = p.vector, q.vector
    if not collinear(vp, vq):
        return Order.INCOMPARABLE
    (gp, kp), (_, kq) = _primitive(vp), _primitive(vq)
    reps_p = lcm(kp, kq) // kp
    reps_q = lcm(kp, kq) // kq
    e_p, e_q = bipump(p), bipump(q)
    pts_p = [t.pos for k in range(reps_p) for t in e_p.period_tiles(k)]
    pts_q = [t.pos for k in range(reps_q) for t in e_q.period_tiles(k)]
    p_over_q = bool((classify_sides(cq, pts_p) >= 0).all())
    q_over_p = bool((classify_sides(cp, pts_q) >= 0).all())
    if vp == vq and len(p) == len(q) and _reduced_tiles(p) == _reduced_tiles(q):
        return Order.EQUAL
    if p_over_q and not q_over_p:
        return Order.GREATER
    if q_over_p and not p_over_q:
        return Order.LESS
    if p_over_q and q_over_p:
        # Same supporting curve up to orientation but different tiles; the
        # two sides never strictly separate them.
        p_strict = bool((classify_sides(cq, pts_p) > 0).any())
        q_strict = bool((classify_sides(cp, pts_q) > 0).any())
        if p_strict and not q_strict:
            return Order.GREATER
        if q_strict and not p_strict:
            return Order.LESS
    return Order.INCOMPARABLE


def closed_interior(c: PolyCurve) -> set[Pos]:
    """Lattice points inside or on a simple closed polygonal curve."""
    if not c.closed:
        raise NotClosed("curve is not closed")
    if not c.is_simple():
        raise NotSimple("curve is not simple")
    d = _denominator(c.vertices)
    vx, vy = _scaled(c.vertices, d)
    xlo, xhi = int(vx.min()) // d, -(-int(vx.max()) // d)
    ylo, yhi = int(vy.min()) // d, -(-int(vy.max()) // d)
    pts = [(x, y) for y in range(ylo, yhi + 1) for x in range(xlo, xhi + 1)]
    px = np.array([x * d for x, _ in pts], dtype=np.int64)
    py = np.array([y * d for _, y in pts], dtype=np.int64)
    side = kernels.classify_closed(vx, vy, px, py)
    return {p for p, s in zip(pts, side) if s >= 0}


def band_positions(c: BiInfinitePeriodicCurve, c2: BiInfinitePeriodicCurve,
                   box: tuple[int, int, int, int]) -> set[Pos]:
    """Lattice points of ``box`` in the right side of ``c`` and the left
    side of ``c2`` (sides include the curves)."""
    xmin, xmax, ymin, ymax = box
    pts = [(x, y) for y in range(ymin, ymax + 1) for x in range(xmin, xmax + 1)]
    if not pts:
        return set()
    right_of_c = classify_sides(c, pts) <= 0
    left_of_c2 = classify_sides(c2, pts) >= 0
    return {p for p, a, b in zip(pts, right_of_c, left_of_c2) if a and b}


def interior_of_two_curves(c: BiInfinitePeriodicCurve,
                           c2: BiInfinitePeriodicCurve) -> set[Pos]:
    """A finite set ``A`` whose translates by multiples of the common
    direction tile the lattice points between ``c`` (above) and ``c2``.

    ``A`` is the set of lattice points of ``R(c) ∩ L(c2)`` whose projection
    on the direction, measured from ``c(0)``, lies in ``[0, |w|^2)``.
    """
    w = c.direction
    if tuple(c2.direction) != tuple(w):
        raise PreconditionViolated("curves must share their direction vector")
    if _denominator(c.block.vertices + c2.block.vertices) != 1:
        raise PreconditionViolated("curves must have lattice vertices")
    pts_c2 = list(c2.block.vertices)
    if not (classify_sides(c, pts_c2) <= 0).all():
        raise PreconditionViolated("second curve must lie on the right of the first")
    period = w[0] * w[0] + w[1] * w[1]
    s0 = w[0] * c.origin[0] + w[1] * c.origin[1]
    hs = [height(v, w) for v in c.block.vertices + c2.block.vertices]
    hlo, hhi = min(hs), max(hs)
    corners = []
    for s in (s0, s0 + period):
        for h in (hlo, hhi):
            corners.append((Fraction(w[0] * s - w[1] * h, period),
                            Fraction(w[1] * s + w[0] * h, period)))
    xmin = int(min(x for x, _ in corners)) - 1
    xmax = int(max(x for x, _ in corners)) + 1
    ymin = int(min(y for _, y in corners)) - 1
    ymax = int(max(y for _, y in corners)) + 1
    candidates = band_positions(c, c2, (xmin, xmax, ymin, ymax))
    return {p for p in candidates if 0 <= w[0] * p[0] + w[1] * p[1] - s0 < period}


def translate_cover(a: set[Pos], w: Vec, box: tuple[int, int, int, int]) -> dict[Pos, int]:
    """For each point of ``box`` covered by some ``a + l*w``, the ``l`` used."""
    xmin, xmax, ymin, ymax = box
    out: dict[Pos, int] = {}
    span = max(xmax - xmin, ymax - ymin) + max(abs(q[0]) + abs(q[1]) for q in a) + 2
    reach = span // max(abs(w[0]), abs(w[1])) + 1
    for ell in range(-reach, reach + 1):
        for q in a:
            r = add(q, scale(w, ell))
            if xmin <= r[0] <= xmax and ymin <= r[1] <= ymax:
                out[r] = ell
    return out
