"""Classification of terminal assemblies and their finite descriptions.

A :data:`ComplexityAssembly` is a finite tree of three node kinds:

* ``Finite(assembly)``: a finite fragment (complexity 0);
* ``Pumped(base, v, domain)``: the union of ``base + l*v`` over l in N (or Z),
  one more than the complexity of ``base``;
* ``Union(parts)``: a finite union, the maximum complexity of its parts.

Everything here works on a window-terminal fragment: claims are certified
only on the inner window (the window minus a margin), where growth cannot
depend on tiles outside the window.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from enum import Enum
from functools import reduce
from math import gcd, inf, lcm

import numpy as np

from tilepump.errors import (
    ArcFound,
    Collinear,
    ComplexityTooHigh,
    InternalConflict,
    NoBipumpable,
    NoPath,
    PreconditionViolated,
    TilepumpError,
    VerificationFailed,
    WindowTooSmall,
)
from tilepump.geometry import (
    Order,
    _reduced_tiles,
    classify_sides,
    compare_candidates,
    curve_of_candidate,
    interior_of_two_curves,
)
from tilepump.lattice import collinear, lattice_basis
from tilepump.model import (
    Assembly,
    Pos,
    Tile,
    TileAssemblySystem,
    TileType,
    Vec,
    Window,
    add,
    binding_graph,
    grow_trace,
    is_periodic_on_window,
    scale,
    sub,
)
from tilepump.paths import Path, extents, find_connecting_path
from tilepump.pumping import (
    DEFAULT_BOUND,
    Check,
    Domain,
    EventuallyPeriodicPath,
    Verdict,
    check_backward,
    check_forward,
    extract_without_redundancy,
    is_good_candidate,
    is_without_redundancy,
    pump,
    pump_between,
)

PERIODIC_MARGIN = 2
DECOMPOSITION_MARGIN = 6


# Complexity assemblies -------------------------------------------------------


@dataclass(frozen=True)
class Finite:
    assembly: Assembly


@dataclass(frozen=True)
class Pumped:
    base: ComplexityAssembly
    vector: Vec
    domain: Domain = Domain.NAT

    def __post_init__(self) -> None:
        if tuple(self.vector) == (0, 0):
            raise ValueError("a pumping vector must be non-null")


@dataclass(frozen=True)
class Union:
    parts: tuple[ComplexityAssembly, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "parts", tuple(self.parts))
        if not self.parts:
            raise ValueError("a union needs at least one part")


ComplexityAssembly = Finite | Pumped | Union


def complexity(c: ComplexityAssembly) -> int:
    if isinstance(c, Finite):
        return 0
    if isinstance(c, Pumped):
        return complexity(c.base) + 1
    return max(complexity(part) for part in c.parts)


def finite(tiles: Mapping[Pos, TileType] | Iterable[Tile]) -> Finite:
    return Finite(Assembly(tiles, fragment=True))


def union_of(parts: Sequence[ComplexityAssembly]) -> ComplexityAssembly:
    """A flattened union: nested unions are inlined, finite parts merged
    into one leaf (first) and a single remaining part is returned as is."""
    flat: list[ComplexityAssembly] = []
    stack = list(reversed(parts))
    while stack:
        part = stack.pop()
        if isinstance(part, Union):
            stack.extend(reversed(part.parts))
        else:
            flat.append(part)
    tiles: dict[Pos, TileType] = {}
    others = []
    for part in flat:
        if isinstance(part, Finite):
            for p, ty in part.assembly.items():
                if tiles.setdefault(p, ty) != ty:
                    raise InternalConflict(f"finite parts disagree at {p}", position=p)
        else:
            others.append(part)
    out: list[ComplexityAssembly] = [finite(tiles)] if tiles or not others else []
    out.extend(others)
    return out[0] if len(out) == 1 else Union(tuple(out))


def finite_tile_count(c: ComplexityAssembly) -> int:
    """Total number of tiles over all finite leaves."""
    if isinstance(c, Finite):
        return len(c.assembly)
    if isinstance(c, Pumped):
        return finite_tile_count(c.base)
    return sum(finite_tile_count(part) for part in c.parts)


# Evaluation ------------------------------------------------------------------

Box = tuple[int, int, int, int]


def _dot(a: Vec, b: Vec) -> int:
    return a[0] * b[0] + a[1] * b[1]


def _perp(v: Vec) -> Vec:
    return (-v[1], v[0])


def _box_range(box: Box, d: Vec) -> tuple[int, int]:
    xmin, xmax, ymin, ymax = box
    values = [_dot(d, (x, y)) for x in (xmin, xmax) for y in (ymin, ymax)]
    return min(values), max(values)


def _extent(c: ComplexityAssembly, d: Vec) -> tuple[float, float]:
    """``(min, max)`` of ``<d, p>`` over the positions of ``c`` (may be infinite)."""
    if isinstance(c, Finite):
        values = [_dot(d, p) for p in c.assembly]
        return (min(values), max(values)) if values else (inf, -inf)
    if isinstance(c, Union):
        ranges = [_extent(part, d) for part in c.parts]
        return min(r[0] for r in ranges), max(r[1] for r in ranges)
    lo, hi = _extent(c.base, d)
    if lo > hi:
        return lo, hi
    e = _dot(d, c.vector)
    if c.domain is Domain.INT and e != 0:
        return -inf, inf
    if e > 0:
        hi = inf
    elif e < 0:
        lo = -inf
    return lo, hi


def _generators(c: ComplexityAssembly) -> set[Vec]:
    if isinstance(c, Finite):
        return set()
    if isinstance(c, Union):
        return set().union(*(_generators(part) for part in c.parts))
    return {tuple(c.vector)} | _generators(c.base)


def _index_range(c: Pumped, box: Box, shift: Vec) -> tuple[int, int] | None:
    """Indices ``l`` for which ``base + shift + l*v`` may meet ``box``."""
    v = c.vector
    functionals = {(1, 0), (0, 1), (-1, 0), (0, -1), v, (-v[0], -v[1])}
    for g in _generators(c.base) | {v}:
        functionals |= {_perp(g), (g[1], -g[0])}
    low = 0 if c.domain is Domain.NAT else -inf
    high = inf
    for d in functionals:
        e = _dot(d, v)
        if e == 0:
            continue
        lo, hi = _extent(c.base, d)
        if lo > hi:
            return None
        s = _dot(d, shift)
        bmin, bmax = _box_range(box, d)
        if e > 0:
            if lo != -inf:
                high = min(high, (bmax - s - lo) // e)
            if hi != inf:
                low = max(low, -((s + hi - bmin) // e))
        else:
            if lo != -inf:
                low = max(low, -((bmax - s - lo) // -e))
            if hi != inf:
                high = min(high, (s + hi - bmin) // -e)
    if low == -inf or high == inf:
        raise ValueError(f"cannot bound the pumping along {v} inside the window")
    if low > high:
        return None
    return int(low), int(high)


def _put(out: dict[Pos, TileType], p: Pos, ty: TileType) -> None:
    old = out.setdefault(p, ty)
    if old != ty:
        raise InternalConflict(f"{old.name} and {ty.name} both placed at {p}", position=p)


def _collect(c: ComplexityAssembly, box: Box, shift: Vec, out: dict[Pos, TileType]) -> None:
    xmin, xmax, ymin, ymax = box
    if isinstance(c, Finite):
        for (x, y), ty in c.assembly.items():
            x, y = x + shift[0], y + shift[1]
            if xmin <= x <= xmax and ymin <= y <= ymax:
                _put(out, (x, y), ty)
    elif isinstance(c, Union):
        for part in c.parts:
            _collect(part, box, shift, out)
    else:
        span = _index_range(c, box, shift)
        if span is None:
            return
        for ell in range(span[0], span[1] + 1):
            _collect(c.base, box, add(shift, scale(c.vector, ell)), out)


def evaluate(c: ComplexityAssembly | SemilinearDescription, w: Window) -> Assembly:
    """All tiles of the described assembly whose positions lie in ``w``."""
    if isinstance(c, SemilinearDescription):
        return _evaluate_semilinear(c, w)
    out: dict[Pos, TileType] = {}
    _collect(c, w.bounds, (0, 0), out)
    return Assembly(out, fragment=True)


# Semilinear descriptions -----------------------------------------------------


@dataclass(frozen=True)
class LinearSet:
    """``{base + l*u + l'*v : l, l' in N}``, every position holding one type."""

    base: Pos
    u: Vec
    v: Vec
    tile_type: str


@dataclass(frozen=True)
class SemilinearDescription:
    sets: tuple[LinearSet, ...]
    types: Mapping[str, TileType] = field(default_factory=dict, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "sets", tuple(self.sets))


def _representable(k: int, a: int, b: int) -> bool:
    """Whether ``k = l*a + l'*b`` for some naturals ``l, l'``."""
    if a == 0 and b == 0:
        return k == 0
    if b == 0:
        a, b = b, a
    if a == 0:
        return k % b == 0 and k // b >= 0
    if (a > 0) != (b > 0):
        return k % gcd(a, b) == 0
    if (k > 0) != (a > 0) and k != 0:
        return False
    for ell in range(abs(k) // abs(a) + 1):
        rest = k - ell * a
        if rest % b == 0 and rest // b >= 0:
            return True
    return False


def _line_data(s: LinearSet) -> tuple[Vec, int, int]:
    """Primitive direction ``g`` and coefficients with ``u = a*g, v = b*g``."""
    nonnull = [x for x in (s.u, s.v) if x != (0, 0)]
    g0 = gcd(*nonnull[0])
    g = (nonnull[0][0] // g0, nonnull[0][1] // g0)

    def coef(x: Vec) -> int:
        if x == (0, 0):
            return 0
        return (x[0] // g[0]) if g[0] else (x[1] // g[1])

    return g, coef(s.u), coef(s.v)


def linear_contains(s: LinearSet, q: Pos) -> bool:
    d = sub(q, s.base)
    if s.u == (0, 0) and s.v == (0, 0):
        return d == (0, 0)
    if s.u != (0, 0) and s.v != (0, 0) and not collinear(s.u, s.v):
        det = s.u[0] * s.v[1] - s.u[1] * s.v[0]
        n1 = d[0] * s.v[1] - d[1] * s.v[0]
        n2 = s.u[0] * d[1] - s.u[1] * d[0]
        if n1 % det or n2 % det:
            return False
        return n1 // det >= 0 and n2 // det >= 0
    g, a, b = _line_data(s)
    if d[0] * g[1] - d[1] * g[0] != 0:
        return False
    k = _dot(d, g) // _dot(g, g)
    return _representable(k, a, b)


def membership(desc: SemilinearDescription, q: Pos) -> str | None:
    """The type name placed at ``q``, or ``None``."""
    found = None
    for s in desc.sets:
        if linear_contains(s, q):
            if found is not None and found != s.tile_type:
                raise InternalConflict(f"{found} and {s.tile_type} both placed at {q}", position=q)
            found = s.tile_type
    return found


def _linear_positions(s: LinearSet, box: Box) -> list[Pos]:
    xmin, xmax, ymin, ymax = box
    if s.u == (0, 0) and s.v == (0, 0):
        x, y = s.base
        return [s.base] if xmin <= x <= xmax and ymin <= y <= ymax else []
    if s.u != (0, 0) and s.v != (0, 0) and not collinear(s.u, s.v):
        xs, ys = np.meshgrid(np.arange(xmin, xmax + 1, dtype=np.int64),
                             np.arange(ymin, ymax + 1, dtype=np.int64))
        dx, dy = xs.ravel() - s.base[0], ys.ravel() - s.base[1]
        det = s.u[0] * s.v[1] - s.u[1] * s.v[0]
        n1 = dx * s.v[1] - dy * s.v[0]
        n2 = s.u[0] * dy - s.u[1] * dx
        ok = (n1 % det == 0) & (n2 % det == 0) & (n1 * det >= 0) & (n2 * det >= 0)
        return [(int(x), int(y)) for x, y in zip(xs.ravel()[ok], ys.ravel()[ok])]
    g, a, b = _line_data(s)
    lo, hi = _box_range(box, g)
    norm = _dot(g, g)
    s0 = _dot(g, s.base)
    out = []
    for k in range(-((s0 - lo) // norm), (hi - s0) // norm + 1):
        p = add(s.base, scale(g, k))
        if xmin <= p[0] <= xmax and ymin <= p[1] <= ymax and _representable(k, a, b):
            out.append(p)
    return out


def _evaluate_semilinear(desc: SemilinearDescription, w: Window) -> Assembly:
    out: dict[Pos, TileType] = {}
    for s in desc.sets:
        ty = desc.types.get(s.tile_type) or TileType(s.tile_type)
        for p in _linear_positions(s, w.bounds):
            _put(out, p, ty)
    return Assembly(out, fragment=True)


def to_semilinear(c: ComplexityAssembly) -> SemilinearDescription:
    """One linear set per finite-leaf tile; each pumping layer fills a null
    vector (outermost layer first), and a Z-indexed layer splits every set
    into a forward and a backward ray."""
    types: dict[str, TileType] = {}

    def walk(node: ComplexityAssembly) -> list[tuple[Pos, str, tuple[Vec, ...]]]:
        if isinstance(node, Finite):
            out = []
            for tile in node.assembly.tiles():
                types[tile.ty.name] = tile.ty
                out.append((tile.pos, tile.ty.name, ()))
            return out
        if isinstance(node, Union):
            return [item for part in node.parts for item in walk(part)]
        inner = walk(node.base)
        v = tuple(node.vector)
        steps = [v] if node.domain is Domain.NAT else [v, (-v[0], -v[1])]
        out = []
        for p, name, vecs in inner:
            if len(vecs) >= 2:
                raise ComplexityTooHigh("more than two nested pumpings over a leaf")
            out.extend((p, name, (step,) + vecs) for step in steps)
        return out

    sets = []
    for p, name, vecs in walk(c):
        vecs = vecs + ((0, 0),) * (2 - len(vecs))
        sets.append(LinearSet(p, vecs[0], vecs[1], name))
    return SemilinearDescription(tuple(sets), types)


# Analysis context -------------------------------------------------------------


class Kind(Enum):
    FINITE = "FINITE"
    SIMPLY_PERIODIC = "SIMPLY_PERIODIC"
    BI_PERIODIC = "BI_PERIODIC"
    APERIODIC = "APERIODIC"


@dataclass(frozen=True)
class Witness:
    """A certified pumpable path: its block path and the verdict."""

    path: Path
    verdict: Verdict

    @property
    def vector(self) -> Vec:
        return self.path.vector


@dataclass(frozen=True)
class Classification:
    kind: Kind
    vectors: tuple[Vec, ...]
    evidence: tuple[Witness, ...]
    window: Window
    bound: int
    margin: int


@dataclass
class _Analysis:
    t: TileAssemblySystem
    w: Window
    margin: int
    bound: int
    alpha: Assembly
    order: tuple[Pos, ...]
    parent: Mapping[Pos, Pos | None]
    kids: dict[Pos, list[Pos]]
    complete: bool
    inner: Window = field(init=False)
    rank: dict[Pos, int] = field(init=False)

    def __post_init__(self) -> None:
        self.inner = self.w.inner(self.margin)
        self.rank = {p: k for k, p in enumerate(self.order)}

    def path(self, positions: Sequence[Pos]) -> Path:
        return Path.of((q, self.alpha[q]) for q in positions)


def _analyse(t: TileAssemblySystem, w: Window, margin: int, bound: int) -> _Analysis:
    trace = grow_trace(t, w)
    return _Analysis(t, w, margin, bound, trace.assembly, trace.order, trace.parent,
                     trace.children(), trace.complete)


def default_window(t: TileAssemblySystem, radius: int) -> Window:
    """Window of the given radius centred on the seed's bounding box."""
    xmin, xmax, ymin, ymax = t.seed.bounding_box()
    return Window(((xmin + xmax) // 2, (ymin + ymax) // 2), radius)


def _positive(v: Vec) -> bool:
    return v[0] > 0 or (v[0] == 0 and v[1] > 0)


def _orient(p: Path) -> Path:
    """The candidate with a positive vector (reversed if needed)."""
    return p if _positive(p.vector) else p.reverse()


def _tree_candidates(an: _Analysis) -> list[Path]:
    """Ancestor walks ending at the nearest ancestor of the same type, with
    no repeated type in between (hence redundancy-free)."""
    limit = len(an.t.tile_types)
    out = []
    for x in an.order:
        ty = an.alpha[x]
        seen = {ty}
        chain = [x]
        node = an.parent[x]
        while node is not None and len(chain) <= limit:
            chain.append(node)
            other = an.alpha[node]
            if other == ty:
                out.append(an.path(chain[::-1]))
                break
            if other in seen:
                break
            seen.add(other)
            node = an.parent[node]
    return out


def _candidate_key(p: Path) -> tuple:
    return p.vector, len(p), _reduced_tiles(p)


def _as_pumping(p: Path) -> EventuallyPeriodicPath:
    return EventuallyPeriodicPath((), p.tiles[:-1], p.vector)


def _within_bound(p: Path, bound: int) -> bool:
    return max(extents(p)) <= bound


def _certify(an: _Analysis, candidates: Iterable[Path]) -> tuple[list[Path], list[Path]]:
    """Split good, redundancy-free candidates into (bi-pumpable, simply
    pumpable) ones, deduplicated up to translation along their vector."""
    seen = set()
    bi, simple = [], []
    for p in candidates:
        p = _orient(p)
        if not _within_bound(p, an.bound) or not is_without_redundancy(p):
            continue
        if not is_good_candidate(p):
            continue
        key = _candidate_key(p)
        if key in seen:
            continue
        seen.add(key)
        e = _as_pumping(p)
        forward = check_forward(e, an.alpha, an.w, an.margin)
        if forward is not Check.OK:
            back = p.reverse()
            if check_forward(_as_pumping(back), an.alpha, an.w, an.margin) is Check.OK:
                simple.append(back)
            continue
        if check_backward(e, an.alpha, an.w, an.margin) is Check.OK:
            bi.append(p)
        else:
            simple.append(p)
    return bi, simple


def _shape(p: Path) -> tuple:
    o = p[0].pos
    return tuple((sub(t.pos, o), t.ty.name) for t in p.tiles)


def _distinct_shapes(paths: list[Path]) -> list[Path]:
    seen, out = set(), []
    for p in paths:
        if _shape(p) not in seen:
            seen.add(_shape(p))
            out.append(p)
    return out


def _vector_key(v: Vec) -> tuple:
    return abs(v[0]) + abs(v[1]), abs(v[1]), v[0], v[1]


def _refute_other_periods(an: _Analysis, v: Vec) -> None:
    """Raise if the window is periodic along a short vector not collinear
    with ``v`` although no second bi-pumpable path was certified."""
    reach = max(1, an.inner.radius // 2)
    for x in range(0, reach + 1):
        for y in range(-reach, reach + 1):
            u = (x, y)
            if not _positive(u) or collinear(u, v):
                continue
            if is_periodic_on_window(an.alpha, u, an.w, an.margin):
                raise VerificationFailed(
                    f"the window is periodic along {u} but only {v} was certified",
                    vector=u)


def _classify(an: _Analysis) -> tuple[Classification, list[Path], list[Path]]:
    def result(kind, vectors, evidence):
        return Classification(kind, tuple(vectors), tuple(evidence), an.w, an.bound, an.margin)

    if an.complete and all(p in an.inner for p in an.alpha):
        return result(Kind.FINITE, (), ()), [], []
    bi, simple = _certify(an, _tree_candidates(an))
    bi.sort(key=lambda p: (_vector_key(p.vector), len(p), p[0].pos[1], p[0].pos[0]))
    evidence_bi = [Witness(p, Verdict.BI_PUMPABLE) for p in _distinct_shapes(bi)]
    if bi:
        u = bi[0].vector
        for q in bi[1:]:
            if not collinear(u, q.vector):
                pair = sorted([u, q.vector], key=lambda x: (abs(x[1]), abs(x[0])))
                return result(Kind.BI_PERIODIC, pair, evidence_bi), bi, simple
        g = gcd(*u)
        _refute_other_periods(an, (u[0] // g, u[1] // g))
        return result(Kind.SIMPLY_PERIODIC, [u], evidence_bi), bi, simple
    if simple:
        simple.sort(key=lambda p: (an.rank[p[0].pos], len(p)))
        evidence = [Witness(p, Verdict.SIMPLY_PUMPABLE) for p in _distinct_shapes(simple)]
        return result(Kind.APERIODIC, (), evidence), bi, simple
    raise WindowTooSmall("growth reaches the window margin without a pumpable witness")


def classify(t: TileAssemblySystem, w: Window, bound: int = DEFAULT_BOUND,
             margin: int = PERIODIC_MARGIN) -> Classification:
    """Window-relative classification of the terminal assembly.

    FINITE when growth stops inside the inner window; BI_PERIODIC when two
    certified bi-pumpable paths have non-collinear vectors; SIMPLY_PERIODIC
    when all certified bi-pumpable paths are collinear and no other short
    period holds on the window; APERIODIC when only one-way pumpable paths
    are certified.
    """
    return _classify(_analyse(t, w, margin, bound))[0]


# Bi-periodic ---------------------------------------------------------------------


def _first_mismatch(got: Mapping[Pos, TileType], alpha: Mapping[Pos, TileType],
                    w: Window) -> tuple[Pos, str | None, str | None] | None:
    for p in sorted(set(got) | {q for q in alpha if q in w}, key=lambda q: (q[1], q[0])):
        if p not in w:
            continue
        a, b = alpha.get(p), got.get(p)
        if a != b:
            return p, (a.name if a else None), (b.name if b else None)
    return None


def _require_equal(c: ComplexityAssembly, an: _Analysis) -> None:
    got = evaluate(c, an.inner)
    bad = _first_mismatch(got, an.alpha, an.inner)
    if bad is not None:
        p, expected, found = bad
        raise VerificationFailed(f"description disagrees with growth at {p}: expected "
                                 f"{expected}, described {found}",
                                 position=p, expected=expected, found=found)


def decompose_biperiodic(t: TileAssemblySystem, p: Path, q: Path, w: Window,
                         margin: int = PERIODIC_MARGIN) -> tuple[Assembly, Vec, Vec]:
    """A fundamental assembly ``ass`` and a basis ``u, v`` of its periods
    such that the translates ``ass + l*u + l'*v`` tile the window.

    The period lattice is spanned by the two pumping vectors together with
    every difference between equal-type tiles of ``p`` and ``q`` that is a
    period of the window; ``ass`` is the terminal assembly on the box
    ``[0, a) x [0, c)`` of the lattice's Hermite basis ``(a, b), (0, c)``.
    """
    if collinear(p.vector, q.vector):
        raise Collinear("the two pumping vectors are collinear")
    an = _analyse(t, w, margin, DEFAULT_BOUND)
    vectors = [p.vector, q.vector]
    for a in p.tiles:
        for b in q.tiles:
            d = sub(b.pos, a.pos)
            if a.ty == b.ty and d != (0, 0) and d not in vectors:
                if is_periodic_on_window(an.alpha, d, w, margin):
                    vectors.append(d)
    a, b, c = lattice_basis(vectors)
    x0, y0 = p[0].pos
    ass = an.alpha.restrict(lambda r: 0 <= r[0] - x0 < a and 0 <= r[1] - y0 < c)
    u, v = (a, b), (0, c)
    _require_equal(Pumped(Pumped(Finite(ass), v, Domain.INT), u, Domain.INT), an)
    return ass, u, v


# Simply periodic -------------------------------------------------------------------


def _repeat(p: Path, times: int) -> Path:
    if times == 1:
        return p
    block = p.tiles[:-1]
    tiles = [tile.translate(scale(p.vector, k)) for k in range(times) for tile in block]
    return Path(tuple(tiles) + (p[-1].translate(scale(p.vector, times - 1)),))


def _connecting_candidates(an: _Analysis, v: Vec) -> list[Path]:
    """Shortest binding paths from ``x`` to ``x + v`` for ``x`` in one strip
    of the inner window."""
    norm = _dot(v, v)
    s0 = _dot(v, an.w.center)
    out = []
    fragment = an.alpha.restrict(lambda r: r in an.inner)
    for x in an.inner.positions():
        if not 0 <= _dot(v, x) - s0 < norm or x not in fragment:
            continue
        y = add(x, v)
        if fragment.get(y) != fragment[x]:
            continue
        try:
            path = find_connecting_path(fragment, x, y)
        except NoPath:
            continue
        if not is_without_redundancy(path):
            i, j = extract_without_redundancy(path, 0, len(path) - 1)
            path = path.sub(i, j)
        out.append(path)
    return out


def _centred(p: Path, center: Pos) -> Path:
    """The translate of ``p`` by a multiple of its vector whose start
    projects into the strip starting at the window centre."""
    v = p.vector
    norm = _dot(v, v)
    k = -((_dot(v, p[0].pos) - _dot(v, center)) // norm)
    return p.translate(scale(v, k))


def _extremes(cands: list[Path]) -> tuple[Path, Path]:
    def tie(p: Path) -> tuple:
        return len(p), p[0].pos[1], p[0].pos[0]

    def best(sign: Order) -> Path | None:
        winners = []
        for c in cands:
            if all(o is c or compare_candidates(c, o) in (sign, Order.EQUAL) for o in cands):
                winners.append(c)
        return min(winners, key=tie) if winners else None

    top, bottom = best(Order.GREATER), best(Order.LESS)
    if top is None or bottom is None:
        # No element dominates every other one; fall back to the side
        # classification against a common reference curve.
        ref = curve_of_candidate(cands[0])
        score = {id(c): int(classify_sides(ref, list(c.positions)).sum()) for c in cands}
        top = top or max(cands, key=lambda c: (score[id(c)], -len(c)))
        bottom = bottom or min(cands, key=lambda c: (score[id(c)], len(c)))
    return top, bottom


def _extremal(an: _Analysis, bi: list[Path]) -> tuple[Path, Path]:
    if not bi:
        raise NoBipumpable("no bi-pumpable path was certified on the window")
    u = bi[0].vector
    if any(not collinear(u, p.vector) for p in bi):
        raise PreconditionViolated("bi-pumpable paths are not all collinear")
    extra = []
    for v in sorted({p.vector for p in bi}, key=_vector_key):
        extra.extend(_connecting_candidates(an, v))
    more, _ = _certify(an, extra)
    pool = {_candidate_key(p): p for p in bi + more}
    cands = list(pool.values())
    g0 = gcd(*u)
    g = (u[0] // g0, u[1] // g0)
    mult = [gcd(*p.vector) for p in cands]
    common = reduce(lcm, mult, 1)
    cands = [_centred(_repeat(p, common // k), an.w.center) for p, k in zip(cands, mult)]
    assert all(p.vector == scale(g, common) for p in cands)
    return _extremes(cands)


def find_extremal_bipumpables(t: TileAssemblySystem, w: Window, bound: int = DEFAULT_BOUND,
                              margin: int = PERIODIC_MARGIN) -> tuple[Path, Path]:
    """The maximum and minimum certified bi-pumpable paths (leftmost and
    rightmost bi-infinite repetitions), with equal vectors."""
    an = _analyse(t, w, margin, bound)
    bi, _ = _certify(an, _tree_candidates(an))
    return _extremal(an, bi)


def _components(nodes: set[Pos], graph: Mapping[Pos, list[Pos]]) -> list[set[Pos]]:
    out = []
    left = set(nodes)
    while left:
        start = left.pop()
        comp = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for y in graph[x]:
                if y in left:
                    left.remove(y)
                    comp.add(y)
                    stack.append(y)
        out.append(comp)
    return out


def _simply_periodic(an: _Analysis, bi: list[Path]) -> ComplexityAssembly:
    p_plus, p_minus = _extremal(an, bi)
    v = p_plus.vector
    c_plus, c_minus = curve_of_candidate(p_plus), curve_of_candidate(p_minus)
    strip = interior_of_two_curves(c_plus, c_minus)
    band_tiles = {p: an.alpha[p] for p in strip if p in an.alpha}
    positions = list(an.alpha)
    below_top = classify_sides(c_plus, positions) <= 0
    above_bottom = classify_sides(c_minus, positions) >= 0
    band = {p for p, a, b in zip(positions, below_top, above_bottom) if a and b}
    graph = binding_graph(an.alpha)
    side = set(an.alpha) - band
    norm = _dot(v, v)
    s0 = _dot(v, c_plus.origin)
    parts: list[ComplexityAssembly] = [finite(band_tiles)]
    for comp in sorted(_components(side, graph), key=lambda c: min(an.rank[p] for p in c)):
        contacts = [(x, y) for x in comp for y in graph[x] if y in band]
        if len(contacts) > 1:
            x, y = min(contacts)
            raise ArcFound(f"a growth outside the band binds to it twice (at {y})", position=y)
        if not contacts:
            if any(p in an.inner for p in comp):
                raise VerificationFailed("a side growth is not attached to the band in the window")
            continue
        anchor, host = contacts[0]
        if not 0 <= _dot(v, host) - s0 < norm:
            continue
        if an.parent[anchor] != host:
            raise VerificationFailed(f"the seed lies outside the band near {anchor}")
        parts.append(_describe(an, [anchor], 1, frozenset()))
    result = Pumped(union_of(parts), v, Domain.INT)
    _require_equal(result, an)
    return result


def decompose_simply_periodic(t: TileAssemblySystem, w: Window, bound: int = DEFAULT_BOUND,
                              margin: int = DECOMPOSITION_MARGIN) -> ComplexityAssembly:
    """``PUMPED(UNION(band, side growths), v, INT)``: the fundamental band
    between the extremal bi-pumpable paths plus one representative of every
    growth hanging off it per period, verified on the inner window."""
    an = _analyse(t, w, margin, bound)
    cls, bi, _ = _classify(an)
    if cls.kind is not Kind.SIMPLY_PERIODIC:
        raise PreconditionViolated(f"expected a simply periodic assembly, got {cls.kind.value}")
    return _simply_periodic(an, bi)


# Aperiodic -------------------------------------------------------------------------


class _Undescribable(TilepumpError):
    code = "WINDOW_TOO_SMALL"


def _subtree(an: _Analysis, roots: Iterable[Pos], stop: frozenset[Pos]) -> list[Pos]:
    out = []
    stack = [r for r in roots if r not in stop]
    while stack:
        x = stack.pop()
        out.append(x)
        stack.extend(c for c in an.kids[x] if c not in stop)
    return out


def _activation(an: _Analysis, path: tuple[Pos, ...]) -> tuple[Path, int, int] | None:
    """The smallest ``i`` such that pumping the root path between ``i`` and
    its last index is certified, if any."""
    m = len(path) - 1
    ty = an.alpha[path[m]]
    full = None
    for i in range(m):
        if an.alpha[path[i]] != ty:
            continue
        full = full or an.path(path)
        if not _within_bound(full.sub(i, m), an.bound):
            continue
        e = pump_between(full, i, m)
        if check_forward(e, an.alpha, an.w, an.margin) is Check.OK:
            return full, i, m
    return None


def _describe(an: _Analysis, starts: Sequence[Pos], level: int,
              stop: frozenset[Pos]) -> ComplexityAssembly:
    """Describe the growth-tree subtrees below ``starts`` (not entering
    ``stop``) with complexity at most ``level``.

    A depth-first scan looks, at every node, for a certified pumping of the
    root path ending there.  Each hit turns the subtree at the start of its
    first period into a pumped group; everything else must be finite and
    inside the inner window.
    """
    hits: dict[Pos, tuple[Path, int, int]] = {}
    stack = [(s, (s,)) for s in reversed(starts) if s not in stop]
    while stack:
        node, path = stack.pop()
        if level > 0:
            hit = _activation(an, path)
            if hit is not None:
                if not any(q in hits for q in path[:hit[1]]):
                    hits.setdefault(path[hit[1]], hit)
                continue
        for c in reversed(an.kids[node]):
            if c not in stop:
                stack.append((c, path + (c,)))
    roots = [r for r, (p, i, _) in hits.items() if not any(q in hits for q in p.positions[:i])]
    fixed = _subtree(an, starts, stop | frozenset(roots))
    outside = [p for p in fixed if p not in an.inner]
    if outside:
        raise _Undescribable(f"finite growth reaches {outside[0]} outside the inner window")
    parts: list[ComplexityAssembly] = [finite({p: an.alpha[p] for p in fixed})]
    for r in sorted(roots, key=an.rank.__getitem__):
        p, i, j = hits[r]
        parts.append(_describe_group(an, p, i, j, level, stop))
    return union_of(parts)


def _describe_group(an: _Analysis, p: Path, i: int, j: int, level: int,
                    stop: frozenset[Pos]) -> ComplexityAssembly:
    e = pump_between(p, i, j)
    v, period = e.shift, j - i
    root = p[i].pos
    members = set(_subtree(an, [root], stop))
    pumped: dict[Pos, int] = {}
    k = i
    while True:
        tile = e[k]
        if tile.pos not in an.w:
            break
        if tile.pos in members and an.alpha[tile.pos] == tile.ty:
            pumped[tile.pos] = k
        k += 1
    blocked = stop | frozenset(pumped)
    branch: dict[Pos, int] = {root: i}
    growth_roots: dict[int, list[Pos]] = {}
    queue = [root]
    while queue:
        x = queue.pop()
        for c in an.kids[x]:
            if c not in members:
                continue
            if c in pumped:
                branch[c] = pumped[c]
            else:
                branch[c] = branch[x]
                if x in pumped:
                    growth_roots.setdefault(pumped[x], []).append(c)
            queue.append(c)

    cache: dict[tuple[int, int], ComplexityAssembly] = {}

    def growth(k: int, depth: int) -> ComplexityAssembly | None:
        roots = growth_roots.get(k)
        if not roots:
            return None
        if (k, depth) not in cache:
            cache[(k, depth)] = _describe(an, sorted(roots, key=an.rank.__getitem__), depth, blocked)
        return cache[(k, depth)]

    last = max(pumped.values(), default=i)
    for m in range(i, last + 1):
        block = e.tiles(m, m + period)
        if not all(t.pos in an.inner for t in block):
            break
        try:
            parts = [finite(block)] + [growth(k, level - 1) for k in range(m, m + period)]
        except _Undescribable:
            continue
        candidate = Pumped(union_of([x for x in parts if x is not None]), v, Domain.NAT)
        try:
            got = evaluate(candidate, an.inner)
        except InternalConflict:
            continue
        if not got.is_subassembly_of(an.alpha):
            continue
        if any(x in an.inner and x not in got for x, b in branch.items() if b >= m):
            continue
        try:
            prefix = [finite(e.tiles(i, m))] if m > i else []
            prefix += [growth(k, level) for k in range(i, m)]
        except _Undescribable:
            continue
        return union_of([x for x in prefix if x is not None] + [candidate])
    raise _Undescribable(f"no periodic description of the pumping from {root} along {v}")


def describe_aperiodic(an: _Analysis) -> ComplexityAssembly:
    seed = frozenset(an.t.seed)
    starts = [c for s in sorted(seed, key=an.rank.__getitem__) for c in an.kids[s]]
    starts.sort(key=an.rank.__getitem__)
    try:
        body = _describe(an, starts, 2, seed)
    except _Undescribable as exc:
        raise WindowTooSmall(str(exc)) from None
    result = union_of([Finite(an.t.seed), body])
    _require_equal(result, an)
    return result


def decompose_aperiodic(t: TileAssemblySystem, w: Window, bound: int = DEFAULT_BOUND,
                        margin: int = DECOMPOSITION_MARGIN) -> ComplexityAssembly:
    """A complexity-at-most-2 description of an aperiodic terminal assembly.

    The seed and every growth that is not eventually pumpable form the
    finite part.  Each certified pumping contributes its first periods and
    their growths explicitly and the rest as ``PUMPED`` of one period plus
    that period's growths, themselves described one level lower.  The start
    of the repeated part is the first period index from which the pumped
    description agrees with the window.
    """
    an = _analyse(t, w, margin, bound)
    return describe_aperiodic(an)


def separation_index(p: Path, bound: int, base: Iterable[Pos]) -> int:
    """Smallest index from which every tile of ``pump(p)`` is at L-infinity
    distance greater than ``bound + 1`` from every position of ``base``."""
    base = list(base)
    if not base:
        return 0
    e = pump(p)
    n = len(p) - 1
    step = max(abs(p.vector[0]), abs(p.vector[1]))
    spread = max(max(abs(t.pos[0] - b[0]), abs(t.pos[1] - b[1])) for t in p.tiles for b in base)
    periods = (spread + bound + 2) // step + 2
    last_close = -1
    for k in range(periods * n + 1):
        q = e[k].pos
        if min(max(abs(q[0] - b[0]), abs(q[1] - b[1])) for b in base) <= bound + 1:
            last_close = k
    return last_close + 1


def magic_index(ass_size: int, p: Path, tile_count: int, bound: int = 0,
                base: Iterable[Pos] = ((0, 0),)) -> int:
    """Index past which growths on ``pump(p)`` cannot meet the base assembly.

    The smallest ``i > j + |P| - 1`` with ``j = (4 * ass_size + 2)(|P| - 1) + 1``
    from which the pumped tiles stay farther than ``bound + 1`` from ``base``.
    ``tile_count`` (the number of tile types) does not change the index; it
    is accepted for symmetry with the size bounds ``bound`` stands in for.
    """
    del tile_count
    start = magic_j(ass_size, len(p)) + len(p) - 1
    return max(start + 1, separation_index(p, bound, base))


def magic_j(ass_size: int, path_length: int) -> int:
    return (4 * ass_size + 2) * (path_length - 1) + 1


# Dispatcher ------------------------------------------------------------------------


@dataclass(frozen=True)
class Decomposition:
    classification: Classification
    description: ComplexityAssembly
    fundamental: Assembly | None = None


def decompose(t: TileAssemblySystem, w: Window, bound: int = DEFAULT_BOUND,
              margin: int = DECOMPOSITION_MARGIN) -> Decomposition:
    """Classify, then build and verify the matching description."""
    an = _analyse(t, w, margin, bound)
    cls, bi, _ = _classify(an)
    if cls.kind is Kind.FINITE:
        return Decomposition(cls, Finite(an.alpha))
    if cls.kind is Kind.BI_PERIODIC:
        u = bi[0]
        v = next(q for q in bi if not collinear(u.vector, q.vector))
        ass, a, b = decompose_biperiodic(t, u, v, w, margin)
        desc = Pumped(Pumped(Finite(ass), b, Domain.INT), a, Domain.INT)
        return Decomposition(cls, desc, ass)
    if cls.kind is Kind.SIMPLY_PERIODIC:
        return Decomposition(cls, _simply_periodic(an, bi))
    return Decomposition(cls, describe_aperiodic(an))


def verify(t: TileAssemblySystem, description: ComplexityAssembly | SemilinearDescription,
           w: Window, margin: int = DECOMPOSITION_MARGIN) -> int:
    """Check that the description equals the window-terminal assembly on the
    inner window; returns the number of tiles compared."""
    inner = w.inner(margin)
    alpha = grow_trace(t, w).assembly
    got = evaluate(description, inner)
    expected = {p: ty for p, ty in alpha.items() if p in inner}
    names_got = {p: ty.name for p, ty in got.items()}
    names_expected = {p: ty.name for p, ty in expected.items()}
    if names_got != names_expected:
        for p in sorted(set(names_got) | set(names_expected), key=lambda q: (q[1], q[0])):
            if names_got.get(p) != names_expected.get(p):
                raise VerificationFailed(
                    f"description disagrees with growth at {p}: expected "
                    f"{names_expected.get(p)}, described {names_got.get(p)}",
                    position=p, expected=names_expected.get(p), found=names_got.get(p))
    return len(expected)
