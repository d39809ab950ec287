"""Two-dimensional integer lattices: Hermite bases, residues and counts."""

from __future__ import annotations

from math import gcd

from tilepump import kernels
from tilepump.errors import Collinear
from tilepump.model import Pos, Vec


def det(u: Vec, v: Vec) -> int:
    return u[0] * v[1] - u[1] * v[0]


def collinear(u: Vec, v: Vec) -> bool:
    return det(u, v) == 0


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def hermite_basis(u: Vec, v: Vec) -> tuple[int, int, int]:
    """Basis ``(a, b), (0, c)`` of the lattice spanned by ``u`` and ``v``.

    ``a, c > 0`` and ``0 <= b < c``; the lattice has index ``a * c`` in Z^2.
    """
    d = det(u, v)
    if d == 0:
        raise Collinear(f"{u} and {v} are collinear")
    g, s, t = _ext_gcd(u[0], v[0])
    if g < 0:
        g, s, t = -g, -s, -t
    a = g
    b0 = s * u[1] + t * v[1]
    c = abs(d) // a
    return a, b0 % c, c


def residue(p: Pos, basis: tuple[int, int, int]) -> int:
    """Index in ``[0, a*c)`` of the class of ``p`` modulo the lattice."""
    a, b, c = basis
    k = p[0] // a
    return (p[0] - k * a) * c + (p[1] - k * b) % c


def parallelogram_point_count(u: Vec, v: Vec) -> int:
    """Lattice points in the closed parallelogram spanned by ``u`` and ``v``.

    By Pick's theorem: area plus half the boundary points plus one.
    """
    boundary = 2 * (gcd(*u) + gcd(*v))
    return abs(det(u, v)) + boundary // 2 + 1


def longest_uv_self_avoiding(u: Vec, v: Vec, limit: int | None = None) -> int:
    """Number of tiles of a longest ``(u, v)``-self-avoiding lattice path.

    Such a path visits pairwise distinct classes modulo the lattice, so the
    search is a depth-first search for a longest simple path on the discrete
    torus; it stops early once ``limit`` (default: the lattice index) is hit.
    """
    a, b, c = hermite_basis(u, v)
    cap = a * c if limit is None else limit
    return int(kernels.longest_residue_path(a, b, c, cap))


def extend_basis(basis: tuple[int, int, int], d: Vec) -> tuple[int, int, int]:
    """Hermite basis of the lattice spanned by ``basis`` and one more vector."""
    a, b, c = basis
    g, s, t = _ext_gcd(a, d[0])
    if g < 0:
        g, s, t = -g, -s, -t
    new_b = s * b + t * d[1]
    kernel_y = (d[0] // g) * b - (a // g) * d[1]
    new_c = gcd(c, kernel_y)
    return g, new_b % new_c, new_c


def lattice_basis(vectors: list[Vec]) -> tuple[int, int, int]:
    """Hermite basis of the lattice spanned by ``vectors`` (full rank)."""
    vectors = [v for v in vectors if v != (0, 0)]
    for k, u in enumerate(vectors):
        for v in vectors[k + 1:]:
            if not collinear(u, v):
                basis = hermite_basis(u, v)
                for d in vectors:
                    basis = extend_basis(basis, d)
                return basis
    raise Collinear("the vectors do not span a full-rank lattice")
