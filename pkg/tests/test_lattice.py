"""Hermite bases, residues and lattice point counts."""

from __future__ import annotations

import pytest
from hypothesis import assume, given, strategies as st

from tilepump.errors import Collinear
from tilepump.lattice import (
    collinear,
    det,
    extend_basis,
    hermite_basis,
    lattice_basis,
    longest_uv_self_avoiding,
    parallelogram_point_count,
    residue,
)

small = st.integers(-6, 6)
vec = st.tuples(small, small)


def _in_lattice(p, basis):
    a, b, c = basis
    if p[0] % a:
        return False
    k = p[0] // a
    return (p[1] - k * b) % c == 0


@given(vec, vec)
def test_hermite_basis_spans_the_same_lattice(u, v):
    assume(not collinear(u, v))
    a, b, c = hermite_basis(u, v)
    assert a > 0 and c > 0 and 0 <= b < c
    assert a * c == abs(det(u, v))
    assert _in_lattice(u, (a, b, c)) and _in_lattice(v, (a, b, c))


@given(vec, vec, st.tuples(st.integers(-20, 20), st.integers(-20, 20)), small, small)
def test_residue_is_invariant_under_lattice_shifts(u, v, p, k, m):
    assume(not collinear(u, v))
    basis = hermite_basis(u, v)
    q = (p[0] + k * u[0] + m * v[0], p[1] + k * u[1] + m * v[1])
    assert residue(p, basis) == residue(q, basis)
    assert 0 <= residue(p, basis) < basis[0] * basis[2]


@given(vec, vec, vec)
def test_extend_basis_contains_everything(u, v, d):
    assume(not collinear(u, v))
    basis = extend_basis(hermite_basis(u, v), d)
    for w in (u, v, d):
        assert _in_lattice(w, basis)


def test_lattice_basis():
    assert lattice_basis([(2, 0), (0, 2), (1, 1)]) == (1, 1, 2)
    with pytest.raises(Collinear):
        lattice_basis([(1, 1), (2, 2)])
    with pytest.raises(Collinear):
        hermite_basis((1, 2), (2, 4))


def test_parallelogram_counts():
    assert parallelogram_point_count((1, 0), (0, 1)) == 4
    assert parallelogram_point_count((2, 0), (0, 3)) == 12
    assert parallelogram_point_count((1, 1), (1, -1)) == 5


def test_longest_uv_self_avoiding():
    assert longest_uv_self_avoiding((1, 0), (0, 1)) == 1
    assert longest_uv_self_avoiding((2, 0), (0, 2)) == 4
    assert longest_uv_self_avoiding((3, 0), (0, 3), limit=5) == 5
