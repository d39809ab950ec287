"""Pumpings, pumpability search and self-avoidance."""

from __future__ import annotations

import random

import pytest
from hypothesis import given, settings, strategies as st

from support import fixture_system, random_good_candidate
from tilepump.errors import BadIndices, Collinear, NullVector, TypeMismatch
from tilepump.model import Glue, TileType, grow_to_terminal
from tilepump.paths import Path
from tilepump.pumping import (
    Check,
    Domain,
    EventuallyPeriodicPath,
    Verdict,
    bipump,
    check_backward,
    check_forward,
    extract_without_redundancy,
    is_good_candidate,
    is_uv_self_avoiding,
    is_v_self_avoiding,
    is_without_redundancy,
    pump,
    pump_between,
    search_pumpable,
)

G = Glue("g", 1)
X = TileType("X", G, G, G, G)
Y = TileType("Y", G, G, G, G)


def row(types, y=0):
    return Path.of(((k, y), ty) for k, ty in enumerate(types))


def test_pump_indexing():
    e = pump(row([X, Y, X]))
    assert [t.pos for t in e.tiles(0, 5)] == [(k, 0) for k in range(5)]
    assert e[3].ty == Y
    with pytest.raises(IndexError):
        e[-1]
    b = bipump(row([X, Y, X]))
    assert b.domain is Domain.INT and b[-1].pos == (-1, 0)


def test_pump_preconditions():
    with pytest.raises(BadIndices):
        pump(row([X]))
    with pytest.raises(TypeMismatch):
        pump(row([X, Y]))
    with pytest.raises(NullVector):
        EventuallyPeriodicPath((), row([X]).tiles, (0, 0))
    with pytest.raises(BadIndices):
        pump_between(row([X, Y, X]), 2, 1)


@settings(max_examples=50)
@given(st.integers(0, 10_000))
def test_good_candidate_pumpings_repeat(seed):
    p = random_good_candidate(random.Random(seed), 8)
    assert is_good_candidate(p)
    e, n = pump(p), len(p) - 1
    positions = [e[k].pos for k in range(4 * n)]
    assert len(set(positions)) == len(positions)
    for k in range(2 * n):
        assert e[k + n] == e[k].translate(p.vector)


def test_redundancy():
    p = row([X, Y, Y, X])
    assert not is_without_redundancy(p)
    assert extract_without_redundancy(p, 0, 3) == (1, 2)
    assert is_without_redundancy(row([X, Y, X]))


def test_line_is_bi_pumpable():
    t, w = fixture_system("line")
    alpha = grow_to_terminal(t, w)
    p = Path.of(((x, 0), alpha[(x, 0)]) for x in range(0, 4))
    verdict = search_pumpable(t, p, w, alpha=alpha)
    assert verdict.kind is Verdict.BI_PUMPABLE
    assert verdict.witness == (0, 1, (1, 0))


def test_comb_tooth_is_simply_pumpable():
    t, w = fixture_system("comb")
    alpha = grow_to_terminal(t, w)
    p = Path.of(((0, y), alpha[(0, y)]) for y in range(0, 5))
    verdict = search_pumpable(t, p, w, alpha=alpha)
    assert verdict.kind is Verdict.SIMPLY_PUMPABLE
    assert verdict.vector == (0, 1)
    e = pump_between(p, 1, 2)
    assert check_forward(e, alpha, w, 2) is Check.OK
    assert check_backward(e, alpha, w, 2) is Check.FAIL


def test_single_tile_is_not_pumpable():
    t, w = fixture_system("appendix_a")
    alpha = grow_to_terminal(t, w)
    p = Path.of([(next(iter(t.seed)), t.seed[next(iter(t.seed))])])
    assert search_pumpable(t, p, w, alpha=alpha).kind is Verdict.NOT_PUMPABLE_WITHIN_BOUND


def test_self_avoidance():
    t, w = fixture_system("grid")
    alpha = grow_to_terminal(t, w)
    a = alpha[(0, 0)]
    p = Path.of([((0, 0), a), ((1, 0), a)])
    assert is_v_self_avoiding(p, (0, 1), t, w, alpha=alpha)
    assert not is_v_self_avoiding(p, (1, 0), t, w, alpha=alpha)
    assert is_uv_self_avoiding(p, (2, 0), (0, 1))
    assert not is_uv_self_avoiding(p, (1, 0), (0, 1))
    with pytest.raises(Collinear):
        is_uv_self_avoiding(p, (1, 0), (2, 0))
