"""Polygonal curves, sides, candidate order and bands."""

from __future__ import annotations

import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from support import random_simple_curve
from tilepump.errors import NotClosed, NotGoodCandidate, PreconditionViolated
from tilepump.geometry import (
    BiInfinitePeriodicCurve,
    Order,
    PolyCurve,
    SideClassification,
    band_positions,
    classify_side,
    classify_sides,
    closed_interior,
    compare_candidates,
    curve_of_candidate,
    interior_of_two_curves,
    sides_of_bipump,
    translate_cover,
)
from tilepump.model import Glue, TileType
from tilepump.paths import Path

G = Glue("g", 1)
X = TileType("X", G, G, G, G)


def flat(y: int) -> BiInfinitePeriodicCurve:
    return BiInfinitePeriodicCurve(PolyCurve(((0, y), (1, y))), (1, 0))


def test_simple_curves():
    assert PolyCurve(((0, 0), (1, 0), (1, 1))).is_simple()
    assert not PolyCurve(((0, 0), (2, 0), (1, 0))).is_simple()
    assert not PolyCurve(((0, 0), (2, 0), (1, 1), (1, -1))).is_simple()
    assert PolyCurve(((0, 0), (1, 0), (1, 1), (0, 1), (0, 0))).closed


def test_sides_of_a_horizontal_line():
    c = flat(0)
    assert classify_side(c, (3, 1)) is SideClassification.STRICT_LEFT
    assert classify_side(c, (-7, 0)) is SideClassification.ON_CURVE
    assert classify_side(c, (2, -4)) is SideClassification.STRICT_RIGHT


def test_rational_vertices():
    c = BiInfinitePeriodicCurve(PolyCurve(((0, 0), (0.5, 1), (1, 0))), (1, 0))
    assert list(classify_sides(c, [(0, 0), (0, 1), (1, -1)])) == [0, 1, -1]


@settings(max_examples=40)
@given(st.integers(0, 10_000))
def test_sides_are_translation_invariant(seed):
    rng = random.Random(seed)
    c = random_simple_curve(rng, 8)
    pts = [(rng.randint(-9, 9), rng.randint(-9, 9)) for _ in range(30)]
    d = c.direction
    moved = [(x + 3 * d[0], y + 3 * d[1]) for x, y in pts]
    assert np.array_equal(classify_sides(c, pts), classify_sides(c, moved))


def test_closed_interior():
    square = PolyCurve(((0, 0), (2, 0), (2, 2), (0, 2), (0, 0)))
    assert len(closed_interior(square)) == 9
    with pytest.raises(NotClosed):
        closed_interior(PolyCurve(((0, 0), (1, 0))))


def test_candidate_order():
    low = Path.of(((x, 0), X) for x in range(3))
    high = low.translate((0, 2))
    assert compare_candidates(high, low) is Order.GREATER
    assert compare_candidates(low, high) is Order.LESS
    assert compare_candidates(low, low) is Order.EQUAL
    up = Path.of(((0, y), X) for y in range(3))
    assert compare_candidates(low, up) is Order.INCOMPARABLE
    left, right = sides_of_bipump(low)
    assert left((0, 5)) and not right((0, 5)) and left((4, 0)) and right((4, 0))
    with pytest.raises(NotGoodCandidate):
        curve_of_candidate(Path.of([((0, 0), X)]))


def test_band_between_two_lines():
    top, bottom = flat(2), flat(-1)
    assert interior_of_two_curves(top, bottom) == {(0, y) for y in range(-1, 3)}
    assert len(band_positions(top, bottom, (0, 4, -5, 5))) == 20
    with pytest.raises(PreconditionViolated):
        interior_of_two_curves(bottom, top)
    cover = translate_cover({(0, 0)}, (1, 0), (-2, 2, 0, 0))
    assert cover == {(x, 0): x for x in range(-2, 3)}
