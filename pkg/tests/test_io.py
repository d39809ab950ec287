"""Tile-set and decomposition documents."""

from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from tilepump.decomposition import LinearSet
from tilepump.errors import DisconnectedSeed, ParseError, UnknownTile
from tilepump.io import (
    FIXTURES,
    DecompositionDocument,
    fixture_text,
    load_fixture,
    parse_decomposition,
    parse_tileset,
    serialize_decomposition,
    serialize_tileset,
    text_digest,
)


@pytest.mark.parametrize("name", FIXTURES)
def test_fixtures_round_trip(name):
    t = load_fixture(name)
    again = parse_tileset(serialize_tileset(t, "round trip"))
    assert again.tile_types == t.tile_types
    assert again.seed == t.seed


def test_comments_and_defaults():
    t = parse_tileset("# header\ntile A E=g:1  # trailing\nseed A 0 0\n")
    (a,) = t.tile_types
    assert a.east.label == "g" and not a.north.active


@pytest.mark.parametrize("text, line", [
    ("tile\n", 1),
    ("tile A Q=g:1\n", 1),
    ("tile A N=g\n", 1),
    ("tile A N=g:x\n", 1),
    ("tile A N=g:-1\n", 1),
    ("tile A\ntile A\n", 2),
    ("tile A\nseed A 0\n", 2),
    ("tile A\nseed A 0 y\n", 2),
    ("bogus\n", 1),
])
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(ParseError) as info:
        parse_tileset(text)
    assert info.value.line == line


def test_seed_validation():
    with pytest.raises(UnknownTile):
        parse_tileset("tile A\nseed B 0 0\n")
    with pytest.raises(DisconnectedSeed):
        parse_tileset("tile A\n")
    with pytest.raises(DisconnectedSeed):
        parse_tileset("tile A\nseed A 0 0\nseed A 2 0\n")
    with pytest.raises(DisconnectedSeed):
        parse_tileset("tile A\nseed A 0 0\nseed A 1 0\n")


def test_unknown_fixture():
    with pytest.raises(KeyError):
        fixture_text("nope")


vec = st.tuples(st.integers(-99, 99), st.integers(-99, 99))


@given(st.lists(st.tuples(vec, vec, vec, st.sampled_from(["A", "B_1", "x.y"])), max_size=5),
       st.lists(vec, max_size=2))
def test_decomposition_documents_round_trip(rows, vectors):
    doc = DecompositionDocument(
        "APERIODIC", tuple(vectors), 25, 64, (3, -4), 6, text_digest("abc"),
        tuple(LinearSet(p, u, v, ty) for p, u, v, ty in rows),
    )
    assert parse_decomposition(serialize_decomposition(doc)) == doc


def test_decomposition_parse_errors():
    with pytest.raises(ParseError):
        parse_decomposition("class=X\n")
    good = "class=X\nwindow=3 bound=4\nprovenance center=(0,0) margin=2 sha256=ab\n"
    assert parse_decomposition(good).radius == 3
    with pytest.raises(ParseError) as info:
        parse_decomposition(good + "linear p=(0,0)\n")
    assert info.value.line == 4
