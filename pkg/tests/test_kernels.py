"""The compiled and pure-Python kernels agree exactly."""

from __future__ import annotations

import random

import numpy as np
import pytest

from support import fixture_system, random_simple_curve
from tilepump import kernels
from tilepump.geometry import _scaled
from tilepump.io import FIXTURES

compiled = kernels.compiled_backend
python = kernels.python_backend
needs_compiled = pytest.mark.skipif(compiled is None, reason="compiled extension not built")


def _grow(backend, name, radius):
    t, w = fixture_system(name, radius)
    idx = t._index
    seed = sorted(t.seed.items(), key=lambda kv: (kv[0][1], kv[0][0]))
    return backend.grow(
        idx["glue_ids"], idx["offer_ptr"], idx["offer_types"],
        np.array([p[0] for p, _ in seed], dtype=np.int64),
        np.array([p[1] for p, _ in seed], dtype=np.int64),
        np.array([idx["type_id"][ty] for _, ty in seed], dtype=np.int64),
        w.center[0], w.center[1], w.radius, True,
    )


def test_backend_flag():
    assert kernels.BACKEND in ("cython", "python")
    assert (kernels.BACKEND == "cython") == (compiled is not None)


@needs_compiled
@pytest.mark.parametrize("name", FIXTURES)
def test_grow_agrees(name):
    a, b = _grow(compiled, name, 12), _grow(python, name, 12)
    for x, y in zip(a[:5], b[:5]):
        assert np.array_equal(x, y)
    assert a[5] == b[5]


@needs_compiled
def test_periodic_side_classification_agrees():
    rng = random.Random(11)
    pts = [(x, y) for x in range(-12, 13) for y in range(-12, 13)]
    px = np.array([p[0] for p in pts], dtype=np.int64)
    py = np.array([p[1] for p in pts], dtype=np.int64)
    for _ in range(20):
        c = random_simple_curve(rng, 10)
        bx, by = _scaled(c.block.vertices, 1)
        args = (bx, by, c.direction[0], c.direction[1], px, py)
        assert np.array_equal(compiled.classify_periodic(*args), python.classify_periodic(*args))


@needs_compiled
def test_closed_classification_agrees():
    vx = np.array([0, 4, 4, 2, 2, 0, 0], dtype=np.int64)
    vy = np.array([0, 0, 4, 4, 2, 2, 0], dtype=np.int64)
    px = np.array([x for x in range(-1, 6) for _ in range(-1, 6)], dtype=np.int64)
    py = np.array([y for _ in range(-1, 6) for y in range(-1, 6)], dtype=np.int64)
    assert np.array_equal(compiled.classify_closed(vx, vy, px, py),
                          python.classify_closed(vx, vy, px, py))


@needs_compiled
@pytest.mark.parametrize("basis", [(1, 0, 1), (2, 1, 3), (3, 0, 2), (1, 2, 5), (4, 3, 4)])
def test_longest_residue_path_agrees(basis):
    a, b, c = basis
    assert compiled.longest_residue_path(a, b, c, a * c) == python.longest_residue_path(a, b, c, a * c)
