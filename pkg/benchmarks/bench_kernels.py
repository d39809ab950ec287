"""Compare the compiled and pure-Python kernels on representative inputs.

Run from the repository root: ``python3 benchmarks/bench_kernels.py``.
"""

from __future__ import annotations

import argparse
import random
import sys
import timeit
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "tests"))

import numpy as np  # noqa: E402

from support import fixture_system, random_simple_curve  # noqa: E402
from tilepump import kernels  # noqa: E402
from tilepump.geometry import _scaled  # noqa: E402
from tilepump.lattice import collinear, hermite_basis  # noqa: E402


def grow_case(name: str, radius: int):
    t, w = fixture_system(name, radius)
    idx = t._index
    seed = sorted(t.seed.items(), key=lambda kv: (kv[0][1], kv[0][0]))
    args = (
        idx["glue_ids"], idx["offer_ptr"], idx["offer_types"],
        np.array([p[0] for p, _ in seed], dtype=np.int64),
        np.array([p[1] for p, _ in seed], dtype=np.int64),
        np.array([idx["type_id"][ty] for _, ty in seed], dtype=np.int64),
        w.center[0], w.center[1], w.radius, False,
    )
    return lambda backend: backend.grow(*args)


def sides_case(curves: int, radius: int):
    rng = random.Random(1)
    pts = [(x, y) for x in range(-radius, radius + 1) for y in range(-radius, radius + 1)]
    px = np.array([p[0] for p in pts], dtype=np.int64)
    py = np.array([p[1] for p in pts], dtype=np.int64)
    cases = []
    for _ in range(curves):
        c = random_simple_curve(rng, 12)
        bx, by = _scaled(c.block.vertices, 1)
        cases.append((bx, by, c.direction[0], c.direction[1], px, py))

    def run(backend):
        for args in cases:
            backend.classify_periodic(*args)
    return run


def residue_case():
    values = range(-3, 4)
    vectors = [(a, b) for a in values for b in values if (a, b) != (0, 0)]
    bases = [hermite_basis(u, v) for u in vectors for v in vectors if not collinear(u, v)]

    def run(backend):
        for a, b, c in bases:
            backend.longest_residue_path(a, b, c, a * c)
    return run


CASES = {
    "grow grid r=60": grow_case("grid", 60),
    "grow appendix_c r=40": grow_case("appendix_c", 40),
    "classify_periodic 10 curves 61x61": sides_case(10, 30),
    "longest_residue_path 2112 lattices": residue_case(),
}


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3, help="best of N runs")
    args = parser.parse_args()
    backends = [("python", kernels.python_backend)]
    if kernels.compiled_backend is not None:
        backends.insert(0, ("cython", kernels.compiled_backend))
    else:
        print("compiled extension not available; timing the pure-Python kernels only")
    print(f"{'case':40s}" + "".join(f"{name:>12s}" for name, _ in backends) + "     speedup")
    for label, run in CASES.items():
        times = [min(timeit.repeat(lambda: run(b), number=1, repeat=args.repeat)) for _, b in backends]
        speedup = f"{times[-1] / times[0]:10.1f}x" if len(times) == 2 else ""
        print(f"{label:40s}" + "".join(f"{t:11.4f}s" for t in times) + speedup)
    return 0


if __name__ == "__main__":
    sys.exit(main())
