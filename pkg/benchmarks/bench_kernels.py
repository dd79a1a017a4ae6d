"""Compiled vs pure-Python GF(2) elimination.

    python benchmarks/bench_kernels.py [--repeat N]

Times ``reduce_level`` on random dense matrices and the full Bar-Natan
reduction of a few braid closures, once per backend.  Backends are
swapped by rebinding the kernel module used by ``bnsplit.homology``.
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "tests"))

from braids import braid_pd  # noqa: E402

from bnsplit import _gf2_py, homology  # noqa: E402
from bnsplit.complex import BNComplex  # noqa: E402
from bnsplit.cube import Cube  # noqa: E402
from bnsplit.gf2 import pack_rows  # noqa: E402

try:
    from bnsplit import _gf2_ext
except ImportError:
    _gf2_ext = None

KNOTS = {
    "8_18 (s1 s2^-1)^4": ([1, -2] * 4, 3),
    "T(3,5) (s1 s2)^5": ([1, 2] * 5, 3),
    "(s1 s2^-1)^5": ([1, -2] * 5, 3),
    "(s1 s2^-1 s3)^4": ([1, -2, 3] * 4, 4),
}


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return min(times)


def dense_case(mod, n, seed=0):
    rng = np.random.default_rng(seed)
    rows = [int.from_bytes(rng.bytes((n + 7) // 8), "little") & ((1 << n) - 1) for _ in range(n)]
    mat = pack_rows(rows, n)
    zeros = np.zeros(n, dtype=np.int64)

    def run():
        mod.reduce_level(mat.copy(), zeros, zeros, 0, np.ones(n, np.uint8), np.ones(n, np.uint8))

    return run


original = homology.kernel


def bn_case(mod, bn):
    def run():
        homology.kernel = mod
        try:
            homology.homology_bn(bn)
        finally:
            homology.kernel = original

    return run



def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args(argv)
    backends = [("python", _gf2_py)] + ([("cython", _gf2_ext)] if _gf2_ext else [])
    if _gf2_ext is None:
        print("compiled kernel not built; timing the Python fallback only")
    header = f"{'case':<28}" + "".join(f"{name:>12}" for name, _ in backends)
    if len(backends) == 2:
        header += f"{'speed-up':>10}"
    print(header)

    def row(label, make):
        ts = [best_of(make(mod), args.repeat) for _, mod in backends]
        line = f"{label:<28}" + "".join(f"{t:>11.4f}s" for t in ts)
        if len(ts) == 2:
            line += f"{ts[0] / ts[1]:>9.1f}x"
        print(line)

    for n in (256, 1024, 2048):
        row(f"dense rank {n}x{n}", lambda mod, n=n: dense_case(mod, n))
    for label, (word, strands) in KNOTS.items():
        bn = BNComplex(Cube(braid_pd(word, strands)))
        row(f"BN {label} n={len(word)}", lambda mod, bn=bn: bn_case(mod, bn))
    return 0


if __name__ == "__main__":
    sys.exit(main())
