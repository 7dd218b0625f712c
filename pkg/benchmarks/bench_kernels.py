"""Time the compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat N] [--seed S]

Each row runs the same inputs through both modules and reports the best
wall time over N repeats. The end-to-end row scores a synthetic corpus in
two subprocesses, one with DIARSCORE_PURE_PYTHON=1.
"""

from __future__ import annotations

import argparse
import os
import subprocess
import sys
import timeit

import numpy as np

from diarscore import _pykernels

try:
    from diarscore import _kernels
except ImportError:
    _kernels = None


def random_timeline(rng, n, span):
    starts = np.sort(rng.integers(0, span, size=n)).astype(np.int64)
    ends = starts + rng.integers(1, span // n + 1, size=n)
    return _pykernels.merge(starts, ends, 0)


def cases(rng):
    a = random_timeline(rng, 20_000, 10**9)
    b = random_timeline(rng, 20_000, 10**9)
    raw_s = rng.integers(0, 10**9, size=50_000).astype(np.int64)
    raw_e = raw_s + rng.integers(1, 100_000, size=50_000)
    order = np.argsort(raw_s, kind="stable")
    raw_s, raw_e = raw_s[order], raw_e[order]

    n_spk = 8
    ref = [random_timeline(rng, 2_000, 10**8) for _ in range(n_spk)]
    sys = [random_timeline(rng, 2_000, 10**8) for _ in range(n_spk)]

    def flatten(tls):
        s = np.concatenate([t[0] for t in tls])
        e = np.concatenate([t[1] for t in tls])
        k = np.concatenate([np.full(len(t[0]), i, dtype=np.int64) for i, t in enumerate(tls)])
        return s, e, k

    rs, re_, rk = flatten(ref)
    ss, se, sk = flatten(sys)
    r2s = np.arange(n_spk, dtype=np.int64)
    s2r = np.arange(n_spk, dtype=np.int64)
    w = rng.integers(0, 10**7, size=(60, 60)).astype(np.int64)

    return {
        "merge 50k raw": lambda k: k.merge(raw_s, raw_e, 500),
        "intersect 20k x 20k": lambda k: k.intersect(a[0], a[1], b[0], b[1]),
        "subtract 20k - 20k": lambda k: k.subtract(a[0], a[1], b[0], b[1]),
        "intersection_length": lambda k: k.intersection_length(a[0], a[1], b[0], b[1]),
        "der_sweep 8x8 spk, 32k turns": lambda k: k.der_sweep(rs, re_, rk, ss, se, sk, r2s, s2r),
        "linear_assignment 60x60": lambda k: k.linear_assignment(w),
    }


CORPUS_SCRIPT = """
import time, numpy as np
from diarscore import BACKEND
from diarscore.formats import Turn
from diarscore.scoring import score_corpus
rng = np.random.default_rng({seed})
ref, sys = [], []
for f in range(20):
    for side, out, n in (("r", ref, 4), ("s", sys, 6)):
        for k in range(n):
            for on in np.sort(rng.integers(0, 6_000_000, size=60)):
                out.append(Turn(f"f{{f}}", int(on), int(rng.integers(1_000, 40_000)), f"{{side}}{{k}}"))
t = time.perf_counter()
score_corpus(ref, sys, jobs=1)
print(BACKEND, time.perf_counter() - t)
"""


def corpus_time(pure: bool, seed: int) -> tuple[str, float]:
    env = dict(os.environ)
    env.pop("DIARSCORE_PURE_PYTHON", None)
    if pure:
        env["DIARSCORE_PURE_PYTHON"] = "1"
    out = subprocess.run(
        [sys.executable, "-c", CORPUS_SCRIPT.format(seed=seed)], env=env, capture_output=True, text=True, check=True
    ).stdout.split()
    return out[0], float(out[1])


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args(argv)

    if _kernels is None:
        print("compiled kernels are not built; run `python3 setup.py build_ext --inplace` first")
        return 1

    rng = np.random.default_rng(args.seed)
    print(f"{'kernel':32s} {'python (ms)':>12s} {'cython (ms)':>12s} {'speedup':>8s}")
    for name, fn in cases(rng).items():
        py = min(timeit.repeat(lambda: fn(_pykernels), number=1, repeat=args.repeat))
        cy = min(timeit.repeat(lambda: fn(_kernels), number=1, repeat=args.repeat))
        print(f"{name:32s} {py * 1e3:12.2f} {cy * 1e3:12.2f} {py / cy:7.1f}x")

    _, py = corpus_time(True, args.seed)
    backend, cy = corpus_time(False, args.seed)
    print(f"{'score_corpus 20 files (' + backend + ')':32s} {py * 1e3:12.2f} {cy * 1e3:12.2f} {py / cy:7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
