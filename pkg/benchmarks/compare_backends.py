"""Time the compiled kernels against the pure-Python (numpy) fallback.

Runs the hot inner operations — sin/cos feature expansion and the four
pool score sweeps — on identical inputs through both backends, checks
they agree, and prints a speedup table.

Usage:  python benchmarks/compare_backends.py [--pool 4000] [--rf-dim 200]
"""

import argparse
import time

import numpy as np

from mkal import backends
from mkal import _kernels_py


def _load_compiled():
    try:
        from mkal import _kernels
    except ImportError:
        return None
    return _kernels


def bench(fn, args, repeats):
    best = np.inf
    for _ in range(repeats):
        start = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - start)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--pool", type=int, default=4000, help="pool rows")
    parser.add_argument("--rf-dim", type=int, default=200, help="random features D")
    parser.add_argument("--kernels", type=int, default=10, help="ensemble size P")
    parser.add_argument("--repeats", type=int, default=5, help="timing repeats (best-of)")
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    compiled = _load_compiled()
    if compiled is None:
        print("compiled backend not built (install without MKAL_NO_EXT to compare)")
        return

    rng = np.random.default_rng(args.seed)
    proj = np.ascontiguousarray(rng.normal(size=(args.pool, args.rf_dim)))
    preds = np.ascontiguousarray(rng.normal(size=(args.pool, args.kernels)))
    w = rng.random(args.kernels)
    w /= w.sum()
    combined = np.ascontiguousarray(preds @ w)

    cases = [
        ("sincos_features", (proj,)),
        ("ekd_scores", (preds, w)),
        ("ekl_scores", (preds, w)),
        ("qbc_scores", (preds,)),
        ("emc_scores", (preds, combined)),
    ]

    print(f"active backend: {backends.BACKEND}")
    print(f"pool={args.pool}  D={args.rf_dim}  P={args.kernels}  best of {args.repeats}")
    print(f"{'operation':<18}{'python (ms)':>14}{'compiled (ms)':>16}{'speedup':>10}")
    for name, case_args in cases:
        py_fn = getattr(_kernels_py, name)
        c_fn = getattr(compiled, name)
        np.testing.assert_allclose(py_fn(*case_args), c_fn(*case_args),
                                   rtol=1e-10, atol=1e-12)
        t_py = bench(py_fn, case_args, args.repeats)
        t_c = bench(c_fn, case_args, args.repeats)
        print(f"{name:<18}{t_py * 1e3:>14.3f}{t_c * 1e3:>16.3f}{t_py / t_c:>10.2f}x")


if __name__ == "__main__":
    main()
