"""Benchmark the numba kernels against the pure-numpy fallback.

Run: python benchmarks/bench_kernels.py
"""

from __future__ import annotations

import time

import numpy as np

from tableguess import _kernels


def _time(fn, n_warmup: int = 1, n_runs: int = 5) -> tuple[float, float]:
    for _ in range(n_warmup):
        fn()
    times = []
    for _ in range(n_runs):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return float(np.mean(times)) * 1000, float(np.std(times)) * 1000


def bench(label: str, numba_fn, numpy_fn) -> None:
    if not _kernels.HAS_NUMBA:
        print(f"{label}: numba not available, timing numpy only")
        mean_np, std_np = _time(numpy_fn)
        print(f"  numpy: {mean_np:8.2f} +- {std_np:.2f} ms")
        return
    mean_nb, std_nb = _time(numba_fn)
    mean_np, std_np = _time(numpy_fn)
    print(label)
    print(f"  numba: {mean_nb:8.2f} +- {std_nb:.2f} ms")
    print(f"  numpy: {mean_np:8.2f} +- {std_np:.2f} ms")
    if mean_nb > 0:
        print(f"  speedup: {mean_np / mean_nb:.1f}x")


def main() -> None:
    n, samples, seed = 20, 1_000_000, 42
    h = _kernels.seed_hash(seed)
    check_nb = None
    if _kernels.HAS_NUMBA:
        moments = _kernels._mc_moments_numba(n, samples, np.uint64(h))
        check_nb = tuple(int(v) for v in moments)
    check_np = _kernels._mc_moments_numpy(n, samples, h)
    if check_nb is not None and check_nb != check_np:
        raise AssertionError(f"backends disagree: {check_nb} vs {check_np}")
    print(f"monte carlo moments identical across backends: {check_np}")
    print()

    bench(
        f"random-guess sampling (n={n}, samples={samples:,})",
        lambda: _kernels._mc_moments_numba(n, samples, np.uint64(h)),
        lambda: _kernels._mc_moments_numpy(n, samples, h),
    )
    print()
    bench(
        "score distribution by full enumeration (n=9, 362,880 permutations)",
        lambda: _kernels._dist_counts_numba(9),
        lambda: _kernels._dist_counts_numpy(9),
    )


if __name__ == "__main__":
    main()
