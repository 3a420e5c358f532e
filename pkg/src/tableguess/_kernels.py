"""Hot numeric kernels: random-permutation sampling and full enumeration.

Two interchangeable backends live here. The default is numba (``@njit``,
compiled once and cached on disk); a pure-numpy fallback covers machines
without numba. Selection is per call via the ``TABLEGUESS_BACKEND``
environment variable (``numba`` | ``numpy``; unset/``auto`` picks numba
when available).

Both backends must produce bit-identical results. Randomness is therefore
counter-based: the value consumed at shuffle step ``i`` of sample ``s`` is a
SplitMix64-style hash of ``(seed, s, i, retry)``, so results cannot depend
on chunk size, vectorisation order, or thread count. Bounded draws use
modulo with rejection, which keeps the shuffle exactly uniform.
"""

from __future__ import annotations

import itertools
import os

import numpy as np

BACKEND_ENV = "TABLEGUESS_BACKEND"

_MASK = (1 << 64) - 1
_M1_INT = 0xBF58476D1CE4E5B9
_M2_INT = 0x94D049BB133111EB
_SAMPLE_STRIDE_INT = 0x9E3779B97F4A7C15
_STEP_STRIDE_INT = 0xC2B2AE3D27D4EB4F
_SEED_SALT = 0x8AD64C65E2D4B97F

# uint64 module-level constants: numba freezes these with the right dtype,
# which sidesteps its int-literal width limits inside jitted code.
_M1 = np.uint64(_M1_INT)
_M2 = np.uint64(_M2_INT)
_SAMPLE_STRIDE = np.uint64(_SAMPLE_STRIDE_INT)
_STEP_STRIDE = np.uint64(_STEP_STRIDE_INT)
_S30 = np.uint64(30)
_S27 = np.uint64(27)
_S31 = np.uint64(31)
_U0 = np.uint64(0)
_U1 = np.uint64(1)
_MAXU = np.uint64(_MASK)

try:
    from numba import njit

    HAS_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    HAS_NUMBA = False


def active_backend() -> str:
    """Resolve the backend name currently selected by the environment."""
    value = os.environ.get(BACKEND_ENV, "").strip().lower()
    if value in ("", "auto"):
        return "numba" if HAS_NUMBA else "numpy"
    if value == "numpy":
        return "numpy"
    if value == "numba":
        if not HAS_NUMBA:
            raise RuntimeError(
                f"{BACKEND_ENV}=numba requested but numba is not installed"
            )
        return "numba"
    raise ValueError(f"unsupported {BACKEND_ENV} value: {value!r}")


def _mix64_int(z: int) -> int:
    z &= _MASK
    z = ((z ^ (z >> 30)) * _M1_INT) & _MASK
    z = ((z ^ (z >> 27)) * _M2_INT) & _MASK
    return z ^ (z >> 31)


def seed_hash(seed: int) -> int:
    """Condense a user seed into the 64-bit state both backends start from."""
    return _mix64_int((int(seed) & _MASK) ^ _SEED_SALT)


def _mix64_np(z: np.ndarray) -> np.ndarray:
    z = (z ^ (z >> _S30)) * _M1
    z = (z ^ (z >> _S27)) * _M2
    return z ^ (z >> _S31)


def _mc_moments_numpy(
    n: int, samples: int, h: int, chunk: int = 1 << 15
) -> tuple[int, int, int, int]:
    idx = np.arange(n, dtype=np.int64)
    rows_full = np.arange(chunk)
    total = 0
    total_sq = 0
    lo: int | None = None
    hi: int | None = None
    for start in range(0, samples, chunk):
        m = min(chunk, samples - start)
        sample_ids = np.arange(start, start + m, dtype=np.uint64)
        base = _mix64_np(np.uint64(h) ^ (sample_ids * _SAMPLE_STRIDE))
        perm = np.tile(idx, (m, 1))
        rows = rows_full[:m]
        for i in range(n - 1, 0, -1):
            bound = i + 1
            step = np.uint64((i * _STEP_STRIDE_INT) & _MASK)
            u = _mix64_np(base ^ step)
            rem = (1 << 64) % bound
            if rem:
                threshold = np.uint64((1 << 64) - rem)
                retry = 0
                while True:
                    bad = u >= threshold
                    if not bad.any():
                        break
                    retry += 1
                    u = np.where(bad, _mix64_np(base ^ step ^ np.uint64(retry)), u)
            j = (u % np.uint64(bound)).astype(np.int64)
            vi = perm[rows, i]
            vj = perm[rows, j]
            perm[rows, i] = vj
            perm[rows, j] = vi
        scores = np.abs(perm - idx).sum(axis=1)
        total += int(scores.sum())
        total_sq += int((scores * scores).sum())
        cmin = int(scores.min())
        cmax = int(scores.max())
        lo = cmin if lo is None else min(lo, cmin)
        hi = cmax if hi is None else max(hi, cmax)
    assert lo is not None and hi is not None
    return total, total_sq, lo, hi


def _dist_counts_numpy(n: int, chunk: int = 40320) -> np.ndarray:
    counts = np.zeros(n * n // 2 + 1, dtype=np.int64)
    idx = np.arange(n, dtype=np.int64)
    perms = itertools.permutations(range(n))
    while True:
        block = list(itertools.islice(perms, chunk))
        if not block:
            break
        arr = np.array(block, dtype=np.int64)
        scores = np.abs(arr - idx).sum(axis=1)
        counts += np.bincount(scores, minlength=counts.size)
    return counts


if HAS_NUMBA:

    @njit(cache=True)
    def _mix64_u64(z):
        z = (z ^ (z >> _S30)) * _M1
        z = (z ^ (z >> _S27)) * _M2
        return z ^ (z >> _S31)

    @njit(cache=True)
    def _mc_moments_numba(n, samples, h):
        perm = np.empty(n, np.int64)
        total = np.int64(0)
        total_sq = np.int64(0)
        lo = np.int64(1) << np.int64(62)
        hi = np.int64(-1)
        for s in range(samples):
            base = _mix64_u64(h ^ (np.uint64(s) * _SAMPLE_STRIDE))
            for k in range(n):
                perm[k] = k
            for i in range(n - 1, 0, -1):
                bound = np.uint64(i + 1)
                step = np.uint64(i) * _STEP_STRIDE
                u = _mix64_u64(base ^ step)
                rem = (_MAXU % bound + _U1) % bound
                if rem != _U0:
                    threshold = _U0 - rem
                    retry = _U1
                    while u >= threshold:
                        u = _mix64_u64(base ^ step ^ retry)
                        retry += _U1
                j = np.int64(u % bound)
                tmp = perm[i]
                perm[i] = perm[j]
                perm[j] = tmp
            score = np.int64(0)
            for k in range(n):
                d = perm[k] - k
                score += d if d >= 0 else -d
            total += score
            total_sq += score * score
            if score < lo:
                lo = score
            if score > hi:
                hi = score
        return total, total_sq, lo, hi

    @njit(cache=True)
    def _dist_counts_numba(n):
        counts = np.zeros(n * n // 2 + 1, np.int64)
        a = np.arange(n)
        while True:
            score = 0
            for k in range(n):
                d = a[k] - k
                score += d if d >= 0 else -d
            counts[score] += 1
            # advance to the lexicographic successor; stop after the last one
            i = n - 2
            while i >= 0 and a[i] >= a[i + 1]:
                i -= 1
            if i < 0:
                break
            j = n - 1
            while a[j] <= a[i]:
                j -= 1
            a[i], a[j] = a[j], a[i]
            lo, hi = i + 1, n - 1
            while lo < hi:
                a[lo], a[hi] = a[hi], a[lo]
                lo += 1
                hi -= 1
        return counts


def mc_score_moments(n: int, samples: int, seed: int) -> tuple[int, int, int, int]:
    """Exact (sum, sum of squares, min, max) of the footrule score over
    ``samples`` uniform random permutations of size ``n``.

    Bit-identical for a fixed (n, samples, seed) on either backend.
    """
    h = seed_hash(seed)
    if active_backend() == "numba":
        total, total_sq, lo, hi = _mc_moments_numba(n, samples, np.uint64(h))
        return int(total), int(total_sq), int(lo), int(hi)
    return _mc_moments_numpy(n, samples, h)


def score_distribution_counts(n: int) -> np.ndarray:
    """Footrule score histogram over all n! permutations.

    Index s holds the number of permutations with score s; odd indices stay 0.
    """
    if active_backend() == "numba":
        return _dist_counts_numba(n)
    return _dist_counts_numpy(n)
