"""Numba-compiled twins of the kernels in ``_kernels_numpy``.

Importing this module requires numba; ``backends`` guards the import and
falls back to the numpy path when it is unavailable or disabled.
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def categorical_counts(cum, u, nbins):
    counts = np.zeros(nbins, dtype=np.int64)
    for j in range(u.shape[0]):
        # smallest i with cum[i] > u[j], matching searchsorted side="right"
        lo, hi = 0, nbins
        while lo < hi:
            mid = (lo + hi) // 2
            if cum[mid] <= u[j]:
                lo = mid + 1
            else:
                hi = mid
        if lo >= nbins:
            lo = nbins - 1
        counts[lo] += 1
    return counts


@njit(cache=True)
def digit_parity_signs(dim, eta, marked_mask):
    size = dim**eta
    signs = np.empty(size, dtype=np.float64)
    for idx in range(size):
        x = idx
        hits = 0
        for _ in range(eta):
            if marked_mask[x % dim]:
                hits += 1
            x //= dim
        signs[idx] = -1.0 if hits & 1 else 1.0
    return signs


@njit(cache=True)
def reflect_about_axis_means(amps, dim, eta):
    out = amps.copy()
    for axis in range(eta):
        pre = dim**axis
        post = dim ** (eta - 1 - axis)
        for p in range(pre):
            base = p * dim * post
            for q in range(post):
                total = 0.0 + 0.0j
                for i in range(dim):
                    total += out[base + i * post + q]
                twice_mean = 2.0 * total / dim
                for i in range(dim):
                    pos = base + i * post + q
                    out[pos] = twice_mean - out[pos]
    return out
