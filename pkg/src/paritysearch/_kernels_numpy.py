"""Pure-numpy implementations of the hot kernels.

These are the reference semantics; the numba twins in ``_kernels_numba``
must produce identical counts/signs and agree on float results to ~1e-15.
"""

from __future__ import annotations

import numpy as np


def categorical_counts(cum: np.ndarray, u: np.ndarray, nbins: int) -> np.ndarray:
    """Tally inverse-CDF draws: bin i is the smallest index with cum[i] > u.

    ``cum`` is the inclusive cumulative sum of a probability vector; draws
    landing at or beyond cum[-1] (float roundoff) fall into the last bin.
    """
    idx = np.searchsorted(cum, u, side="right")
    np.minimum(idx, nbins - 1, out=idx)
    return np.bincount(idx, minlength=nbins).astype(np.int64)


def digit_parity_signs(dim: int, eta: int, marked_mask: np.ndarray) -> np.ndarray:
    """Sign vector over all dim**eta basis indices.

    Index digits are base-``dim``, digit 0 most significant.  The sign is -1
    exactly when an odd number of digits lie in the marked set.
    """
    size = dim**eta
    idx = np.arange(size, dtype=np.int64)
    parity = np.zeros(size, dtype=np.int64)
    mask = marked_mask.astype(np.int64)
    for _ in range(eta):
        parity += mask[idx % dim]
        idx //= dim
    return np.where(parity & 1, -1.0, 1.0)


def reflect_about_axis_means(amps: np.ndarray, dim: int, eta: int) -> np.ndarray:
    """Map each amplitude to 2*mean - amp along every base-``dim`` digit axis."""
    out = amps
    for axis in range(eta):
        pre = dim**axis
        post = dim ** (eta - 1 - axis)
        cube = out.reshape(pre, dim, post)
        out = (2.0 * cube.mean(axis=1, keepdims=True) - cube).reshape(-1)
    return out
