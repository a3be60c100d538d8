"""Matrix permanents.

``permanent_naive`` sums over all ``k!`` permutations and serves as the
reference. ``permanent_ryser`` uses Ryser's inclusion-exclusion formula with a
binary-reflected Gray code so each step updates the row sums by one column.
"""
from __future__ import annotations

from itertools import permutations

import numpy as np

from .errors import DomainError, ResourceError

NAIVE_MAX = 8
RYSER_MAX = 12


def _square(m):
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DomainError(f"permanent needs a square matrix, got shape {m.shape}")
    return m


def permanent_naive(m):
    m = _square(m)
    k = m.shape[0]
    if k > NAIVE_MAX:
        raise ResourceError(f"naive permanent limited to k <= {NAIVE_MAX}, got {k}")
    rows = np.arange(k)
    return sum(np.prod(m[rows, list(p)]) for p in permutations(range(k)))


def permanent_ryser(m):
    """Permanent by Ryser's formula in Gray-code order, ``O(2**k * k)``.

    Parameters
    ----------
    m : array_like, shape (k, k)

    Returns
    -------
    float or complex
        Exact for integer input whose partial sums fit in a double.

    Raises
    ------
    ResourceError
        If ``k > 12``.
    """
    m = _square(m)
    k = m.shape[0]
    if k > RYSER_MAX:
        raise ResourceError(f"Ryser permanent limited to k <= {RYSER_MAX}, got {k}")
    if k == 0:
        return 1.0
    dtype = np.result_type(m.dtype, float)
    rowsums = np.zeros(k, dtype=dtype)
    total = np.zeros((), dtype=dtype)
    in_subset = np.zeros(k, dtype=bool)
    prev = 0
    for i in range(1, 2 ** k):
        gray = i ^ (i >> 1)
        col = (gray ^ prev).bit_length() - 1
        prev = gray
        if in_subset[col]:
            rowsums -= m[:, col]
        else:
            rowsums += m[:, col]
        in_subset[col] = not in_subset[col]
        size = bin(gray).count("1")
        term = np.prod(rowsums)
        total = total + term if (k - size) % 2 == 0 else total - term
    return total.item()


def permanent(m):
    return permanent_ryser(m)


def _gray_subsets(k):
    """Column-membership masks of all nonempty subsets in Gray-code order."""
    masks = np.zeros((2 ** k - 1, k), dtype=bool)
    for i in range(1, 2 ** k):
        g = i ^ (i >> 1)
        masks[i - 1] = [(g >> c) & 1 for c in range(k)]
    return masks


def permanent_batch(mats):
    """Ryser permanents of a stack of ``(N, k, k)`` matrices, vectorized over N."""
    mats = np.asarray(mats)
    if mats.ndim != 3 or mats.shape[1] != mats.shape[2]:
        raise DomainError(f"expected shape (N, k, k), got {mats.shape}")
    k = mats.shape[1]
    if k > RYSER_MAX:
        raise ResourceError(f"Ryser permanent limited to k <= {RYSER_MAX}, got {k}")
    masks = _gray_subsets(k)
    signs = np.where((k - masks.sum(axis=1)) % 2 == 0, 1.0, -1.0)
    rowsums = np.einsum("nij,sj->nsi", mats.astype(float), masks.astype(float))
    return np.prod(rowsums, axis=2) @ signs


__all__ = ["permanent", "permanent_naive", "permanent_ryser", "permanent_batch"]
