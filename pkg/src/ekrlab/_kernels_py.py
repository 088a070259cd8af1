"""Pure NumPy implementations of the vertex-set kernels.

Every kernel works on a *label matrix*: row ``r`` describes one partition of
``{0, ..., n-1}`` by giving, for each element, the index of its block in
canonical block order (so every row is a restricted growth string).  The
compiled extension in ``_kernels.pyx`` mirrors these signatures exactly.
"""
from __future__ import annotations

import numpy as np

BACKEND = "python"


def meet_tables(base: np.ndarray, labels: np.ndarray, ell: int) -> np.ndarray:
    """Meet tables of ``base`` against every row of ``labels``, shape (u, ell, ell)."""
    u, n = labels.shape
    cells = base.astype(np.int64)[None, :] * ell + labels.astype(np.int64)
    cells += (np.arange(u, dtype=np.int64) * (ell * ell))[:, None]
    flat = np.bincount(cells.ravel(), minlength=u * ell * ell)
    return flat.astype(np.uint8).reshape(u, ell, ell)


def adjacent_to(base: np.ndarray, labels: np.ndarray, ell: int, t: int) -> np.ndarray:
    """Boolean mask of rows whose meet table with ``base`` has every entry below ``t``."""
    out = np.empty(labels.shape[0], dtype=bool)
    step = 1 << 16
    for lo in range(0, labels.shape[0], step):
        tables = meet_tables(base, labels[lo:lo + step], ell)
        out[lo:lo + step] = tables.reshape(tables.shape[0], -1).max(axis=1) < t
    return out


def dense_adjacency(labels: np.ndarray, ell: int, t: int) -> np.ndarray:
    """Packed adjacency bit-matrix (little bit order), shape (u, ceil(u/8))."""
    u = labels.shape[0]
    rows = np.zeros((u, (u + 7) // 8), dtype=np.uint8)
    for i in range(u):
        rows[i] = np.packbits(adjacent_to(labels[i], labels, ell, t), bitorder="little")
    return rows


def permuted_codes(labels: np.ndarray, perm: np.ndarray, ell: int) -> np.ndarray:
    """Integer codes of the canonical forms of every row after relabelling by ``perm``.

    ``perm[x]`` is the image of element ``x``.  The code of a restricted growth
    string ``s`` is ``sum(s[x] * ell**(n-1-x))``.
    """
    u, n = labels.shape
    moved = np.empty_like(labels)
    moved[:, perm] = labels
    rows = np.arange(u)
    mapping = np.full((u, ell), -1, dtype=np.int64)
    fresh = np.zeros(u, dtype=np.int64)
    codes = np.zeros(u, dtype=np.int64)
    for x in range(n):
        lab = moved[:, x]
        seen = mapping[rows, lab]
        new = seen < 0
        mapping[rows[new], lab[new]] = fresh[new]
        fresh[new] += 1
        codes = codes * ell + mapping[rows, lab]
    return codes
