"""The partial-intersection graph X_{t,k,ell} on (k, ell)-partitions.

Two partitions are adjacent when every block of one meets every block of the
other in fewer than ``t`` elements.  With ``t = 2`` this is X_{k,ell}.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import factorial
from typing import Iterable, TextIO

import numpy as np

from ._accel import kernels
from .errors import BudgetExceeded, EkrError
from .partitions import PartitionFamily, UniformPartition, VertexSet, vertex_set
from .tables import count_adjacency_tables, meet_table

DENSE_CAP = 20000


def _check_t(k: int, t: int) -> None:
    if not 2 <= t <= k:
        raise EkrError(f"threshold t={t} must satisfy 2 <= t <= k={k}")


def are_adjacent(p: UniformPartition, q: UniformPartition, t: int = 2) -> bool:
    _check_t(p.k, t)
    return meet_table(p, q).max_entry() < t


def degree(k: int, ell: int, t: int = 2, method: str = "formula", budget: int | None = None) -> int:
    """Regular degree of X_{t,k,ell}.

    ``formula`` uses d = k!^ell / ell! * |M_{k,ell}| and needs ``t == 2``;
    ``enumeration`` counts the neighbours of the identity partition.
    """
    _check_t(k, t)
    if method == "formula":
        if t != 2:
            raise EkrError("the table-count degree formula only covers t = 2")
        top = factorial(k) ** ell * count_adjacency_tables(k, ell)
        d, rem = divmod(top, factorial(ell))
        if rem:
            raise EkrError(f"degree formula gave a non-integer at ({k},{ell})")
        return d
    if method == "enumeration":
        vs = vertex_set(k, ell, budget)
        base = UniformPartition.identity(k, ell).labels()
        return int(kernels.adjacent_to(base, vs.labels, ell, t).sum())
    raise EkrError(f"unknown degree method {method!r}")


def _family_labels(family: PartitionFamily) -> np.ndarray:
    return np.array([p.labels() for p in family.members], dtype=np.int8).reshape(len(family), -1)


def is_coclique(family: PartitionFamily, t: int = 2) -> bool:
    """True when no two members are adjacent (the family is partially t-intersecting)."""
    _check_t(family.k, t)
    labels = _family_labels(family)
    for i in range(len(family) - 1):
        if kernels.adjacent_to(labels[i], labels[i + 1:], family.ell, t).any():
            return False
    return True


def is_clique(family: PartitionFamily | Iterable[UniformPartition], t: int = 2) -> bool:
    """True when every two members are adjacent; repeated members make it False."""
    members = tuple(family.members if isinstance(family, PartitionFamily) else family)
    if not members:
        return True
    _check_t(members[0].k, t)
    for p, q in combinations(members, 2):
        if p == q or not are_adjacent(p, q, t):
            return False
    return True


@dataclass
class GraphHandle:
    """Materialized X_{t,k,ell}: canonical vertex indexing plus packed adjacency bits."""

    k: int
    ell: int
    t: int
    vertices: VertexSet
    bits: np.ndarray  # (v, ceil(v/8)) uint8, little bit order

    @property
    def v(self) -> int:
        return self.vertices.u

    def row(self, i: int) -> np.ndarray:
        return np.unpackbits(self.bits[i], count=self.v, bitorder="little").astype(bool)

    def rows(self, idx: np.ndarray) -> np.ndarray:
        return np.unpackbits(self.bits[idx], axis=1, count=self.v, bitorder="little").astype(bool)

    def neighbors(self, i: int) -> np.ndarray:
        return np.nonzero(self.row(i))[0]

    def degrees(self) -> np.ndarray:
        table = np.unpackbits(np.arange(256, dtype=np.uint8)[:, None], axis=1).sum(axis=1)
        return table[self.bits].sum(axis=1)

    @property
    def degree(self) -> int:
        degs = self.degrees()
        if degs.size and (degs != degs[0]).any():
            raise EkrError("graph is not regular")
        return int(degs[0]) if degs.size else 0

    def edge_count(self) -> int:
        return int(self.degrees().sum()) // 2

    def adjacency_matrix(self, dtype=np.float64) -> np.ndarray:
        return np.unpackbits(self.bits, axis=1, count=self.v, bitorder="little").astype(dtype)

    def cell_counts(self, cell_of: np.ndarray, ncells: int, batch: int = 2048) -> np.ndarray:
        """Per-vertex neighbour counts into each cell, shape (v, ncells)."""
        onehot = np.zeros((self.v, ncells), dtype=np.int32)
        onehot[np.arange(self.v), cell_of] = 1
        out = np.empty((self.v, ncells), dtype=np.int64)
        for lo in range(0, self.v, batch):
            idx = np.arange(lo, min(lo + batch, self.v))
            out[idx] = self.rows(idx).astype(np.int32) @ onehot
        return out

    def write_edges(self, fh: TextIO) -> None:
        """Edge list of vertex-index pairs ``i j`` with i < j, ascending."""
        for i in range(self.v):
            for j in self.neighbors(i):
                if j > i:
                    fh.write(f"{i} {j}\n")


def build_dense(k: int, ell: int, t: int = 2, cap: int = DENSE_CAP) -> GraphHandle:
    _check_t(k, t)
    vs = vertex_set(k, ell, max(cap, 1))
    if vs.u > cap:
        raise BudgetExceeded(f"v = {vs.u} exceeds the dense cap {cap}")
    bits = kernels.dense_adjacency(vs.labels, ell, t)
    return GraphHandle(k, ell, t, vs, bits)
