"""Uniform set partitions: canonical form, counting, enumeration, group action.

Elements are 1-based throughout the public API.  A partition is canonical when
each block is sorted ascending and the blocks are ordered by their minima.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from math import comb, factorial, prod
from typing import Iterator, Sequence

import numpy as np

from .errors import BudgetExceeded, EkrError

DEFAULT_BUDGET = 10**7


def count_partitions(k: int, ell: int) -> int:
    """Number of partitions of ``{1..k*ell}`` into ``ell`` blocks of size ``k``."""
    if k < 1 or ell < 0:
        raise EkrError(f"need k >= 1 and ell >= 0, got k={k}, ell={ell}")
    n = k * ell
    top = prod(comb(n - i * k, k) for i in range(ell))
    return top // factorial(ell)


def check_budget(k: int, ell: int, budget: int | None) -> int:
    u = count_partitions(k, ell)
    cap = DEFAULT_BUDGET if budget is None else budget
    if u > cap:
        raise BudgetExceeded(f"u_{{{k},{ell}}} = {u} exceeds the enumeration budget {cap}")
    return u


@dataclass(frozen=True, order=True)
class UniformPartition:
    """A (k, ell)-partition stored in canonical block order."""

    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        blocks = tuple(sorted(tuple(sorted(b)) for b in self.blocks))
        if not blocks or not blocks[0]:
            raise EkrError("a partition needs at least one nonempty block")
        k = len(blocks[0])
        if any(len(b) != k for b in blocks):
            raise EkrError(f"blocks of unequal size: {blocks}")
        elements = sorted(x for b in blocks for x in b)
        if elements != list(range(1, k * len(blocks) + 1)):
            raise EkrError(f"blocks do not partition 1..{k * len(blocks)}: {blocks}")
        object.__setattr__(self, "blocks", blocks)

    @property
    def k(self) -> int:
        return len(self.blocks[0])

    @property
    def ell(self) -> int:
        return len(self.blocks)

    @property
    def n(self) -> int:
        return self.k * self.ell

    def __str__(self) -> str:
        return "|".join(",".join(map(str, b)) for b in self.blocks)

    @classmethod
    def parse(cls, text: str) -> "UniformPartition":
        """Read the ``1,2,3|4,5,6`` text form."""
        try:
            blocks = [tuple(int(x) for x in part.split(",")) for part in text.strip().split("|")]
        except ValueError as exc:
            raise EkrError(f"malformed partition text {text!r}") from exc
        return cls(tuple(blocks))

    @classmethod
    def identity(cls, k: int, ell: int) -> "UniformPartition":
        return cls(tuple(tuple(range(i * k + 1, (i + 1) * k + 1)) for i in range(ell)))

    def labels(self) -> np.ndarray:
        """Block index of each element (0-based), as an int8 array of length n."""
        out = np.empty(self.n, dtype=np.int8)
        for idx, block in enumerate(self.blocks):
            for x in block:
                out[x - 1] = idx
        return out

    @classmethod
    def from_labels(cls, labels: Sequence[int]) -> "UniformPartition":
        groups: dict[int, list[int]] = {}
        for x, lab in enumerate(labels, start=1):
            groups.setdefault(int(lab), []).append(x)
        return cls(tuple(tuple(g) for g in groups.values()))

    def same_block(self, i: int, j: int) -> bool:
        return any(i in b and j in b for b in self.blocks)


@dataclass(frozen=True)
class PartitionFamily:
    k: int
    ell: int
    members: tuple[UniformPartition, ...]
    label: str = field(default="")

    def __post_init__(self):
        for p in self.members:
            if (p.k, p.ell) != (self.k, self.ell):
                raise EkrError(f"member {p} is not a ({self.k},{self.ell})-partition")
        if len(set(self.members)) != len(self.members):
            raise EkrError("family members must be pairwise distinct")

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)


def enumerate_partitions(k: int, ell: int, budget: int | None = None) -> Iterator[UniformPartition]:
    """Yield every (k, ell)-partition once, lexicographically by canonical block sequence."""
    check_budget(k, ell, budget)

    def rec(remaining: tuple[int, ...], prefix: tuple[tuple[int, ...], ...]):
        if not remaining:
            yield UniformPartition(prefix)
            return
        head, rest = remaining[0], remaining[1:]
        for companions in combinations(rest, k - 1):
            chosen = set(companions)
            yield from rec(tuple(x for x in rest if x not in chosen), prefix + ((head, *companions),))

    yield from rec(tuple(range(1, k * ell + 1)), ())


def _label_matrix(k: int, ell: int) -> np.ndarray:
    # Block b is built for every partial row at once: the smallest unplaced
    # element plus k-1 companions, chosen by rank among the unplaced elements.
    n = k * ell
    labels = np.full((1, n), -1, dtype=np.int8)
    for b in range(ell):
        free = np.nonzero(labels < 0)[1].reshape(labels.shape[0], -1)
        m = free.shape[1]
        ranks = np.array(list(combinations(range(1, m), k - 1)), dtype=np.intp).reshape(-1, k - 1)
        labels = np.repeat(labels, ranks.shape[0], axis=0)
        free = np.repeat(free, ranks.shape[0], axis=0)
        rows = np.arange(labels.shape[0])
        labels[rows, free[:, 0]] = b
        picks = np.tile(ranks, (labels.shape[0] // ranks.shape[0], 1))
        for c in range(k - 1):
            labels[rows, free[rows, picks[:, c]]] = b
    return np.ascontiguousarray(labels)


class VertexSet:
    """All (k, ell)-partitions as a label matrix with code-based index lookup."""

    def __init__(self, k: int, ell: int, budget: int | None = None):
        self.k, self.ell = k, ell
        self.n = k * ell
        self.u = check_budget(k, ell, budget)
        if ell > 1 and self.n * np.log2(ell) >= 63:
            raise BudgetExceeded(f"({k},{ell}) is too large for 64-bit partition codes")
        self.labels = _label_matrix(k, ell)
        from ._accel import kernels

        self.codes = kernels.permuted_codes(self.labels, np.arange(self.n, dtype=np.intp), ell)
        self._order = np.argsort(self.codes, kind="stable")
        self._sorted = self.codes[self._order]

    def __len__(self) -> int:
        return self.u

    def __getitem__(self, idx: int) -> UniformPartition:
        return UniformPartition.from_labels(self.labels[idx])

    def index_of_codes(self, codes: np.ndarray) -> np.ndarray:
        pos = np.searchsorted(self._sorted, codes)
        if np.any(pos >= self.u) or np.any(self._sorted[np.minimum(pos, self.u - 1)] != codes):
            raise EkrError("code does not belong to this vertex set")
        return self._order[pos]

    def index(self, p: UniformPartition) -> int:
        code = 0
        for lab in p.labels():
            code = code * self.ell + int(lab)
        return int(self.index_of_codes(np.array([code], dtype=np.int64))[0])

    def permutation_images(self, sigma: Sequence[int]) -> np.ndarray:
        """Vertex index of ``p^sigma`` for every vertex ``p`` (``sigma`` 1-based)."""
        from ._accel import kernels

        perm = np.asarray(validate_permutation(sigma, self.n), dtype=np.intp) - 1
        return self.index_of_codes(kernels.permuted_codes(self.labels, perm, self.ell))


@lru_cache(maxsize=8)
def vertex_set(k: int, ell: int, budget: int | None = None) -> VertexSet:
    return VertexSet(k, ell, budget)


def validate_permutation(sigma: Sequence[int], n: int) -> tuple[int, ...]:
    sigma = tuple(int(x) for x in sigma)
    if sorted(sigma) != list(range(1, n + 1)):
        raise EkrError(f"not a permutation of 1..{n}: {sigma}")
    return sigma


def compose(pi: Sequence[int], sigma: Sequence[int]) -> tuple[int, ...]:
    """``pi o sigma`` (apply sigma first), both as 1-based image tuples."""
    return tuple(pi[s - 1] for s in sigma)


def apply_permutation(p: UniformPartition, sigma: Sequence[int]) -> UniformPartition:
    """Image of ``p`` under ``sigma``, where ``sigma[x-1]`` is the image of ``x``."""
    sigma = validate_permutation(sigma, p.n)
    return UniformPartition(tuple(tuple(sigma[x - 1] for x in b) for b in p.blocks))


def coclique_size(k: int, ell: int) -> int:
    """|S_{i,j}| = C(k*ell - 2, k - 2) * u_{k, ell-1}."""
    return comb(k * ell - 2, k - 2) * count_partitions(k, ell - 1)


def canonical_coclique(k: int, ell: int, i: int, j: int, budget: int | None = None) -> PartitionFamily:
    """All (k, ell)-partitions with ``i`` and ``j`` in one block."""
    n = k * ell
    if i == j:
        raise EkrError("the canonical coclique needs two distinct elements")
    if not (1 <= i <= n and 1 <= j <= n):
        raise EkrError(f"elements must lie in 1..{n}")
    vs = vertex_set(k, ell, budget)
    rows = np.nonzero(vs.labels[:, i - 1] == vs.labels[:, j - 1])[0]
    members = tuple(vs[r] for r in rows)
    return PartitionFamily(k, ell, members, label=f"S_{{{min(i, j)},{max(i, j)}}}")
