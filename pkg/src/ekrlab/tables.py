"""Meet tables, their canonical (orbital) labels, and 0-1 tables with line sums k."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product
from math import comb, factorial
from typing import Iterator, Sequence

import mpmath

from .errors import EkrError
from .partitions import UniformPartition

Table = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class MeetTable:
    """Square nonnegative integer table; ``entries[i][j] = |P_i & Q_j|``."""

    entries: Table

    def __post_init__(self):
        entries = tuple(tuple(int(x) for x in row) for row in self.entries)
        ell = len(entries)
        if ell == 0 or any(len(row) != ell for row in entries):
            raise EkrError("a meet table must be a nonempty square table")
        if any(x < 0 for row in entries for x in row):
            raise EkrError("meet table entries must be nonnegative")
        object.__setattr__(self, "entries", entries)

    @property
    def ell(self) -> int:
        return len(self.entries)

    def line_sums(self) -> tuple[set[int], set[int]]:
        rows = {sum(r) for r in self.entries}
        cols = {sum(c) for c in zip(*self.entries)}
        return rows, cols

    def check_margins(self, k: int) -> None:
        rows, cols = self.line_sums()
        if rows != {k} or cols != {k}:
            raise EkrError(f"table {self} does not have all line sums {k}")

    def transpose(self) -> "MeetTable":
        return MeetTable(tuple(zip(*self.entries)))

    def max_entry(self) -> int:
        return max(max(r) for r in self.entries)

    def __str__(self) -> str:
        return ";".join(",".join(map(str, r)) for r in self.entries)

    @classmethod
    def parse(cls, text: str) -> "MeetTable":
        try:
            return cls(tuple(tuple(int(x) for x in row.split(",")) for row in text.strip().split(";")))
        except ValueError as exc:
            raise EkrError(f"malformed table text {text!r}") from exc


@dataclass(frozen=True)
class OrbitalLabel:
    canonical: MeetTable

    def __str__(self) -> str:
        return str(self.canonical)


def meet_table(p: UniformPartition, q: UniformPartition) -> MeetTable:
    if (p.k, p.ell) != (q.k, q.ell):
        raise EkrError(f"shape mismatch: ({p.k},{p.ell}) vs ({q.k},{q.ell})")
    qlab = q.labels()
    ell = p.ell
    rows = []
    for block in p.blocks:
        row = [0] * ell
        for x in block:
            row[qlab[x - 1]] += 1
        rows.append(tuple(row))
    table = MeetTable(tuple(rows))
    table.check_margins(p.k)
    return table


def _sorted_columns(rows: Sequence[tuple[int, ...]]) -> Table:
    # For a fixed row order the lexicographically least column order sorts
    # columns by their top-to-bottom vectors.
    cols = sorted(zip(*rows))
    return tuple(zip(*cols))


def canonical_entries(entries: Table) -> Table:
    """Lexicographically least row-major form over all row and column permutations."""
    ell = len(entries)
    best: list[Table | None] = [None]

    def extend(order: list[int], remaining: list[int]):
        if not remaining:
            cand = _sorted_columns([entries[i] for i in order])
            if best[0] is None or cand < best[0]:
                best[0] = cand
            return
        # Prefix of the final matrix depends only on the chosen rows; rows whose
        # prefix exceeds the incumbent's are dead, ties and improvements survive.
        scored = []
        for i in remaining:
            prefix = _sorted_columns([entries[j] for j in order] + [entries[i]])
            scored.append((prefix, i))
        low = min(s for s, _ in scored)
        if best[0] is not None and low > best[0][: len(order) + 1]:
            return
        for prefix, i in scored:
            if prefix == low:
                extend(order + [i], [j for j in remaining if j != i])

    extend([], list(range(ell)))
    assert best[0] is not None
    return best[0]


def canonicalize(m: MeetTable) -> OrbitalLabel:
    return OrbitalLabel(MeetTable(_canonical_cached(m.entries)))


@lru_cache(maxsize=1 << 16)
def _canonical_cached(entries: Table) -> Table:
    return canonical_entries(entries)


def enumerate_adjacency_tables(k: int, ell: int) -> Iterator[MeetTable]:
    """Every ell x ell 0-1 table with all row and column sums equal to ``k``."""
    if k < 0 or ell < 1 or k > ell:
        return
    row_choices = [tuple(1 if c in cols else 0 for c in range(ell)) for cols in combinations(range(ell), k)]

    def rec(prefix: list[tuple[int, ...]], colsum: list[int]):
        r = len(prefix)
        if r == ell:
            yield MeetTable(tuple(prefix))
            return
        left = ell - r
        for row in row_choices:
            new = [c + x for c, x in zip(colsum, row)]
            # Every column must still be able to reach k with the rows left.
            if all(k - left + 1 <= v <= k for v in new):
                yield from rec(prefix + [row], new)

    yield from rec([], [0] * ell)


def count_adjacency_tables(k: int, ell: int) -> int:
    """|M_{k,ell}| by a column-by-column DP over residual row demands."""
    if k < 0 or ell < 1:
        raise EkrError(f"need k >= 0 and ell >= 1, got k={k}, ell={ell}")
    if k > ell:
        return 0
    start = tuple([0] * k + [ell])  # state[r] = number of rows still needing r ones
    return _count_columns(k, ell, start)


@lru_cache(maxsize=None)
def _count_columns(k: int, cols_left: int, state: tuple[int, ...]) -> int:
    if cols_left == 0:
        return 1 if all(x == 0 for x in state[1:]) else 0
    if sum(r * c for r, c in enumerate(state)) != k * cols_left:
        return 0
    total = 0
    # choose how many of the column's k ones land in rows of each residual class
    for picks in _splits(k, state[1:]):
        ways = 1
        new = list(state)
        for r, c in enumerate(picks, start=1):
            if c:
                ways *= comb(state[r], c)
                new[r] -= c
                new[r - 1] += c
        total += ways * _count_columns(k, cols_left - 1, tuple(new))
    return total


def _splits(total: int, caps: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
    if not caps:
        if total == 0:
            yield ()
        return
    for c in range(min(total, caps[0]) + 1):
        for rest in _splits(total - c, caps[1:]):
            yield (c, *rest)


def bender_estimate(k: int, ell: int, dps: int = 60) -> mpmath.mpf:
    """(k*ell)! / (k!)^(2*ell) * exp(-(k-1)^2 / 2), to ``dps`` significant digits."""
    with mpmath.workdps(dps):
        head = mpmath.mpf(factorial(k * ell)) / mpmath.mpf(factorial(k) ** (2 * ell))
        return +(head * mpmath.exp(-mpmath.mpf((k - 1) ** 2) / 2))


def all_line_sum_tables(k: int, ell: int) -> Iterator[Table]:
    """Brute-force oracle: every 0-1 ell x ell table filtered by line sums."""
    for bits in product((0, 1), repeat=ell * ell):
        rows = tuple(bits[i * ell:(i + 1) * ell] for i in range(ell))
        if all(sum(r) == k for r in rows) and all(sum(c) == k for c in zip(*rows)):
            yield rows
