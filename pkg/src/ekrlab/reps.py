"""Symmetric-group machinery: Young diagrams, dimensions, branching, characters.

Shapes are weakly decreasing tuples of positive integers.  Characters are
evaluated with the Murnaghan-Nakayama rule on beta-sets, so no external
character table is needed.
"""
from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial, prod
from typing import Iterable, Iterator, Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .errors import CertificateFailure, EkrError
from .partitions import compose, count_partitions, vertex_set

MAX_SCAN_N = 60


@dataclass(frozen=True, order=True)
class IntegerPartitionShape:
    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if not parts or any(p < 1 for p in parts) or any(a < b for a, b in zip(parts, parts[1:])):
            raise EkrError(f"not a partition shape: {parts}")
        object.__setattr__(self, "parts", parts)

    @property
    def n(self) -> int:
        return sum(self.parts)

    def conjugate(self) -> "IntegerPartitionShape":
        return IntegerPartitionShape(tuple(sum(1 for p in self.parts if p > j) for j in range(self.parts[0])))

    def __str__(self) -> str:
        out = []
        for value, run in _runs(self.parts):
            out.append(str(value) if run == 1 else f"{value}^{run}")
        return "[" + ",".join(out) + "]"

    @classmethod
    def parse(cls, text: str) -> "IntegerPartitionShape":
        """Read ``4,1,1``, ``[4,1^2]`` or ``[4,1,1]``."""
        parts: list[int] = []
        for tok in text.strip().strip("[]").split(","):
            m = re.fullmatch(r"\s*(\d+)\s*(?:\^\s*(\d+))?\s*", tok)
            if not m:
                raise EkrError(f"malformed shape {text!r}")
            parts += [int(m.group(1))] * int(m.group(2) or 1)
        return cls(tuple(parts))


Shape = IntegerPartitionShape


def shape(*parts: int) -> Shape:
    """Build a shape, dropping zero parts (handy for families like [n-2,2])."""
    return Shape(tuple(p for p in parts if p))


def _runs(parts: Sequence[int]) -> Iterator[tuple[int, int]]:
    for value, count in sorted(Counter(parts).items(), reverse=True):
        yield value, count


def partitions_of(n: int, largest: int | None = None) -> Iterator[tuple[int, ...]]:
    """Partitions of ``n`` in reverse lexicographic order."""
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in partitions_of(n - first, first):
            yield (first, *rest)


def hook_lengths(s: Shape) -> list[int]:
    conj = s.conjugate().parts
    return [row - j + conj[j] - i - 1 for i, row in enumerate(s.parts) for j in range(row)]


def dimension(s: Shape) -> int:
    """Degree of the irreducible character: n! over the product of hook lengths."""
    return factorial(s.n) // prod(hook_lengths(s))


def count_standard_tableaux(s: Shape) -> int:
    """Independent oracle for ``dimension``: remove the largest entry recursively."""
    return _syt(s.parts)


@lru_cache(maxsize=None)
def _syt(parts: tuple[int, ...]) -> int:
    if sum(parts) <= 1:
        return 1
    total = 0
    for i, p in enumerate(parts):
        if i + 1 == len(parts) or parts[i + 1] < p:
            smaller = tuple(x for x in parts[:i] + (p - 1,) + parts[i + 1:] if x)
            total += _syt(smaller)
    return total


def restrict(s: Shape) -> set[Shape]:
    """Shapes of n-1 obtained by deleting one removable box."""
    if s.n < 2:
        raise EkrError("restriction needs n >= 2")
    out = set()
    parts = s.parts
    for i, p in enumerate(parts):
        if i + 1 == len(parts) or parts[i + 1] < p:
            out.add(shape(*parts[:i], p - 1, *parts[i + 1:]))
    return out


def induce(s: Shape) -> set[Shape]:
    """Shapes of n+1 obtained by adding one addable box."""
    parts = s.parts + (0,)
    out = set()
    for i, p in enumerate(parts):
        if i == 0 or parts[i - 1] > p:
            out.add(shape(*parts[:i], p + 1, *parts[i + 1:]))
    return out


def small_degree_shapes(n: int, bound: int) -> set[Shape]:
    """All shapes of ``n`` whose dimension is at most ``bound``."""
    if n < 1 or bound < 1:
        raise EkrError("need n >= 1 and bound >= 1")
    if n > MAX_SCAN_N:
        raise EkrError(f"refusing to scan all partitions of n = {n} > {MAX_SCAN_N}")
    return {Shape(p) for p in partitions_of(n) if dimension(Shape(p)) <= bound}


def eight_small_shapes(n: int) -> set[Shape]:
    """The eight shapes of dimension below (n^2 - n)/2 for n >= 9."""
    return {
        shape(n), shape(*[1] * n), shape(n - 1, 1), shape(2, *[1] * (n - 2)),
        shape(n - 2, 2), shape(2, 2, *[1] * (n - 4)), shape(n - 2, 1, 1), shape(3, *[1] * (n - 3)),
    }


def ten_small_shapes(n: int) -> set[Shape]:
    """The eight above plus [n-3,3] and [2,2,2,1^(n-6)]."""
    return eight_small_shapes(n) | {shape(n - 3, 3), shape(2, 2, 2, *[1] * (n - 6))}


# -- characters ----------------------------------------------------------------

def mn_character_value(s: Shape, cycle_type: Sequence[int]) -> int:
    """Irreducible character chi_s at a permutation of the given cycle type."""
    ct = tuple(sorted((int(c) for c in cycle_type if c), reverse=True))
    if sum(ct) != s.n:
        raise EkrError(f"cycle type {ct} is not a partition of {s.n}")
    return _mn(s.parts, ct)


@lru_cache(maxsize=None)
def _mn(parts: tuple[int, ...], ct: tuple[int, ...]) -> int:
    if not ct:
        return 1
    r, rest = ct[0], ct[1:]
    length = len(parts)
    beta = [p + length - 1 - i for i, p in enumerate(parts)]
    present = set(beta)
    total = 0
    for b in beta:
        target = b - r
        if target < 0 or target in present:
            continue
        height = sum(1 for x in beta if target < x < b)
        new_beta = sorted((target if x == b else x for x in beta), reverse=True)
        new_parts = tuple(x - (length - 1 - i) for i, x in enumerate(new_beta))
        new_parts = tuple(p for p in new_parts if p)
        total += (-1) ** height * _mn(new_parts, rest)
    return total


def class_size(cycle_type: Sequence[int]) -> int:
    n = sum(cycle_type)
    counts = Counter(cycle_type)
    return factorial(n) // prod(i**m * factorial(m) for i, m in counts.items())


def cycle_representative(cycle_type: Sequence[int]) -> tuple[int, ...]:
    """A permutation (1-based images) with the given cycle type on consecutive points."""
    images = []
    start = 1
    for c in cycle_type:
        images += [start + (j + 1) % c for j in range(c)]
        start += c
    return tuple(images)


# -- Young subgroups -----------------------------------------------------------

@dataclass(frozen=True)
class GroupSpec:
    """A Young subgroup S_parts, or its intersection with the alternating group."""

    kind: str  # "young" or "young_alt"
    parts: tuple[int, ...]

    def __post_init__(self):
        if self.kind not in ("young", "young_alt"):
            raise EkrError(f"unknown group kind {self.kind!r}")
        if not self.parts or any(p < 1 for p in self.parts):
            raise EkrError(f"bad Young subgroup parts {self.parts}")

    @property
    def n(self) -> int:
        return sum(self.parts)

    @classmethod
    def parse(cls, text: str) -> "GroupSpec":
        """``young:7,2`` or ``young_alt:7,1,1`` (also accepts ``young([7,2])``)."""
        m = re.fullmatch(r"\s*(young_alt|young)\s*[:(]\s*\[?([\d,\s]+)\]?\)?\s*", text)
        if not m:
            raise EkrError(f"malformed group spec {text!r}")
        return cls(m.group(1), tuple(int(x) for x in m.group(2).split(",") if x.strip()))

    def __str__(self) -> str:
        return f"{self.kind}:{','.join(map(str, self.parts))}"

    def generators(self) -> list[tuple[int, ...]]:
        n = self.n
        transpositions, three_cycles = [], []
        start = 1
        for p in self.parts:
            for a in range(start, start + p - 1):
                transpositions.append(_cycle(n, (a, a + 1)))
            for a in range(start, start + p - 2):
                three_cycles.append(_cycle(n, (a, a + 1, a + 2)))
            start += p
        if self.kind == "young":
            return transpositions
        if not transpositions:
            return []
        # Schreier generators of the even part, for the transversal {1, s0}
        s0 = transpositions[0]
        doubles = [compose(s0, s) for s in transpositions[1:]] + [compose(s, s0) for s in transpositions[1:]]
        return three_cycles + doubles


def _cycle(n: int, points: Sequence[int]) -> tuple[int, ...]:
    images = list(range(1, n + 1))
    for a, b in zip(points, points[1:] + tuple(points[:1])):
        images[a - 1] = b
    return tuple(images)


def orbit_count(k: int, ell: int, group: GroupSpec | str, budget: int | None = None) -> int:
    """Number of orbits of the subgroup on (k, ell)-partitions, via connected components."""
    group = GroupSpec.parse(group) if isinstance(group, str) else group
    if group.n != k * ell:
        raise EkrError(f"group acts on {group.n} points, partitions live on {k * ell}")
    vs = vertex_set(k, ell, budget)
    gens = group.generators()
    if not gens:
        return vs.u
    src = np.concatenate([np.arange(vs.u)] * len(gens))
    dst = np.concatenate([vs.permutation_images(g) for g in gens])
    adj = coo_matrix((np.ones(len(src), dtype=np.int8), (src, dst)), shape=(vs.u, vs.u))
    return int(connected_components(adj, directed=True, connection="weak")[0])


# -- decompositions ------------------------------------------------------------

@dataclass(frozen=True)
class DecompositionRecord:
    terms: tuple[tuple[Shape, int], ...]
    source: str
    degree: int

    def multiplicity(self, s: Shape | Sequence[int]) -> int:
        s = s if isinstance(s, Shape) else Shape(tuple(s))
        return dict(self.terms).get(s, 0)

    def dimension_sum(self) -> int:
        return sum(m * dimension(s) for s, m in self.terms)

    def check(self) -> None:
        if self.dimension_sum() != self.degree:
            raise CertificateFailure(f"{self.source}: dimensions sum to {self.dimension_sum()}, not {self.degree}")

    def is_multiplicity_free(self) -> bool:
        return all(m <= 1 for _, m in self.terms)

    def to_json(self) -> dict:
        return {
            "source": self.source,
            "degree": str(self.degree),
            "verified_degree_sum": str(self.dimension_sum()),
            "terms": [{"shape": list(s.parts), "multiplicity": m} for s, m in self.terms if m],
        }


def two_row_young_rule(n: int, m: int) -> DecompositionRecord:
    """Induced trivial character from S_{[n-m,m]}: each [n-i,i], i <= m, once."""
    if not 0 <= m <= n // 2:
        raise EkrError(f"need 0 <= m <= n/2, got n={n}, m={m}")
    terms = tuple((shape(n - i, i), 1) for i in range(m + 1))
    rec = DecompositionRecord(terms, f"ind 1 from S_[{n - m},{m}] to S_{n}", comb(n, m))
    rec.check()
    return rec


def fixed_point_counts(k: int, ell: int, budget: int | None = None) -> dict[tuple[int, ...], int]:
    """Number of (k, ell)-partitions fixed by one permutation of each cycle type."""
    vs = vertex_set(k, ell, budget)
    ident = np.arange(vs.u)
    return {ct: int((vs.permutation_images(cycle_representative(ct)) == ident).sum())
            for ct in partitions_of(k * ell)}


def permutation_character_decompose(k: int, ell: int, budget: int | None = None) -> DecompositionRecord:
    """Decompose the permutation character of S_{k*ell} on (k, ell)-partitions."""
    n = k * ell
    if n > 15:
        raise EkrError("the permutation character is only decomposed for k*ell <= 15")
    fixed = fixed_point_counts(k, ell, budget)
    total = factorial(n)
    terms = []
    for parts in partitions_of(n):
        s = Shape(parts)
        acc = sum(class_size(ct) * mn_character_value(s, ct) * f for ct, f in fixed.items() if f)
        mult = Fraction(acc, total)
        if mult.denominator != 1 or mult < 0:
            raise CertificateFailure(f"multiplicity of {s} came out as {mult}")
        terms.append((s, int(mult)))
    rec = DecompositionRecord(tuple(terms), f"ind 1 from S_{k} wr S_{ell} to S_{n}", count_partitions(k, ell))
    rec.check()
    return rec


def induced_decomposition(group: GroupSpec) -> DecompositionRecord:
    """Decompose the permutation character of S_n on cosets of a (possibly alternating) Young subgroup."""
    n = group.n
    order = prod(factorial(p) for p in group.parts)
    even = group.kind == "young_alt" and any(p > 1 for p in group.parts)
    if even:
        order //= 2
    terms = []
    for parts in partitions_of(n):
        s = Shape(parts)
        acc = Fraction(0)
        for ct in partitions_of(n):
            chi = mn_character_value(s, ct)
            if chi:
                acc += class_size(ct) * chi * _induced_value(group, ct, order, even)
        mult = acc / factorial(n)
        if mult.denominator != 1 or mult < 0:
            raise CertificateFailure(f"multiplicity of {s} came out as {mult}")
        terms.append((s, int(mult)))
    rec = DecompositionRecord(tuple(terms), f"ind 1 from {group} to S_{n}", factorial(n) // order)
    rec.check()
    return rec


def _induced_value(group: GroupSpec, ct: tuple[int, ...], order: int, even: bool) -> Fraction:
    # ind 1_H (g) = |C_G(g)| * |g^G & H| / |H|
    n = group.n
    if even and (n - len(ct)) % 2:
        return Fraction(0)
    inside = _class_count_in_young(group.parts, Counter(ct))
    centralizer = factorial(n) // class_size(ct)
    return Fraction(centralizer * inside, order)


def _class_count_in_young(parts: Sequence[int], cycles: Counter) -> int:
    """Number of elements of S_parts whose cycle type (on all n points) is ``cycles``."""
    if not parts:
        return 1 if not +cycles else 0
    first, rest = parts[0], parts[1:]
    total = 0
    for sub in _sub_multisets(cycles, first):
        total += class_size(sorted(sub.elements(), reverse=True)) * _class_count_in_young(rest, cycles - sub)
    return total


def _sub_multisets(cycles: Counter, size: int) -> Iterator[Counter]:
    items = sorted(cycles.items())

    def rec(i: int, left: int, acc: Counter):
        if left == 0:
            yield Counter(acc)
            return
        if i == len(items):
            return
        length, avail = items[i]
        for take in range(min(avail, left // length), -1, -1):
            if take:
                acc[length] = take
            elif length in acc:
                del acc[length]
            yield from rec(i + 1, left - take * length, acc)
        acc.pop(length, None)

    yield from rec(0, size, Counter())


def young_orbit_identity(k: int, ell: int, m: int, decomposition: DecompositionRecord,
                         budget: int | None = None) -> tuple[int, int]:
    """(orbit count of S_[n-m,m], sum of multiplicities of [n-i,i] for i <= m)."""
    n = k * ell
    orbits = orbit_count(k, ell, GroupSpec("young", (n - m, m)), budget)
    return orbits, sum(decomposition.multiplicity(shape(n - i, i)) for i in range(m + 1))


def shapes_text(shapes: Iterable[Shape]) -> list[str]:
    return [str(s) for s in sorted(shapes, reverse=True)]
