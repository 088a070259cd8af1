"""Equitable partitions of X_{k,ell} from stabilizer orbits, and their quotients.

Three partitions are supported: the orbits of the stabilizer of the pair
{1,2}, of the triple {1,2,3}, and of a base vertex (classified by meet table).
Pair and triple quotients are available both by edge counting on a
materialized graph and from closed forms in (k, ell, d); the two must agree.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

import numpy as np

from ._accel import kernels
from .errors import BudgetExceeded, CertificateFailure, EkrError, NonRationalEigenvalues
from .graph import DENSE_CAP, GraphHandle, build_dense, degree
from .partitions import UniformPartition, VertexSet, coclique_size, count_partitions, vertex_set
from .polys import charpoly, rational_roots
from .tables import MeetTable, canonical_entries

Q = Fraction


def tau(k: int, ell: int, d) -> Fraction:
    """-(k-1) d / (k (ell-1))."""
    if ell < 2:
        raise EkrError("tau needs ell >= 2")
    return -Q((k - 1) * d, k * (ell - 1))


def theta(k: int, ell: int, d) -> Fraction:
    """2 (k-1)(k-2) d / (k^2 (ell-1)(ell-2))."""
    if k < 3 or ell < 3:
        raise EkrError("theta needs k >= 3 and ell >= 3")
    return Q(2 * (k - 1) * (k - 2) * d, k * k * (ell - 1) * (ell - 2))


def triple_entries(k: int, ell: int, d) -> tuple[Fraction, Fraction, Fraction]:
    """Closed forms (a, b, c) of the triple-stabilizer quotient."""
    a = Q(2 * (k - 1) * d, k * (ell - 1))
    b = -Q(k - 2, k * (ell - 2)) * tau(k, ell, d)
    c = Q(3 * (k * ell - 3 * k + 2) * (k - 1) * d, k * k * (ell - 1) * (ell - 2))
    return a, b, c


def pair_cell_sizes(k: int, ell: int) -> tuple[int, int]:
    n = k * ell
    s2 = comb(n - 2, k - 1) * comb(n - k - 1, k - 1) * count_partitions(k, ell - 2)
    return coclique_size(k, ell), s2


def triple_cell_sizes(k: int, ell: int) -> tuple[int, int, int]:
    n = k * ell
    t1 = comb(n - 3, k - 3) * count_partitions(k, ell - 1)
    t2 = 3 * comb(n - 3, k - 2) * comb(n - k - 1, k - 1) * count_partitions(k, ell - 2)
    t3 = (comb(n - 3, k - 1) * comb(n - k - 2, k - 1) * comb(n - 2 * k - 1, k - 1)
          * count_partitions(k, ell - 3))
    return t1, t2, t3


@dataclass
class QuotientMatrix:
    """Quotient of an equitable partition: entry (i, j) = neighbours in cell j of a cell-i vertex."""

    kind: str
    k: int
    ell: int
    t: int
    labels: tuple[str, ...]
    sizes: tuple[int, ...]
    entries: tuple[tuple[Fraction, ...], ...]
    route: str
    cell_of: np.ndarray | None = field(default=None, repr=False, compare=False)

    @property
    def degree(self) -> Fraction:
        return sum(self.entries[0], Q(0))

    def row_sums(self) -> list[Fraction]:
        return [sum(r, Q(0)) for r in self.entries]

    def check(self) -> None:
        sums = self.row_sums()
        if len(set(sums)) != 1:
            raise CertificateFailure(f"{self.kind} quotient rows sum to {sums}, not a constant degree")
        n = len(self.sizes)
        for i in range(n):
            for j in range(n):
                if self.sizes[i] * self.entries[i][j] != self.sizes[j] * self.entries[j][i]:
                    raise CertificateFailure(f"edge double count fails between cells {i} and {j}")

    def charpoly(self) -> list:
        return charpoly(self.entries)

    def eigenvalues(self) -> dict[Fraction, int]:
        """Distinct eigenvalues with algebraic multiplicity in the quotient."""
        bound = max(sum(abs(x) for x in row) for row in self.entries)
        roots, rest = rational_roots(self.charpoly(), bound)
        if len(rest) > 1:
            raise NonRationalEigenvalues(rest)
        return dict(sorted(roots.items(), reverse=True))

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "k": self.k,
            "ell": self.ell,
            "t": self.t,
            "route": self.route,
            "cells": [{"label": lab, "size": str(s)} for lab, s in zip(self.labels, self.sizes)],
            "entries": [[_frac(x) for x in row] for row in self.entries],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def _frac(x: Fraction) -> str:
    x = Q(x)
    return f"{x.numerator}/{x.denominator}"


def parse_frac(text: str) -> Fraction:
    return Q(text)


# -- cells -------------------------------------------------------------------

@dataclass
class Cells:
    cell_of: np.ndarray
    labels: tuple[str, ...]

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(int(x) for x in np.bincount(self.cell_of, minlength=len(self.labels)))

    def members(self, i: int) -> np.ndarray:
        return np.nonzero(self.cell_of == i)[0]


def pair_cells(vs: VertexSet) -> Cells:
    together = vs.labels[:, 0] == vs.labels[:, 1]
    return Cells(np.where(together, 0, 1).astype(np.intp), ("S1", "S2"))


def triple_cells(vs: VertexSet) -> Cells:
    a, b, c = (vs.labels[:, i] for i in range(3))
    distinct = 1 + (b != a).astype(np.intp) + ((c != a) & (c != b)).astype(np.intp)
    return Cells(distinct - 1, ("T1", "T2", "T3"))


def orbit_cells(k: int, ell: int, base: UniformPartition | None = None, t: int = 2,
                budget: int | None = None) -> Cells:
    """Orbits of the stabilizer of ``base``: vertices grouped by canonical meet table.

    The base's own cell comes first; the rest are ordered by canonical table.
    ``t`` does not affect the cells and is accepted for interface symmetry.
    """
    base = base or UniformPartition.identity(k, ell)
    vs = vertex_set(k, ell, budget)
    tables = kernels.meet_tables(base.labels(), vs.labels, ell).reshape(vs.u, -1)
    raw, inverse = np.unique(tables, axis=0, return_inverse=True)
    inverse = np.asarray(inverse).reshape(-1)
    canon = [canonical_entries(tuple(tuple(int(x) for x in r.reshape(ell, ell)[i]) for i in range(ell)))
             for r in raw]
    base_table = canonical_entries(tuple(tuple(k if i == j else 0 for j in range(ell)) for i in range(ell)))
    distinct = sorted(set(canon), key=lambda c: (c != base_table, c))
    position = {c: i for i, c in enumerate(distinct)}
    raw_to_cell = np.array([position[c] for c in canon], dtype=np.intp)
    labels = tuple(str(MeetTable(c)) for c in distinct)
    return Cells(raw_to_cell[inverse], labels)


def _cells_for(kind: str, k: int, ell: int, budget: int | None = None) -> Cells:
    vs = vertex_set(k, ell, budget)
    if kind == "pair":
        return pair_cells(vs)
    if kind == "triple":
        return triple_cells(vs)
    if kind == "base":
        return orbit_cells(k, ell, budget=budget)
    raise EkrError(f"unknown stabilizer {kind!r}")


def quotient_by_counting(graph: GraphHandle, cells: Cells, kind: str) -> QuotientMatrix:
    """Entries from total edge counts between cells; equitability checked on every vertex."""
    ncells = len(cells.labels)
    counts = graph.cell_counts(cells.cell_of, ncells)
    sizes = cells.sizes
    entries = []
    for i in range(ncells):
        block = counts[cells.cell_of == i]
        if block.size == 0:
            raise EkrError(f"cell {cells.labels[i]} is empty")
        totals = block.sum(axis=0)
        entries.append(tuple(Q(int(x), sizes[i]) for x in totals))
        if (block != block[0]).any():
            raise CertificateFailure(f"cell {cells.labels[i]} is not equitable")
    qm = QuotientMatrix(kind, graph.k, graph.ell, graph.t, cells.labels, sizes, tuple(entries),
                        "edge-count", cells.cell_of)
    qm.check()
    return qm


def pair_closed_form(k: int, ell: int, d=None) -> QuotientMatrix:
    d = degree(k, ell) if d is None else d
    tv = tau(k, ell, d)
    entries = ((Q(0), Q(d)), (-tv, d + tv))
    qm = QuotientMatrix("pair", k, ell, 2, ("S1", "S2"), pair_cell_sizes(k, ell), entries, "closed-form")
    qm.check()
    return qm


def triple_closed_form(k: int, ell: int, d=None) -> QuotientMatrix:
    d = degree(k, ell) if d is None else d
    a, b, c = triple_entries(k, ell, d)
    d = Q(d)
    entries = ((Q(0), Q(0), d), (Q(0), a, d - a), (b, c, d - b - c))
    qm = QuotientMatrix("triple", k, ell, 2, ("T1", "T2", "T3"), triple_cell_sizes(k, ell), entries,
                        "closed-form")
    qm.check()
    return qm


def _stabilizer_quotient(kind: str, k: int, ell: int, route: str, cap: int,
                         graph: GraphHandle | None) -> QuotientMatrix:
    closed = pair_closed_form if kind == "pair" else triple_closed_form
    if route == "closed":
        return closed(k, ell)
    if route not in ("auto", "count"):
        raise EkrError(f"unknown route {route!r}")
    if graph is None:
        if count_partitions(k, ell) > cap:
            if route == "count":
                raise BudgetExceeded(f"({k},{ell}) is too large to count edges on a dense graph")
            return closed(k, ell)
        graph = build_dense(k, ell, 2, cap)
    cells = pair_cells(graph.vertices) if kind == "pair" else triple_cells(graph.vertices)
    counted = quotient_by_counting(graph, cells, kind)
    reference = closed(k, ell, graph.degree)
    if counted.entries != reference.entries or counted.sizes != reference.sizes:
        raise CertificateFailure(
            f"{kind} quotient by edge counting {counted.entries} disagrees with closed form {reference.entries}")
    return counted


def pair_stabilizer_quotient(k: int, ell: int, route: str = "auto", cap: int = DENSE_CAP,
                             graph: GraphHandle | None = None) -> QuotientMatrix:
    """2x2 quotient on S1 (1, 2 together) and S2; ``[[0, d], [-tau, d + tau]]``."""
    if ell < 2:
        raise EkrError("the pair quotient needs ell >= 2")
    return _stabilizer_quotient("pair", k, ell, route, cap, graph)


def triple_stabilizer_quotient(k: int, ell: int, route: str = "auto", cap: int = DENSE_CAP,
                               graph: GraphHandle | None = None) -> QuotientMatrix:
    """3x3 quotient on T1, T2, T3 (1, 2, 3 spread over 1, 2, 3 blocks)."""
    if ell < 3 or k < 3:
        raise EkrError("the triple quotient needs k >= 3 and ell >= 3 (T1 is empty otherwise)")
    return _stabilizer_quotient("triple", k, ell, route, cap, graph)


def base_quotient(k: int, ell: int, t: int = 2, budget: int | None = None,
                  cells: Cells | None = None) -> QuotientMatrix:
    """Quotient of the base-vertex stabilizer orbits; cell 0 is the base alone.

    Orbit partitions are equitable, so one representative per cell fixes its row.
    """
    vs = vertex_set(k, ell, budget)
    cells = cells or orbit_cells(k, ell, t=t, budget=budget)
    ncells = len(cells.labels)
    entries = []
    for i in range(ncells):
        rep = int(cells.members(i)[0])
        nbrs = kernels.adjacent_to(vs.labels[rep], vs.labels, ell, t)
        row = np.bincount(cells.cell_of[nbrs], minlength=ncells)
        entries.append(tuple(Q(int(x)) for x in row))
    qm = QuotientMatrix("base", k, ell, t, cells.labels, cells.sizes, tuple(entries), "representatives",
                        cells.cell_of)
    qm.check()
    return qm


def verify_equitable(qm: QuotientMatrix, graph: GraphHandle, samples: int | None = None,
                     seed: int = 0) -> bool:
    """Check ``samples`` random vertices per cell (all when None) against the quotient rows."""
    cell_of = qm.cell_of
    if cell_of is None or len(cell_of) != graph.v:
        cell_of = _cells_for(qm.kind, graph.k, graph.ell).cell_of
    ncells = len(qm.labels)
    rng = np.random.default_rng(seed)
    for i in range(ncells):
        members = np.nonzero(cell_of == i)[0]
        if samples is not None and samples < len(members):
            members = rng.choice(members, size=samples, replace=False)
        rows = graph.rows(np.sort(members))
        for r in rows:
            got = np.bincount(cell_of[r], minlength=ncells)
            if any(Q(int(x)) != e for x, e in zip(got, qm.entries[i])):
                return False
    return True
