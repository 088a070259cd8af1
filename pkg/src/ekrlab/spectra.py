"""Full spectra, the Delsarte-Hoffman ratio bound, and the multiplicity-gap inequality."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

import numpy as np

from .errors import BudgetExceeded, CertificateFailure, EkrError
from .graph import GraphHandle
from .partitions import coclique_size, count_partitions
from .quotients import QuotientMatrix, base_quotient, tau

DENSE_SPECTRUM_CAP = 6000
Q = Fraction


@dataclass(frozen=True)
class SpectrumReport:
    k: int
    ell: int
    t: int
    v: int
    d: int
    eigenvalues: tuple[Fraction, ...]  # distinct, descending
    multiplicities: tuple[int, ...]
    method: str
    moments_checked: int = 0

    def as_dict(self) -> dict[Fraction, int]:
        return dict(zip(self.eigenvalues, self.multiplicities))

    def multiplicity(self, value) -> int:
        return self.as_dict().get(Q(value), 0)

    def validate(self, connected: bool | None = None) -> None:
        m, lam = self.multiplicities, self.eigenvalues
        if any(x < 0 for x in m):
            raise CertificateFailure(f"negative multiplicity in {m}")
        if sum(m) != self.v:
            raise CertificateFailure(f"multiplicities sum to {sum(m)}, expected v = {self.v}")
        if sum(x * y for x, y in zip(m, lam)) != 0:
            raise CertificateFailure("trace of A is not zero")
        if sum(x * y * y for x, y in zip(m, lam)) != self.v * self.d:
            raise CertificateFailure("trace of A^2 differs from v*d")
        if lam[0] != self.d:
            raise CertificateFailure(f"largest eigenvalue {lam[0]} differs from the degree {self.d}")
        if connected and m[0] != 1:
            raise CertificateFailure(f"connected graph with degree multiplicity {m[0]}")

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "ell": self.ell,
            "t": self.t,
            "v": str(self.v),
            "degree": str(self.d),
            "eigenvalues": [f"{x.numerator}/{x.denominator}" for x in self.eigenvalues],
            "multiplicities": [str(x) for x in self.multiplicities],
            "method": self.method,
            "moments_checked": self.moments_checked,
        }


def closed_walks(qm: QuotientMatrix, pmax: int) -> list[int]:
    """(B^p)_{00} for p = 0..pmax; with a singleton cell 0 these are closed walks at the base."""
    n = len(qm.entries)
    rows = [[int(x) for x in r] for r in qm.entries]
    vec = [1] + [0] * (n - 1)
    out = []
    for _ in range(pmax + 1):
        out.append(vec[0])
        vec = [sum(vec[i] * rows[i][j] for i in range(n)) for j in range(n)]
    return out


def solve_exact(a: list[list[Fraction]], b: list[Fraction]) -> list[Fraction]:
    """Gaussian elimination over the rationals; ``a`` must be nonsingular."""
    n = len(a)
    m = [list(map(Q, row)) + [Q(rhs)] for row, rhs in zip(a, b)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            raise CertificateFailure("singular moment system (repeated eigenvalue?)")
        m[col], m[piv] = m[piv], m[col]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col] / m[col][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return [m[i][n] / m[i][i] for i in range(n)]


def spectrum_by_moments(k: int, ell: int, t: int = 2, budget: int | None = None) -> SpectrumReport:
    """Eigenvalues from the base-stabilizer quotient, multiplicities from closed walks.

    tr(A^p) = v * (B^p)_{00} for every p; the first s of these determine the
    multiplicities of the s distinct eigenvalues and the rest up to 2s are
    checked.
    """
    qm = base_quotient(k, ell, t, budget)
    v = count_partitions(k, ell)
    d = int(qm.degree)
    eig = sorted(qm.eigenvalues(), reverse=True)
    s = len(eig)
    walks = [v * w for w in closed_walks(qm, 2 * s)]
    vander = [[lam ** p for lam in eig] for p in range(s)]
    sol = solve_exact(vander, [Q(w) for w in walks[:s]])
    if any(x.denominator != 1 or x < 0 for x in sol):
        raise CertificateFailure(f"moment solve gave non-integral or negative multiplicities {sol}")
    mult = [int(x) for x in sol]
    for p in range(2 * s + 1):
        if sum(m * lam ** p for m, lam in zip(mult, eig)) != walks[p]:
            raise CertificateFailure(f"moment identity fails at order {p}")
    report = SpectrumReport(k, ell, t, v, d, tuple(eig), tuple(mult), "quotient-moments", 2 * s)
    report.validate()
    return report


def spectrum_dense(graph: GraphHandle, cap: int = DENSE_SPECTRUM_CAP) -> SpectrumReport:
    """Numeric eigenvalues of the adjacency matrix, clustered and snapped to integers."""
    if graph.v > cap:
        raise BudgetExceeded(f"v = {graph.v} exceeds the dense spectrum cap {cap}")
    d = graph.degree
    if graph.edge_count() == 0:
        report = SpectrumReport(graph.k, graph.ell, graph.t, graph.v, 0, (Q(0),), (graph.v,), "dense-numeric")
        report.validate()
        return report
    values = np.linalg.eigvalsh(graph.adjacency_matrix())[::-1]
    tol = 1e-6 * d
    clusters: list[list[float]] = [[values[0]]]
    for x in values[1:]:
        if clusters[-1][-1] - x <= tol:
            clusters[-1].append(x)
        else:
            clusters.append([x])
    centers = [float(np.mean(c)) for c in clusters]
    for a, b in zip(centers, centers[1:]):
        if a - b < 10 * tol:
            raise CertificateFailure(f"ambiguous eigenvalue clusters near {a} and {b}")
    eig = []
    for c in centers:
        r = round(c)
        eig.append(Q(r) if abs(c - r) <= tol else Q(c).limit_denominator(10**6))
    report = SpectrumReport(graph.k, graph.ell, graph.t, graph.v, d, tuple(eig),
                            tuple(len(c) for c in clusters), "dense-numeric")
    report.validate()
    return report


@dataclass(frozen=True)
class RatioBoundCertificate:
    v: int
    d: int
    tau_used: Fraction
    bound: Fraction
    canonical_size: int | None
    equality: bool

    def to_json(self) -> dict:
        return {
            "v": str(self.v),
            "degree": str(self.d),
            "tau": f"{self.tau_used.numerator}/{self.tau_used.denominator}",
            "bound": f"{self.bound.numerator}/{self.bound.denominator}",
            "canonical_size": None if self.canonical_size is None else str(self.canonical_size),
            "equality": self.equality,
        }


def ratio_bound(v: int, d: int, tau_value, k: int | None = None, ell: int | None = None) -> RatioBoundCertificate:
    """alpha <= v / (1 - d / tau) for a d-regular graph with least eigenvalue tau."""
    tau_value = Q(tau_value)
    if tau_value >= 0:
        raise EkrError("the ratio bound needs a negative least eigenvalue")
    if d <= 0:
        raise EkrError("the ratio bound needs positive degree")
    bound = Q(v) / (1 - Q(d) / tau_value)
    size = coclique_size(k, ell) if k is not None and ell is not None else None
    return RatioBoundCertificate(v, d, tau_value, bound, size, size is not None and bound == size)


def least_eigenvalue_is_tau(report: SpectrumReport) -> bool:
    return min(report.eigenvalues) == tau(report.k, report.ell, report.d)


def multiplicity_floors(k: int, ell: int) -> tuple[int, int]:
    """Lower bounds on m(tau) and m(theta): dims of the [n-2,2] and [n-3,3] modules."""
    n = k * ell
    return comb(n, 2) - n, comb(n, 3) - comb(n, 2)


@dataclass(frozen=True)
class GapReport:
    k: int
    ell: int
    lhs: Fraction
    rhs: Fraction
    holds: bool

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "ell": self.ell,
            "lhs": f"{self.lhs.numerator}/{self.lhs.denominator}",
            "rhs": f"{self.rhs.numerator}/{self.rhs.denominator}",
            "lhs_decimal": f"{float(self.lhs):.15g}",
            "rhs_decimal": f"{float(self.rhs):.15g}",
            "holds": self.holds,
        }


def gap_rhs(k: int, ell: int) -> Fraction:
    n = k * ell
    inner = k * k * (ell - 2) ** 2 * (n - 4) * (n + 1) + 4 * (k - 2) ** 2 * (n - 1) * (n - 5)
    return Q(ell * (k - 1) ** 2 * inner, 6 * k**3 * (ell - 1) ** 2 * (ell - 2) ** 2)


def multiplicity_gap_check(k: int, ell: int, u_over_d) -> GapReport:
    """Is u/d - 1 below the threshold that rules out a second small eigenspace?"""
    if k < 3 or ell < 3:
        raise EkrError("the multiplicity gap check needs k >= 3 and ell >= 3")
    lhs = Q(u_over_d) - 1
    rhs = gap_rhs(k, ell)
    return GapReport(k, ell, lhs, rhs, lhs < rhs)
