"""Inclusion-exclusion degree bounds for X_{3,ell} and the u/d ratio.

Fix a partition P.  Its 3*ell same-block pairs J are the events; a partition
is a neighbour of P exactly when it keeps none of them together, so
d = sum_j (-1)^j N_j and odd truncations bound d from below.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Iterator

import mpmath

from .errors import EkrError
from .graph import degree
from .partitions import count_partitions


@dataclass(frozen=True, order=True)
class PairDistribution:
    """Blocks of P holding 0, 1, 2, 3 of their pairs in J."""

    n0: int
    n1: int
    n2: int
    n3: int

    @property
    def ell(self) -> int:
        return self.n0 + self.n1 + self.n2 + self.n3

    @property
    def j(self) -> int:
        return self.n1 + 2 * self.n2 + 3 * self.n3

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.n0, self.n1, self.n2, self.n3)


def pair_distributions(ell: int, j: int) -> set[PairDistribution]:
    """Compositions (n0, n1, n2, n3) of ell with n1 + 2 n2 + 3 n3 = j."""
    if not 0 <= j <= 3 * ell:
        raise EkrError(f"need 0 <= j <= 3*ell, got j={j}, ell={ell}")
    out = set()
    for n3 in range(j // 3 + 1):
        for n2 in range((j - 3 * n3) // 2 + 1):
            n1 = j - 3 * n3 - 2 * n2
            n0 = ell - n1 - n2 - n3
            if n0 >= 0:
                out.add(PairDistribution(n0, n1, n2, n3))
    return out


def _multinomial(total: int, *parts: int) -> int:
    out = factorial(total)
    for p in parts:
        out //= factorial(p)
    return out


def term(dist: PairDistribution) -> int:
    """Contribution of one pair distribution to N_j.

    3^(n1+n2) choices of pairs inside typed blocks, times the ways to type the
    blocks, times the partitions Q keeping those pairs together.
    """
    n0, n1, n2, n3 = dist.as_tuple()
    ell = dist.ell
    free = 3 * ell - 3 * (n3 + n2) - 2 * n1
    completions = Fraction(factorial(free), 6**n0 * factorial(n0))
    value = 3 ** (n1 + n2) * _multinomial(ell, n0, n1, n2, n3) * completions
    if value.denominator != 1:
        raise EkrError(f"non-integral count for {dist}")
    return int(value)


def n_j(ell: int, j: int) -> int:
    """N_j: sum over j-sets of same-block pairs of P of the partitions keeping them together."""
    return sum(term(dist) for dist in pair_distributions(ell, j))


@dataclass(frozen=True)
class BoundReport:
    ell: int
    j_max: int
    lower_bound_d: int
    exact_d: int | None
    ratio_u_over_d: Fraction | None  # u / lower bound; None when the bound is not positive

    def to_json(self) -> dict:
        r = self.ratio_u_over_d
        return {
            "ell": self.ell,
            "j_max": self.j_max,
            "lower_bound": str(self.lower_bound_d),
            "exact_degree": None if self.exact_d is None else str(self.exact_d),
            "ratio": None if r is None else f"{r.numerator}/{r.denominator}",
            "ratio_decimal": None if r is None else mpmath.nstr(mpmath.mpf(r.numerator) / r.denominator, 15),
        }


def partial_sum(ell: int, j_max: int) -> int:
    return sum((-1) ** j * n_j(ell, j) for j in range(j_max + 1))


def truncated_ie_lower_bound(ell: int, j_max: int = 5, exact: bool = False) -> BoundReport:
    """Sum of (-1)^j N_j for j <= j_max; a lower bound on d_{3,ell} for odd j_max.

    With ``exact`` the table-count degree is attached for comparison.
    """
    if j_max % 2 == 0:
        raise EkrError("only odd truncation orders give lower bounds")
    if not 0 < j_max <= 3 * ell:
        raise EkrError(f"truncation order {j_max} outside 1..{3 * ell}")
    bound = partial_sum(ell, j_max)
    exact_d = degree(3, ell) if exact else None
    ratio = Fraction(count_partitions(3, ell), bound) if bound > 0 else None
    return BoundReport(ell, j_max, bound, exact_d, ratio)


def inclusion_exclusion_degree(ell: int) -> int:
    """The untruncated alternating sum, which equals d_{3,ell}."""
    return partial_sum(ell, 3 * ell)


# Closed-form sextic ratio in two variants that differ only in the ell^2
# coefficient of the denominator (42732 vs 4273); the exact value decides.
SEXTIC_NUMERATOR = (729, -6561, 23085, -40095, 35586, -14904, 2240)
SEXTIC_DENOMINATOR_4273 = (243, -2997, 13905, -32355, 4273, -32728, 11200)
SEXTIC_DENOMINATOR_42732 = (243, -2997, 13905, -32355, 42732, -32728, 11200)


def _horner(coeffs, x) -> Fraction:
    acc = Fraction(0)
    for c in coeffs:
        acc = acc * x + c
    return acc


@dataclass(frozen=True)
class RatioReport:
    ell: int
    exact: Fraction
    sextic_4273: Fraction
    sextic_42732: Fraction

    def to_json(self) -> dict:
        def pair(x: Fraction) -> dict:
            return {"fraction": f"{x.numerator}/{x.denominator}",
                    "decimal": mpmath.nstr(mpmath.mpf(x.numerator) / x.denominator, 15)}

        return {"ell": self.ell, "exact": pair(self.exact), "sextic_4273": pair(self.sextic_4273),
                "sextic_42732": pair(self.sextic_42732),
                "sextic_4273_matches_exact": self.sextic_4273 == self.exact,
                "sextic_42732_matches_exact": self.sextic_42732 == self.exact}


def closed_form_ratio(ell: int) -> RatioReport:
    """u_{3,ell} / (j_max = 5 bound), next to both sextic variants.

    The exact value is authoritative; the sextics are reported for comparison.
    """
    if ell <= 10:
        raise EkrError("the closed-form ratio is stated for ell > 10")
    exact = ratio_to_bound(ell)
    short = 5 * _horner(SEXTIC_NUMERATOR, ell) / _horner(SEXTIC_DENOMINATOR_4273, ell)
    full = 5 * _horner(SEXTIC_NUMERATOR, ell) / _horner(SEXTIC_DENOMINATOR_42732, ell)
    return RatioReport(ell, exact, short, full)


def ratio_to_bound(ell: int, j_max: int = 5) -> Fraction:
    """u / sum_{j <= j_max} (-1)^j N_j, evaluated through the ratios N_j / u.

    Avoids forming u itself, so ell in the tens of thousands stays cheap.
    """
    total = Fraction(0)
    for j in range(j_max + 1):
        for dist in pair_distributions(ell, j):
            total += (-1) ** j * _term_over_u(dist)
    return 1 / total


def _term_over_u(dist: PairDistribution) -> Fraction:
    # term / u with u = (3 ell)! / (6^ell ell!); only short falling products survive
    n0, n1, n2, n3 = dist.as_tuple()
    ell = dist.ell
    free = 3 * ell - 3 * (n3 + n2) - 2 * n1
    value = Fraction(3 ** (n1 + n2) * 6 ** (ell - n0), factorial(n1) * factorial(n2) * factorial(n3))
    value *= Fraction(_falling(ell, ell - n0) ** 2, _falling(3 * ell, 3 * ell - free))
    return value


def _falling(top: int, count: int) -> int:
    out = 1
    for i in range(count):
        out *= top - i
    return out


@dataclass(frozen=True)
class UoverD:
    k: int
    ell: int
    exact: Fraction
    limit: mpmath.mpf

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "ell": self.ell,
            "u_over_d": f"{self.exact.numerator}/{self.exact.denominator}",
            "decimal": mpmath.nstr(mpmath.mpf(self.exact.numerator) / self.exact.denominator, 15),
            "limit": mpmath.nstr(self.limit, 15),
        }


def u_over_d(k: int, ell: int) -> UoverD:
    """Exact u_{k,ell} / d_{k,ell} with the limit exp((k-1)^2 / 2) alongside."""
    if k > ell:
        raise EkrError("u/d needs k <= ell (the graph is empty otherwise)")
    exact = Fraction(count_partitions(k, ell), degree(k, ell))
    with mpmath.workdps(30):
        limit = mpmath.exp(mpmath.mpf((k - 1) ** 2) / 2)
    return UoverD(k, ell, exact, limit)


def iter_partial_sums(ell: int) -> Iterator[tuple[int, int]]:
    """(j, sum_{i <= j} (-1)^i N_i) for j = 0..3 ell."""
    acc = 0
    for j in range(3 * ell + 1):
        acc += (-1) ** j * n_j(ell, j)
        yield j, acc
