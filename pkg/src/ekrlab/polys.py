"""Exact characteristic polynomials and rational root extraction.

Polynomials are coefficient lists, highest degree first, over ``int`` or
``Fraction``.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterator, Sequence

import mpmath

Number = int | Fraction


def charpoly(a: Sequence[Sequence[Number]]) -> list[Number]:
    """Coefficients of det(xI - A) by the division-free Berkowitz recursion."""
    n = len(a)
    if n == 0:
        return [1]
    p: list[Number] = [1, -a[0][0]]
    for r in range(1, n):
        row = a[r][:r]
        col = [a[i][r] for i in range(r)]
        t: list[Number] = [1, -a[r][r]]
        v = col
        for _ in range(r):
            t.append(-sum(row[i] * v[i] for i in range(r)))
            v = [sum(a[i][j] * v[j] for j in range(r)) for i in range(r)]
        p = [sum(t[i - j] * p[j] for j in range(len(p)) if 0 <= i - j < len(t)) for i in range(r + 2)]
    return p


def evaluate(poly: Sequence[Number], x: Number) -> Number:
    acc: Number = 0
    for c in poly:
        acc = acc * x + c
    return acc


def deflate(poly: Sequence[Number], root: Number) -> list[Number]:
    """Quotient of ``poly`` by ``(x - root)``; the caller guarantees divisibility."""
    out: list[Number] = []
    acc: Number = 0
    for c in poly[:-1]:
        acc = acc * root + c
        out.append(acc)
    return out


def poly_mul(p: Sequence[Number], q: Sequence[Number]) -> list[Number]:
    out: list[Number] = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return out


def from_roots(roots: Sequence[Number]) -> list[Number]:
    poly: list[Number] = [1]
    for r in roots:
        poly = poly_mul(poly, [1, -r])
    return poly


def _as_monic_integer(poly: Sequence[Number]) -> tuple[list[int], int]:
    """Return (q, lead) with q monic integer and roots(q) = lead * roots(poly)."""
    coeffs = [Fraction(c) for c in poly]
    den = lcm(*(c.denominator for c in coeffs))
    ints = [int(c * den) for c in coeffs]
    lead = ints[0]
    # lead^(n-1) * p(y / lead) is monic with integer coefficients
    return [1] + [c * lead ** (i - 1) for i, c in enumerate(ints) if i], lead


def rational_roots(poly: Sequence[Number], bound: Number) -> tuple[dict[Fraction, int], list[Number]]:
    """Rational roots of ``poly`` with |root| <= bound, with multiplicities.

    Monic integer input uses divisor search over the integers in
    [-bound, bound]; anything else is first rescaled to a monic integer
    polynomial.  Returns the roots and the residual polynomial after deflation.
    """
    if poly[0] != 1 or any(Fraction(c).denominator != 1 for c in poly):
        monic, lead = _as_monic_integer(poly)
        found, _ = rational_roots(monic, abs(Fraction(bound) * lead))
        roots = {Fraction(r) / lead: m for r, m in found.items()}
        residual = [Fraction(c) for c in poly]
        for r, m in roots.items():
            for _ in range(m):
                residual = deflate(residual, r)
        return roots, _normalise(residual)
    roots: dict[Fraction, int] = {}
    ints = [int(c) for c in poly]
    while len(ints) > 1 and ints[-1] == 0:
        roots[Fraction(0)] = roots.get(Fraction(0), 0) + 1
        ints.pop()
    limit = int(abs(Fraction(bound)).__ceil__())
    for cand in _integer_candidates(ints, limit):
        while len(ints) > 1 and ints[-1] % cand == 0 and evaluate(ints, cand) == 0:
            ints = deflate(ints, cand)
            roots[Fraction(cand)] = roots.get(Fraction(cand), 0) + 1
    return roots, ints


SCAN_LIMIT = 100_000


def _integer_candidates(ints: list[int], limit: int) -> Iterator[int]:
    """Nonzero integers that could be roots; every candidate is still checked exactly.

    Small bounds are scanned outright.  Otherwise the roots are located
    numerically at a precision well beyond the coefficient size and the
    integers next to each nearly real root are proposed.
    """
    if len(ints) == 1:
        return
    if limit <= SCAN_LIMIT:
        for r in range(1, limit + 1):
            yield r
            yield -r
        return
    simple = square_free(ints)
    if len(simple) == 1:
        return
    digits = max(len(str(abs(c))) for c in simple)
    with mpmath.workdps(2 * digits + 40):
        approx = mpmath.polyroots(simple, maxsteps=2000, extraprec=4 * digits + 100)
        seen = set()
        for z in approx:
            if abs(mpmath.im(z)) > 1 + abs(z) * mpmath.mpf(10) ** (-digits):
                continue
            base = int(mpmath.floor(mpmath.re(z)))
            for c in (base - 1, base, base + 1, base + 2):
                if c and abs(c) <= limit and c not in seen:
                    seen.add(c)
                    yield c


def _poly_rem(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a = list(a)
    while len(a) >= len(b) and any(a):
        f = a[0] / b[0]
        a = [x - f * y for x, y in zip(a, b + [Fraction(0)] * (len(a) - len(b)))][1:]
        while len(a) > 1 and a[0] == 0:
            a = a[1:]
    return a


def poly_gcd(a: Sequence[Number], b: Sequence[Number]) -> list[Fraction]:
    """Monic gcd over the rationals by the Euclidean algorithm."""
    a = [Fraction(c) for c in a]
    b = [Fraction(c) for c in b]
    while any(b):
        a, b = b, _poly_rem(a, b)
        if not any(b):
            break
    return [c / a[0] for c in a]


def square_free(poly: Sequence[Number]) -> list[int]:
    """Primitive integer polynomial with the same roots as ``poly``, each simple."""
    n = len(poly) - 1
    if n < 1:
        return [1]
    deriv = [c * (n - i) for i, c in enumerate(poly[:-1])]
    g = poly_gcd(poly, deriv)
    q = _poly_div([Fraction(c) for c in poly], g)
    den = lcm(*(c.denominator for c in q))
    out = [int(c * den) for c in q]
    common = gcd(*out)
    return [c // common for c in out]


def _poly_div(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a = list(a)
    out = []
    while len(a) >= len(b):
        f = a[0] / b[0]
        out.append(f)
        a = [x - f * y for x, y in zip(a, b + [Fraction(0)] * (len(a) - len(b)))][1:]
    if any(a):
        raise ArithmeticError("inexact polynomial division")
    return out


def _normalise(poly: Sequence[Fraction]) -> list[Number]:
    return [int(c) if c.denominator == 1 else c for c in poly]


def format_poly(poly: Sequence[Number], var: str = "x") -> str:
    n = len(poly) - 1
    terms = []
    for i, c in enumerate(poly):
        if c == 0:
            continue
        e = n - i
        mono = "" if e == 0 else (var if e == 1 else f"{var}^{e}")
        coef = str(c) if (e == 0 or c not in (1, -1)) else ("-" if c == -1 else "")
        terms.append(f"{coef}{'*' if coef not in ('', '-') and mono else ''}{mono}")
    return " + ".join(terms).replace("+ -", "- ") or "0"
