from fractions import Fraction as F

from hypothesis import given, settings
from hypothesis import strategies as st

from ekrlab.polys import charpoly, evaluate, format_poly, from_roots, poly_gcd, rational_roots, square_free


def test_charpoly_small():
    assert charpoly([[0, 1], [1, 0]]) == [1, 0, -1]
    assert charpoly([[2]]) == [1, -2]
    assert charpoly([[1, 2, 3], [0, 4, 5], [0, 0, 6]]) == from_roots([1, 4, 6])


def test_charpoly_rational_entries():
    assert charpoly([[F(1, 2), 0], [0, F(-1, 3)]]) == from_roots([F(1, 2), F(-1, 3)])


int_roots = st.lists(st.integers(-10**9, 10**9), min_size=1, max_size=8)


@settings(max_examples=100, deadline=None)
@given(roots=int_roots)
def test_integer_roots_recovered(roots):
    poly = from_roots(roots)
    bound = max(abs(r) for r in roots) + 1
    found, rest = rational_roots(poly, bound)
    expected = {}
    for r in roots:
        expected[F(r)] = expected.get(F(r), 0) + 1
    assert found == expected and rest == [1]


@settings(max_examples=50, deadline=None)
@given(roots=st.lists(st.fractions(min_value=-50, max_value=50, max_denominator=7), min_size=1, max_size=5))
def test_rational_roots_recovered(roots):
    found, rest = rational_roots(from_roots(roots), 60)
    assert sum(found.values()) == len(roots)
    assert all(evaluate(from_roots(roots), r) == 0 for r in found)


def test_irreducible_residual_kept():
    # (x - 3)(x^2 - 2)
    found, rest = rational_roots([1, -3, -2, 6], 10)
    assert found == {F(3): 1} and rest == [1, 0, -2]


def test_square_free_and_gcd():
    assert square_free(from_roots([5, 5, 5, -1])) == [1, -4, -5]
    assert poly_gcd(from_roots([1, 2]), from_roots([2, 3])) == [1, -2]


def test_format_poly():
    assert format_poly([1, 0, -2]) == "x^2 - 2"
