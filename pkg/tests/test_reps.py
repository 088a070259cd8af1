from fractions import Fraction as F
from itertools import permutations
from math import comb, factorial

import numpy as np
import pytest

from ekrlab.errors import EkrError
from ekrlab.reps import (
    GroupSpec,
    Shape,
    class_size,
    count_standard_tableaux,
    dimension,
    eight_small_shapes,
    fixed_point_counts,
    induce,
    mn_character_value,
    orbit_count,
    partitions_of,
    permutation_character_decompose,
    restrict,
    shape,
    small_degree_shapes,
    ten_small_shapes,
    two_row_young_rule,
    young_orbit_identity,
)


def ones(m):
    return [1] * m


def test_shape_text():
    s = shape(4, *ones(10))
    assert str(s) == "[4,1^10]"
    assert Shape.parse("[4,1^10]") == s
    assert Shape.parse("[2^3,1]") == shape(2, 2, 2, 1)
    with pytest.raises(EkrError):
        Shape.parse("[1,2]")


def test_dimension_examples():
    assert all(dimension(shape(n)) == 1 for n in range(1, 20))
    assert dimension(shape(4, *ones(10))) == 286
    assert dimension(shape(7, 2)) == 27


@pytest.mark.parametrize("n", range(1, 10))
def test_dimension_matches_tableaux_count(n):
    for p in partitions_of(n):
        assert dimension(Shape(p)) == count_standard_tableaux(Shape(p))


@pytest.mark.parametrize("n", range(1, 13))
def test_dimension_conjugate_and_sum_of_squares(n):
    shapes = [Shape(p) for p in partitions_of(n)]
    assert all(dimension(s) == dimension(s.conjugate()) for s in shapes)
    assert sum(dimension(s) ** 2 for s in shapes) == factorial(n)


def test_restrict_examples():
    assert restrict(shape(3, 2)) == {shape(2, 2), shape(3, 1)}
    assert restrict(shape(6)) == {shape(5)}
    with pytest.raises(EkrError):
        restrict(shape(1))


def test_branching_preserves_dimension():
    for p in partitions_of(8):
        s = Shape(p)
        assert dimension(s) == sum(dimension(m) for m in restrict(s))


def test_induce_examples():
    assert induce(shape(5)) == {shape(6), shape(5, 1)}
    n = 13
    assert induce(shape(n - 2, 2)) == {shape(n - 1, 2), shape(n - 2, 3), shape(n - 2, 2, 1)}


def test_induce_restrict_adjoint():
    for p in partitions_of(7):
        lam = Shape(p)
        for q in partitions_of(6):
            mu = Shape(q)
            assert (mu in restrict(lam)) == (lam in induce(mu))


def test_induce_dimension():
    for p in partitions_of(7):
        s = Shape(p)
        assert sum(dimension(x) for x in induce(s)) == 8 * dimension(s)


def test_small_degree_examples():
    assert small_degree_shapes(13, comb(13, 3) - comb(13, 2)) == ten_small_shapes(13)
    assert small_degree_shapes(9, 36) == eight_small_shapes(9)
    assert small_degree_shapes(4, 1) == {shape(4), shape(1, 1, 1, 1)}
    with pytest.raises(EkrError):
        small_degree_shapes(61, 10)


@pytest.mark.parametrize("n", [13, 14, 15])
def test_ten_shapes_at_boundary(n):
    bound = comb(n, 3) - comb(n, 2)
    assert small_degree_shapes(n, bound) == ten_small_shapes(n)
    # the two extra shapes sit exactly on the bound
    assert dimension(shape(n - 3, 3)) == bound
    assert dimension(shape(2, 2, 2, *ones(n - 6))) == bound
    assert small_degree_shapes(n, bound - 1) == eight_small_shapes(n)


@pytest.mark.parametrize("n", [9, 11, 12, 13, 14, 15])
def test_eight_shapes_below_quadratic_bound(n):
    assert small_degree_shapes(n, (n * n - n) // 2) == eight_small_shapes(n)


def test_eight_shapes_break_at_ten():
    # [5,5] and its conjugate have dimension 42 < 45 = (100 - 10) / 2
    extra = small_degree_shapes(10, 45) - eight_small_shapes(10)
    assert extra == {shape(5, 5), shape(2, 2, 2, 2, 2)}
    assert dimension(shape(5, 5)) == 42


@pytest.mark.parametrize("n", range(13, 21))
def test_medium_degree_polynomials(n):
    m = n + 1
    assert dimension(shape(m - 4, 3, 1)) == (n + 1) * n * (n - 2) * (n - 5) // 8
    assert dimension(shape(m - 3, 2, 1)) == (n + 1) * (n - 1) * (n - 3) // 3
    assert dimension(shape(m - 3, 1, 1, 1)) == n * (n - 1) * (n - 2) // 6
    assert dimension(shape(3, 2, 2, *ones(m - 7))) == (n + 1) * n * (n - 2) * (n - 5) // 8
    assert dimension(shape(3, 2, *ones(m - 5))) == (n + 1) * (n - 1) * (n - 3) // 3
    assert dimension(shape(4, *ones(m - 4))) == n * (n - 1) * (n - 2) // 6
    # the four-box-second-row shape and its conjugate
    four = (n + 1) * n * (n - 1) * (n - 6) // 24
    assert dimension(shape(m - 4, 4)) == four
    assert dimension(shape(2, 2, 2, 2, *ones(m - 8))) == four


def test_mn_trivial_and_sign():
    for ct in partitions_of(6):
        assert mn_character_value(shape(6), ct) == 1
        assert mn_character_value(shape(*ones(6)), ct) == (-1) ** (6 - len(ct))


def test_mn_against_explicit_matrices():
    # standard 2-dimensional representation of S_3 on {x1 + x2 + x3 = 0}
    r = np.array([[-1, -1], [1, 0]])  # 3-cycle
    s = np.array([[0, 1], [1, 0]])  # transposition
    assert mn_character_value(shape(2, 1), (3,)) == int(np.trace(r)) == -1
    assert mn_character_value(shape(2, 1), (2, 1)) == int(np.trace(s)) == 0
    assert mn_character_value(shape(2, 1), (1, 1, 1)) == 2


@pytest.mark.parametrize("n", range(1, 11))
def test_mn_identity_gives_dimension(n):
    for p in partitions_of(n):
        assert mn_character_value(Shape(p), ones(n)) == dimension(Shape(p))


def test_character_orthogonality_at_7():
    shapes = [Shape(p) for p in partitions_of(7)]
    classes = list(partitions_of(7))
    table = [[mn_character_value(s, c) for c in classes] for s in shapes]
    for i in range(len(shapes)):
        for j in range(len(shapes)):
            inner = sum(class_size(c) * table[i][x] * table[j][x] for x, c in enumerate(classes))
            assert inner == (factorial(7) if i == j else 0)
    # column orthogonality
    for a in range(len(classes)):
        for b in range(len(classes)):
            col = sum(table[i][a] * table[i][b] for i in range(len(shapes)))
            expected = factorial(7) // class_size(classes[a]) if a == b else 0
            assert col == expected


def test_class_sizes_sum():
    assert sum(class_size(c) for c in partitions_of(8)) == factorial(8)


def test_group_spec_parsing():
    g = GroupSpec.parse("young_alt:7,1,1")
    assert g.kind == "young_alt" and g.parts == (7, 1, 1)
    with pytest.raises(EkrError):
        GroupSpec.parse("cyclic:9")


@pytest.mark.parametrize("spec,orbits", [
    ("young:9", 1), ("young:8,1", 1), ("young:7,2", 2), ("young:6,3", 3), ("young:7,1,1", 2),
    ("young_alt:7,2", 2), ("young_alt:7,1,1", 2), ("young_alt:6,3", 3),
])
def test_orbit_counts_3_3(spec, orbits):
    assert orbit_count(3, 3, spec) == orbits


def test_orbit_count_by_burnside_on_small_case():
    # brute-force orbits of S_4 x S_2 on the 15 matchings of six points
    from ekrlab.partitions import VertexSet, apply_permutation

    vs = VertexSet(2, 3)
    seen, orbits = set(), 0
    group = [p + tuple(x + 4 for x in q) for p in permutations((1, 2, 3, 4)) for q in permutations((1, 2))]
    for i in range(vs.u):
        if i in seen:
            continue
        orbits += 1
        seen |= {vs.index(apply_permutation(vs[i], g)) for g in group}
    assert orbit_count(2, 3, "young:4,2") == orbits


def test_two_row_young_rule():
    rec = two_row_young_rule(9, 1)
    assert {s for s, _ in rec.terms} == {shape(9), shape(8, 1)}
    rec3 = two_row_young_rule(9, 3)
    assert {s for s, _ in rec3.terms} == {shape(9), shape(8, 1), shape(7, 2), shape(6, 3)}
    assert rec3.dimension_sum() == 84


def test_fixed_points_of_identity():
    assert fixed_point_counts(3, 3)[(1,) * 9] == 280


def test_decomposition_3_3():
    rec = permutation_character_decompose(3, 3)
    assert rec.is_multiplicity_free()
    assert rec.dimension_sum() == 280
    for s in [shape(9), shape(7, 2), shape(6, 3)]:
        assert rec.multiplicity(s) == 1
    for s in [shape(8, 1), shape(7, 1, 1), shape(*ones(9)), shape(2, *ones(7)), shape(2, 2, *ones(5)),
              shape(3, *ones(6)), shape(2, 2, 2, 1, 1, 1)]:
        assert rec.multiplicity(s) == 0


def test_decomposition_json():
    doc = permutation_character_decompose(2, 3).to_json()
    assert doc["verified_degree_sum"] == doc["degree"] == "15"
    assert {"shape": [6], "multiplicity": 1} in doc["terms"]


@pytest.mark.parametrize("k,ell", [(3, 3), (2, 4)])
def test_young_orbit_identity(k, ell):
    rec = permutation_character_decompose(k, ell)
    for m in (1, 2, 3):
        orbits, mult_sum = young_orbit_identity(k, ell, m, rec)
        assert orbits == mult_sum


def test_decompose_refuses_large_n():
    with pytest.raises(EkrError):
        permutation_character_decompose(4, 4)
