from math import factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ekrlab.errors import EkrError
from ekrlab.partitions import UniformPartition, VertexSet, apply_permutation
from ekrlab.tables import (
    MeetTable,
    all_line_sum_tables,
    bender_estimate,
    canonicalize,
    count_adjacency_tables,
    enumerate_adjacency_tables,
    meet_table,
)


def test_meet_table_of_identity_with_itself():
    p = UniformPartition.identity(3, 3)
    m = meet_table(p, p)
    assert m.entries == ((3, 0, 0), (0, 3, 0), (0, 0, 3))
    m.check_margins(3)


def test_meet_table_example():
    p = UniformPartition.parse("1,2,3|4,5,6|7,8,9")
    q = UniformPartition.parse("1,4,7|2,5,8|3,6,9")
    m = meet_table(p, q)
    assert m.entries == ((1, 1, 1), (1, 1, 1), (1, 1, 1))
    assert m.max_entry() == 1


def test_table_text_roundtrip():
    m = MeetTable.parse("2,1,0;1,1,1;0,1,2")
    assert MeetTable.parse(str(m)) == m
    with pytest.raises(EkrError):
        MeetTable.parse("1,2;3")


def test_bad_margins_rejected():
    with pytest.raises(EkrError):
        MeetTable.parse("2,0;0,1").check_margins(2)


perm12 = st.permutations(list(range(1, 13)))
row4 = st.permutations(list(range(4)))


@settings(max_examples=500, deadline=None)
@given(i=st.integers(0, 15399), j=st.integers(0, 15399), sigma=perm12, rows=row4, cols=row4)
def test_meet_table_shuffle_invariance(i, j, sigma, rows, cols):
    vs = VertexSet(3, 4)
    p, q = vs[i], vs[j]
    label = canonicalize(meet_table(p, q))
    # relabelling points moves both partitions; the orbital must not change
    assert canonicalize(meet_table(apply_permutation(p, sigma), apply_permutation(q, sigma))) == label
    # permuting rows and columns of the table directly
    m = meet_table(p, q).entries
    shuffled = MeetTable(tuple(tuple(m[r][c] for c in cols) for r in rows))
    assert canonicalize(shuffled) == label


def test_canonical_form_is_idempotent():
    m = MeetTable.parse("0,1,2;2,1,0;1,1,1")
    c = canonicalize(m).canonical
    assert canonicalize(c).canonical == c


def test_orbital_count_at_3_3():
    vs = VertexSet(3, 3)
    base = vs[0]
    labels = {canonicalize(meet_table(base, q)) for q in vs}
    # meet tables with line sums 3 up to row/column permutation
    assert len(labels) == 5


@pytest.mark.parametrize("k,ell", [(k, ell) for ell in range(1, 6) for k in range(0, ell + 1)])
def test_dp_matches_enumeration(k, ell):
    tables = list(enumerate_adjacency_tables(k, ell))
    assert len(set(tables)) == len(tables)
    for m in tables:
        m.check_margins(k)
        assert m.max_entry() <= 1
    assert count_adjacency_tables(k, ell) == len(tables)


@pytest.mark.parametrize("k,ell", [(k, ell) for ell in range(1, 5) for k in range(0, ell + 1)])
def test_dp_matches_brute_force(k, ell):
    assert count_adjacency_tables(k, ell) == sum(1 for _ in all_line_sum_tables(k, ell))


def test_k_larger_than_ell_has_no_tables():
    assert count_adjacency_tables(4, 3) == 0
    assert list(enumerate_adjacency_tables(4, 3)) == []


def test_known_counts():
    # permutation matrices, then 0-1 tables with line sums 2
    assert count_adjacency_tables(1, 6) == factorial(6)
    assert count_adjacency_tables(2, 4) == 90
    assert count_adjacency_tables(3, 6) == 297200


def test_dp_at_3_8_matches_degree():
    d = 1001695548672
    assert count_adjacency_tables(3, 8) * 6**8 == d * factorial(8)


def test_bender_estimate_comparison():
    est = bender_estimate(2, 4)
    # 8!/2^8 = 157.5, times exp(-1/2)
    assert abs(float(est) - 95.5286) < 1e-4
    assert count_adjacency_tables(2, 4) == 90


def test_bender_estimate_precision():
    import mpmath

    with mpmath.workdps(80):
        ref = mpmath.mpf(157.5) * mpmath.exp(mpmath.mpf(-1) / 2)
        assert abs(bender_estimate(2, 4, dps=60) - ref) < mpmath.mpf(10) ** -55


@pytest.mark.parametrize("ell", range(1, 8))
def test_bender_exact_for_permutation_matrices(ell):
    assert bender_estimate(1, ell) == factorial(ell) == count_adjacency_tables(1, ell)


def test_bender_ratios_in_window():
    for ell in range(6, 11):
        r = count_adjacency_tables(3, ell) / bender_estimate(3, ell)
        assert 0.5 < r < 2


def test_small_counts():
    assert count_adjacency_tables(3, 3) == 1
    assert count_adjacency_tables(3, 4) == 24


@settings(max_examples=100, deadline=None)
@given(i=st.integers(0, 279), j=st.integers(0, 279))
def test_transpose_swaps_arguments(i, j):
    vs = VertexSet(3, 3)
    assert meet_table(vs[i], vs[j]).transpose() == meet_table(vs[j], vs[i])


def test_bender_ratio_approaches_one():
    ratios = [float(count_adjacency_tables(3, ell) / bender_estimate(3, ell)) for ell in (6, 10, 14)]
    assert all(abs(1 - r) > abs(1 - s) for r, s in zip(ratios, ratios[1:]))
