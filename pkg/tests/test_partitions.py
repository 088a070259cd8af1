from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ekrlab.errors import BudgetExceeded, EkrError
from ekrlab.partitions import (
    UniformPartition,
    VertexSet,
    apply_permutation,
    canonical_coclique,
    coclique_size,
    compose,
    count_partitions,
    enumerate_partitions,
)


def brute_partitions(k, ell):
    """Chop every permutation of 1..n into consecutive blocks and dedupe."""
    n = k * ell
    seen = set()
    for perm in permutations(range(1, n + 1)):
        blocks = frozenset(frozenset(perm[i * k:(i + 1) * k]) for i in range(ell))
        seen.add(blocks)
    return seen


@pytest.mark.parametrize("k,ell,u", [(2, 2, 3), (2, 3, 15), (3, 3, 280), (3, 4, 15400), (4, 3, 5775),
                                     (1, 6, 1), (6, 1, 1), (3, 5, 1401400)])
def test_count_known_values(k, ell, u):
    assert count_partitions(k, ell) == u


def test_count_empty_ground_set():
    assert count_partitions(3, 0) == 1


def test_count_rejects_negative():
    with pytest.raises(EkrError):
        count_partitions(-1, 2)


@pytest.mark.parametrize("k,ell", [(2, 2), (2, 3), (3, 2), (2, 4)])
def test_enumeration_matches_brute_force(k, ell):
    got = {frozenset(frozenset(b) for b in p.blocks) for p in enumerate_partitions(k, ell)}
    assert got == brute_partitions(k, ell)


def test_enumeration_is_sorted_and_distinct():
    items = [p.blocks for p in enumerate_partitions(3, 3)]
    assert len(items) == len(set(items)) == 280
    assert items == sorted(items)


def test_enumeration_budget():
    with pytest.raises(BudgetExceeded):
        list(enumerate_partitions(3, 5, budget=1000))


def test_text_roundtrip_and_canonical_order():
    p = UniformPartition.parse("9,8,7|3,1,2|6,4,5")
    assert str(p) == "1,2,3|4,5,6|7,8,9"
    assert UniformPartition.parse(str(p)) == p


@pytest.mark.parametrize("text", ["1,2|3", "1,2|2,3", "1,2|3,5", "", "a,b|c,d"])
def test_parse_rejects_malformed(text):
    with pytest.raises(EkrError):
        UniformPartition.parse(text)


def test_labels_roundtrip():
    for p in enumerate_partitions(2, 4):
        assert UniformPartition.from_labels(p.labels()) == p


def test_vertex_set_indexes_in_enumeration_order():
    vs = VertexSet(3, 3)
    for i, p in enumerate(enumerate_partitions(3, 3)):
        assert vs.index(p) == i
        assert vs[i] == p


perm9 = st.permutations(list(range(1, 10)))
partition33 = st.integers(0, 279).map(lambda i: VertexSet(3, 3)[i])


@settings(max_examples=100, deadline=None)
@given(p=partition33, sigma=perm9, pi=perm9)
def test_group_action_laws(p, sigma, pi):
    ident = tuple(range(1, 10))
    assert apply_permutation(p, ident) == p
    assert apply_permutation(apply_permutation(p, sigma), pi) == apply_permutation(p, compose(pi, sigma))


@settings(max_examples=50, deadline=None)
@given(sigma=perm9)
def test_permutation_images_agree_with_apply(sigma):
    vs = VertexSet(3, 3)
    images = vs.permutation_images(sigma)
    assert sorted(images.tolist()) == list(range(280))
    for i in (0, 17, 279):
        assert vs[int(images[i])] == apply_permutation(vs[i], sigma)


def test_apply_rejects_non_permutations():
    p = UniformPartition.identity(2, 2)
    with pytest.raises(EkrError):
        apply_permutation(p, (1, 1, 2, 3))
    with pytest.raises(EkrError):
        apply_permutation(p, (1, 2, 3))


@pytest.mark.parametrize("k,ell", [(2, 3), (3, 3), (3, 4), (4, 3)])
def test_canonical_coclique(k, ell):
    fam = canonical_coclique(k, ell, 1, 2)
    assert len(fam) == coclique_size(k, ell)
    assert all(p.same_block(1, 2) for p in fam)


def test_canonical_coclique_sizes():
    assert coclique_size(3, 3) == 70
    assert coclique_size(3, 4) == 2800


def test_canonical_coclique_bad_indices():
    with pytest.raises(EkrError):
        canonical_coclique(3, 3, 1, 1)
    with pytest.raises(EkrError):
        canonical_coclique(3, 3, 1, 10)
