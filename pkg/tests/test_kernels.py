import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ekrlab import _kernels_py as py
from ekrlab.partitions import vertex_set

cy = pytest.importorskip("ekrlab._kernels", reason="compiled kernels not built")

CASES = [(2, 3), (3, 3), (2, 4), (4, 3), (3, 4)]


def test_backend_names():
    assert py.BACKEND == "python"
    assert cy.BACKEND == "cython"


@pytest.mark.parametrize("k,ell", CASES)
def test_meet_tables_agree(k, ell):
    vs = vertex_set(k, ell)
    for b in (0, vs.u // 3, vs.u - 1):
        base = vs.labels[b]
        assert np.array_equal(py.meet_tables(base, vs.labels, ell), np.asarray(cy.meet_tables(base, vs.labels, ell)))


@pytest.mark.parametrize("k,ell", CASES)
@pytest.mark.parametrize("t", [2, 3])
def test_adjacent_to_agrees(k, ell, t):
    if t > k:
        pytest.skip("threshold above block size")
    vs = vertex_set(k, ell)
    base = vs.labels[vs.u // 2]
    assert np.array_equal(py.adjacent_to(base, vs.labels, ell, t), np.asarray(cy.adjacent_to(base, vs.labels, ell, t)))


@pytest.mark.parametrize("k,ell", [(2, 3), (3, 3), (2, 4), (4, 3)])
def test_dense_adjacency_agrees(k, ell):
    vs = vertex_set(k, ell)
    assert np.array_equal(py.dense_adjacency(vs.labels, ell, 2), np.asarray(cy.dense_adjacency(vs.labels, ell, 2)))


@settings(max_examples=30, deadline=None)
@given(perm=st.permutations(list(range(9))))
def test_permuted_codes_agree(perm):
    vs = vertex_set(3, 3)
    p = np.asarray(perm, dtype=np.intp)
    assert np.array_equal(py.permuted_codes(vs.labels, p, 3), np.asarray(cy.permuted_codes(vs.labels, p, 3)))


def test_pure_python_switch():
    code = "import ekrlab; print(ekrlab.BACKEND)"
    env = dict(os.environ, EKRLAB_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


def test_fallback_end_to_end():
    code = ("from ekrlab.spectra import spectrum_by_moments; "
            "r = spectrum_by_moments(3, 3); print([int(x) for x in r.eigenvalues], list(r.multiplicities))")
    env = dict(os.environ, EKRLAB_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "[36, 8, 2, -4, -12] [1, 48, 120, 84, 27]"
