import math
import os
import subprocess
import sys

import pytest
from hypothesis import given, strategies as st

import suqdirac
from suqdirac import _pykernels
from suqdirac.tableaux import enumerate_tableaux, moves, raw_apply, is_valid, young_diagrams

ck = pytest.importorskip("suqdirac._ckernels")


def close(a, b):
    return a[0] == b[0] and (a[0] == 0 or math.isclose(a[1], b[1], rel_tol=1e-12, abs_tol=1e-12))


def test_compiled_backend_selected():
    assert suqdirac.backend == "cython"


@given(n=st.integers(-80, 80), q=st.floats(0.05, 0.95))
def test_qint_parity(n, q):
    lq = math.log(q)
    assert close(ck.log_qint(n, lq), _pykernels.log_qint(n, lq))


@pytest.mark.parametrize("ell", [1, 2, 3])
@pytest.mark.parametrize("q", [0.3, 0.5, 0.8])
def test_cg_parity(ell, q):
    lq = math.log(q)
    n = 0
    for lam in young_diagrams(ell, 3):
        for r in enumerate_tableaux(lam):
            for i in range(1, ell + 2):
                for M in moves(i, ell):
                    if is_valid(raw_apply(M, r)):
                        assert close(ck.cg_log(r, M, lq), _pykernels.cg_log(r, M, lq))
                        n += 1
    assert n > 0


def test_bracket_parity():
    lq = math.log(0.4)
    rows = [((3, 1, 0), (2, 0)), ((4, 2, 1), (3, 1)), ((2, 0), (1,))]
    for ra, rb in rows:
        for j in range(1, len(ra) + 1):
            assert close(ck.terminal_square(ra, rb, j, lq), _pykernels.terminal_square(ra, rb, j, lq))
            for k in range(1, len(rb) + 1):
                a = ck.link_square(ra, rb, j, k, lq)
                b = _pykernels.link_square(ra, rb, j, k, lq)
                assert close(a, b)


def test_pure_python_fallback():
    env = dict(os.environ, SUQDIRAC_PURE_PYTHON="1")
    code = ("import suqdirac; from suqdirac.cgc import cg_matrix; import numpy as np;"
            "A, r, c = cg_matrix((2, 1, 0), 0.5);"
            "print(suqdirac.backend, float(np.abs(A @ A.T - np.eye(len(r))).max()))")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    name, err = out.stdout.split()
    assert name == "python" and float(err) < 1e-12
