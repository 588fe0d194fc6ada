import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from suqdirac.cgc import (bracket_square, cg_coefficient, cg_exponent, cg_matrix, cg_targets,
                          kappa, q_dim_sum)
from suqdirac.qarith import weyl_q_dimension
from suqdirac.tableaux import (apply_move, canonicalize, enumerate_tableaux, level, move_M,
                               move_N, sphere_tableau, young_diagrams, zero_tableau)

from conftest import all_tableaux


@pytest.mark.parametrize("ell", [1, 2, 3])
def test_exponent_examples(ell):
    for n in range(3):
        for k in range(4):
            r = sphere_tableau(n, k, ell)
            assert cg_exponent(1, r, (1,)) == k
            if k > 0:
                assert cg_exponent(1, r, (ell + 1,)) == 0
    N10 = move_N(1, 0, ell)
    for r in all_tableaux(ell, 2):
        if apply_move(N10, r) is not None:
            assert cg_exponent(ell + 1, r, N10) == 0


def test_exponent_rejects_invalid():
    with pytest.raises(ValueError):
        cg_exponent(1, zero_tableau(1), (2,))      # lowers r_12 below 0 after canonicalization
    with pytest.raises(ValueError):
        cg_exponent(2, zero_tableau(1), (1,))      # length mismatch


def test_bracket_square_kind():
    with pytest.raises(ValueError):
        bracket_square("other", (1, 0), (0,), 1, 1, 0.5)
    s = bracket_square("terminal", (1, 0), (0,), 1, 1, 0.5)
    assert s.sign == 1 and math.isfinite(s.log)


def test_trivial_lambda_unit():
    for ell in (1, 2, 3):
        z = zero_tableau(ell)
        for i in range(1, ell + 2):
            for M, t in cg_targets(z, i, ell):
                c = cg_coefficient(i, z, M, 0.5)
                assert abs(c.value) == pytest.approx(1.0, abs=1e-14)


def test_ell1_four_squares_normalize():
    A, rows, cols = cg_matrix((1, 0), 0.5)
    assert A.shape == (4, 4)
    assert np.allclose((A ** 2).sum(axis=1), 1, atol=1e-12)


@pytest.mark.parametrize("ell", [1, 2])
@pytest.mark.parametrize("q", [0.3, 0.5, 0.8])
def test_normalization(ell, q):
    for lam in young_diagrams(ell, 3):
        A, rows, cols = cg_matrix(lam, q)
        assert np.abs((A ** 2).sum(axis=1) - 1).max() <= 1e-8


@pytest.mark.parametrize("n", range(5))
def test_ell1_orthogonal(n):
    A, rows, cols = cg_matrix((n, 0), 0.5)
    assert A.shape[0] == A.shape[1]
    assert np.abs(A @ A.T - np.eye(len(rows))).max() <= 1e-8


def test_ell2_orthogonal():
    # the sign rule also gives orthogonality beyond l = 1
    for lam in young_diagrams(2, 3):
        A, rows, cols = cg_matrix(lam, 0.5)
        assert np.abs(A @ A.T - np.eye(len(rows))).max() <= 1e-8


@pytest.mark.parametrize("ell", [1, 2, 3])
def test_asymptotics_sphere(ell):
    q = 1e-3
    for k in range(4):
        r = sphere_tableau(0, k, ell)
        c = cg_coefficient(1, r, (1,), q)
        assert c.exponent == k
        assert abs(c.value) / q ** k == pytest.approx(1.0, rel=1e-2)
        m = apply_move((1,), r)
        assert float(kappa(r, m, q)) / q ** ell == pytest.approx(1.0, rel=1e-2)
        if k > 0:
            c = cg_coefficient(1, r, (ell + 1,), q)
            assert abs(c.value) == pytest.approx(1.0, rel=1e-2)
            m = apply_move((ell + 1,), r)
            assert float(kappa(r, m, q)) == pytest.approx(1.0, rel=1e-2)


def test_kappa_example():
    z = zero_tableau(1)
    m = apply_move(move_M(1, 1), z)
    assert m == ((1, 0), (0,))
    # sqrt(1 / 2.5) * 0.5^(1/2)
    assert float(kappa(z, m, 0.5)) == pytest.approx(0.447214, abs=1e-6)
    # the other target of the trivial column, ((1,0),(1)), has the opposite psi shift
    assert float(kappa(z, ((1, 0), (1,)), 0.5)) == pytest.approx(0.894427, abs=1e-6)


def test_q_dim_sum_examples():
    assert float(q_dim_sum((0, 0), 0.5)) == pytest.approx(1.0)
    assert float(q_dim_sum((1, 0), 0.5)) == pytest.approx(2.5, rel=1e-14)
    assert float(q_dim_sum((2, 1, 0), 0.5)) == pytest.approx(float(weyl_q_dimension((2, 1, 0), 0.5)),
                                                           rel=1e-10)


def _prefactor_range(ell, q, top):
    by_level = {}
    for r in all_tableaux(ell, top):
        lv = level(r)
        for i in range(1, ell + 2):
            for M, t in cg_targets(r, i, ell):
                p = cg_coefficient(i, r, M, q).prefactor.log
                lo, hi = by_level.get(lv, (0.0, 0.0))
                by_level[lv] = (min(lo, p), max(hi, p))
    return by_level


@pytest.mark.parametrize("ell", [1, 2, 3])
@pytest.mark.parametrize("q", [0.5, 0.8])
def test_prefactor_in_window(ell, q):
    by_level = _prefactor_range(ell, q, 5)
    assert max(max(abs(a), abs(b)) for a, b in by_level.values()) <= math.log(1e3)


@pytest.mark.parametrize("ell", [1, 2, 3])
def test_prefactor_saturates_small_q(ell):
    # at q = 0.3 the constant is q-dependent; it must stop moving with the level
    by_level = _prefactor_range(ell, 0.3, 5)
    lo4 = min(a for lv, (a, b) in by_level.items() if lv <= 4)
    lo5 = min(a for a, b in by_level.values())
    hi5 = max(b for a, b in by_level.values())
    assert abs(lo5 - lo4) < 0.01 and hi5 <= 1e-12


@given(r=st.sampled_from(list(all_tableaux(2, 4))), q=st.sampled_from([0.3, 0.5, 0.8]))
def test_kappa_depends_on_psi_shift(r, q):
    for i in range(1, 4):
        for M, t in cg_targets(r, i, 2):
            m = canonicalize(t)
            k = float(kappa(r, m, q))
            assert 1e-3 <= k <= 1e3
            dl = float(weyl_q_dimension(r[0], q))
            dm = float(weyl_q_dimension(m[0], q))
            from suqdirac.tableaux import psi
            assert k == pytest.approx(math.sqrt(dl / dm) * q ** float(psi(r) - psi(m)), rel=1e-12)


@pytest.mark.parametrize("ell", [1, 2])
def test_phase_convention(ell):
    # first nonzero entry of each target row, in (i, r) column order, is positive
    for lam in young_diagrams(ell, 3):
        A, rows, cols = cg_matrix(lam, 0.5)
        for a in range(len(rows)):
            nz = np.flatnonzero(A[a])
            assert A[a, nz[0]] > 0
