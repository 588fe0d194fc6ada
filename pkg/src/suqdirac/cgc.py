"""Clebsch-Gordan coefficients for the fundamental corepresentation times u^lambda.

The squared factors are the linking and terminal brackets. Signs: each
linking factor between rows a, a+1 gets -1 when m_{a+1} < m_a; this makes
the full CG matrix orthogonal.
"""
import math
from dataclasses import dataclass
from functools import lru_cache

from . import _backend
from .qarith import Scalar, as_qparam, q_power, scalar_sum, weyl_q_dimension
from .tableaux import apply_move, enumerate_tableaux, psi, rank, raw_apply, is_valid


@dataclass(frozen=True)
class CGValue:
    magnitude: Scalar
    exponent: int
    prefactor: Scalar
    sign: int

    @property
    def value(self):
        return self.sign * self.magnitude.decode()

    def __float__(self):
        return float(self.value)


def _check(i, r, M):
    ell = rank(r)
    if not 1 <= i <= ell + 1 or len(M) != i:
        raise ValueError(f"need 1 <= i <= {ell + 1} and |M| = i, got i={i}, M={M}")
    if apply_move(M, r) is None:
        raise ValueError(f"M(r) is not a valid tableau for M={M}, r={r}")


def cg_exponent(i, r, M):
    """The integer C(i, r, M): q-order of C_q(i, r, M(r))."""
    _check(i, r, M)
    ell = rank(r)

    def H(a, b):
        return r[a][b - 1] - r[a - 1][b]

    def V(a, b):
        return r[a - 1][b - 1] - r[a][b - 1]

    tot = 0
    for a in range(1, i):
        lo, hi = min(M[a - 1], M[a]), max(M[a - 1], M[a])
        tot += sum(H(a, b) for b in range(lo, hi))
        tot += 2 * sum(V(a, b) for b in range(M[a] + 1, M[a - 1]))
    if i <= ell:
        tot += sum(H(i, b) for b in range(M[i - 1], ell + 2 - i))
    return tot


def bracket_square(kind, row_a, row_a1, j, k, q):
    """Squared linking (boxes at j and k) or terminal (box at j) factor."""
    q = as_qparam(q)
    row_a, row_a1 = tuple(row_a), tuple(row_a1)
    if kind == "linking":
        s, v = _backend.link_square(row_a, row_a1, j, k, q.logq)
    elif kind == "terminal":
        s, v = _backend.terminal_square(row_a, row_a1, j, q.logq)
    else:
        raise ValueError(f"kind must be 'linking' or 'terminal', got {kind!r}")
    return Scalar(s, v)


@lru_cache(maxsize=None)
def _cg_log(r, M, logq):
    return _backend.cg_log(r, M, logq)


def cg_log(r, M, q):
    """(sign, log|C_q|) for move M on tableau r, cached."""
    return _cg_log(r, tuple(M), as_qparam(q).logq)


def cg_float(r, M, q):
    s, v = cg_log(r, M, q)
    return s * math.exp(v) if s else 0.0


def cg_coefficient(i, r, M, q):
    q = as_qparam(q)
    M = tuple(M)
    e = cg_exponent(i, r, M)
    s, v = cg_log(r, M, q)
    if s == 0:
        raise ValueError(f"vanishing bracket for M={M}, r={r}")
    mag = Scalar(1, v)
    return CGValue(mag, e, mag / q_power(e, q), s)


def kappa(r, m, q):
    """sqrt(d_lambda / d_mu) q^(psi(r) - psi(m))."""
    q = as_qparam(q)
    dl = weyl_q_dimension(r[0], q)
    dm = weyl_q_dimension(m[0], q)
    return (dl / dm).sqrt() * q_power(float(psi(r) - psi(m)), q)


@lru_cache(maxsize=None)
def _kappa_float(r, m, qv):
    return float(kappa(r, m, qv))


def kappa_float(r, m, q):
    return _kappa_float(r, m, as_qparam(q).q)


def q_dim_sum(lam, q):
    q = as_qparam(q)
    return scalar_sum([q_power(2 * float(psi(r)), q) for r in enumerate_tableaux(lam)])


def cg_targets(r, i, ell=None):
    """Valid moves of length i on r with their raw (uncanonicalized) targets."""
    from .tableaux import moves
    ell = rank(r) if ell is None else ell
    out = []
    for M in moves(i, ell):
        s = raw_apply(M, r)
        if is_valid(s):
            out.append((M, s))
    return out


def cg_matrix(lam, q):
    """Full CG matrix of 1 (x) lam: rows targets (mu, n), columns (i, r)."""
    import numpy as np
    ell = len(lam) - 1
    cols = [(i, r) for i in range(1, ell + 2) for r in enumerate_tableaux(lam)]
    rows = {}
    ent = []
    for c, (i, r) in enumerate(cols):
        for M, s in cg_targets(r, i, ell):
            rows.setdefault(s, len(rows))
            ent.append((rows[s], c, cg_float(r, M, q)))
    A = np.zeros((len(rows), len(cols)))
    for a, b, v in ent:
        A[a, b] = v
    return A, list(rows), cols
