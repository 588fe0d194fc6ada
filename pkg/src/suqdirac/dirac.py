"""Equivariant Dirac operators: eigenvalue maps, commutators, counting, signs."""
from collections import defaultdict
from dataclasses import dataclass, field
from functools import reduce
from typing import Callable, Optional

import numpy as np
import scipy.sparse as sp

from .qarith import weyl_dimension
from .tableaux import (coords, enumerate_tableaux, level, plane_key, sphere_top, young_diagrams)


@dataclass
class DiracSpec:
    """d maps a tableau (group) or a sector (n, k) (sphere) to its eigenvalue.

    For matrix-valued operators `coef` maps the same key to the coefficient vector
    c with T = sum_k c_k gamma_k, and `gammas` holds the generators.
    `block_value`, when set, gives the eigenvalue as a function of the top row
    (group) or of (n, k) (sphere) alone; counting then needs no enumeration.
    """
    basis: object
    d: Optional[Callable] = None
    name: str = ""
    mode: str = "scalar"
    coef: Optional[Callable] = None
    gammas: Optional[list] = None
    block_value: Optional[Callable] = None

    def eigenvalue(self, key):
        if self.mode == "scalar":
            return self.d(key)
        c = np.asarray(self.coef(key), dtype=float)
        return float(np.sqrt(c @ c))

    def T(self, key):
        """The multiplicity-space matrix (matrix mode) or the 1x1 eigenvalue."""
        if self.mode == "scalar":
            return np.array([[self.d(key)]], dtype=float)
        c = self.coef(key)
        return sum(ck * g for ck, g in zip(c, self.gammas))

    def diag(self, fn=None):
        """Per-basis-vector values of fn (default d), following the basis order."""
        fn = fn or self.d
        b = self.basis
        out = np.empty(b.dim)
        for key, top, T, off, w in b.blocks:
            if b.space == "group":
                vals = np.array([fn(r) for r in T], dtype=float)
                out[off:off + w] = np.repeat(vals, len(T))
            else:
                out[off:off + w] = fn(key)
        return out


def _need(basis, space):
    if basis.space != space:
        raise ValueError(f"needs the {space} basis, got {basis.space}")


def build_d_tilde(basis):
    _need(basis, "group")
    return DiracSpec(basis, d=level, name="D_tilde", block_value=lambda top: top[0] - top[-1])


def f_i(r, i):
    """min over a of H_{ai}(r)."""
    d = coords(r)
    ell = d.ell
    if not 1 <= i <= ell:
        raise ValueError(f"i must lie in 1..{ell}")
    return min(d.H[a - 1][i - 1] for a in range(1, ell + 2 - i))


def build_Ni(i, basis):
    _need(basis, "group")
    if not 1 <= i <= basis.ell:
        raise ValueError(f"i must lie in 1..{basis.ell}")
    return DiracSpec(basis, d=lambda r: f_i(r, i), name=f"N_{i}")


def clifford_generators(n):
    """n mutually anticommuting Hermitian involutions of size 2^ceil(n/2), entries in {0,+-1,+-i}."""
    if n < 1:
        raise ValueError("need at least one generator")
    X = np.array([[0, 1], [1, 0]], dtype=complex)
    Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
    Z = np.array([[1, 0], [0, -1]], dtype=complex)
    I = np.eye(2, dtype=complex)
    nq = (n + 1) // 2
    out = []
    for g in range(n):
        p, which = divmod(g, 2)
        ops = [Z] * p + [X if which == 0 else Y] + [I] * (nq - p - 1)
        out.append(reduce(np.kron, ops))
    return out


@dataclass
class SpinSet:
    m: int
    gammas: list


def spin_matrices(ell):
    g = clifford_generators(ell + 1)
    return SpinSet(g[0].shape[0], g)


def anticommutation_exact(gammas):
    """True iff g_i g_j + g_j g_i = 2 delta_ij I with exact equality."""
    m = gammas[0].shape[0]
    I2 = 2 * np.eye(m, dtype=complex)
    for a, ga in enumerate(gammas):
        for b, gb in enumerate(gammas):
            target = I2 if a == b else np.zeros_like(I2)
            if not np.array_equal(ga @ gb + gb @ ga, target):
                return False
    return True


def build_full_D(basis, q=None):
    """sum_i N_i (x) gamma_i + D_tilde (x) gamma_{ell+1}; q is accepted for symmetry, unused."""
    _need(basis, "group")
    ell = basis.ell
    S = spin_matrices(ell)
    return DiracSpec(basis, name="D_full", mode="matrix", gammas=S.gammas,
                     coef=lambda r: [f_i(r, i) for i in range(1, ell + 1)] + [level(r)],
                     d=level)


def build_coordinate_D(basis, ordering=None):
    """sum_k D_k (x) gamma_k with D_k the coordinate operators V_a1, H_ab."""
    _need(basis, "group")
    ell = basis.ell
    n = ell * (ell + 3) // 2
    ordering = list(range(n)) if ordering is None else list(ordering)
    if sorted(ordering) != list(range(n)):
        raise ValueError(f"ordering must be a permutation of range({n})")
    g = clifford_generators(n)

    def coef(r):
        f = coords(r).flat()
        return [f[k] for k in ordering]

    return DiracSpec(basis, name="D_coord", mode="matrix", gammas=g, coef=coef, d=level)


def sphere_d(n, k):
    return -k if n == 0 else n + k


def build_sphere_D(basis):
    _need(basis, "sphere")
    return DiracSpec(basis, d=lambda nk: sphere_d(*nk), name="D_sphere",
                     block_value=lambda nk: sphere_d(*nk))


def from_function(basis, f, name="custom", block_value=None):
    """Scalar DiracSpec from an arbitrary eigenvalue map."""
    return DiracSpec(basis, d=f, name=name, block_value=block_value)


def singular_values(D, key):
    return np.linalg.svd(D.T(key), compute_uv=False)


# ---------------------------------------------------------------- commutators

def power_norm(B, tol=1e-6, maxiter=2000):
    """Operator 2-norm of a sparse matrix by power iteration on B* B."""
    n = B.shape[1]
    if B.nnz == 0 or n == 0:
        return 0.0
    x = np.ones(n) / np.sqrt(n)
    lam = 0.0
    Bt = B.conj().T.tocsr()
    B = B.tocsr()
    for _ in range(maxiter):
        y = Bt @ (B @ x)
        nrm = np.linalg.norm(y)
        if nrm == 0:
            return 0.0
        new = float(np.real(np.vdot(x, y)))
        x = y / nrm
        if abs(new - lam) <= tol * max(abs(new), 1e-300):
            lam = new
            break
        lam = new
    return float(np.sqrt(max(lam, 0.0)))


def commutator(D, A):
    """[D, A] as a sparse matrix (scalar mode) or [D, A (x) I] (matrix mode)."""
    M = A.matrix.tocsc() if hasattr(A, "matrix") else sp.csc_matrix(A)
    if D.mode == "scalar":
        d = D.diag()
        return (sp.diags(d) @ M - M @ sp.diags(d)).tocsc()
    out = None
    for k, g in enumerate(D.gammas):
        dk = D.diag(lambda key, k=k: D.coef(key)[k])
        Ck = sp.kron(sp.diags(dk) @ M - M @ sp.diags(dk), sp.csc_matrix(g))
        out = Ck if out is None else out + Ck
    return out.tocsc()


def commutator_norm(D, A, margin=1):
    """Norm of [D, A] on the interior columns, and the largest single entry."""
    C = commutator(D, A)
    idx = D.basis.interior(margin)
    if D.mode == "matrix":
        m = D.gammas[0].shape[0]
        idx = (idx[:, None] * m + np.arange(m)).ravel()
    Ci = C[:, idx]
    entry = float(abs(Ci).max()) if Ci.nnz else 0.0
    return power_norm(Ci), entry


def commutator_growth(make_D, make_A, schedule, margin=1):
    """For each cutoff N: (N, interior norm of [D, A], max entry).

    make_D(N) -> DiracSpec and make_A(basis) -> SparseOperator.
    """
    out = []
    for N in schedule:
        D = make_D(N)
        A = make_A(D.basis)
        nrm, ent = commutator_norm(D, A, margin)
        out.append((N, nrm, ent))
    return out


def tail_variation(values):
    """Relative change between the last two entries."""
    a, b = values[-2], values[-1]
    return abs(b - a) / max(abs(b), 1e-300)


# ---------------------------------------------------------------- counting

def counting_function(D, Lambda):
    """Number of basis vectors (with multiplicity) with |eigenvalue| <= Lambda.

    Uses dimension formulas when the eigenvalue is constant on blocks. Shipped
    operators have |d| >= level, so the window N >= Lambda holds every such vector.
    """
    b = D.basis
    if Lambda > b.N:
        raise ValueError(f"Lambda={Lambda} exceeds the truncation N={b.N}")
    mult = D.gammas[0].shape[0] if D.mode == "matrix" else 1
    tot = 0
    if b.space == "group":
        for lam in young_diagrams(b.ell, b.N):
            dim = weyl_dimension(lam)
            if D.block_value is not None:
                if abs(D.block_value(lam)) <= Lambda:
                    tot += dim * dim
            else:
                tot += dim * sum(1 for r in enumerate_tableaux(lam) if abs(D.eigenvalue(r)) <= Lambda)
    else:
        for n in range(b.N + 1):
            for k in range(b.N + 1 - n):
                val = D.block_value((n, k)) if D.block_value is not None else D.eigenvalue((n, k))
                if abs(val) <= Lambda:
                    tot += weyl_dimension(sphere_top(n, k, b.ell))
    return tot * mult


def brute_count(D, Lambda):
    """The same count read off the truncated basis."""
    return int(np.sum(np.abs(D.diag()) <= Lambda))


def fit_exponent(L, counts, correction_order=1):
    """Slope p in log N = p log L + c + sum_t a_t L^{-t}, t = 1..correction_order."""
    L = np.asarray(L, dtype=float)
    y = np.log(np.asarray(counts, dtype=float))
    X = [np.log(L), np.ones_like(L)] + [L ** -t for t in range(1, correction_order + 1)]
    coef, *_ = np.linalg.lstsq(np.stack(X, axis=1), y, rcond=None)
    return float(coef[0])


def summability_exponent(D, schedule, correction_order=1):
    """Fitted growth exponent of the counting function over the schedule.

    Returns {'slope': corrected fit, 'plain_slope': plain log-log least squares, ...}.
    The plain slope is biased low at these sizes because N(L) ~ c (L + a)^p.
    """
    L = list(schedule)
    counts = [counting_function(D, x) for x in L]
    return {"slope": fit_exponent(L, counts, correction_order),
            "plain_slope": fit_exponent(L, counts, 0),
            "correction_order": correction_order,
            "schedule": L, "counts": counts}


# ---------------------------------------------------------------- signs

def sign_of(x):
    """sign with the convention sign(0) = +1."""
    return -1 if x < 0 else 1


def sign_decomposition(D):
    """Split the truncated index set by the sign of d and compare with plane unions.

    Group: planes are free planes (keyed by plane_key). Sphere: planes F_n = {r^{nk}: k}.
    A plane goes to the negative side when most of its truncated points are negative;
    points disagreeing with their plane's side are the exceptional set.
    """
    b = D.basis
    planes = defaultdict(list)
    if b.space == "group":
        for key, top, T, off, w in b.blocks:
            for r in T:
                planes[plane_key(r)].append((r, sign_of(D.eigenvalue(r))))
    else:
        for key, top, T, off, w in b.blocks:
            planes[key[0]].append((key, sign_of(D.eigenvalue(key))))
    neg_planes, exceptional = [], []
    n_plus = n_minus = 0
    for pk in sorted(planes):
        pts = planes[pk]
        neg = sum(1 for _, s in pts if s < 0)
        n_minus += neg
        n_plus += len(pts) - neg
        side = -1 if 2 * neg > len(pts) else 1
        if side < 0:
            neg_planes.append(pk)
        exceptional += [p for p, s in pts if s != side]
    return {"n_plus": n_plus, "n_minus": n_minus, "negative_planes": neg_planes,
            "exceptional": exceptional, "n_planes": len(planes)}


def sign_canonical_trail(make_D, schedule):
    """Exceptional-set sizes over a truncation schedule; canonical iff they saturate."""
    sizes = [len(sign_decomposition(make_D(N))["exceptional"]) for N in schedule]
    return {"schedule": list(schedule), "exceptional": sizes,
            "canonical": len(sizes) >= 2 and sizes[-1] == sizes[-2]}
