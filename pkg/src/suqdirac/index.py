"""Index pairing on the sphere: omega, gamma, Q and the trace-formula index."""
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp
from scipy.sparse.csgraph import connected_components

from .qarith import as_qparam
from .repn import BasisSpec, SparseOperator, build_pi_u_sphere
from .tableaux import apply_move, move_M, move_N, sphere_tableau


class GapViolation(RuntimeError):
    """An eigenvalue of omega*omega sits in the gap around (1+q^2)/2."""


def s_k(k, ell):
    """The tableau of sector (0, k) with s_{l+1,1} = 0: last entry of each row 0, the rest k."""
    return tuple(tuple(0 if b == ell - a else k for b in range(ell + 1 - a)) for a in range(ell + 1))


def build_omega(q, basis):
    """q^{-l} pi(u_{1,l+1}) on the sphere basis."""
    q = as_qparam(q)
    U = build_pi_u_sphere(basis.ell + 1, q, basis)
    return SparseOperator(basis, (q.q ** -basis.ell) * U.matrix, U.boundary, "omega")


def omega_zero(basis):
    """The q = 0 limit: exact 0/1 matrix, zero off the n = 0 plane."""
    if basis.space != "sphere":
        raise ValueError("needs the sphere basis")
    ell = basis.ell
    rows, cols = [], []
    boundary = np.zeros(basis.dim, dtype=bool)
    Mlast = move_M(ell + 1, ell + 1)
    N10 = move_N(1, 0, ell)
    for (n, k), top, T, off, w in basis.blocks:
        if n != 0:
            continue
        for t, s in enumerate(T):
            if k > 0 and s[ell][0] == 0:
                tgt = (sphere_tableau(0, k - 1, ell), apply_move(Mlast, s))
            elif k == 0:
                tgt = (sphere_tableau(1, 0, ell), apply_move(N10, s))
            else:
                continue
            if tgt[1] is None:
                raise RuntimeError(f"invalid image at sector (0,{k}), s={s}")
            if tgt[0][0][0] > basis.N:
                boundary[off + t] = True
                continue
            rows.append(basis.index(*tgt))
            cols.append(off + t)
    A = sp.csc_matrix((np.ones(len(rows)), (rows, cols)), shape=(basis.dim, basis.dim))
    return SparseOperator(basis, A, boundary, "omega_0")


def gamma_zero_closed_form(basis):
    """gamma_0 from the closed form: e_{0,k,s^k} -> e_{0,k-1,s^{k-1}}, e_{0,0,s^0} -> 0,
    identity on every other vector."""
    ell = basis.ell
    rows, cols = [], []
    for (n, k), top, T, off, w in basis.blocks:
        for t, s in enumerate(T):
            col = off + t
            if n == 0 and s == s_k(k, ell):
                # the k = 0 vector is the kernel: chi kills its image in sector (1, 0)
                if k > 0:
                    rows.append(basis.index(sphere_tableau(0, k - 1, ell), s_k(k - 1, ell)))
                    cols.append(col)
            else:
                rows.append(col)
                cols.append(col)
    return sp.csc_matrix((np.ones(len(rows)), (rows, cols)), shape=(basis.dim, basis.dim))


@dataclass
class GammaResult:
    op: SparseOperator
    window: np.ndarray           # basis indices on which gamma is computed
    in_gap_boundary: int = 0     # boundary-localized eigenvalues found in the gap
    eig_min_gap_distance: float = float("inf")
    unitarity_residual: float = 0.0  # max column norm of gamma* gamma - I on deep columns


def build_gamma(omega, q=0.0, gap_band=0.1, mass_margin=2):
    """gamma = chi(omega* omega)(omega - I) + I with chi the projection onto eigenvalues
    above (1+q^2)/2, computed on levels <= N-1 where omega* omega is exact.

    Eigenvectors in the gap band with at least half their mass at level <= N-1-mass_margin
    raise GapViolation; boundary-localized ones are counted and reported.
    """
    basis = omega.basis
    qv = float(q.q) if hasattr(q, "q") else float(q)
    W = omega.matrix.tocsc()
    win = np.flatnonzero(basis.levels <= basis.N - 1)
    n = len(win)
    Wi = W[win][:, win]
    if qv == 0.0:
        C = (W.T @ W).tocsc()[win][:, win]
        diagC = C.diagonal()
        off = C - sp.diags(diagC)
        if off.nnz and abs(off).max() > 0:
            raise RuntimeError("omega_0* omega_0 is not diagonal")
        chi = sp.diags((diagC > 0.5).astype(float))
        G = chi @ (Wi - sp.identity(n)) + sp.identity(n)
        full = _embed(G, win, basis.dim)
        return GammaResult(SparseOperator(basis, full, np.zeros(basis.dim, bool), "gamma_0"), win,
                           unitarity_residual=_unitarity(full, basis, mass_margin))
    C = (W.T @ W).tocsc()[win][:, win]
    thr = (1 + qv * qv) / 2
    band = gap_band * (1 - qv * qv)
    ncomp, lab = connected_components(C, directed=False)
    lev = basis.levels[win]
    deep = lev <= basis.N - 1 - mass_margin
    rows, cols, vals = [], [], []
    in_gap_boundary = 0
    dist = float("inf")
    order = np.argsort(lab, kind="stable")
    bounds = np.searchsorted(lab[order], np.arange(ncomp + 1))
    for cidx in range(ncomp):
        idx = order[bounds[cidx]:bounds[cidx + 1]]
        block = C[idx][:, idx].toarray()
        ev, V = np.linalg.eigh(block)
        dist = min(dist, float(np.min(np.abs(ev - thr))))
        gap = np.abs(ev - thr) < band
        for t in np.flatnonzero(gap):
            mass = float(np.sum(V[deep[idx], t] ** 2)) if deep[idx].any() else 0.0
            if mass >= 0.5:
                raise GapViolation(
                    f"eigenvalue {ev[t]:.6f} inside the gap ({thr:.3f} +- {band:.3f}) with interior mass "
                    f"{mass:.2f}; raise N")
            in_gap_boundary += 1
        P = V[:, ev > thr]
        if P.shape[1]:
            chi = P @ P.T
            chi[np.abs(chi) < 1e-15] = 0.0
            r, c = np.nonzero(chi)
            rows.append(idx[r])
            cols.append(idx[c])
            vals.append(chi[r, c])
    if rows:
        chi = sp.csc_matrix((np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))), shape=(n, n))
    else:
        chi = sp.csc_matrix((n, n))
    G = chi @ (Wi - sp.identity(n)) + sp.identity(n)
    full = _embed(G, win, basis.dim)
    return GammaResult(SparseOperator(basis, full, np.zeros(basis.dim, bool), "gamma"), win,
                       in_gap_boundary, dist, _unitarity(full, basis, mass_margin))


def _unitarity(G, basis, mass_margin):
    deep = np.flatnonzero(basis.levels <= basis.N - 1 - mass_margin)
    R = (G.T @ G - sp.identity(basis.dim, format="csc")).tocsc()[:, deep]
    return float(np.sqrt(np.asarray(R.multiply(R).sum(axis=0))).max()) if deep.size else 0.0


def _embed(G, win, dim):
    G = sp.coo_matrix(G)
    return sp.csc_matrix((G.data, (win[G.row], win[G.col])), shape=(dim, dim))


def q_plane(basis):
    """Indices of the n = 0 plane inside the window."""
    return np.flatnonzero(basis.sectors[:, 0] == 0)


@dataclass
class IndexReport:
    ell: int
    q: float
    margin: int
    trail: list = field(default_factory=list)
    index: int = None
    stable: bool = False

    def as_dict(self):
        return {"ell": self.ell, "q": self.q, "margin": self.margin, "trail": self.trail,
                "index": self.index, "stable": self.stable}


def fredholm_index(gamma, margin=2, window=None):
    """trace(1 - T*T) - trace(1 - TT*) for T = Q gamma Q, traces over sectors (0, k)
    with k <= N - 1 - margin. Returns a dict with the traces, per-k terms and estimate."""
    op = gamma.op if isinstance(gamma, GammaResult) else gamma
    basis = op.basis
    G = op.matrix.tocsc()
    Q = q_plane(basis)
    if window is None:
        window = gamma.window if isinstance(gamma, GammaResult) else np.arange(basis.dim)
    Q = np.intersect1d(Q, window)
    T = G[Q][:, Q]
    kk = basis.sectors[Q, 1]
    keep = kk <= basis.N - 1 - margin
    if not keep.any():
        raise ValueError(f"no interior sectors at N={basis.N}, margin={margin}: raise N")
    T2 = T.multiply(T)
    col = 1.0 - np.asarray(T2.sum(axis=0)).ravel()
    row = 1.0 - np.asarray(T2.sum(axis=1)).ravel()
    kmax = int(kk[keep].max())
    per_k = [float(col[kk == k].sum()) for k in range(kmax + 1)]
    per_k_row = [float(row[kk == k].sum()) for k in range(kmax + 1)]
    tr1 = float(col[keep].sum())
    tr2 = float(row[keep].sum())
    return {"N": basis.N, "margin": margin, "trace_1-T*T": tr1, "trace_1-TT*": tr2,
            "estimate": tr1 - tr2, "per_k_1-T*T": per_k, "per_k_1-TT*": per_k_row,
            "excluded_boundary_1-TT*": float(row[~keep].sum())}


def sphere_index(ell, q, schedule, margin=2, tol=0.05):
    """Index of Q gamma Q along a cutoff schedule. q = 0 uses the exact limit operator.

    Stable iff the last two estimates lie within tol of the same integer."""
    qv = 0.0 if q == 0 else as_qparam(q).q
    rep = IndexReport(ell, qv, margin)
    for N in schedule:
        basis = BasisSpec(ell, "sphere", N)
        if qv == 0.0:
            g = build_gamma(omega_zero(basis), 0.0)
        else:
            g = build_gamma(build_omega(qv, basis), qv, mass_margin=margin)
        res = fredholm_index(g, margin)
        res["in_gap_boundary"] = g.in_gap_boundary
        res["unitarity_residual"] = g.unitarity_residual
        rep.trail.append(res)
    if len(rep.trail) >= 2:
        a, b = rep.trail[-2]["estimate"], rep.trail[-1]["estimate"]
        ra, rb = round(a), round(b)
        if ra == rb and abs(a - ra) < tol and abs(b - rb) < tol:
            rep.index = int(rb)
            rep.stable = True
    return rep


def omega_spectrum(q, basis, tol=1e-6):
    """Eigenpairs of omega* omega on levels <= N-1, each with its residual against the
    untruncated operator (assembled on a window two levels larger, where these columns
    are exact). For a self-adjoint operator a residual eta puts a true spectral point
    within eta of the eigenvalue."""
    q = as_qparam(q)
    big = BasisSpec(basis.ell, "sphere", basis.N + 2)
    Wb = build_omega(q, big).matrix.tocsc()
    Cb = (Wb.T @ Wb).tocsc()
    # the small basis is a prefix of every sector block of the big one; map indices
    emb = np.array([big.index(*basis.label(n)) for n in range(basis.dim)])
    win = np.flatnonzero(basis.levels <= basis.N - 1)
    C = Cb[emb[win]][:, emb[win]].toarray()
    ev, V = np.linalg.eigh(C)
    full = Cb[:, emb[win]]
    resid = np.empty(len(ev))
    for t in range(len(ev)):
        y = full @ V[:, t]
        y[emb[win]] -= ev[t] * V[:, t]
        resid[t] = np.linalg.norm(y)
    qv = q.q
    m = np.arange(0, 400)
    cands = np.concatenate([[0.0], qv ** (2 * m)])
    dist = np.abs(ev[:, None] - cands[None, :]).min(axis=1)
    return {"eigenvalues": ev, "residuals": resid, "distance": dist,
            "certified": bool(np.all(dist <= resid + 1e-9)),
            "interior_within_tol": bool(np.all(dist[resid <= tol] <= tol)),
            "n_interior": int(np.sum(resid <= tol))}
