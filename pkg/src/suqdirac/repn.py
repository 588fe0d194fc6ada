"""Truncated bases of L2(G) and L2(G\\H) and the left-multiplication operators."""
import json
import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
import scipy.sparse as sp

from .cgc import cg_float, kappa_float
from .qarith import as_qparam
from .tableaux import (apply_move, canonical_young, enumerate_tableaux, is_young, level, moves,
                       raw_apply, is_valid, canonicalize, sphere_nk, sphere_tableau, young_diagrams,
                       to_text)


@dataclass(frozen=True)
class BasisSpec:
    """Group: e^lam_{rs} with canonical lam_1 <= N, ordered lam, r, s lexicographically.
    Sphere: e_{r^{nk}, s} with n + k <= N, ordered (n, k) then s."""
    ell: int
    space: str
    N: int
    _cache: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    def __post_init__(self):
        if self.ell < 1:
            raise ValueError("ell must be >= 1")
        if self.space not in ("group", "sphere"):
            raise ValueError(f"space must be 'group' or 'sphere', got {self.space!r}")
        if self.N < 0:
            raise ValueError("cutoff N must be >= 0")

    @cached_property
    def blocks(self):
        """List of (key, top row, tableaux, offset, width). width = len(tableaux) for the
        sphere and len(tableaux)**2 for the group."""
        out = []
        off = 0
        if self.space == "group":
            keys = sorted(young_diagrams(self.ell, self.N))
            for lam in keys:
                T = enumerate_tableaux(lam)
                out.append((lam, lam, T, off, len(T) ** 2))
                off += len(T) ** 2
        else:
            for n in range(self.N + 1):
                for k in range(self.N + 1 - n):
                    r = sphere_tableau(n, k, self.ell)
                    T = enumerate_tableaux(r[0])
                    out.append(((n, k), r[0], T, off, len(T)))
                    off += len(T)
        return out

    @cached_property
    def block_index(self):
        return {b[0]: t for t, b in enumerate(self.blocks)}

    @cached_property
    def tab_index(self):
        return {b[0]: {r: n for n, r in enumerate(b[2])} for b in self.blocks}

    @property
    def dim(self):
        b = self.blocks[-1]
        return b[3] + b[4]

    def __len__(self):
        return self.dim

    @cached_property
    def levels(self):
        lv = np.empty(self.dim, dtype=np.int64)
        for key, top, T, off, w in self.blocks:
            lv[off:off + w] = top[0]
        return lv

    @cached_property
    def sectors(self):
        """(n, k) per basis vector (sphere only)."""
        if self.space != "sphere":
            raise ValueError("sectors exist only on the sphere basis")
        nk = np.empty((self.dim, 2), dtype=np.int64)
        for key, top, T, off, w in self.blocks:
            nk[off:off + w] = key
        return nk

    def interior(self, margin):
        """Indices of vectors at level <= N - margin: products of `margin` operators
        that change the level by at most one never leave the window from these."""
        if margin < 1:
            raise ValueError("margin must be >= 1")
        idx = np.flatnonzero(self.levels <= self.N - margin)
        if idx.size == 0:
            raise ValueError(f"empty interior at N={self.N}, margin={margin}: raise N")
        return idx

    def index(self, *label):
        """Group: index((r, s)) or index(r, s). Sphere: index(r, s) with r = r^{nk}."""
        if len(label) == 1:
            label = label[0]
        r, s = label
        if self.space == "group":
            key = r[0]
            b = self.blocks[self.block_index[key]]
            ti = self.tab_index[key]
            return b[3] + ti[r] * len(b[2]) + ti[s]
        key = sphere_nk(r)
        b = self.blocks[self.block_index[key]]
        return b[3] + self.tab_index[key][s]

    def label(self, n):
        """Inverse of index."""
        t = int(np.searchsorted([b[3] for b in self.blocks], n, side="right")) - 1
        key, top, T, off, w = self.blocks[t]
        if self.space == "group":
            a, b = divmod(n - off, len(T))
            return T[a], T[b]
        return sphere_tableau(key[0], key[1], self.ell), T[n - off]

    def header(self):
        return {"ell": self.ell, "space": self.space, "N": self.N, "dim": self.dim}


@dataclass
class SparseOperator:
    basis: BasisSpec
    matrix: sp.csc_matrix
    boundary: np.ndarray          # bool per column: some image left the window
    name: str = ""

    @property
    def T(self):
        return SparseOperator(self.basis, self.matrix.T.tocsc(), np.zeros(self.basis.dim, bool),
                              self.name + "*")

    def triplets(self):
        """(row, col, value), column-sorted then row-sorted."""
        m = self.matrix.tocsc()
        m.sort_indices()
        out = []
        for c in range(m.shape[1]):
            for p in range(m.indptr[c], m.indptr[c + 1]):
                out.append((int(m.indices[p]), c, float(m.data[p])))
        return out

    def to_csv(self, path):
        with open(path, "w") as f:
            f.write("row,col,sign,log_magnitude\n")
            for r, c, v in self.triplets():
                if v == 0:
                    continue
                f.write(f"{r},{c},{1 if v > 0 else -1},{math.log(abs(v))!r}\n")
        hdr = dict(self.basis.header(), name=self.name,
                   boundary_columns=[int(x) for x in np.flatnonzero(self.boundary)])
        with open(str(path) + ".json", "w") as f:
            json.dump(hdr, f, sort_keys=True, indent=1)


_FACTOR_CACHE = {}


def _factors(lam, m1, q, ell):
    """For the box m1 added to lam: dicts i -> sparse X_i (with kappa) and Y_i (without),
    each of shape dim(mu) x dim(lam). Independent of the cutoff, so cached."""
    key = (lam, m1, q.q)
    hit = _FACTOR_CACHE.get(key)
    if hit is not None:
        return hit
    T = enumerate_tableaux(lam)
    mu = list(lam)
    mu[m1 - 1] += 1
    Tm = {t: n for n, t in enumerate(enumerate_tableaux(canonical_young(mu)))}
    ents = {i: ([], [], [], []) for i in range(1, ell + 2)}
    for c, r in enumerate(T):
        for i in range(1, ell + 2):
            rr, cc, xv, yv = ents[i]
            for M in moves(i, ell):
                if M[0] != m1:
                    continue
                t = raw_apply(M, r)
                if not is_valid(t):
                    continue
                t = canonicalize(t)
                v = cg_float(r, M, q)
                rr.append(Tm[t])
                cc.append(c)
                yv.append(v)
                xv.append(v * kappa_float(r, t, q))
    shape = (len(Tm), len(T))
    X, Y = {}, {}
    for i, (rr, cc, xv, yv) in ents.items():
        X[i] = sp.csr_matrix((xv, (rr, cc)), shape=shape)
        Y[i] = sp.csr_matrix((yv, (rr, cc)), shape=shape)
    _FACTOR_CACHE[key] = (X, Y)
    return X, Y


def clear_cache():
    _FACTOR_CACHE.clear()


def build_pi_u(i, j, q, basis):
    """Left multiplication by u_ij on the truncated group basis."""
    if basis.space != "group":
        raise ValueError("build_pi_u needs the group basis; use build_pi_z on the sphere")
    ell = basis.ell
    if not (1 <= i <= ell + 1 and 1 <= j <= ell + 1):
        raise ValueError(f"indices out of range: i={i}, j={j}")
    q = as_qparam(q)
    rows, cols, vals = [], [], []
    boundary = np.zeros(basis.dim, dtype=bool)
    for lam, top, T, off, w in basis.blocks:
        for m1 in range(1, ell + 2):
            mu = list(lam)
            mu[m1 - 1] += 1
            if not is_young(mu):
                continue
            mu = canonical_young(mu)
            if mu not in basis.block_index:
                boundary[off:off + w] = True
                continue
            offm = basis.blocks[basis.block_index[mu]][3]
            X, Y = _factors(lam, m1, q, ell)
            B = sp.kron(X[i], Y[j], format="coo")
            rows.append(B.row + offm)
            cols.append(B.col + off)
            vals.append(B.data)
    A = _assemble(rows, cols, vals, basis.dim)
    return SparseOperator(basis, A, boundary, f"pi(u_{i}{j})")


def _assemble(rows, cols, vals, n):
    if rows:
        r, c, v = np.concatenate(rows), np.concatenate(cols), np.concatenate(vals)
    else:
        r = c = np.zeros(0, dtype=np.int64)
        v = np.zeros(0)
    A = sp.csc_matrix((v, (r, c)), shape=(n, n))
    A.eliminate_zeros()
    A.sort_indices()
    return A


def build_pi_u_sphere(j, q, basis):
    """Left multiplication by u_{1j}, restricted to the sphere basis."""
    if basis.space != "sphere":
        raise ValueError("needs the sphere basis")
    ell = basis.ell
    if not 1 <= j <= ell + 1:
        raise ValueError(f"j out of range: {j}")
    q = as_qparam(q)
    rows, cols, vals = [], [], []
    boundary = np.zeros(basis.dim, dtype=bool)
    for (n, k), top, T, off, w in basis.blocks:
        r = sphere_tableau(n, k, ell)
        for m1 in range(1, ell + 2):
            t = apply_move((m1,), r)
            if t is None:
                continue
            key = sphere_nk(t)
            if t != sphere_tableau(*key, ell):
                raise RuntimeError(f"move ({m1},) left the sphere tableaux at {r}")
            if key not in basis.block_index:
                boundary[off:off + w] = True
                continue
            _, _, Tm, offm, _ = basis.blocks[basis.block_index[key]]
            x = cg_float(r, (m1,), q) * kappa_float(r, t, q)
            Y = (x * _factors(top, m1, q, ell)[1][j]).tocoo()
            rows.append(Y.row + offm)
            cols.append(Y.col + off)
            vals.append(Y.data)
    A = _assemble(rows, cols, vals, basis.dim)
    return SparseOperator(basis, A, boundary, f"pi(u_1{j})")


def build_pi_z(i, q, basis):
    """z_i = q^{-i+1} u_{1i}^*, represented as the transpose of the real matrix."""
    if basis.space != "sphere":
        raise ValueError("build_pi_z needs the sphere basis")
    q = as_qparam(q)
    U = build_pi_u_sphere(i, q, basis)
    Z = (q.q ** (1 - i)) * U.matrix.T
    return SparseOperator(basis, Z.tocsc(), np.zeros(basis.dim, bool), f"pi(z_{i})")


def _colmax(M, idx):
    M = sp.csc_matrix(M)[:, idx]
    if M.nnz == 0:
        return 0.0
    return float(np.sqrt(np.asarray(M.multiply(M).sum(axis=0))).max())


def relation_residuals(q, basis, margin=2):
    """Max column norm of each relation's residual over interior(margin).

    Group: sum_k u_ki^* u_kj - delta_ij and sum_k u_ik u_jk^* - delta_ij.
    Sphere: the commutation, mixed, diagonal and sum relations; the mixed relation
    is checked in both orders (see README).
    """
    q = as_qparam(q)
    idx = basis.interior(margin)
    I = sp.identity(basis.dim, format="csc")
    out = {}
    if basis.space == "group":
        n = basis.ell + 1
        U = {(a, b): build_pi_u(a, b, q, basis).matrix for a in range(1, n + 1) for b in range(1, n + 1)}
        r1 = r2 = 0.0
        for a in range(1, n + 1):
            for b in range(1, n + 1):
                S1 = sum(U[k, a].T @ U[k, b] for k in range(1, n + 1)) - (a == b) * I
                S2 = sum(U[a, k] @ U[b, k].T for k in range(1, n + 1)) - (a == b) * I
                r1 = max(r1, _colmax(S1, idx))
                r2 = max(r2, _colmax(S2, idx))
        out["unitarity_u*u"] = r1
        out["unitarity_uu*"] = r2
        return out
    n = basis.ell + 1
    Z = {a: build_pi_z(a, q, basis).matrix for a in range(1, n + 1)}
    Zs = {a: Z[a].T.tocsc() for a in Z}
    qq = q.q
    out["zizj=q zjzi"] = max([_colmax(Z[a] @ Z[b] - qq * Z[b] @ Z[a], idx)
                              for a in Z for b in Z if b < a], default=0.0)
    out["zizj*=q zj*zi (as displayed)"] = max([_colmax(Z[a] @ Zs[b] - qq * Zs[b] @ Z[a], idx)
                                              for a in Z for b in Z if a != b], default=0.0)
    out["zj*zi=q zizj*"] = max([_colmax(Zs[b] @ Z[a] - qq * Z[a] @ Zs[b], idx)
                                for a in Z for b in Z if a != b], default=0.0)
    diag = 0.0
    for a in Z:
        tail = sum((Z[k] @ Zs[k] for k in Z if k > a), sp.csc_matrix((basis.dim, basis.dim)))
        diag = max(diag, _colmax(Z[a] @ Zs[a] - Zs[a] @ Z[a] + (1 - qq * qq) * tail, idx))
    out["diagonal"] = diag
    out["sum zizi*=1"] = _colmax(sum(Z[a] @ Zs[a] for a in Z) - I, idx)
    return out


# relations that are gated; the displayed mixed form is reported only
GATED_SPHERE_RELATIONS = ("zizj=q zjzi", "zj*zi=q zizj*", "diagonal", "sum zizi*=1")
