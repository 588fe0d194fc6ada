"""The graph G_c on tableaux, certified edges and vertex-disjoint path flow."""
import itertools
from dataclasses import dataclass

import networkx as nx
import numpy as np

from .cgc import cg_exponent, cg_float, kappa_float
from .dirac import sign_of
from .qarith import as_qparam
from .tableaux import (apply_move, canonicalize, enumerate_tableaux, level, move_M, move_N, moves,
                       plane_key, sphere_tableau, young_diagrams, zero_tableau)


def vertices(basis):
    """Tableaux (group) or sectors (n, k) (sphere) inside the truncation, in basis order."""
    if basis.space == "group":
        out = []
        for lam in sorted(young_diagrams(basis.ell, basis.N)):
            out += enumerate_tableaux(lam)
        return out
    return [(n, k) for n in range(basis.N + 1) for k in range(basis.N + 1 - n)]


def _in_window(v, basis):
    if basis.space == "group":
        return level(v) <= basis.N
    return v[0] + v[1] <= basis.N


def certified_moves(v, basis):
    """Moves whose CG coefficient has q-exponent 0 at v, with their targets.

    Group: N_j0 for every j and every M_ik with vanishing exponent.
    Sphere: M_{l+1,1} always, M_11 when k = 0.
    """
    ell = basis.ell
    out = []
    if basis.space == "group":
        cands = [move_N(j, 0, ell) for j in range(1, ell + 2)]
        cands += [move_M(i, k) for i in range(1, ell + 2) for k in range(1, i + 1)]
        seen = set()
        for M in cands:
            if M in seen:
                continue
            seen.add(M)
            t = apply_move(M, v)
            if t is not None and cg_exponent(len(M), v, M) == 0:
                out.append((M, t))
        return out
    n, k = v
    r = sphere_tableau(n, k, ell)
    for M in [(ell + 1,), (1,)]:
        t = apply_move(M, r)
        if t is not None and cg_exponent(1, r, M) == 0:
            out.append((M, (t[0][0] - t[1][0], t[1][0])))
    return out


def all_moves(v, basis):
    """Every valid elementary move at v with its target."""
    ell = basis.ell
    if basis.space == "group":
        out = []
        for i in range(1, ell + 2):
            for M in moves(i, ell):
                t = apply_move(M, v)
                if t is not None:
                    out.append((M, t))
        return out
    n, k = v
    r = sphere_tableau(n, k, ell)
    out = []
    for m in range(1, ell + 2):
        t = apply_move((m,), r)
        if t is not None:
            out.append(((m,), (t[0][0] - t[1][0], t[1][0])))
    return out


@dataclass
class SignGraph:
    graph: nx.Graph
    c: float
    mode: str
    plus: list
    minus: list


def build_sign_graph(D, c=None, edge_mode="threshold", sign_fn=None):
    """G_c on the truncated vertex set of D.basis.

    edge_mode: 'threshold' (move adjacency with |d(u)-d(v)| < c), 'certified'
    (certified moves, no threshold: edges every bounded-commutator D must have),
    'exhaustive' (all pairs with |d(u)-d(v)| < c; small truncations only).
    sign_fn overrides the labels (default: sign of D with sign(0)=+1).
    """
    basis = D.basis
    V = vertices(basis)
    d = {v: D.eigenvalue(v) for v in V}
    if c is None:
        c = default_c(D)
    G = nx.Graph()
    G.add_nodes_from(range(len(V)))
    pos = {v: t for t, v in enumerate(V)}
    if edge_mode == "exhaustive":
        if len(V) > 3000:
            raise ValueError("exhaustive mode is for small truncations")
        for a, b in itertools.combinations(range(len(V)), 2):
            if abs(d[V[a]] - d[V[b]]) < c:
                G.add_edge(a, b)
    elif edge_mode in ("threshold", "certified"):
        gen = certified_moves if edge_mode == "certified" else all_moves
        for v in V:
            for M, t in gen(v, basis):
                if t in pos and (edge_mode == "certified" or abs(d[v] - d[t]) < c):
                    G.add_edge(pos[v], pos[t])
    else:
        raise ValueError(f"unknown edge_mode {edge_mode!r}")
    sgn = sign_fn or (lambda v: sign_of(d[v]))
    plus = [pos[v] for v in V if sgn(v) > 0]
    minus = [pos[v] for v in V if sgn(v) < 0]
    return SignGraph(G, c, edge_mode, plus, minus)


def default_c(D):
    """1.5 times the largest |delta d| over certified moves in the truncation."""
    basis = D.basis
    m = 0.0
    for v in vertices(basis):
        for M, t in certified_moves(v, basis):
            if _in_window(t, basis):
                m = max(m, abs(D.eigenvalue(v) - D.eigenvalue(t)))
    return 1.5 * m if m > 0 else 1.5


def certify_edges(D, c):
    """Certified moves whose |delta d| >= c: each is an edge G_c must contain but lacks."""
    basis = D.basis
    bad = []
    for v in vertices(basis):
        for M, t in certified_moves(v, basis):
            if not _in_window(t, basis):
                continue
            gap = abs(D.eigenvalue(v) - D.eigenvalue(t))
            if gap >= c:
                bad.append({"vertex": v, "move": M, "target": t, "gap": gap})
    return bad


def disjoint_path_flow(G):
    """Maximum number of vertex-disjoint paths from plus to minus vertices."""
    if not G.plus or not G.minus:
        return 0
    H = nx.DiGraph()
    for v in G.graph.nodes:
        H.add_edge(("in", v), ("out", v), capacity=1)
    for a, b in G.graph.edges:
        H.add_edge(("out", a), ("in", b), capacity=1)
        H.add_edge(("out", b), ("in", a), capacity=1)
    for v in G.plus:
        H.add_edge("S", ("in", v), capacity=1)
    for v in G.minus:
        H.add_edge(("out", v), "T", capacity=1)
    return int(nx.maximum_flow_value(H, "S", "T", flow_func=nx.algorithms.flow.edmonds_karp))


def flow_trail(make_D, schedule, edge_mode="certified", c=None, sign_fn=None):
    """Flow over an increasing truncation schedule; saturated iff the last two agree."""
    flows = []
    for N in schedule:
        D = make_D(N)
        flows.append(disjoint_path_flow(build_sign_graph(D, c, edge_mode, sign_fn)))
    steps = [b - a for a, b in zip(flows, flows[1:])]
    return {"schedule": list(schedule), "flows": flows,
            "saturated": len(flows) >= 2 and flows[-1] == flows[-2],
            "min_step": min(steps) if steps else None}


# ---------------------------------------------------------------- witnesses

def in_F0(r):
    return plane_key(r) == plane_key(zero_tableau(len(r) - 1))


def witness_tableaux(ell, N):
    """r in the free plane through 0 with r_{1,l} = r_{2,l} = r_{1,l+1} = 0 and
    M_{l1}(r) inside the window."""
    out = []
    for lam in sorted(young_diagrams(ell, N)):
        for r in enumerate_tableaux(lam):
            if r[0][ell - 1] == 0 and r[1][ell - 1] == 0 and r[0][ell] == 0 and in_F0(r):
                t = apply_move((ell,), r)
                if t is not None and level(t) <= N:
                    out.append(r)
    return out


def noncompact_witness(q, ell, N):
    """Values <e_{M(r),M(r)}, [P, pi(u_11)] e_{r,r}> = -C_q(1,r,M)^2 kappa(r, M(r)),
    M = M_{l1}, P the projection onto the plane through 0."""
    if ell < 2:
        raise ValueError("the witness needs ell >= 2")
    q = as_qparam(q)
    M = move_M(ell, 1)
    vals = []
    for r in witness_tableaux(ell, N):
        t = apply_move(M, r)
        vals.append(-cg_float(r, M, q) ** 2 * kappa_float(r, t, q))
    return {"tableaux": witness_tableaux(ell, N), "values": vals,
            "min_abs": float(min(abs(v) for v in vals)) if vals else None}


def witness_from_matrix(q, basis):
    """The same inner products read off the assembled [P, pi(u_11)]."""
    from .repn import build_pi_u
    A = build_pi_u(1, 1, q, basis).matrix.tocsc()
    M = move_M(basis.ell, 1)
    out = []
    for r in witness_tableaux(basis.ell, basis.N):
        t = apply_move(M, r)
        col = basis.index(r, r)
        row = basis.index(t, t)
        p_row = 1.0 if in_F0(t) else 0.0
        out.append((p_row - 1.0) * A[row, col])
    return out
