import itertools

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, strategies as st

from suqdirac.dirac import build_d_tilde, build_sphere_D, from_function
from suqdirac.repn import BasisSpec
from suqdirac.signgraph import (SignGraph, build_sign_graph, certified_moves, certify_edges,
                                default_c, disjoint_path_flow, flow_trail, noncompact_witness,
                                vertices, witness_from_matrix)
from suqdirac.tableaux import apply_move, coords, level, move_N, zero_tableau


def G(ell, N):
    return BasisSpec(ell, "group", N)


def S(ell, N):
    return BasisSpec(ell, "sphere", N)


def parity(N):
    return from_function(G(1, N), lambda r: (-1) ** coords(r).H[0][0] * level(r), "parity")


@pytest.mark.parametrize("ell,N", [(1, 8), (2, 8)])
def test_certify_d_tilde(ell, N):
    assert certify_edges(build_d_tilde(G(ell, N)), 1.5) == []


@pytest.mark.parametrize("ell", [1, 2])
def test_certify_sphere(ell):
    assert certify_edges(build_sphere_D(S(ell, 20)), 1.5) == []


def test_certify_reports_violation():
    # the quadratic d breaks the N_j0 edges once levels differ
    D = from_function(G(1, 5), lambda r: level(r) ** 2)
    bad = certify_edges(D, 1.5)
    assert bad and all(b["gap"] >= 1.5 for b in bad)


def test_certified_edges_examples():
    B = G(1, 4)
    D = build_d_tilde(B)
    for r in vertices(B):
        t = apply_move(move_N(1, 0, 1), r)
        assert abs(D.eigenvalue(r) - D.eigenvalue(t)) <= 1
    Bs = S(2, 6)
    Gs = build_sign_graph(build_sphere_D(Bs), edge_mode="certified")
    pos = {v: t for t, v in enumerate(vertices(Bs))}
    for n in range(6):
        for k in range(1, 7 - n):
            assert Gs.graph.has_edge(pos[(n, k)], pos[(n, k - 1)])
        assert Gs.graph.has_edge(pos[(n, 0)], pos[(n + 1, 0)])
    assert not Gs.graph.has_edge(pos[(0, 1)], pos[(1, 1)])


def test_sphere_certified_moves():
    B = S(2, 5)
    for n, k in vertices(B):
        ms = dict(certified_moves((n, k), B))
        assert ((3,) in ms) == (k > 0)
        assert ((1,) in ms) == (k == 0)


def test_default_c():
    assert default_c(build_d_tilde(G(1, 4))) == 1.5
    assert default_c(build_sphere_D(S(1, 6))) == 1.5


def test_flow_examples():
    assert disjoint_path_flow(build_sign_graph(build_d_tilde(G(1, 6)))) == 0
    tr = flow_trail(lambda N: build_sphere_D(S(2, N)), (8, 12, 16))
    assert tr["saturated"] and max(tr["flows"]) <= 2
    tr = flow_trail(parity, (4, 6, 8))
    assert tr["flows"][0] < tr["flows"][1] < tr["flows"][2]
    assert tr["min_step"] >= 2


@pytest.mark.parametrize("mode", ["threshold", "certified"])
def test_flow_modes_agree(mode):
    sph = flow_trail(lambda N: build_sphere_D(S(2, N)), (8, 12, 16), edge_mode=mode)
    par = flow_trail(parity, (4, 6, 8), edge_mode=mode)
    assert sph["saturated"] and par["min_step"] >= 2


def test_exhaustive_mode_small():
    B = G(1, 4)
    D = parity(4)
    ex = build_sign_graph(D, c=1.5, edge_mode="exhaustive")
    th = build_sign_graph(D, c=1.5, edge_mode="threshold")
    assert set(th.graph.edges) <= set(ex.graph.edges) | {(b, a) for a, b in ex.graph.edges}
    assert disjoint_path_flow(ex) >= disjoint_path_flow(th)
    assert len(vertices(G(3, 6))) > 3000
    with pytest.raises(ValueError):
        build_sign_graph(build_d_tilde(G(3, 6)), c=1.5, edge_mode="exhaustive")
    with pytest.raises(ValueError):
        build_sign_graph(D, c=1.5, edge_mode="nope")


def brute_disjoint_paths(graph, plus, minus):
    """Largest family of pairwise vertex-disjoint plus -> minus paths, by search."""
    paths = []
    for s in plus:
        for t in minus:
            paths += [frozenset(p) for p in nx.all_simple_paths(graph, s, t)]
    # a shortest-possible family only needs minimal paths
    paths = [p for p in set(paths) if not any(o < p for o in paths)]
    best = 0

    def grow(start, used, count):
        nonlocal best
        best = max(best, count)
        for t in range(start, len(paths)):
            if not paths[t] & used:
                grow(t + 1, used | paths[t], count + 1)

    grow(0, frozenset(), 0)
    return best


@given(n=st.integers(2, 8), data=st.data())
def test_flow_matches_menger_bruteforce(n, data):
    pairs = list(itertools.combinations(range(n), 2))
    edges = data.draw(st.lists(st.sampled_from(pairs), unique=True, max_size=12))
    labels = data.draw(st.lists(st.sampled_from([-1, 0, 1]), min_size=n, max_size=n))
    g = nx.Graph()
    g.add_nodes_from(range(n))
    g.add_edges_from(edges)
    plus = [v for v in range(n) if labels[v] > 0]
    minus = [v for v in range(n) if labels[v] < 0]
    flow = disjoint_path_flow(SignGraph(g, 1.0, "test", plus, minus))
    assert flow == brute_disjoint_paths(g, plus, minus)


@given(n=st.integers(2, 10), data=st.data())
def test_flow_monotone_in_edges(n, data):
    pairs = list(itertools.combinations(range(n), 2))
    edges = data.draw(st.lists(st.sampled_from(pairs), unique=True, max_size=20))
    extra = data.draw(st.lists(st.sampled_from(pairs), unique=True, max_size=5))
    labels = data.draw(st.lists(st.sampled_from([-1, 1]), min_size=n, max_size=n))
    plus = [v for v in range(n) if labels[v] > 0]
    minus = [v for v in range(n) if labels[v] < 0]
    g = nx.Graph(edges)
    g.add_nodes_from(range(n))
    h = g.copy()
    h.add_edges_from(extra)
    a = disjoint_path_flow(SignGraph(g, 1.0, "t", plus, minus))
    b = disjoint_path_flow(SignGraph(h, 1.0, "t", plus, minus))
    assert a <= b


def test_flow_monotone_in_truncation():
    for make, sched in ((lambda N: build_sphere_D(S(2, N)), (4, 8, 12, 16)), (parity, (2, 4, 6, 8))):
        flows = flow_trail(make, sched)["flows"]
        assert all(a <= b for a, b in zip(flows, flows[1:]))


def test_witness():
    w = noncompact_witness(0.5, 2, 6)
    assert w["min_abs"] >= 0.01
    assert len(w["values"]) == len(w["tableaux"]) > 0
    counts = [len(noncompact_witness(0.5, 2, N)["values"]) for N in (4, 6, 8)]
    assert counts[0] < counts[1] < counts[2]
    m = witness_from_matrix(0.5, G(2, 6))
    assert np.max(np.abs(np.array(m) - np.array(w["values"]))) < 1e-12
    with pytest.raises(ValueError):
        noncompact_witness(0.5, 1, 6)


def test_witness_tableaux_conditions():
    for r in noncompact_witness(0.5, 2, 6)["tableaux"]:
        assert r[0][1] == 0 and r[1][1] == 0 and r[0][2] == 0
