"""The acceptance criteria as plain functions returning (passed, details)."""
import math
import time

import numpy as np

from .cgc import cg_matrix, cg_targets, cg_float, kappa_float
from .dirac import (anticommutation_exact, build_coordinate_D, build_d_tilde, build_full_D,
                    build_sphere_D, clifford_generators, commutator_growth, from_function,
                    singular_values, spin_matrices, summability_exponent, tail_variation)
from .index import sphere_index
from .qarith import weyl_dimension, weyl_q_dimension
from .cgc import q_dim_sum
from .repn import GATED_SPHERE_RELATIONS, BasisSpec, build_pi_u, relation_residuals
from .signgraph import flow_trail, noncompact_witness, witness_from_matrix
from .tableaux import (canonicalize, coords, enumerate_tableaux, level, moves, path_to_zero, psi,
                       raw_apply, is_valid, sweep_to_v11, young_diagrams, zero_tableau)


def c1_dimensions():
    worst = 0.0
    count_ok = True
    for ell in (1, 2, 3):
        for lam in young_diagrams(ell, 4):
            count_ok &= len(enumerate_tableaux(lam)) == weyl_dimension(lam)
            for q in (0.3, 0.5, 0.8):
                a = float(weyl_q_dimension(lam, q))
                b = float(q_dim_sum(lam, q))
                worst = max(worst, abs(a - b) / abs(b))
    return count_ok and worst <= 1e-10, {"counts_exact": count_ok, "max_rel_err_qdim": worst}


def c2_cg_normalization():
    worst_norm = 0.0
    for ell in (1, 2):
        for lam in young_diagrams(ell, 3):
            A, rows, cols = cg_matrix(lam, 0.5)
            worst_norm = max(worst_norm, float(np.abs((A ** 2).sum(axis=1) - 1).max()))
    worst_orth = 0.0
    for n in range(0, 5):
        A, rows, cols = cg_matrix((n, 0), 0.5)
        worst_orth = max(worst_orth, float(np.abs(A @ A.T - np.eye(len(rows))).max()),
                         float(np.abs(A.T @ A - np.eye(len(cols))).max()))
    ok = worst_norm <= 1e-8 and worst_orth <= 1e-8
    return ok, {"max_norm_err": worst_norm, "max_orth_err_ell1": worst_orth}


def _kappa_classes(N):
    """One representative (r, M(r)) per distinct (lambda, mu, psi(r) - psi(M(r))), over
    ell <= 3, level(r) <= N and every valid move; kappa depends on nothing else."""
    reps = {}
    for ell in (1, 2, 3):
        for lam in young_diagrams(ell, N):
            for r in enumerate_tableaux(lam):
                pr = psi(r)
                for i in range(1, ell + 2):
                    for M, t in cg_targets(r, i, ell):
                        t = canonicalize(t)
                        key = (lam, t[0], pr - psi(t))
                        if key not in reps:
                            reps[key] = (level(r), r, t)
    return reps


def c3_kappa_bounds():
    reps = _kappa_classes(6)
    details = {"classes": len(reps)}
    ok = True
    for q in (0.3, 0.5, 0.8):
        ext = {}
        for N in (5, 6):
            vals = [kappa_float(r, t, q) for lv, r, t in reps.values() if lv <= N]
            ext[N] = (min(vals), max(vals))
        lo5, hi5 = ext[5]
        lo6, hi6 = ext[6]
        inside = 1e-3 <= lo6 and hi6 <= 1e3
        move = max(abs(lo6 - lo5) / lo5, abs(hi6 - hi5) / hi5)
        ok &= inside and move < 0.01
        details[f"q={q}"] = {"min_N5": lo5, "max_N5": hi5, "min_N6": lo6, "max_N6": hi6,
                             "rel_move": move}
    return ok, details


def c4_relations():
    det = {}
    ok = True
    for ell, N in ((1, 12), (2, 8)):
        res = relation_residuals(0.5, BasisSpec(ell, "sphere", N), margin=2)
        gated = max(res[k] for k in GATED_SPHERE_RELATIONS)
        ok &= gated <= 1e-7
        det[f"sphere ell={ell} N={N}"] = res
    res = relation_residuals(0.5, BasisSpec(1, "group", 8), margin=2)
    ok &= res["unitarity_u*u"] <= 1e-7
    det["group ell=1 N=8"] = res
    return ok, det


def c5_boundedness():
    det = {}
    ok = True
    sched = range(4, 9)
    for ell in (1, 2):
        for i in range(1, ell + 2):
            for j in range(1, ell + 2):
                A = lambda B, i=i, j=j: build_pi_u(i, j, 0.5, B)
                dt = commutator_growth(lambda N: build_d_tilde(BasisSpec(ell, "group", N)), A, sched)
                qd = commutator_growth(
                    lambda N: from_function(BasisSpec(ell, "group", N), lambda r: level(r) ** 2, "r11^2"),
                    A, sched)
                nd = [x[1] for x in dt]
                nq = [x[1] for x in qd]
                var = tail_variation(nd)
                growth = nq[-1] / nq[0]
                ok &= var < 0.05 and growth >= 2.0
                det[f"ell={ell} u{i}{j}"] = {"D_tilde": nd, "tail_var": var, "quadratic": nq,
                                            "growth": growth}
    return ok, det


def c6_summability(correction_order=1):
    det = {}
    ok = True
    for ell, L in ((1, range(10, 41)), (2, range(10, 31))):
        for space, target, make in (("group", ell * (ell + 2), build_d_tilde),
                                    ("sphere", 2 * ell + 1, build_sphere_D)):
            D = make(BasisSpec(ell, space, max(L)))
            res = summability_exponent(D, L, correction_order)
            good = abs(res["slope"] - target) <= 0.1 * target
            ok &= good
            det[f"{space} ell={ell}"] = {"target": target, "slope": res["slope"],
                                         "plain_slope": res["plain_slope"], "pass": good}
    return ok, det


def c7_full_D():
    worst_lo = worst_hi = 0.0
    K = {}
    ok = True
    for ell in (1, 2, 3):
        D = build_full_D(BasisSpec(ell, "group", 5))
        kmax = 1.0
        for lam in young_diagrams(ell, 5):
            for r in enumerate_tableaux(lam):
                sv = singular_values(D, r)
                r11 = level(r)
                lo_ok = np.all(sv >= r11 - 1e-12 * max(r11, 1))
                hi_ok = np.all(sv <= math.sqrt(ell + 1) * r11 + 1e-12 * max(r11, 1))
                ok &= bool(lo_ok and hi_ok)
                if r11:
                    kmax = max(kmax, float(sv.max()) / r11)
        K[ell] = kmax
    cliff = all(anticommutation_exact(spin_matrices(ell).gammas) for ell in (1, 2, 3))
    cliff &= all(anticommutation_exact(clifford_generators(ell * (ell + 3) // 2)) for ell in (1, 2, 3))
    return ok and cliff, {"bounds_hold": ok, "observed_K": K, "clifford_exact": cliff}


def _parity(N):
    return from_function(BasisSpec(1, "group", N),
                         lambda r: (-1) ** coords(r).H[0][0] * level(r), "parity")


def c8_sign_combinatorics():
    sph = flow_trail(lambda N: build_sphere_D(BasisSpec(2, "sphere", N)), (8, 12, 16))
    dt = flow_trail(lambda N: build_d_tilde(BasisSpec(1, "group", N)), (4, 6, 8))
    par = flow_trail(_parity, (4, 6, 8))
    ok = sph["saturated"] and dt["saturated"] and par["min_step"] >= 2
    return ok, {"sphere ell=2": sph, "D_tilde ell=1": dt, "parity ell=1": par}


def c9_witness():
    counts = {}
    for N in (4, 6, 8):
        counts[N] = len(noncompact_witness(0.5, 2, N)["values"])
    w = noncompact_witness(0.5, 2, 6)
    m = witness_from_matrix(0.5, BasisSpec(2, "group", 6))
    agree = float(np.max(np.abs(np.array(m) - np.array(w["values"])))) if m else 0.0
    grows = counts[4] < counts[6] < counts[8]
    ok = w["min_abs"] is not None and w["min_abs"] >= 0.01 and grows and agree < 1e-12
    return ok, {"min_abs_N6": w["min_abs"], "counts": counts, "matrix_crosscheck_err": agree}


def c10_index():
    det = {}
    ok = True
    for ell in (1, 2):
        rep = sphere_index(ell, 0, (6, 8), margin=2)
        exact = all(t["estimate"] == 1.0 for t in rep.trail)
        ok &= rep.stable and rep.index == 1 and exact
        det[f"q=0 ell={ell}"] = {"index": rep.index, "estimates": [t["estimate"] for t in rep.trail]}
    rep = sphere_index(1, 0.5, (8, 12, 16), margin=2)
    est = [t["estimate"] for t in rep.trail]
    close = all(abs(e - 1) <= 0.05 for e in est)
    ok &= rep.stable and rep.index == 1 and close
    det["q=0.5 ell=1"] = {"index": rep.index, "estimates": est}
    return ok, det


def c11_paths():
    ok = True
    n = 0
    for ell in (1, 2, 3):
        for lam in young_diagrams(ell, 4):
            for r in enumerate_tableaux(lam):
                v11 = coords(r).V[0]
                p = sweep_to_v11(r)
                ok &= all(coords(x).V[0] == v11 for x in p)
                z = path_to_zero(r)
                ok &= z[-1] == zero_tableau(ell) and len(z) - 1 <= ell * level(r)
                n += 1
    return ok, {"tableaux_checked": n}


CRITERIA = [
    (1, "dimension oracle", c1_dimensions, 10.0),
    (2, "CG normalization and orthogonality", c2_cg_normalization, 30.0),
    (3, "kappa bounds", c3_kappa_bounds, None),
    (4, "representation relations", c4_relations, None),
    (5, "commutator boundedness", c5_boundedness, None),
    (6, "summability exponents", c6_summability, 60.0),
    (7, "full D structure", c7_full_D, None),
    (8, "sign combinatorics", c8_sign_combinatorics, None),
    (9, "non-compactness witness", c9_witness, None),
    (10, "index pairing", c10_index, 120.0),
    (11, "path algorithms", c11_paths, None),
]


def run_criterion(num):
    _, name, fn, budget = CRITERIA[num - 1]
    t = time.perf_counter()
    passed, details = fn()
    dt = time.perf_counter() - t
    if budget is not None and dt > budget:
        passed = False
        details = dict(details, runtime_exceeded=f"{dt:.1f}s > {budget}s")
    return {"id": num, "name": name, "passed": bool(passed), "details": details, "seconds": dt}


def run_all(ids=None):
    return [run_criterion(n) for n, *_ in CRITERIA if ids is None or n in ids]
