"""Command-line driver.

Every command prints a JSON report (schema 1): config echo, versions, results and
gates. Exit status 0 iff every gate passes, 1 on gate failure, 2 on a bad config.
Reports go to --output, else to $SUQDIRAC_OUTPUT_DIR/<command>.json when that is set.

CSV columns:
  tableaux          index, tableau ([[r11,...],[r21,...],...]), V..., H...
  cgc               i, tableau, move, exponent, prefactor, sign
  dirac-spectrum    eigenvalue, multiplicity
"""
import argparse
import csv
import io
import json
import os
import sys
import time

import numpy as np

SCHEMA = 1


class ConfigError(ValueError):
    pass


def _ints(s):
    try:
        return [int(x) for x in s.split(",") if x.strip()]
    except ValueError:
        raise ConfigError(f"expected comma-separated integers, got {s!r}")


def _schedule(s):
    """'10,20,40' or '10:40' (all integers in the closed range)."""
    if ":" in s:
        a, b = s.split(":")
        out = list(range(int(a), int(b) + 1))
    else:
        out = _ints(s)
    if len(out) < 2 or any(b <= a for a, b in zip(out, out[1:])):
        raise ConfigError(f"schedule must be strictly increasing with >= 2 entries, got {s!r}")
    return out


def _q(s, allow_zero=False):
    try:
        q = float(s)
    except ValueError:
        raise ConfigError(f"q must be a number, got {s!r}")
    if q == 0.0 and allow_zero:
        return 0.0
    if not 0.0 < q < 1.0:
        raise ConfigError(f"q must lie in (0,1){' or be 0' if allow_zero else ''}, got {q}")
    return q


def _versions():
    import networkx
    import scipy

    from . import __version__, backend
    return {"suqdirac": __version__, "numpy": np.__version__, "scipy": scipy.__version__,
            "networkx": networkx.__version__, "kernels": backend}


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (np.floating, float)):
        return float(x)
    if isinstance(x, np.bool_):
        return bool(x)
    if isinstance(x, np.ndarray):
        return _jsonable(x.tolist())
    return x


def gate(name, value, threshold, passed):
    return {"name": name, "value": value, "threshold": threshold, "passed": bool(passed)}


# ---------------------------------------------------------------- commands

def cmd_tableaux(a):
    from .tableaux import coords, enumerate_tableaux, is_young, to_text
    from .qarith import weyl_dimension
    lam = tuple(_ints(a.lam))
    if len(lam) != a.ell + 1 or not is_young(lam):
        raise ConfigError(f"--lambda must be a Young diagram with ell+1 = {a.ell + 1} entries")
    T = enumerate_tableaux(lam)
    rows = []
    for n, r in enumerate(T):
        d = coords(r)
        rows.append({"index": n, "tableau": to_text(r), "V": list(d.V), "H": [list(h) for h in d.H]})
    dim = weyl_dimension(lam)
    res = {"lambda": list(lam), "count": len(T), "dimension": dim, "tableaux": rows}
    csv_rows = [[x["index"], x["tableau"]] + x["V"] + [h for hh in x["H"] for h in hh] for x in rows]
    return res, [gate("count == Weyl dimension", len(T), dim, len(T) == dim)], csv_rows


def cmd_cgc(a):
    from .cgc import cg_coefficient, cg_matrix, cg_targets
    from .tableaux import enumerate_tableaux, is_young, to_text
    lam = tuple(_ints(a.lam))
    if len(lam) != a.ell + 1 or not is_young(lam):
        raise ConfigError(f"--lambda must be a Young diagram with ell+1 = {a.ell + 1} entries")
    q = _q(a.q)
    out = []
    for i in range(1, a.ell + 2):
        for r in enumerate_tableaux(lam):
            for M, _ in cg_targets(r, i, a.ell):
                c = cg_coefficient(i, r, M, q)
                out.append({"i": i, "tableau": to_text(r), "move": list(M), "exponent": c.exponent,
                            "prefactor": float(c.prefactor), "sign": c.sign})
    A, rows, cols = cg_matrix(lam, q)
    err = float(np.abs((A ** 2).sum(axis=1) - 1).max())
    csv_rows = [[x["i"], x["tableau"], " ".join(map(str, x["move"])), x["exponent"], x["prefactor"], x["sign"]]
                for x in out]
    return ({"lambda": list(lam), "q": q, "coefficients": out},
            [gate("row normalization error", err, 1e-8, err <= 1e-8)], csv_rows)


def cmd_repn_check(a):
    from .repn import GATED_SPHERE_RELATIONS, BasisSpec, relation_residuals
    q = _q(a.q)
    basis = BasisSpec(a.ell, a.space, a.N)
    res = relation_residuals(q, basis, a.margin)
    keys = GATED_SPHERE_RELATIONS if a.space == "sphere" else ("unitarity_u*u", "unitarity_uu*")
    gates = [gate(k, res[k], a.tol, res[k] <= a.tol) for k in keys]
    return {"dim": basis.dim, "residuals": res, "gated": list(keys)}, gates, None


def _make_D(space, ell, N, op):
    from .dirac import (build_coordinate_D, build_d_tilde, build_full_D, build_sphere_D,
                        from_function)
    from .repn import BasisSpec
    from .tableaux import coords, level
    B = BasisSpec(ell, space, N)
    if space == "sphere":
        if op not in ("auto", "sphere"):
            raise ConfigError(f"operator {op!r} is not defined on the sphere")
        return build_sphere_D(B)
    table = {"auto": build_d_tilde, "d_tilde": build_d_tilde, "full": build_full_D,
             "coordinate": build_coordinate_D,
             "quadratic": lambda B: from_function(B, lambda r: level(r) ** 2, "r11^2"),
             "parity": lambda B: from_function(B, lambda r: (-1) ** coords(r).H[0][0] * level(r), "parity")}
    if op not in table:
        raise ConfigError(f"unknown group operator {op!r}")
    return table[op](B)


def cmd_dirac_spectrum(a):
    from collections import Counter
    from .dirac import brute_count, counting_function
    D = _make_D(a.space, a.ell, a.N, a.operator)
    vals = D.diag(D.eigenvalue) if D.mode == "matrix" else D.diag()
    mult = D.gammas[0].shape[0] if D.mode == "matrix" else 1
    cnt = Counter(np.round(vals, 12).tolist())
    spec = [[float(k), int(v) * mult] for k, v in sorted(cnt.items())]
    gates = []
    if D.mode == "scalar" and D.block_value is not None:
        c1, c2 = counting_function(D, a.N), brute_count(D, a.N)
        gates.append(gate("formula count == basis count at Lambda=N", c1, c2, c1 == c2))
    return {"operator": D.name, "dim": D.basis.dim, "spectrum": spec}, gates, spec


def cmd_summability(a):
    from .dirac import summability_exponent
    L = _schedule(a.schedule)
    D = _make_D(a.space, a.ell, max(L), "auto")
    res = summability_exponent(D, L, a.correction_order)
    target = a.ell * (a.ell + 2) if a.space == "group" else 2 * a.ell + 1
    ok = abs(res["slope"] - target) <= 0.1 * target
    return res, [gate("fitted slope within 10% of target", res["slope"], target, ok)], None


def cmd_commutators(a):
    from .dirac import commutator_growth, tail_variation
    from .repn import build_pi_u
    q = _q(a.q)
    sched = _schedule(a.schedule)
    pairs = [(a.i, a.j)] if a.i else [(i, j) for i in range(1, a.ell + 2) for j in range(1, a.ell + 2)]
    res, gates = {}, []
    for i, j in pairs:
        g = commutator_growth(lambda N: _make_D("group", a.ell, N, a.operator),
                              lambda B, i=i, j=j: build_pi_u(i, j, q, B), sched, a.margin)
        norms = [x[1] for x in g]
        res[f"u{i}{j}"] = {"N": [x[0] for x in g], "norms": norms, "max_entry": [x[2] for x in g]}
        if a.operator == "quadratic":
            gr = norms[-1] / norms[0]
            gates.append(gate(f"u{i}{j} growth (unbounded expected)", gr, 2.0, gr >= 2.0))
        else:
            v = tail_variation(norms)
            gates.append(gate(f"u{i}{j} tail variation", v, 0.05, v < 0.05))
    return res, gates, None


def cmd_sign_analysis(a):
    from .dirac import sign_decomposition
    from .signgraph import build_sign_graph, certify_edges, default_c, flow_trail
    sched = _schedule(a.schedule)
    op = a.operator
    make = lambda N: _make_D(a.space, a.ell, N, op)
    c = None if a.c == "auto" else float(a.c)
    trail = flow_trail(make, sched, a.edge_mode, c)
    D = make(sched[-1])
    cc = default_c(D) if c is None else c
    viol = certify_edges(D, cc)
    dec = sign_decomposition(D)
    G = build_sign_graph(D, cc, a.edge_mode)
    res = {"c": cc, "truncation": sched[-1], "|V+|": len(G.plus), "|V-|": len(G.minus),
           "flow_trail": trail, "violations": viol, "negative_planes": [str(p) for p in dec["negative_planes"]],
           "exceptional": [str(p) for p in dec["exceptional"]]}
    if op == "parity":
        gates = [gate("ladder detected (flow grows >= 2 per step)", trail["min_step"], 2, trail["min_step"] >= 2)]
    else:
        gates = [gate("flow saturates", trail["flows"], "last two equal", trail["saturated"])]
        if op != "quadratic":
            gates.append(gate("certified edges present", len(viol), 0, not viol))
    return res, gates, None


def cmd_sphere_index(a):
    from .index import GapViolation, sphere_index
    q = _q(a.q, allow_zero=True)
    sched = _schedule(a.schedule)
    try:
        rep = sphere_index(a.ell, q, sched, a.margin)
    except GapViolation as e:
        return {"error": str(e)}, [gate("spectral gap clear", False, True, False)], None
    d = rep.as_dict()
    return d, [gate("index stable", rep.stable, True, rep.stable),
               gate("index == 1", rep.index, 1, rep.index == 1)], None


def cmd_verify_all(a):
    from .acceptance import run_all
    ids = _ints(a.only) if a.only else None
    res = run_all(ids)
    for r in res:
        print(f"[{'PASS' if r['passed'] else 'FAIL'}] {r['id']:2d} {r['name']} ({r['seconds']:.1f}s)",
              file=sys.stderr)
    gates = [gate(f"criterion {r['id']}: {r['name']}", r["passed"], True, r["passed"]) for r in res]
    return {"criteria": [{k: v for k, v in r.items() if k != "seconds"} for r in res]}, gates, None


COMMANDS = {
    "tableaux": cmd_tableaux, "cgc": cmd_cgc, "repn-check": cmd_repn_check,
    "dirac-spectrum": cmd_dirac_spectrum, "summability": cmd_summability,
    "commutators": cmd_commutators, "sign-analysis": cmd_sign_analysis,
    "sphere-index": cmd_sphere_index, "verify-all": cmd_verify_all,
}


def build_parser():
    p = argparse.ArgumentParser(prog="suqdirac", description=__doc__,
                                formatter_class=argparse.RawDescriptionHelpFormatter)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", help="report path (default: $SUQDIRAC_OUTPUT_DIR/<command>.json if set)")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, **kw):
        return sub.add_parser(name, parents=[common], **kw)

    s = add("tableaux", help="enumerate GT tableaux of a Young diagram")
    s.add_argument("--ell", type=int, required=True)
    s.add_argument("--lambda", dest="lam", required=True, help="e.g. 2,1,0")

    s = add("cgc", help="dump CG coefficients as (exponent, prefactor, sign)")
    s.add_argument("--ell", type=int, required=True)
    s.add_argument("--lambda", dest="lam", required=True)
    s.add_argument("--q", default="0.5")

    s = add("repn-check", help="relation residuals on a truncated basis")
    s.add_argument("--ell", type=int, required=True)
    s.add_argument("--space", choices=("group", "sphere"), default="sphere")
    s.add_argument("--N", type=int, required=True)
    s.add_argument("--q", default="0.5")
    s.add_argument("--margin", type=int, default=2)
    s.add_argument("--tol", type=float, default=1e-7)

    s = add("dirac-spectrum", help="eigenvalues and multiplicities on a truncation")
    s.add_argument("--ell", type=int, required=True)
    s.add_argument("--space", choices=("group", "sphere"), default="group")
    s.add_argument("--N", type=int, required=True)
    s.add_argument("--operator", default="auto",
                   help="group: d_tilde, full, coordinate, quadratic, parity; sphere: sphere")

    s = add("summability", help="growth exponent of the eigenvalue counting function")
    s.add_argument("--ell", type=int, required=True)
    s.add_argument("--space", choices=("group", "sphere"), default="group")
    s.add_argument("--schedule", required=True, help="e.g. 10,20,40 or 10:40")
    s.add_argument("--correction-order", type=int, default=1)

    s = add("commutators", help="interior norms of [D, pi(u_ij)] over a cutoff schedule")
    s.add_argument("--ell", type=int, required=True)
    s.add_argument("--q", default="0.5")
    s.add_argument("--schedule", default="4:8")
    s.add_argument("--operator", default="d_tilde", choices=("d_tilde", "full", "quadratic"))
    s.add_argument("--i", type=int, default=0)
    s.add_argument("--j", type=int, default=0)
    s.add_argument("--margin", type=int, default=1)

    s = add("sign-analysis", help="sign graph, disjoint-path flow and plane decomposition")
    s.add_argument("--ell", type=int, required=True)
    s.add_argument("--space", choices=("group", "sphere"), default="sphere")
    s.add_argument("--schedule", required=True)
    s.add_argument("--operator", default="auto")
    s.add_argument("--edge-mode", choices=("certified", "threshold", "exhaustive"), default="certified")
    s.add_argument("--c", default="auto")

    s = add("sphere-index", help="index of Q gamma Q; --q 0 uses the exact limit")
    s.add_argument("--ell", type=int, required=True)
    s.add_argument("--q", default="0.5")
    s.add_argument("--schedule", required=True)
    s.add_argument("--margin", type=int, default=2)

    s = add("verify-all", help="run the acceptance suite")
    s.add_argument("--only", help="comma-separated criterion numbers")
    return p


def _check_common(a):
    if getattr(a, "ell", 1) < 1:
        raise ConfigError("--ell must be >= 1")
    if getattr(a, "margin", 1) < 1:
        raise ConfigError("--margin must be >= 1")
    if getattr(a, "N", 0) < 0:
        raise ConfigError("--N must be >= 0")


def main(argv=None):
    p = build_parser()
    a = p.parse_args(argv)
    t = time.perf_counter()
    try:
        _check_common(a)
        res, gates, csv_rows = COMMANDS[a.command](a)
    except (ConfigError, ValueError) as e:
        print(f"suqdirac {a.command}: error: {e}", file=sys.stderr)
        return 2
    passed = all(g["passed"] for g in gates)
    config = {k: v for k, v in sorted(vars(a).items()) if k not in ("output",)}
    report = _jsonable({"schema": SCHEMA, "command": a.command, "config": config,
                        "versions": _versions(), "results": res, "gates": gates, "passed": passed})
    if a.format == "csv" and csv_rows is not None:
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerows(_jsonable(csv_rows))
        text = buf.getvalue()
    else:
        text = json.dumps(report, sort_keys=True, indent=1) + "\n"
    out = a.output
    if out is None and os.environ.get("SUQDIRAC_OUTPUT_DIR"):
        ext = "csv" if a.format == "csv" and csv_rows is not None else "json"
        out = os.path.join(os.environ["SUQDIRAC_OUTPUT_DIR"], f"{a.command}.{ext}")
    if out:
        os.makedirs(os.path.dirname(os.path.abspath(out)), exist_ok=True)
        with open(out, "w") as f:
            f.write(text)
    else:
        sys.stdout.write(text)
    print(f"suqdirac {a.command}: {'PASS' if passed else 'FAIL'} ({time.perf_counter() - t:.1f}s)",
          file=sys.stderr)
    if not passed:
        for g in gates:
            if not g["passed"]:
                print(f"  failed gate: {g['name']} (value {g['value']}, threshold {g['threshold']})",
                      file=sys.stderr)
    return 0 if passed else 1


if __name__ == "__main__":
    sys.exit(main())
