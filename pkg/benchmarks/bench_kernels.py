"""Compare the compiled and pure-Python CG kernels over all valid (tableau, move) pairs."""
import argparse
import math
import time

from suqdirac import _pykernels
from suqdirac.tableaux import enumerate_tableaux, is_valid, moves, raw_apply, young_diagrams


def cases(ell, top):
    out = []
    for lam in young_diagrams(ell, top):
        for r in enumerate_tableaux(lam):
            for i in range(1, ell + 2):
                for M in moves(i, ell):
                    if is_valid(raw_apply(M, r)):
                        out.append((r, M))
    return out


def bench(fn, work, lq, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        for r, M in work:
            fn(r, M, lq)
        best = min(best, time.perf_counter() - t)
    return best


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--ell", type=int, default=2)
    p.add_argument("--top", type=int, default=6, help="largest level")
    p.add_argument("--q", type=float, default=0.5)
    p.add_argument("--repeat", type=int, default=3)
    a = p.parse_args()
    work = cases(a.ell, a.top)
    lq = math.log(a.q)
    tp = bench(_pykernels.cg_log, work, lq, a.repeat)
    print(f"{len(work)} coefficients, ell={a.ell}, level<={a.top}")
    print(f"python  {tp * 1e3:9.2f} ms")
    try:
        from suqdirac import _ckernels
    except ImportError:
        print("cython  extension not built")
        return
    tc = bench(_ckernels.cg_log, work, lq, a.repeat)
    print(f"cython  {tc * 1e3:9.2f} ms   speedup {tp / tc:.1f}x")


if __name__ == "__main__":
    main()
