"""Compare the compiled kernels with the numpy fallback.

    python3 benchmarks/bench_kernels.py [--repeat N] [--groups EXPR ...]

Both implementations are fed identical inputs; results are checked equal
before timings are reported.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from finmagnus import _kernels_py as py
from finmagnus.cli.dsl import build
from finmagnus.lattice import cyclic_representatives

try:
    from finmagnus import _kernels as cy
except ImportError:  # pragma: no cover
    cy = None

DEFAULT_GROUPS = ["S(4)", "M9", "AGammaL(1,16)", "C(2) x C(2) x C(2) x C(2) x C(2) x C(2)", "AGL(1,7) x M9"]


def _best(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def _cases(G):
    perms = np.ascontiguousarray(G.conj_perms.astype(np.int32))
    seeds = np.zeros(G.order, dtype=np.uint8)
    seeds[G.order - 1] = 1
    t = np.ascontiguousarray(G.table)
    tt = np.ascontiguousarray(t.T)
    reps, pos = cyclic_representatives(G)
    conj = np.ascontiguousarray(np.stack([G.conj_perm(int(c)) for c in reps]))
    gens = np.asarray(G.generators, dtype=np.int32)
    phi = np.empty(G.order, dtype=np.int32)
    used = np.empty(G.order, dtype=np.uint8)
    cases = {
        "reach": lambda k: k.reach(perms, seeds),
        "orbit_labels": lambda k: k.orbit_labels(perms, G.order),
        "extend_hom": lambda k: k.extend_hom(t, t, gens, gens, phi, used),
    }
    if G.order <= 1000:
        cases["subgroup_lattice"] = lambda k: k.subgroup_lattice(t, tt, reps, conj, pos, 10**5)
    return cases


def _same(a, b) -> bool:
    if isinstance(a, tuple):
        return all(_same(x, y) for x, y in zip(a[1:3], b[1:3]))
    if isinstance(a, list):
        return len(a) == len(b) and all(_same(x, y) for x, y in zip(a, b))
    return np.array_equal(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--groups", nargs="*", default=DEFAULT_GROUPS)
    args = ap.parse_args(argv)
    if cy is None:
        raise SystemExit("compiled extension not built; run pip install -e . first")
    print(f"{'group':<40} {'kernel':<18} {'cython s':>10} {'python s':>10} {'speedup':>8}")
    for expr in args.groups:
        G = build(expr)
        G.table  # build the table outside the timings
        for name, call in _cases(G).items():
            if not _same(call(cy), call(py)):
                raise SystemExit(f"{name} disagrees on {expr}")
            tc = _best(lambda: call(cy), args.repeat)
            tp = _best(lambda: call(py), args.repeat)
            print(f"{expr:<40} {name:<18} {tc:>10.4f} {tp:>10.4f} {tp / max(tc, 1e-9):>7.1f}x")


if __name__ == "__main__":
    main()
