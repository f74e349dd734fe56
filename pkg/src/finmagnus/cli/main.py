"""Command-line entry point: ``magnus check|invariants|verify|search``."""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence, TextIO

from ..errors import MagnusError, ResourceCapError
from .dsl import build

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3
SCHEMA = 1


class _Parser(argparse.ArgumentParser):
    """argparse exits with 2 on bad usage already; keep that but raise instead of exiting."""

    def error(self, message: str):  # type: ignore[override]
        raise _Usage(f"{self.prog}: {message}")


class _Usage(Exception):
    pass


def _dump(obj: dict, out: TextIO) -> None:
    out.write(json.dumps(obj, indent=2, sort_keys=False) + "\n")


def _table(rows: list[tuple[str, object]], out: TextIO) -> None:
    width = max((len(k) for k, _ in rows), default=0)
    for k, v in rows:
        out.write(f"{k.ljust(width)}  {v}\n")


def cmd_check(args, out: TextIO) -> int:
    from ..magnus import magnus_status

    G = build(args.expr)
    rep = magnus_status(G)
    if args.json:
        _dump({"schema": SCHEMA, "expr": args.expr, "order": G.order, **rep.as_dict()}, out)
    else:
        rows = [("group", args.expr), ("order", G.order), ("mp", rep.mp), ("smp", rep.smp),
                ("|A|", rep.a_count), ("|B|", rep.b_count), ("all classes real", rep.all_real)]
        if rep.witness:
            rows.append(("witness", f"elements {rep.witness[0]} and {rep.witness[1]} have equal normal "
                                    "closures but are not conjugate up to inversion"))
        _table(rows, out)
    return EXIT_OK


def invariants_of(G) -> dict:
    from ..lattice import frattini, is_primitive, j_p, s_p
    from ..structure import chief_series, derived_series, fitting_height, is_solvable, prime_factors

    solv = is_solvable(G)
    d = {
        "order": G.order,
        "solvable": solv,
        "derivedLength": derived_series(G).derived_length,
        "fittingHeight": fitting_height(G) if solv else None,
        "chiefFactorOrders": None,
        "primes": [],
        "frattiniOrder": frattini(G).size,
        "primitive": is_primitive(G).primitive,
    }
    if solv:
        cs = chief_series(G)
        d["chiefFactorOrders"] = cs.factor_orders()
        d["primes"] = [{"p": p, "r": cs.p_rank(p), "S": s_p(G, p), "j": j_p(G, p)} for p in prime_factors(G.order)]
    return d


def cmd_invariants(args, out: TextIO) -> int:
    G = build(args.expr)
    d = invariants_of(G)
    if args.json:
        _dump({"schema": SCHEMA, "expr": args.expr, **d}, out)
        return EXIT_OK
    rows = [(k, v) for k, v in d.items() if k != "primes"]
    _table(rows, out)
    if d["primes"]:
        out.write("\n   p  r_p  S_p  j_p\n")
        for row in d["primes"]:
            out.write(f"{row['p']:>4} {row['r']:>4} {row['S']:>4} {row['j']:>4}\n")
    return EXIT_OK


def cmd_verify(args, out: TextIO) -> int:
    from ..classify.claims import CLAIMS, verify

    if args.claim not in CLAIMS:
        raise _Usage(f"unknown claim {args.claim!r}; choose from {', '.join(CLAIMS)}")
    params = {"jobs": args.jobs}
    if args.qmax is not None:
        params["qmax"] = args.qmax
    rep = verify(args.claim, **params)
    if args.json:
        _dump(rep.as_dict(timing=args.timing), out)
    else:
        out.write(f"{rep.claim}: {rep.status.upper()}  ({rep.runtime:.1f} s)\n")
        for k, v in sorted(rep.counts.items()):
            out.write(f"  {k}: {v}\n")
        for e in rep.evidence:
            out.write(f"  - {e}\n")
        for w in rep.witnesses:
            els = f" elements={w['elements']}" if "elements" in w else ""
            out.write(f"  FAIL {w['expr']}: {w['detail']}{els}\n")
    return {"pass": EXIT_OK, "fail": EXIT_FAIL, "inconclusive": EXIT_CAP}[rep.status]


def cmd_search(args, out: TextIO) -> int:
    from ..classify.search import gammal1_search
    from ..structure import prime_power

    if prime_power(args.q) is None:
        raise _Usage(f"--q {args.q} is not a prime power")
    rows = gammal1_search(args.q)
    if args.json:
        _dump({"schema": SCHEMA, "q": args.q, "rows": [r.as_dict() for r in rows]}, out)
    else:
        out.write(f"{'G0':<24} {'|G0|':>6} {'orbits':<16} {'mp':<6} {'smp':<6} decided\n")
        for r in rows:
            orbits = ",".join(map(str, r.analysis.orbit_sizes))
            if len(orbits) > 16:
                orbits = orbits[:13] + "..."
            out.write(f"{r.g0:<24} {r.g0_order:>6} {orbits:<16} {str(r.mp):<6} {str(r.smp):<6} {r.decided_by}\n")
    return EXIT_CAP if any(r.decided_by == "cap" for r in rows) else EXIT_OK


def make_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="magnus", description="Decide the Magnus property for finite groups and run claim suites.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("check", help="MP/SMP verdict for a group expression")
    c.add_argument("expr")
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_check)

    i = sub.add_parser("invariants", help="structural invariants of a group")
    i.add_argument("expr")
    i.add_argument("--json", action="store_true")
    i.set_defaults(func=cmd_invariants)

    v = sub.add_parser("verify", help="run a named claim suite")
    v.add_argument("claim")
    v.add_argument("--qmax", type=int, default=None, help="largest q for the GammaL(1,q) sweep")
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("--json", action="store_true")
    v.add_argument("--timing", action="store_true", help="include runtime in JSON output")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("search", help="raw search rows")
    s.add_argument("family", choices=["gammal1"])
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_search)
    return p


def execute(argv: Sequence[str] | None = None, out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = make_parser().parse_args(argv)
        return args.func(args, out)
    except _Usage as exc:
        err.write(f"{exc}\n")
        return EXIT_USAGE
    except ResourceCapError as exc:
        err.write(f"resource cap: {exc}\n")
        return EXIT_CAP
    except MagnusError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE


def main() -> None:
    sys.exit(execute())


if __name__ == "__main__":
    main()
