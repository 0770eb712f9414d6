"""Command-line entry point: ``charsparse <command> [<subcommand>] [flags]``.

Every command writes a report (JSON by default, CSV with ``--format csv``) to
``--out`` or stdout.  Each row carries the bound it was compared against and
a ``passed`` field; the exit status is 0 when no row failed, 1 when some row
failed and 2 for invalid arguments.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from datetime import datetime, timezone
from fractions import Fraction
from typing import Any, Callable

from . import bruteforce, chartab, combinat, families, grouparith
from .errors import BoundViolation, BudgetError, InvalidParameterError, PreconditionError, ValidationError
from .families import FamilySpec


def _default_seed() -> int:
    return int(os.environ.get("CHARSPARSE_SEED", "0"))


def _cell(v: Any) -> Any:
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, bool) or v is None:
        return v
    if isinstance(v, (set, frozenset, list, tuple)):
        return [_cell(x) for x in sorted(v)] if isinstance(v, (set, frozenset)) else [_cell(x) for x in v]
    return v


def _emit(command: str, rows: list[dict], args) -> int:
    rows = [{k: _cell(v) for k, v in r.items()} for r in rows]
    failed = any(r.get("passed") is False for r in rows)
    if args.format == "csv":
        columns: list[str] = []
        for r in rows:
            for k in r:
                if k not in columns:
                    columns.append(k)
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({k: json.dumps(v) if isinstance(v, list) else ("" if v is None else v) for k, v in r.items()})
        text = buf.getvalue()
    else:
        doc: dict[str, Any] = {"command": command, "passed": not failed, "rows": rows}
        if not args.no_timestamp:
            doc["timestamp"] = datetime.now(timezone.utc).isoformat(timespec="seconds")
        text = json.dumps(doc, indent=2) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 1 if failed else 0


def _spec(args) -> FamilySpec:
    return FamilySpec(args.kind, args.n, args.q, args.c)


# -- command implementations --------------------------------------------------------------

def cmd_families_stats(args) -> list[dict]:
    spec = _spec(args)
    stat = args.statistic
    kw = dict(budget=args.budget, samples=args.samples, seed=args.seed, workers=args.workers)
    if stat in ("rho_ge", "factor_degree") and args.m is None:
        raise InvalidParameterError(f"--m is required for --statistic {stat}")
    if stat == "alpha_ge" and args.M is None:
        raise InvalidParameterError("--M is required for --statistic alpha_ge")
    if stat == "rho_ge":
        s = families.stat_rho_ge(spec, args.m, **kw)
    elif stat == "factor_degree":
        s = families.stat_factor_degree_divisible(spec, args.m, **kw)
    elif stat == "alpha_ge":
        s = families.stat_alpha_ge(spec, args.M, **kw)
    else:
        s = families.stat_zeta_symmetric(spec, **kw)
    return [s.row()]


def cmd_families_verify_count(args) -> list[dict]:
    spec = _spec(args)
    expected = families.cardinality(spec)
    counted = sum(1 for _ in families.enumerate_family(spec, cap=args.budget))
    bound = f"q^{spec.n // 2}" if spec.kind == "O" else f"q^{spec.n - 1}"
    return [{"kind": spec.kind, "n": spec.n, "q": spec.q, "c": spec.c, "population": counted,
             "expected": expected, "paper_bound": bound, "passed": counted == expected}]


def cmd_verify_exp_decay(args) -> list[dict]:
    spec = _spec(args)
    ms = [args.m] if args.m is not None else range(1, spec.n + 1)
    return [families.stat_rho_ge(spec, m, args.budget, args.samples, args.seed, workers=args.workers).row()
            for m in ms]


def cmd_verify_alpha_tail(args) -> list[dict]:
    spec = _spec(args)
    Ms = [args.M] if args.M is not None else range(1, spec.n + 1)
    return [families.stat_alpha_ge(spec, M, args.budget, args.samples, args.seed, workers=args.workers).row()
            for M in Ms]


def cmd_verify_a_orbits(args) -> list[dict]:
    s = families.stat_zeta_symmetric(_spec(args), args.budget, args.samples, args.seed, workers=args.workers)
    return [s.row()]


def cmd_zsigmondy(args) -> list[dict]:
    z = grouparith.zsigmondy(args.q, args.m)
    return [{"q": args.q, "m": args.m, "primes": sorted(z.primes),
             "paper_bound": "nonempty when m > 6", "passed": bool(z.primes) if args.m > 6 else None}]


def cmd_verify_which_z(args) -> list[dict]:
    rows = []
    for ell in sorted(grouparith.zsigmondy(args.q, args.m).primes):
        for k in range(1, args.k + 1):
            try:
                minus, plus = grouparith.which_z_check(ell, args.q, args.m, k)
                ok = True
            except BoundViolation:
                minus = pow(args.q, k, ell) == 1
                plus = pow(args.q, k, ell) == ell - 1
                ok = False
            rows.append({"ell": ell, "q": args.q, "m": args.m, "k": k, "divides_minus": minus,
                         "divides_plus": plus, "paper_bound": "m | k; k odd multiple of m/2", "passed": ok})
    return rows


def cmd_verify_just_one(args) -> list[dict]:
    spec = _spec(args)
    mode = "unitary" if spec.kind == "U" else "linear"
    primes = sorted(grouparith.zsigmondy(args.q, args.m).primes)
    if args.ell is not None:
        if args.ell not in primes:
            raise InvalidParameterError(f"{args.ell} is not a Zsigmondy prime for ({args.q}, {args.m})")
        primes = [args.ell]
    checked = exceptions = 0
    for P in families.enumerate_family(spec, cap=args.budget):
        for ell in primes:
            try:
                ok = grouparith.just_one_check(P, args.m, ell, mode, args.q)
            except PreconditionError:
                continue
            checked += 1
            exceptions += not ok
    return [{"kind": spec.kind, "n": spec.n, "q": spec.q, "m": args.m, "primes": primes,
             "checked": checked, "exceptions": exceptions,
             "paper_bound": "ell prime to the centralizer order", "passed": exceptions == 0}]


def cmd_counts_unipotent(args) -> list[dict]:
    value = combinat.unipotent_class_count(args.type, args.n)
    return [{"type": args.type, "n": args.n, "value": value, "paper_bound": None, "passed": None}]


def cmd_counts_symbols(args) -> list[dict]:
    if args.type is not None:
        value = combinat.unipotent_char_count(args.type, args.rank)
        return [{"type": args.type, "rank": args.rank, "value": value, "passed": None}]
    value = combinat.count_symbols(args.rank, args.defect)
    return [{"rank": args.rank, "defect": args.defect, "value": value, "passed": None}]


def cmd_master_constants(args) -> list[dict]:
    eps = Fraction(args.epsilon)
    M, delta = combinat.master_constants(eps, args.N)
    g = combinat.master_guarantee(M, delta)
    return [{"epsilon": eps, "N": args.N, "M": M, "delta": delta, "guarantee": g,
             "paper_bound": "M^2 delta + 2 delta + 4/M < epsilon",
             "passed": g < eps and M > 8 / eps and M >= args.N}]


def _table_from_args(args) -> chartab.CharTable:
    if args.path:
        with open(args.path, encoding="utf-8") as fh:
            return chartab.load_table(fh.read())
    if args.group is None or args.q is None:
        raise InvalidParameterError("give --path, or --group and --q")
    return chartab.builtin_table(args.group, args.q)


def cmd_table_build(args) -> list[dict]:
    t = _table_from_args(args)
    return [chartab.save_table(t)]


def cmd_table_load(args) -> list[dict]:
    t = _table_from_args(args)
    return [{"group": t.group, "order": t.order, "classes": t.k, "valid": True, "passed": True}]


def cmd_table_sigma(args) -> list[dict]:
    t = _table_from_args(args)
    r = chartab.sigma(t)
    return [{"group": t.group, "classes": t.k, "total_entries": r.total_entries,
             "nonzero_entries": r.nonzero_entries, "sigma": r.sigma, "sigma_float": float(r.sigma),
             "paper_bound": "limit 1/2 for PSL2(q)", "passed": None}]


def cmd_table_audit(args) -> list[dict]:
    t = _table_from_args(args)
    burn = chartab.burnside_audit(t)
    gal = chartab.gallagher_audit(t)
    col = chartab.second_orthogonality_check(t)
    rows = [
        {"group": t.group, "audit": "burnside", "violations": len(burn),
         "paper_bound": "d divides chi(g)", "passed": not burn},
        {"group": t.group, "audit": "gallagher", "violations": len(gal.failures), "min_trace": gal.min_trace,
         "paper_bound": "T(|chi(g)|^2) >= d^2", "passed": gal.passed},
        {"group": t.group, "audit": "column_orthogonality", "violations": 0 if col else 1,
         "paper_bound": "sum chi(g) conj chi(h) = delta |C(g)|", "passed": col},
    ]
    if args.ell is not None:
        od = chartab.ord_degree_audit(t, args.ell)
        rows.append({"group": t.group, "audit": "ord_degree", "ell": args.ell, "checked": len(od.checked),
                     "violations": len(od.failures), "paper_bound": "ord_ell chi(1) = ord_ell |G|",
                     "passed": od.passed})
    return rows


def cmd_brute_classes(args) -> list[dict]:
    G = bruteforce.build(args.case, args.n, args.q, seed=args.seed)
    rows = []
    for rec in bruteforce.class_records(G):
        rows.append({"group": f"{args.case}{args.n}({args.q})", "representative": list(rec.representative),
                     "size": rec.size, "element_order": rec.order, "semisimple": rec.semisimple,
                     "charpoly": str(rec.charpoly), "centralizer": rec.centralizer, "passed": None})
    return rows


def cmd_brute_fibers(args) -> list[dict]:
    G = bruteforce.build(args.case, args.n, args.q, seed=args.seed)
    rep = bruteforce.charpoly_fiber_report(G)
    return [{"group": rep.group, "charpoly": str(P), "classes": tot, "semisimple_classes": semi,
             "in_family": rep.in_family[P], "paper_bound": rep.bound,
             "passed": semi <= rep.bound and rep.in_family[P]} for P, (tot, semi) in rep.fibers.items()]


# -- argument parsing --------------------------------------------------------------------------

def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--budget", type=int, default=families.EXHAUSTIVE_CAP,
                   help="largest population handled exhaustively (default %(default)s)")
    p.add_argument("--samples", type=int, default=families.DEFAULT_SAMPLES)
    p.add_argument("--seed", type=int, default=_default_seed())
    p.add_argument("--out")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--no-timestamp", action="store_true")


def _family_args(p: argparse.ArgumentParser, m: bool = False, M: bool = False) -> None:
    p.add_argument("--kind", choices=("L", "U", "O"), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--c", type=int)
    if m:
        p.add_argument("--m", type=int)
    if M:
        p.add_argument("--M", type=int)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="charsparse", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def leaf(subs, name, func, **kw):
        p = subs.add_parser(name, **kw)
        _common(p)
        p.set_defaults(func=func, name=name)
        return p

    fam = sub.add_parser("families").add_subparsers(dest="sub", required=True)
    p = leaf(fam, "stats", cmd_families_stats)
    _family_args(p, m=True, M=True)
    p.add_argument("--statistic", choices=("rho_ge", "factor_degree", "alpha_ge", "zeta"), default="rho_ge")
    p = leaf(fam, "verify-count", cmd_families_verify_count)
    _family_args(p)

    ver = sub.add_parser("verify").add_subparsers(dest="sub", required=True)
    p = leaf(ver, "exp-decay", cmd_verify_exp_decay)
    _family_args(p, m=True)
    p = leaf(ver, "alpha-tail", cmd_verify_alpha_tail)
    _family_args(p, M=True)
    p = leaf(ver, "a-orbits", cmd_verify_a_orbits)
    _family_args(p)
    p = leaf(ver, "which-z", cmd_verify_which_z)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--k", type=int, default=40, help="check every k up to this value")
    p = leaf(ver, "just-one", cmd_verify_just_one)
    _family_args(p)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--ell", type=int)

    p = leaf(sub, "zsigmondy", cmd_zsigmondy)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--m", type=int, required=True)

    cnt = sub.add_parser("counts").add_subparsers(dest="sub", required=True)
    p = leaf(cnt, "unipotent", cmd_counts_unipotent)
    p.add_argument("--type", choices=combinat.UNIPOTENT_TYPES, required=True)
    p.add_argument("--n", type=int, required=True)
    p = leaf(cnt, "symbols", cmd_counts_symbols)
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--defect", type=int, default=1)
    p.add_argument("--type", choices=("A", "BC", "D", "2D"))

    p = leaf(sub, "master-constants", cmd_master_constants)
    p.add_argument("--epsilon", required=True, help="a rational such as 1/10")
    p.add_argument("--N", type=int, default=1)

    tab = sub.add_parser("table").add_subparsers(dest="sub", required=True)
    for name, func in (("build", cmd_table_build), ("load", cmd_table_load),
                       ("sigma", cmd_table_sigma), ("audit", cmd_table_audit)):
        p = leaf(tab, name, func)
        p.add_argument("--group", choices=("sl2", "psl2", "gl2"))
        p.add_argument("--q", type=int)
        p.add_argument("--path", help="table document to load instead of a built-in")
        if name == "audit":
            p.add_argument("--ell", type=int)

    br = sub.add_parser("brute").add_subparsers(dest="sub", required=True)
    for name, func in (("classes", cmd_brute_classes), ("fibers", cmd_brute_fibers)):
        p = leaf(br, name, func)
        p.add_argument("--case", choices=bruteforce.CASES, required=True)
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--q", type=int, required=True)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    label = args.command if getattr(args, "sub", None) is None else f"{args.command} {args.sub}"
    func: Callable = args.func
    try:
        rows = func(args)
    except (InvalidParameterError, PreconditionError, ValidationError, BudgetError, ValueError) as exc:
        print(f"charsparse: error: {exc}", file=sys.stderr)
        return 2
    if func is cmd_table_build:
        text = json.dumps(rows[0], sort_keys=True, separators=(",", ":"))
        if args.out:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text + "\n")
        else:
            sys.stdout.write(text + "\n")
        return 0
    return _emit(label, rows, args)


if __name__ == "__main__":
    sys.exit(main())
