"""Command-line front end: ``deeptkt <command> ...``.

Exit codes: 0 success, 1 verification mismatch, 2 usage or domain error.
"""
from __future__ import annotations

import argparse
import json
import sys

from .errors import (CapacityError, ContractError, DomainError, IdentificationError,
                     ParameterError, StructureError)
from .finite import AbelianInvariants
from .pcgroup import GroupParams, admissible_params, build_group, power_identities_by_collection, power_identity_checks, \
    two_step_centralizer
from .quadfield import class_group, scan
from .symbolic import identify_tower_group, symbolic_pattern
from .tables import verify_tables
from .transfer import artin_pattern, params_dict, verify_kernel_types
from .tree import build_tree, smallgroups_label

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2
USER_ERRORS = (ParameterError, DomainError, IdentificationError, CapacityError, ContractError,
               StructureError)


def _inv(inv: AbelianInvariants, log: bool) -> str:
    if log:
        return "(" + ",".join(map(str, inv.log())) + ")" if inv.factors else "0"
    return str(inv)


def _emit(doc: dict, out) -> None:
    out.write(json.dumps(doc, sort_keys=True, ensure_ascii=False) + "\n")


# -- subcommands ------------------------------------------------------------------

def cmd_group(args, out) -> int:
    p = GroupParams(a=args.a, n=args.n, w=args.w, z=args.z)
    G = build_group(p)
    pat = artin_pattern(G)
    pred = symbolic_pattern(p)
    chi2 = two_step_centralizer(G)
    lg = args.log_invariants
    doc = {
        "group": str(p),
        "params": params_dict(p),
        "order": G.order,
        "class": G.nilpotency_class,
        "coclass": G.coclass,
        "type": pred.type_label,
        "tau": [_inv(t, lg) for t in pat.tau],
        "kappa_s": list(pat.kappa_s),
        "kappa_d_orders": list(pat.kappa_d_orders),
        "kappa_d_structures": [_inv(k, lg) for k in pat.kappa_d_structures],
        "chi2_index": G.order // chi2.order,
        "smallgroups": list(smallgroups_label(p) or []) or None,
    }
    if args.json:
        _emit(doc, out)
    else:
        for k in ("group", "order", "class", "coclass", "type", "chi2_index"):
            out.write(f"{k:20s} {doc[k]}\n")
        out.write(f"{'tau':20s} [{', '.join(doc['tau'])}]\n")
        out.write(f"{'kappa_s':20s} ({','.join(map(str, doc['kappa_s']))})\n")
        out.write(f"{'kappa_d':20s} ({','.join(map(str, doc['kappa_d_orders']))})\n")
        out.write(f"{'kappa_d structures':20s} [{', '.join(doc['kappa_d_structures'])}]\n")
        if doc["smallgroups"]:
            out.write(f"{'smallgroups':20s} <{doc['smallgroups'][0]},{doc['smallgroups'][1]}>\n")
    return EXIT_OK


def cmd_verify_kernel_types(args, out) -> int:
    rep = verify_kernel_types(args.nmax)
    if args.json:
        _emit(rep.as_dict(), out)
    else:
        out.write(f"{'group':16s} {'kappa_s':10s} {'kappa_d':12s} match\n")
        for r in rep.rows:
            c = r.computed
            out.write(f"{str(r.params):16s} {''.join(map(str, c.kappa_s)):10s} "
                      f"{','.join(map(str, c.kappa_d_orders)):12s} {'yes' if r.match else 'NO'}\n")
        out.write(f"{len(rep.rows)} groups, {len(rep.mismatches)} mismatches\n")
    return EXIT_OK if rep.ok else EXIT_MISMATCH


def cmd_verify_power_identities(args, out) -> int:
    rows = []
    for p in admissible_params(args.nmax):
        G = build_group(p)
        checks = {**power_identity_checks(G), **{f"collected: {k}": v for k, v in power_identities_by_collection(G).items()}}
        rows.append({"params": params_dict(p), "group": str(p), "checks": checks,
                     "ok": all(checks.values())})
    ok = all(r["ok"] for r in rows)
    if args.json:
        _emit({"rows": rows, "ok": ok}, out)
    else:
        for r in rows:
            failed = [k for k, v in r["checks"].items() if not v]
            out.write(f"{r['group']:16s} {'ok' if r['ok'] else 'FAILED: ' + '; '.join(failed)}\n")
    return EXIT_OK if ok else EXIT_MISMATCH


def cmd_verify_tables(args, out) -> int:
    rep = verify_tables(args.data)
    if args.json:
        _emit(rep.as_dict(), out)
    else:
        for r in rep.rows:
            out.write(f"{r.table} {r.d:>9d} <{r.group[0]},{r.group[1] if r.group[1] else '?'}> "
                      f"Cl3={r.sylow3} {'ok' if r.ok else '; '.join(r.errors)}\n")
        tally = ", ".join(f"<729,{k}>: {v} ({rep.proportions[k]:.1f}%)" for k, v in rep.tally.items())
        out.write(f"tally: {tally}\n")
        for e in rep.file_errors + rep.proportion_errors:
            out.write(f"error: {e}\n")
        out.write("all tables verified\n" if rep.ok else f"{len(rep.errors)} errors\n")
    return EXIT_OK if rep.ok else EXIT_MISMATCH


def cmd_tree(args, out) -> int:
    tree = build_tree(args.nmax)
    out.write(tree.to_dot() if args.format == "dot" else tree.to_json() + "\n")
    return EXIT_OK


def cmd_identify(args, out) -> int:
    try:
        kd = [int(k) for k in args.kappa_d.split(",")]
    except ValueError:
        raise IdentificationError(f"cannot parse kappa_d {args.kappa_d!r}")
    p = identify_tower_group(args.e, kd, comparison=args.comparison)
    label = smallgroups_label(p)
    doc = {"group": str(p), "params": params_dict(p), "smallgroups": list(label) if label else None}
    if args.json:
        _emit(doc, out)
    else:
        tag = f" = <{label[0]},{label[1]}>" if label else ""
        out.write(f"{p}{tag}\n")
    return EXIT_OK


def cmd_field_cl3(args, out) -> int:
    cg = class_group(args.d)
    doc = {"d": args.d, "h_narrow": cg.h, "invariants": list(cg.invariants.factors),
           "sylow3": list(cg.sylow3.factors), "rank3": cg.sylow3.rank}
    if args.json:
        _emit(doc, out)
    else:
        out.write(f"d = {args.d}\nnarrow class group {cg.invariants} of order {cg.h}\n"
                  f"3-Sylow {cg.sylow3}\n")
    return EXIT_OK


def cmd_field_scan(args, out) -> int:
    hits = scan(args.min, args.max, min_rank=2 if args.rank2_only else 1, workers=args.workers)
    if args.json:
        _emit({"min": args.min, "max": args.max,
               "rows": [{"d": d, "sylow3": list(s.factors)} for d, s in hits]}, out)
    else:
        for d, s in hits:
            out.write(f"{d} {s}\n")
    return EXIT_OK


# -- parser -----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="deeptkt", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def with_json(p):
        p.add_argument("--json", action="store_true", help="emit one key-sorted JSON document")
        return p

    g = with_json(sub.add_parser("group", help="build G_a^n(z,w) and report its Artin pattern"))
    for flag in ("a", "n", "w", "z"):
        g.add_argument(f"--{flag}", type=int, required=True)
    g.add_argument("--log-invariants", action="store_true", help="abelian invariants as exponents, e.g. (2,2)")
    g.set_defaults(func=cmd_group)

    v = sub.add_parser("verify", help="verification suites")
    vs = v.add_subparsers(dest="suite", required=True)
    t1 = with_json(vs.add_parser("theorem1", help="generic transfer kernels vs case analysis"))
    t1.add_argument("--nmax", type=int, default=9)
    t1.set_defaults(func=cmd_verify_kernel_types)
    l1 = with_json(vs.add_parser("lemma1", help="power identities in every admissible group"))
    l1.add_argument("--nmax", type=int, default=9)
    l1.set_defaults(func=cmd_verify_power_identities)
    tb = with_json(vs.add_parser("tables", help="recheck the shipped discriminant tables"))
    tb.add_argument("--data", default=None, help="directory with table2/3/4.json (default: shipped)")
    tb.set_defaults(func=cmd_verify_tables)

    tr = sub.add_parser("tree", help="emit the coclass-1 tree")
    tr.add_argument("--nmax", type=int, default=8)
    tr.add_argument("--format", choices=("dot", "json"), default="dot")
    tr.set_defaults(func=cmd_tree)

    idf = with_json(sub.add_parser("identify", help="tower group from state e and deep TKT"))
    idf.add_argument("--e", type=int, required=True)
    idf.add_argument("--kappa-d", required=True, help="four kernel orders, e.g. 3,9,3,3")
    idf.add_argument("--comparison", choices=("multiset", "ordered"), default="multiset")
    idf.set_defaults(func=cmd_identify)

    f = sub.add_parser("field", help="real quadratic fields")
    fs = f.add_subparsers(dest="field_command", required=True)
    cl3 = with_json(fs.add_parser("cl3", help="class group and 3-Sylow of Q(sqrt d)"))
    cl3.add_argument("--d", type=int, required=True)
    cl3.set_defaults(func=cmd_field_cl3)
    sc = with_json(fs.add_parser("scan", help="fundamental d with non-trivial 3-class group"))
    sc.add_argument("--min", type=int, required=True)
    sc.add_argument("--max", type=int, required=True)
    sc.add_argument("--rank2-only", action="store_true", help="keep only 3-rank >= 2")
    sc.add_argument("--workers", type=int, default=1)
    sc.set_defaults(func=cmd_field_scan)
    return ap


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except USER_ERRORS as exc:
        print(f"deeptkt: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main_exit() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_exit()
