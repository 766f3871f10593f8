"""Command-line front end.

Exit status: 0 on success, 1 when a yes/no query has a negative answer (the
reasoned verdict is still printed), 2 on usage or parse errors.
"""

import argparse
import json
import os
import sys

from . import isometry
from ._text import ParseError
from .fpgroup import (DEFAULT_COSET_LIMIT, CosetLimitExceeded, abelianization,
                      is_cyclic, parse_presentation, todd_coxeter)
from .orbifold import euler_characteristic, format_orbifold, is_finite_pi1orb_rp2
from .seifert import (canonical_lens_classes, classify_fibrations, normalize_lens,
                      parse_lens, parse_seifert, recognize_lens)
from .tower import build_tower, certify_step

LIMIT_ENV = "SEIFERT_LENS_COSET_LIMIT"


class UsageError(Exception):
    pass


def default_limit():
    raw = os.environ.get(LIMIT_ENV)
    if raw is None:
        return DEFAULT_COSET_LIMIT
    try:
        value = int(raw)
    except ValueError:
        raise UsageError(f"{LIMIT_ENV} must be an integer, got {raw!r}") from None
    if value < 1:
        raise UsageError(f"{LIMIT_ENV} must be >= 1")
    return value


def _emit(args, payload, text):
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print(text)


def _certify_fibration(fib, limit):
    """End-to-end checks for one fibration: group order and cyclicity, then
    the isometry chain for its n."""
    d = fib.to_dict(certify=True, limit=limit)
    n = fib.fiber[0]
    report = isometry.verify_action(n)
    if not report.ok:
        raise AssertionError(f"isometry certificate failed for n = {n}")
    d["certified"] = True
    return d


def cmd_classify(args):
    lens = parse_lens(args.lens)
    canon = normalize_lens(lens.p, lens.q)
    fibs = classify_fibrations(canon)
    rows = [_certify_fibration(f, args.limit) if args.certify else f.to_dict() for f in fibs]
    lines = [f"{canon}: {len(fibs)} Seifert fibration(s) over RP2(n)"]
    for f in fibs:
        lines.append(f"  {f.invariants} over {format_orbifold(f.base)}"
                     f"  (oriented L({f.total_space.p},{f.oriented_q}))")
    _emit(args, {"lens": {"p": canon.p, "q": canon.q}, "fibrations": rows}, "\n".join(lines))
    return 0


def cmd_recognize(args):
    s = parse_seifert(args.seifert)
    r = recognize_lens(s, certify=args.certify, limit=args.limit)
    payload = {
        "input": str(s),
        "is_lens": r.is_lens,
        "lens": {"p": r.lens.p, "q": r.lens.q, "q_oriented": r.oriented_q} if r.is_lens else None,
        "reason": r.reason,
        "pi1_order": r.pi1_order,
    }
    _emit(args, payload, f"{s}: {r.explain()}")
    return 0 if r.is_lens else 1


def cmd_group(args):
    p = parse_presentation(args.presentation)
    subgroup = [p.word(w) for w in args.subgroup]
    table = todd_coxeter(p, subgroup, args.limit)
    if args.table:
        print(table.to_json())
        return 0 if table.complete else 1
    ab = abelianization(p)
    payload = {"presentation": p.format(), "status": table.status,
               "abelianization": {"rank": ab.rank, "torsion": list(ab.torsion)}}
    label = "index" if subgroup else "order"
    payload[label] = table.index
    if table.complete and not subgroup:
        payload["cyclic"] = is_cyclic(p, args.limit)
    if table.complete:
        text = f"{p}\n  {label}: {table.index}\n  abelianization: {ab}"
        if "cyclic" in payload:
            text += f"\n  cyclic: {'yes' if payload['cyclic'] else 'no'}"
    else:
        text = f"{p}\n  enumeration exceeded {args.limit} cosets\n  abelianization: {ab}"
    _emit(args, payload, text)
    return 0 if table.complete else 1


def cmd_verify_action(args):
    if args.n < 1:
        raise UsageError("n must be >= 1")
    r = isometry.verify_action(args.n)
    text = "\n".join([
        f"A+ for n = {r.n}",
        f"  order: {r.order}",
        f"  free: {'yes' if r.free else 'no'}",
        f"  conjugation deviation |Phi A+ - A_(2n-1) Phi|: {r.conjugation_deviation:.3e}",
        f"  trace scan: {{{', '.join(map(str, r.trace_scan))}}}",
        f"  quotient via A_(2n-1): {r.quotient}",
        f"  quotient via A-: {r.reflected_quotient}",
        f"  all checks: {'pass' if r.ok else 'FAIL'}",
    ])
    _emit(args, r.to_dict(), text)
    return 0 if r.ok else 1


def cmd_tower(args):
    if args.n1 < 2 or args.n2 < 2:
        raise UsageError("the tower needs n1, n2 >= 2")
    if args.depth < 1:
        raise UsageError("--depth must be >= 1")
    steps = build_tower(args.n1, args.n2, args.depth)
    verdict = is_finite_pi1orb_rp2([args.n1, args.n2])
    ok = all(certify_step(s) for s in steps)
    rows = []
    lines = [f"tower over RP2({args.n1},{args.n2}), chi = {verdict.chi}"]
    for s in steps:
        row = s.to_dict()
        row["certified"] = certify_step(s)
        rows.append(row)
        cover = _short(format_orbifold(s.cover))
        lines.append(f"  {cover} --{s.degree}--> {_short(format_orbifold(s.base))}"
                     f"  chi {euler_characteristic(s.cover)} = {s.degree} x "
                     f"{euler_characteristic(s.base)}  [{'ok' if row['certified'] else 'FAIL'}]")
    if args.json:
        print(json.dumps(rows, indent=2))
    else:
        print("\n".join(lines))
    return 0 if ok else 1


def _short(name, width=60):
    return name if len(name) <= width else name[:width - 3] + "..."


def scan_rows(p_max, certify=False, limit=DEFAULT_COSET_LIMIT):
    """One row per canonical lens class with ``p <= p_max``."""
    rows = []
    for p in range(1, p_max + 1):
        for q in canonical_lens_classes(p):
            lens = normalize_lens(p, q)
            fibs = classify_fibrations(lens)
            row = {"lens": {"p": p, "q": q}, "count": len(fibs)}
            if fibs:
                f = fibs[0]
                row["fibration"] = _certify_fibration(f, limit) if certify else f.to_dict()
                # round trip through recognition
                back = recognize_lens(f.invariants)
                if back.lens != lens:
                    raise AssertionError(f"round trip failed for {lens}")
            n = p // 4
            expected = p % 4 == 0 and q in (2 * n - 1, 2 * n + 1)
            if expected != bool(fibs) or len(fibs) > 1:
                raise AssertionError(f"scan cross-check failed at {lens}")
            rows.append(row)
    return rows


def cmd_scan(args):
    if args.p_max < 1:
        raise UsageError("p_max must be >= 1")
    rows = scan_rows(args.p_max, args.certify, args.limit)
    hits = [r for r in rows if r["count"]]
    if args.json:
        print(json.dumps({"rows": rows if not args.hits_only else hits,
                          "classes": len(rows), "hits": len(hits)}, indent=2))
        return 0
    shown = hits if args.hits_only else rows
    lines = [f"{'lens':>10}  count  fibration"]
    for r in shown:
        lens = f"L({r['lens']['p']},{r['lens']['q']})"
        extra = ""
        if r["count"]:
            fib = r["fibration"]
            extra = f"M(-1;({fib['fiber']['n']},{fib['fiber']['beta']})) over {fib['base']}"
        lines.append(f"{lens:>10}  {r['count']:>5}  {extra}")
    lines.append(f"{len(rows)} canonical classes with p <= {args.p_max}, {len(hits)} fibre over RP2(n)")
    print("\n".join(lines))
    return 0


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--certify", action="store_true",
                        help="run coset-enumeration and isometry certificates")
    common.add_argument("--limit", type=int, default=None,
                        help=f"coset limit (default {DEFAULT_COSET_LIMIT}, env {LIMIT_ENV})")

    parser = argparse.ArgumentParser(
        prog="seifert-lens",
        description="Seifert fibrations of lens spaces over RP2(n).")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[common], help="fibrations of L(p,q) over RP2(n)")
    p.add_argument("lens", help="e.g. 'L(8,3)'")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("recognize", parents=[common], help="is M(-1; ...) a lens space?")
    p.add_argument("seifert", help="e.g. 'M(-1; (5,2))' or 'M(-1; 1; (3,1))'")
    p.set_defaults(func=cmd_recognize)

    p = sub.add_parser("group", parents=[common], help="coset enumeration and abelianization")
    p.add_argument("presentation", help="e.g. '< a, h | a^-1 h a h, a^4 h^-3 >'")
    p.add_argument("--subgroup", action="append", default=[], metavar="WORD",
                   help="subgroup generator (repeatable)")
    p.add_argument("--table", action="store_true", help="print the coset table as JSON")
    p.set_defaults(func=cmd_group)

    p = sub.add_parser("verify-action", parents=[common], help="check the A+ action for n")
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_verify_action)

    p = sub.add_parser("tower", parents=[common], help="covering tower over RP2(n1,n2)")
    p.add_argument("n1", type=int)
    p.add_argument("n2", type=int)
    p.add_argument("--depth", type=int, default=4)
    p.set_defaults(func=cmd_tower)

    p = sub.add_parser("scan", parents=[common], help="classify every L(p,q) with p <= p_max")
    p.add_argument("p_max", type=int)
    p.add_argument("--hits-only", action="store_true")
    p.set_defaults(func=cmd_scan)
    return parser


def run(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.limit is None:
            args.limit = default_limit()
        elif args.limit < 1:
            raise UsageError("--limit must be >= 1")
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        print(f"  {exc.text}", file=sys.stderr)
        prefix = exc.text.encode("utf-8")[:exc.offset].decode("utf-8", "replace")
        print("  " + " " * len(prefix) + "^", file=sys.stderr)
        return 2
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CosetLimitExceeded as exc:
        print(f"undecided: {exc}", file=sys.stderr)
        return 1


def main():
    sys.exit(run())
