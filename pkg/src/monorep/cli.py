"""Command-line driver: ``monorep <command> <monoid> [options]``."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import report
from .characters import DEFAULT_SEED, MonoidContext
from .formats import load_monoid
from .harness import InvariantViolation, records_to_jsonl, scan
from .monoid import MonoidError

EXIT_OK, EXIT_USAGE, EXIT_INVARIANT = 0, 1, 2


def _matrix(rows) -> str:
    if not rows:
        return "(empty)"
    cells = [[str(v) for v in r] for r in rows]
    w = max(len(c) for r in cells for c in r)
    return "\n".join("  ".join(c.rjust(w) for c in r) for r in cells)


def _primes(text: str) -> list[int]:
    try:
        out = sorted({int(x) for x in text.replace(",", " ").split()})
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad prime list {text!r}")
    if not out:
        raise argparse.ArgumentTypeError("empty prime list")
    return out


def _context(args) -> MonoidContext:
    return MonoidContext(load_monoid(args.monoid), args.seed)


def cmd_analyze(args, out) -> int:
    ctx = _context(args)
    rep = report.analysis_report(ctx.M, args.monoid, args.primes, args.seed, ctx)
    if args.json:
        Path(args.json).write_text(report.dumps(rep))
    M = ctx.M
    print(f"monoid {M.name or args.monoid}: size {M.size}, sha256 {rep['monoid']['sha256'][:16]}", file=out)
    g = rep["green"]
    print(f"J-classes {len(g['j_class_sizes'])} (regular {sum(g['regular'])}), classes {rep['classes']['count']}", file=out)
    pr = rep["prime_report"]
    print(f"strongly modular {pr['strongly_modular']}, modular {pr['modular']}, nonmodular prime {rep['nonmodular_prime']}", file=out)
    for p in args.primes:
        blk = rep["per_prime"][str(p)]
        print(f"p={p}: field F_{p}^{blk['field']['degree']}, det C = {blk['cartan']['det']}, Loewy length {blk['cartan']['loewy_length']}, Cartan square {'ok' if blk['cartan_square_holds'] else 'FAILED'}", file=out)
    for f in rep["verdict"]["findings"]:
        print(f, file=out)
    return EXIT_OK


def cmd_cartan(args, out) -> int:
    ctx = _context(args)
    A, fc = ctx.algebra_and_field(args.prime)
    cd = A.cartan
    print(f"Cartan matrix over F_{fc.p}^{fc.degree} (det {cd.det})", file=out)
    print(_matrix(cd.C), file=out)
    print("simples: " + ", ".join(cd.labels), file=out)
    return EXIT_OK


def cmd_decomp(args, out) -> int:
    ctx = _context(args)
    dm = ctx.decomposition(args.prime)
    print(f"decomposition matrix at p={args.prime} (ordinary field F_{ctx.ell})", file=out)
    print(_matrix(dm.D), file=out)
    print("rows: " + ", ".join(dm.row_labels), file=out)
    print("cols: " + ", ".join(dm.col_labels), file=out)
    return EXIT_OK


def cmd_quiver(args, out) -> int:
    ctx = _context(args)
    q = ctx.algebra(args.prime).quiver
    print(f"arrow counts at p={args.prime} (row i, column j: arrows from simple i to simple j)", file=out)
    print(_matrix(q.arrows), file=out)
    print("vertices: " + ", ".join(q.labels), file=out)
    return EXIT_OK


def cmd_chartable(args, out) -> int:
    ctx = _context(args)
    t = ctx.brauer_table(args.prime) if args.prime else ctx.ordinary_table()
    what = f"Brauer table at p={args.prime}" if args.prime else f"ordinary table (computed over F_{ctx.ell})"
    if t.conductor > 1:
        what += f"; z{t.conductor} is a primitive {t.conductor}-th root of unity"
    print(what, file=out)
    header = [""] + [ctx.M.label(r) for r in t.reps]
    body = [[lab] + [str(v) for v in row] for lab, row in zip(t.labels, t.rows)]
    print(_matrix([header] + body), file=out)
    return EXIT_OK


def cmd_primes(args, out) -> int:
    ctx = _context(args)
    pr = ctx.primes
    print(f"maximal subgroup order primes {sorted(pr.group_order_primes)}", file=out)
    print(f"sandwich cokernel torsion primes {sorted(pr.sandwich_torsion_primes)}", file=out)
    for k, ps in sorted(pr.torsion_by_power.items()):
        print(f"radical power {k} over power {k + 1}: torsion primes {sorted(ps)}", file=out)
    print(f"strongly modular {sorted(pr.strongly_modular)}", file=out)
    print(f"modular {sorted(pr.modular)}", file=out)
    print(f"nonmodular prime {ctx.ell}", file=out)
    return EXIT_OK


def cmd_scan(args, out) -> int:
    sink = open(args.json, "w") if args.json else None
    n = bad = found = 0
    try:
        for r, line in _paired(scan(args.family, args.primes, args.seed, args.workers)):
            n += 1
            if sink:
                sink.write(line + "\n")
            if "violation" in r:
                bad += 1
                print(f"VIOLATION {r['name']}: {r['violation']}", file=out)
            elif "verdict" in r:
                v = r["verdict"]
                found += len(v["findings"])
                dets = " ".join(f"p{q['p']}:{q['det_k']}" for q in v["primes"])
                print(f"{v['name']:<14} size {v['size']:>3} regular {int(v['is_regular'])} detF {v['det_F']} {dets}", file=out)
                for f in v["findings"]:
                    print("  " + f, file=out)
            else:
                print(f"skipped {r['name']}: {r['skipped']}", file=out)
    finally:
        if sink:
            sink.close()
    print(f"{n} monoids, {bad} violations, {found} findings", file=out)
    return EXIT_INVARIANT if bad else EXIT_OK


def _paired(records):
    for r in records:
        yield r, next(records_to_jsonl([r]))


def cmd_selftest(args, out) -> int:
    from .goldens import run_selftest

    results = run_selftest()
    for name, ok, detail in results:
        print(f"{'PASS' if ok else 'FAIL'} {name}: {detail}", file=out)
    failed = sum(not ok for _, ok, _ in results)
    print(f"{len(results) - failed}/{len(results)} golden checks passed", file=out)
    return EXIT_OK if not failed else EXIT_INVARIANT


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="monorep", description="Modular representation invariants of finite monoids.")
    ap.add_argument("--seed", type=int, default=DEFAULT_SEED, help="seed for all randomized steps")
    sub = ap.add_subparsers(dest="command", required=True)

    def monoid_cmd(name, fn, help, prime=None):
        sp = sub.add_parser(name, help=help)
        sp.add_argument("monoid", help="builtin name, table file or generator JSON")
        if prime == "required":
            sp.add_argument("--prime", type=int, required=True)
        elif prime == "optional":
            sp.add_argument("--prime", type=int)
        sp.add_argument("--seed", type=int, default=argparse.SUPPRESS)
        sp.set_defaults(fn=fn)
        return sp

    a = monoid_cmd("analyze", cmd_analyze, "full report")
    a.add_argument("--primes", type=_primes, default=[2, 3])
    a.add_argument("--json", help="write the JSON report here")
    monoid_cmd("cartan", cmd_cartan, "Cartan matrix", "required")
    monoid_cmd("decomp", cmd_decomp, "decomposition matrix", "required")
    monoid_cmd("quiver", cmd_quiver, "Ext-quiver arrow counts", "required")
    monoid_cmd("chartable", cmd_chartable, "ordinary or Brauer character table", "optional")
    monoid_cmd("primes", cmd_primes, "modular and strongly modular primes")
    s = sub.add_parser("scan", help="verdicts over a family: builtins, order:<n>, order<=<n>, random:<size>:<count>")
    s.add_argument("family")
    s.add_argument("--primes", type=_primes, default=[2, 3])
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--json", help="write verdicts as JSON lines here")
    s.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    s.set_defaults(fn=cmd_scan)
    t = sub.add_parser("selftest", help="check embedded reference values")
    t.set_defaults(fn=cmd_selftest)
    return ap


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.fn(args, out)
    except InvariantViolation as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except (MonoidError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
