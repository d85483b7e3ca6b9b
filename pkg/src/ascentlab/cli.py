"""Command-line front end.

Exit codes: 0 success, 1 verification or domain failure, 2 usage error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from decimal import Decimal, localcontext
from fractions import Fraction

from .catalan import (
    DEFINITION_CAP,
    catalan,
    catalan_convolution,
    convolution_by_definition,
    convolution_table_recursive,
)
from . import distributions as dist
from .bijections import (
    check_mu_structure,
    krattenthaler_from_path,
    krattenthaler_to_path,
    phi_inverse,
    phi_max_position,
)
from .core import (
    LatticePath,
    Permutation,
    first_ascent_position,
    is_123_avoiding,
    parse_permutation,
    position_of_max,
    right_to_left_maxima,
)
from .oracle import BRUTEFORCE_CAP, GROW_CAP, census
from .sampling import POPULATIONS, default_seed, monte_carlo_first_ascent
from .verify import Sizes, run_all


class DomainError(Exception):
    """Input was well-formed on the command line but fails a precondition."""


class UsageError(Exception):
    """Invalid flag values or combinations (exit code 2)."""


def decimal_str(q: Fraction, digits: int = 20) -> str:
    with localcontext() as ctx:
        ctx.prec = digits
        return str(Decimal(q.numerator) / Decimal(q.denominator))


def frac_str(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def _csv(rows, header) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


# -- subcommands -------------------------------------------------------------

def cmd_table(args) -> tuple[str, int]:
    if args.n_max < 1:
        raise UsageError(f"--n-max must be >= 1, got {args.n_max}")
    table = convolution_table_recursive(args.n_max)
    code = 0
    report = None
    if args.verify:
        checked = failed = 0
        for n, k, v in table.cells():
            checked += 1
            ok = v == catalan_convolution(n, k)
            if n <= DEFINITION_CAP:
                ok = ok and convolution_by_definition(n, k) == v
            failed += not ok
        report = {"cells": checked, "passed": checked - failed, "failed": failed,
                  "definition_cap": DEFINITION_CAP}
        code = 1 if failed else 0

    if args.format == "csv":
        out = table.to_csv()
    elif args.format == "json":
        out = table.to_json() + "\n"
        if report:
            out = _json({"rows": json.loads(table.to_json()), "verify": report})
    else:
        out = "".join(f"n={n}: " + " ".join(map(str, table.row(n))) + "\n" for n in range(1, table.n_max + 1))
        if report:
            out += (f"verify: {report['passed']}/{report['cells']} cells agree with the closed form"
                    f" and (n <= {DEFINITION_CAP}) the composition sum;"
                    f" {'PASS' if not report['failed'] else 'FAIL'}\n")
    return out, code


def cmd_census(args) -> tuple[str, int]:
    cap = BRUTEFORCE_CAP if args.method == "bruteforce" else GROW_CAP
    if not 1 <= args.n <= cap:
        raise UsageError(f"census --method {args.method} needs 1 <= n <= {cap}, got {args.n}")
    cen = census(args.n, args.method, jobs=args.jobs)
    code = 0
    mismatches = []
    if args.verify:
        for k, fa, mp in cen.rows():
            want = catalan_convolution(args.n, k)
            if fa != want or mp != want:
                mismatches.append(k)
        if cen.total != catalan(args.n):
            mismatches.append("total")
        code = 1 if mismatches else 0

    if args.format == "csv":
        out = cen.to_csv()
    elif args.format == "json":
        out = cen.to_json() + "\n"
        if args.verify:
            d = json.loads(cen.to_json())
            d["verify"] = {"passed": not mismatches, "mismatches": [str(m) for m in mismatches]}
            out = _json(d)
    else:
        fa = ",".join(f"{k}:{v}" for k, v, _ in cen.rows())
        mp = ",".join(f"{k}:{v}" for k, _, v in cen.rows())
        out = (f"n={cen.n} method={args.method} total={cen.total}\n"
               f"first-ascent {{{fa}}}\nmax-position {{{mp}}}\n")
        if args.verify:
            out += "verify: " + ("PASS" if not mismatches else f"FAIL at k={mismatches}") + "\n"
    return out, code


def _bijection_report(p: Permutation, want_phi: bool) -> dict:
    dec = right_to_left_maxima(p.entries)
    k = first_ascent_position(p.entries)
    report: dict = {
        "permutation": str(p),
        "path": krattenthaler_to_path(p).to_xy(),
        "first_ascent": k,
        "max_position": position_of_max(p.entries),
        "rlm": [{"position": pos, "value": v, "word": "".join(map(str, w)) if p.n <= 9 else list(w)}
                for (pos, v), w in zip(dec.maxima, dec.words)],
    }
    if k < p.n:
        mu = check_mu_structure(p)
        report["mu"] = {"position": mu.mu_position, "value": mu.mu_value, "case": mu.case, "holds": mu.holds}
    else:
        report["mu"] = None
    if want_phi:
        report["phi"] = str(phi_max_position(p)) if k >= 2 else None
        report["phi_inverse"] = str(phi_inverse(p)) if position_of_max(p.entries) >= 2 else None
    return report


def cmd_bijection(args) -> tuple[str, int]:
    try:
        if args.perm is not None:
            p = parse_permutation(args.perm)
            if not is_123_avoiding(p.entries):
                raise DomainError(f"{p} is not 123-avoiding")
        else:
            p = krattenthaler_from_path(LatticePath.from_xy(args.path))
    except ValueError as exc:
        raise DomainError(str(exc)) from exc
    report = _bijection_report(p, args.phi)
    if args.format == "json":
        return _json(report), 0
    if args.format == "csv":
        rows = [(r["position"], r["value"], r["word"]) for r in report["rlm"]]
        return _csv(rows, ["position", "rlm_value", "word_before"]), 0
    lines = [
        f"permutation  {report['permutation']}",
        f"path         {report['path']}",
        f"first ascent {report['first_ascent']}",
        f"position of n {report['max_position']}",
        "right-to-left maxima (left to right):",
        "  pos  value  word",
    ]
    for r in report["rlm"]:
        word = r["word"] if r["word"] else "ε"
        lines.append(f"  {r['position']:>3}  {r['value']:>5}  {word}")
    if report["mu"] is None:
        lines.append("mu: undefined (no ascent)")
    else:
        m = report["mu"]
        lines.append(f"mu: value {m['value']} at position {m['position']} ({m['case']}); "
                     f"{'holds' if m['holds'] else 'VIOLATED'}")
    if args.phi:
        lines.append(f"phi          {report['phi'] or 'undefined (first ascent < 2)'}")
        lines.append(f"phi inverse  {report['phi_inverse'] or 'undefined (n in position 1)'}")
    return "\n".join(lines) + "\n", 0


def cmd_dist(args) -> tuple[str, int]:
    finite = args.law in ("uniform-perm", "avoider")
    if finite and args.n is None:
        raise UsageError(f"--law {args.law} needs --n")
    if not finite and args.kmax is None:
        raise UsageError(f"--law {args.law} needs --kmax")
    if args.n is not None and args.n < 1:
        raise UsageError("--n must be >= 1")
    if args.kmax is not None and args.kmax < 1:
        raise UsageError("--kmax must be >= 1")
    spec = dist.law(args.law, args.n if finite else None)
    rows = spec.table(args.kmax)
    compare = args.law == "avoider" and args.compare_limit

    records = []
    for k, q in rows:
        rec = {"k": k, "pmf": frac_str(q), "decimal": decimal_str(q)}
        if compare:
            approx = dist.geomlike_pmf(k)
            rec["limit_pmf"] = frac_str(approx)
            rec["abs_error"] = decimal_str(abs(q - approx))
        records.append(rec)
    moments = {"mean": str(spec.mean), "variance": str(spec.variance)}
    if isinstance(spec.mean, Fraction):
        moments = {"mean": frac_str(spec.mean), "variance": frac_str(spec.variance)
                   if isinstance(spec.variance, Fraction) else str(spec.variance)}

    if args.format == "json":
        return _json({"law": spec.name, "n": args.n if finite else None, "support": spec.support,
                      "rows": records, **moments}), 0
    header = list(records[0].keys())
    if args.format == "csv":
        return _csv([[r[h] for h in header] for r in records], header), 0
    lines = [f"law {spec.name}" + (f", n={args.n}" if finite else "") + f", support {spec.support}",
             "  ".join(h.rjust(10) for h in header)]
    for r in records:
        lines.append("  ".join(str(r[h]).rjust(10) for h in header))
    lines.append(f"mean {moments['mean']}  variance {moments['variance']}")
    return "\n".join(lines) + "\n", 0


def cmd_sample(args) -> tuple[str, int]:
    if args.n < 1 or args.trials < 1:
        raise UsageError("--n and --trials must be >= 1")
    seed = default_seed() if args.seed is None else args.seed
    population = args.population.replace("-", "_")
    stats = monte_carlo_first_ascent(args.n, args.trials, population, seed, jobs=args.jobs)
    if args.format == "csv":
        return _csv(sorted(stats.histogram.items()), ["k", "count"]), 0
    if args.format == "text":
        return (f"population={population} n={stats.n} trials={stats.trials} seed={seed}\n"
                f"mean={stats.mean!r} variance={stats.variance!r} stderr={stats.standard_error!r}\n"), 0
    return stats.to_json() + "\n", 0


def cmd_verify_all(args) -> tuple[str, int]:
    sizes = Sizes.quick() if args.quick else Sizes()
    if args.seed is not None:
        sizes.seed = args.seed
    results = run_all(sizes)
    failed = [r for r in results if not r.passed]
    if args.format == "json":
        out = _json({
            "quick": args.quick,
            "passed": not failed,
            "checks": [{"name": r.name, "passed": r.passed, "detail": r.detail, "failures": r.failures,
                        **({"seconds": round(r.seconds, 3)} if args.timings else {})} for r in results],
        })
    else:
        lines = []
        for r in results:
            t = f" [{r.seconds:.2f}s]" if args.timings else ""
            lines.append(f"{'PASS' if r.passed else 'FAIL'}  {r.name}: {r.detail}{t}")
            lines.extend(f"      - {f}" for f in r.failures)
        lines.append(f"{len(results) - len(failed)}/{len(results)} checks passed")
        out = "\n".join(lines) + "\n"
    return out, 1 if failed else 0


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ascentlab",
        description="First ascents in 123-avoiding permutations: tables, censuses, bijections, laws.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, formats=("text", "csv", "json"), default="text"):
        p.add_argument("--format", choices=formats, default=default)
        p.add_argument("--out", metavar="FILE", help="write to FILE instead of standard output")
        p.add_argument("--jobs", type=int, default=1, help="worker processes (default 1)")
        return p

    p = common(sub.add_parser("table", help="Catalan convolution triangle A(n,k)"))
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--verify", action="store_true")
    p.set_defaults(func=cmd_table)

    p = common(sub.add_parser("census", help="count avoiders by first ascent and position of n"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--method", choices=("bruteforce", "grow"), default="bruteforce")
    p.add_argument("--verify", action="store_true")
    p.set_defaults(func=cmd_census)

    p = common(sub.add_parser("bijection", help="Krattenthaler map, RLM table, mu report, phi"))
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--perm", help="e.g. 76584213 or '10 9 1 ...'")
    g.add_argument("--path", help="X/Y string, e.g. XXXXYYYYXYXXXYYY")
    p.add_argument("--phi", action="store_true", help="also show phi image and preimage")
    p.set_defaults(func=cmd_bijection)

    p = common(sub.add_parser("dist", help="PMF tables for the four first-ascent laws"))
    p.add_argument("--law", choices=dist.LAWS, required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--kmax", type=int)
    p.add_argument("--compare-limit", action="store_true",
                   help="for --law avoider, add k/2^(k+1) and the absolute error")
    p.set_defaults(func=cmd_dist)

    p = common(sub.add_parser("sample", help="Monte Carlo first-ascent statistics"), default="json")
    p.add_argument("--population", choices=POPULATIONS + ("all-perms",), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, help="default: $ASCENTLAB_SEED or 0")
    p.set_defaults(func=cmd_sample)

    p = common(sub.add_parser("verify-all", help="run the full property battery"), formats=("text", "json"))
    p.add_argument("--quick", action="store_true", help="reduced sizes, a few seconds")
    p.add_argument("--seed", type=int)
    p.add_argument("--timings", action="store_true", help="include per-check wall time")
    p.set_defaults(func=cmd_verify_all)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "jobs", 1) < 1:
        parser.print_usage(sys.stderr)
        print("ascentlab: error: --jobs must be >= 1", file=sys.stderr)
        return 2
    try:
        out, code = args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"ascentlab: error: {exc}", file=sys.stderr)
        return 2
    except (DomainError, ValueError) as exc:
        print(f"ascentlab: {exc}", file=sys.stderr)
        return 1
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
