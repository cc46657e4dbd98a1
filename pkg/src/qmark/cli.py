"""Command-line interface.

One binary, subcommand style.  All numeric inputs are exact ("p/q",
"m/2^k", continued-fraction text); no decimal parsing.  ``--json`` emits a
machine-readable envelope; exit status is 0 for success, 1 for module
errors or verify commands that found violations, 2 for usage problems.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from dataclasses import dataclass
from fractions import Fraction

from . import classifier, constants, extremal, question_mark
from .cf import CFSpec, format_cf, parse_cf
from .errors import QmarkError, UsageError
from .interval import Interval, decimal_str
from .rational import Dyadic, format_rational, parse_dyadic, parse_rational

_JSON_POINT_CAP = 16


def all_profiles(nmax: int, tmax: int):
    """Every count tuple (r_1..r_nmax) with 1 <= sum <= tmax, once each."""

    def rec(prefix: tuple, budget: int):
        if len(prefix) == nmax:
            if sum(prefix) >= 1:
                yield prefix
            return
        for c in range(budget + 1):
            yield from rec(prefix + (c,), budget - c)

    yield from rec((), tmax)


def profiles_with_first_digit(nmax: int, tmax: int):
    for raw in all_profiles(nmax, tmax):
        if raw[0] >= 1:
            yield raw


@dataclass(frozen=True)
class CommandResult:
    status: str  # "ok" or "error"
    payload: dict
    human: str
    exit_code: int
    elapsed_ms: float


def _frac(x: Fraction) -> str:
    return format_rational(x)


def _iv(iv: Interval) -> dict:
    return {"lo": _frac(iv.lo), "hi": _frac(iv.hi)}


def _iv_human(iv: Interval, digits: int = 15) -> str:
    return f"[{decimal_str(iv.lo, digits)}, {decimal_str(iv.hi, digits)}]"


def _parse_eta(text: str) -> Fraction:
    return parse_rational(text)


def _cmd_eval(args) -> tuple[dict, str, bool]:
    x = parse_rational(args.value)
    result = question_mark.qm_rational(x)
    payload = {
        "input": _frac(x),
        "value": str(result),
        "fraction": _frac(result.to_fraction()),
        "binary": result.binary(),
    }
    human = f"?({_frac(x)}) = {result} = {result.binary()}"
    return payload, human, False


def _cmd_eval_cf(args) -> tuple[dict, str, bool]:
    spec = parse_cf(args.cf)
    eps = parse_dyadic(args.eps).to_fraction()
    enclosure = question_mark.qm_irrational(spec, eps)
    payload = {
        "cf": format_cf(spec),
        "eps": _frac(eps),
        "lo": _frac(enclosure.lo),
        "hi": _frac(enclosure.hi),
        "width": _frac(enclosure.width),
    }
    human = f"?({format_cf(spec)}) in {_iv_human(enclosure, 20)} (width {decimal_str(enclosure.width, 20)})"
    return payload, human, False


def _level_rows(level):
    for j, x in enumerate(level.points):
        value = question_mark.qm_rational(x)
        yield j, x.numerator, x.denominator, value.mantissa, value.exponent


def _cmd_sb_level(args) -> tuple[dict, str, bool]:
    level = question_mark.stern_brocot_level(args.n)
    payload = {"n": level.n, "count": len(level.points)}
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(
                ["index", "p", "q", "question_mark_mantissa", "question_mark_exponent"]
            )
            writer.writerows(_level_rows(level))
        payload["csv"] = args.csv
    if level.n <= _JSON_POINT_CAP:
        payload["points"] = [
            {
                "index": j,
                "p": p,
                "q": q,
                "question_mark_mantissa": m,
                "question_mark_exponent": e,
            }
            for j, p, q, m, e in _level_rows(level)
        ]
    lines = [f"level {level.n}: {len(level.points)} points"]
    if level.n <= 6:
        lines += [f"  {Fraction(p, q)}" for _, p, q, _, _ in _level_rows(level)]
    if args.csv:
        lines.append(f"written to {args.csv}")
    return payload, "\n".join(lines), False


def _cmd_sandwich(args) -> tuple[dict, str, bool]:
    spec = parse_cf(args.cf)
    delta = parse_dyadic(args.delta)
    report = question_mark.sandwich(spec, args.depth, delta)
    payload = {
        "cf": format_cf(spec),
        "x": _frac(report.x),
        "delta": _frac(report.delta),
        "n": report.n,
        "t": report.t,
        "z": report.z,
        "case": report.case,
        "lower": _frac(report.lower),
        "quotient": _frac(report.quotient),
        "upper": _frac(report.upper),
    }
    human = (
        f"x = {_frac(report.x)}, delta = {_frac(report.delta)}\n"
        f"case {report.case}: n = {report.n}, t = {report.t}, z = {report.z}\n"
        f"lower    ~ {decimal_str(report.lower, 8)}\n"
        f"quotient ~ {decimal_str(report.quotient, 8)}\n"
        f"upper    ~ {decimal_str(report.upper, 8)}"
    )
    return payload, human, False


def _cmd_constants(args) -> tuple[dict, str, bool]:
    bits = max(128, constants.default_bits())
    rows = []
    for j in range(1, 13):
        s = constants.spectral(j, bits)
        rows.append((f"lambda_{j}", s.lam))
        rows.append((f"L_{j}", s.L))
    k = constants.kappas(bits)
    rows += [("kappa_1", k.kappa1), ("kappa_2", k.kappa2), ("kappa_3", k.kappa3)]
    payload = {
        "bits": bits,
        "constants": [
            {"name": name, "value": decimal_str(iv.mid, 30), "width": _frac(iv.width)}
            for name, iv in rows
        ],
    }
    width_digits = 40
    lines = [f"{'name':<10} {'value (30 digits)':<36} width"]
    for name, iv in rows:
        lines.append(
            f"{name:<10} {decimal_str(iv.mid, 30):<36} {decimal_str(iv.width, width_digits)}"
        )
    return payload, "\n".join(lines), False


def _cmd_extremal_mu(args) -> tuple[dict, str, bool]:
    profile = extremal.Profile.parse(args.profile)
    value, witness = extremal.mu_brute(profile)
    bracket = extremal.k_bracket(profile)
    payload = {
        "profile": list(profile.r),
        "max": value,
        "witness": list(witness),
        "k_bracket": bracket,
    }
    human = f"mu{profile.r} = {value} at {witness}; k[r] = {bracket}"
    return payload, human, False


def _cmd_extremal_kan(args) -> tuple[dict, str, bool]:
    checked = 0
    counterexamples = []
    for raw in profiles_with_first_digit(args.nmax, args.tmax):
        profile = extremal.Profile(raw)
        report = extremal.kan_check(profile)
        checked += 1
        if not report.equal:
            counterexamples.append(
                {"profile": list(profile.r), "v_max": report.v_max, "bracket": report.bracket}
            )
    payload = {
        "tmax": args.tmax,
        "nmax": args.nmax,
        "profiles_checked": checked,
        "counterexamples": counterexamples,
    }
    human = (
        f"checked {checked} profiles (t <= {args.tmax}, n <= {args.nmax}): "
        + ("all equal" if not counterexamples else f"{len(counterexamples)} COUNTEREXAMPLES")
    )
    return payload, human, bool(counterexamples)


def _cmd_extremal_omega(args) -> tuple[dict, str, bool]:
    eta = _parse_eta(args.eta)
    report = extremal.omega_max_vertex(args.n, eta)
    payload = {
        "n": args.n,
        "eta": _frac(eta),
        "max": _iv(report.max_value),
        "argvertex": report.argvertex.label(),
    }
    lines = [
        f"max over vertices ~ {_iv_human(report.max_value)} at {report.argvertex.label()}"
    ]
    violations = False
    if args.grid:
        grid = extremal.omega_max_grid(args.n, args.t, eta, args.grid)
        payload["grid"] = {
            "denominator": args.grid,
            "t": args.t,
            "feasible": grid.feasible_count,
            "max": None if grid.max_value is None else _iv(grid.max_value),
            "argpoint": None if grid.argpoint is None else list(grid.argpoint),
            "exceeders": [list(e) for e in grid.exceeders],
        }
        lines.append(
            f"grid D={args.grid}: {grid.feasible_count} feasible points, "
            + (
                "no point exceeds the vertex bound"
                if grid.ok
                else f"{len(grid.exceeders)} EXCEEDERS"
            )
        )
        violations = not grid.ok
    return payload, "\n".join(lines), violations


def _cmd_verify_maple(args) -> tuple[dict, str, bool]:
    report = extremal.verify_maple(args.t, threads=args.threads)
    payload = {
        "t": report.t,
        "count_checked": report.count_checked,
        "violations": [list(w) for w in report.violations],
        "threads": report.threads,
        "diagnostic": report.diagnostic,
    }
    lines = [
        f"t = {report.t}: checked {report.count_checked} words, "
        f"{len(report.violations)} violations"
    ]
    lines += ["  " + ",".join(str(a) for a in w) for w in report.violations]
    return payload, "\n".join(lines), not report.ok


def _cmd_verify_sqrt(args) -> tuple[dict, str, bool]:
    report = extremal.verify_sqrt(args.n)
    payload = {
        "n": report.n,
        "min_continuant": report.min_continuant,
        "witness": list(report.witness),
        "holds": report.holds,
    }
    verdict = (
        "min^2 >= 2^n holds"
        if report.holds
        else f"{report.min_continuant}^2 = {report.min_continuant ** 2} < 2^{report.n}"
    )
    human = (
        f"n = {report.n}: min continuant {report.min_continuant} at {report.witness}; {verdict}"
    )
    return payload, human, not report.holds


def _cmd_verify_sylvester(args) -> tuple[dict, str, bool]:
    failures = []
    sample = {}
    for t in range(args.start, args.end + 1):
        try:
            x, y = extremal.sylvester_decompose(t)
            if t == args.start or t == args.end:
                sample[str(t)] = [x, y]
        except QmarkError:
            failures.append(t)
    payload = {
        "from": args.start,
        "to": args.end,
        "failures": failures,
        "sample": sample,
    }
    human = (
        f"t in [{args.start}, {args.end}]: "
        + ("all decompose as 23x + 24y" if not failures else f"failures: {failures}")
    )
    return payload, human, bool(failures)


def _cmd_classify(args) -> tuple[dict, str, bool]:
    spec = parse_cf(args.cf)
    result = classifier.classify(spec)
    payload = {
        "cf": format_cf(spec),
        "verdict": result.verdict.value,
        "rule": result.rule.value,
        "average": _frac(result.average),
        "margin": _iv(result.margin),
    }
    human = (
        f"{format_cf(spec)}: ?'(x) = {result.verdict.value} by {result.rule.value} "
        f"(average {_frac(result.average)}, margin ~ {_iv_human(result.margin, 10)})"
    )
    return payload, human, False


def _cmd_gen_xr(args) -> tuple[dict, str, bool]:
    eta = _parse_eta(args.eta)
    spec = classifier.gen_x_r(args.r, eta)
    ones = spec.period.count(1)
    block = spec.period[-1]
    payload = {
        "r": args.r,
        "eta": _frac(eta),
        "q": ones,
        "m": block,
        "average": _frac(classifier.limit_average(spec)),
        "cf": format_cf(spec),
    }
    human = (
        f"x_r: period = 1 x{ones}, {block} x{args.r}; "
        f"average {_frac(classifier.limit_average(spec))}"
    )
    return payload, human, False


def _cmd_gen_xpq(args) -> tuple[dict, str, bool]:
    spec = classifier.gen_x_pq(args.p, args.q)
    window = classifier.xpq_window(args.p, args.q)
    payload = {
        "p": args.p,
        "q": args.q,
        "average": _frac(classifier.limit_average(spec)),
        "window": _iv(window),
        "cf": format_cf(spec),
    }
    human = (
        f"x_pq = {format_cf(spec)}; average {_frac(classifier.limit_average(spec))}, "
        f"kappa_2 gap ~ {_iv_human(window, 10)}"
    )
    return payload, human, False


def _cmd_trend(args) -> tuple[dict, str, bool]:
    spec = parse_cf(args.cf)
    rows = classifier.trend_statistic(spec, args.depth)
    digits = 8
    table = [
        (row.t, decimal_str(row.lower_log.mid, digits), decimal_str(row.upper_log.mid, digits))
        for row in rows
    ]
    payload = {
        "cf": format_cf(spec),
        "depth": args.depth,
        "rows": [{"t": t, "lower_log": lo, "upper_log": hi} for t, lo, hi in table],
    }
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["t", "lower_log", "upper_log"])
            writer.writerows(table)
        payload["csv"] = args.csv
    shown = table if len(table) <= 20 else table[:10] + table[-10:]
    lines = [f"{'t':>6} {'lower_log':>16} {'upper_log':>16}"]
    lines += [f"{t:>6} {lo:>16} {hi:>16}" for t, lo, hi in shown]
    if args.csv:
        lines.append(f"written to {args.csv}")
    return payload, "\n".join(lines), False


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qmark",
        description="Exact Minkowski question mark toolkit: evaluation, "
        "Stern-Brocot levels, certified constants, extremal continuants, "
        "exhaustive base-case verification, derivative classification.",
    )
    parser.add_argument("--json", action="store_true", help="emit a JSON envelope")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="?(p/q) exactly")
    p.add_argument("value", help="rational in [0,1], e.g. 2/5")
    p.set_defaults(handler=_cmd_eval)

    p = sub.add_parser("eval-cf", help="enclose ?(x) for a periodic continued fraction")
    p.add_argument("cf", help='e.g. "[0; (1)]" or "[0; 2, (1, 2)]"')
    p.add_argument("--eps", default="1/2^30", help="enclosure width, e.g. 1/2^30")
    p.set_defaults(handler=_cmd_eval_cf)

    p = sub.add_parser("sb-level", help="Stern-Brocot level F_n")
    p.add_argument("n", type=int)
    p.add_argument("--csv", help="write index,p,q,?(x) mantissa/exponent rows")
    p.set_defaults(handler=_cmd_sb_level)

    p = sub.add_parser("sandwich", help="difference-quotient bracket at a convergent")
    p.add_argument("--cf", required=True)
    p.add_argument("--depth", type=int, default=40)
    p.add_argument("--delta", required=True, help="dyadic, e.g. 1/2^12 or -1/2^12")
    p.set_defaults(handler=_cmd_sandwich)

    p = sub.add_parser("constants", help="certified constants table")
    p.set_defaults(handler=_cmd_constants)

    p = sub.add_parser("extremal", help="profile maxima and polytope bounds")
    esub = p.add_subparsers(dest="subcommand", required=True)
    e = esub.add_parser("mu", help="max continuant over a digit profile")
    e.add_argument("--profile", required=True, help='counts, e.g. "2,1"')
    e.set_defaults(handler=_cmd_extremal_mu)
    e = esub.add_parser("kan", help="sorted-word closed form vs brute force")
    e.add_argument("--tmax", type=int, default=9)
    e.add_argument("--nmax", type=int, default=5)
    e.set_defaults(handler=_cmd_extremal_kan)
    e = esub.add_parser("omega", help="max of sum r_j L_j over the constrained simplex")
    e.add_argument("--n", type=int, required=True)
    e.add_argument("--eta", default="0", help="rational in [0, 1/2)")
    e.add_argument("--grid", type=int, help="also run the grid oracle with denominator D")
    e.add_argument("--t", type=int, default=1, help="profile weight for the grid")
    e.set_defaults(handler=_cmd_extremal_omega)

    p = sub.add_parser("verify", help="exhaustive checks")
    vsub = p.add_subparsers(dest="subcommand", required=True)
    v = vsub.add_parser("maple", help="k_t^2 vs 2^(digit sum) over {1,4}^t")
    v.add_argument("--t", type=int, required=True)
    v.add_argument("--threads", type=int, help="default: all cores")
    v.set_defaults(handler=_cmd_verify_maple)
    v = vsub.add_parser("sqrt", help="min continuant at fixed digit sum vs sqrt(2)^n")
    v.add_argument("--n", type=int, required=True)
    v.set_defaults(handler=_cmd_verify_sqrt)
    v = vsub.add_parser("sylvester", help="23x + 24y decompositions over a range")
    v.add_argument("--from", dest="start", type=int, default=506)
    v.add_argument("--to", dest="end", type=int, default=2000)
    v.set_defaults(handler=_cmd_verify_sylvester)

    p = sub.add_parser("classify", help="verdict on ?'(x) for a periodic CF")
    p.add_argument("cf")
    p.set_defaults(handler=_cmd_classify)

    p = sub.add_parser("gen", help="counterexample generators")
    gsub = p.add_subparsers(dest="subcommand", required=True)
    g = gsub.add_parser("xr", help="period 1 x r^2 then m x r")
    g.add_argument("--r", type=int, required=True)
    g.add_argument("--eta", required=True, help="rational in (0,1), e.g. 1/2")
    g.set_defaults(handler=_cmd_gen_xr)
    g = gsub.add_parser("xpq", help="period 4 x p then 5 x q (average below kappa_2)")
    g.add_argument("--p", type=int, required=True)
    g.add_argument("--q", type=int, required=True)
    g.set_defaults(handler=_cmd_gen_xpq)

    p = sub.add_parser("trend", help="sandwich-driving quantities along t")
    p.add_argument("cf")
    p.add_argument("--depth", type=int, default=200)
    p.add_argument("--csv")
    p.set_defaults(handler=_cmd_trend)

    return parser


def dispatch(argv: list[str]) -> CommandResult:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        if exc.code == 0:  # --help
            raise
        raise UsageError(f"bad arguments: {argv}") from exc
    start = time.monotonic()
    try:
        payload, human, violations = args.handler(args)
    except UsageError:
        raise
    except QmarkError as exc:
        elapsed = (time.monotonic() - start) * 1000
        payload = {"error": exc.code, "message": str(exc)}
        return CommandResult(
            status="error", payload=payload, human=f"error [{exc.code}]: {exc}",
            exit_code=1, elapsed_ms=elapsed,
        )
    elapsed = (time.monotonic() - start) * 1000
    return CommandResult(
        status="ok",
        payload=payload,
        human=human,
        exit_code=1 if violations else 0,
        elapsed_ms=elapsed,
    )


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    json_mode = "--json" in argv
    try:
        result = dispatch(argv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    if json_mode:
        envelope = {
            "status": result.status,
            "payload": result.payload,
            "elapsed_ms": round(result.elapsed_ms, 3),
        }
        print(json.dumps(envelope, indent=2, sort_keys=True))
    else:
        print(result.human)
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
