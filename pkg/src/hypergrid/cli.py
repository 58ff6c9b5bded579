"""Command-line front end: evaluate expressions on a grid, take
difference quotients, integrate, run verification checks, and probe
countable sums.

Exit status: 0 for success or a passing check, 2 for a failing check,
1 for usage and domain errors.  With ``--json`` every command emits one
JSON record (schema 1) with deterministic byte layout: keys are sorted,
separators fixed, and all rationals rendered exactly as strings, so a
fixed seed reproduces reports byte for byte.

``--domain a b`` lets expressions live on [a, b]: the variable is
substituted with a + (b-a)x before compilation, evaluation points are
mapped into [0, 1], and difference quotients / integrals are rescaled
by the interval length on the way out.

The environment variable HYPERGRID_MAX_TAU, when set, caps the grid
resolution any invocation may request.
"""

import argparse
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

from . import expr as expr_mod
from .calculus import (
    CheckReport,
    ftc_check,
    grid_independence_check,
    integral,
    limit_check,
    quotient_function,
    secant_check,
)
from .context import DEFAULT_K, ObservationContext
from .errors import DomainError, HypergridError
from .grid import GridSpec, round_to_grid
from .gridfun import continuity_check
from .rational import parse_rational, render_decimal
from .sampling import SamplingPlan, sample_unit_fractions
from .series import TruncationPolicy, countable_sum, is_unstable

CHECK_KINDS = ("ftc", "grid-independence", "secant", "limit", "continuity")


@dataclass(frozen=True)
class JobConfig:
    """One CLI invocation, fully resolved: grid and context parameters
    plus the command payload (expression text, points, series, seed)."""

    command: str
    tau: int
    H: int
    K: int
    seed: int = 0
    expr_text: Optional[str] = None
    at: Optional[str] = None
    check: Optional[str] = None
    tau2: Optional[int] = None
    samples: int = 1024
    series: Optional[str] = None
    sum_cap: int = 2**16
    exp_mode: str = "tail"
    guard: int = 64
    domain: Optional[Tuple[Fraction, Fraction]] = None
    json_out: bool = False
    digits: int = 12
    workers: int = 1


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise DomainError(message)


def _build_parser() -> _Parser:
    common = _Parser(add_help=False)
    common.add_argument("--tau", type=int, default=2**16)
    common.add_argument("--H", type=int, default=1000)
    common.add_argument("--K", type=int, default=DEFAULT_K)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--exp-mode", choices=("full", "tail"), default="tail")
    common.add_argument("--guard", type=int, default=64)
    common.add_argument("--domain", nargs=2, metavar=("A", "B"))
    common.add_argument("--json", action="store_true")
    common.add_argument("--digits", type=int, default=12)
    common.add_argument("--file", help="read the expression from a file")
    common.add_argument("--workers", type=int, default=1)

    parser = _Parser(prog="hypergrid", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    for name in ("eval", "diff", "integrate"):
        p = sub.add_parser(name, parents=[common])
        p.add_argument("expr", nargs="?")
        # default: the left end of the working domain, the right end for
        # integrate (the full integral), whatever the domain is
        p.add_argument("--at", default=None)

    p = sub.add_parser("check", parents=[common])
    p.add_argument("kind", choices=CHECK_KINDS)
    p.add_argument("expr", nargs="?")
    p.add_argument("--tau2", type=int)
    p.add_argument("--samples", type=int, default=1024)

    p = sub.add_parser("sum", parents=[common])
    p.add_argument("series")
    p.add_argument("--sum-cap", type=int, default=2**16)
    return parser


def build_job(argv=None) -> JobConfig:
    args = _build_parser().parse_args(argv)
    expr_text = getattr(args, "expr", None)
    if args.file is not None:
        if expr_text is not None:
            raise DomainError("give the expression either inline or via --file")
        with open(args.file, "r", encoding="utf-8") as handle:
            expr_text = handle.read().strip()
    domain = None
    if args.domain is not None:
        a, b = (parse_rational(s) for s in args.domain)
        if b <= a:
            raise DomainError(f"empty domain [{a}, {b}]")
        domain = (a, b)
    return JobConfig(
        command=args.command,
        tau=args.tau,
        H=args.H,
        K=args.K,
        seed=args.seed,
        expr_text=expr_text,
        at=getattr(args, "at", None),
        check=getattr(args, "kind", None),
        tau2=getattr(args, "tau2", None),
        samples=getattr(args, "samples", 1024),
        series=getattr(args, "series", None),
        sum_cap=getattr(args, "sum_cap", 2**16),
        exp_mode=args.exp_mode,
        guard=args.guard,
        domain=domain,
        json_out=args.json,
        digits=args.digits,
        workers=args.workers,
    )


def _enforce_cap(job: JobConfig):
    cap = os.environ.get("HYPERGRID_MAX_TAU")
    if cap is None:
        return
    limit = int(cap)
    for tau in (job.tau, job.tau2):
        if tau is not None and tau > limit:
            raise DomainError(f"tau={tau} exceeds HYPERGRID_MAX_TAU={limit}")


def _policy(job: JobConfig) -> TruncationPolicy:
    mode = "full" if job.exp_mode == "full" else "tail-bounded"
    return TruncationPolicy(mode, job.guard)


def _tree(job: JobConfig):
    if not job.expr_text:
        raise DomainError("an expression is required (inline or --file)")
    tree = expr_mod.parse(job.expr_text)
    if job.domain is not None:
        a, b = job.domain
        mapped = expr_mod.BinOp(
            "+",
            expr_mod.Literal(a),
            expr_mod.BinOp("*", expr_mod.Literal(b - a), expr_mod.Var()),
        )
        tree = _substitute(tree, mapped)
    return tree


def _substitute(node, replacement):
    if isinstance(node, expr_mod.Var):
        return replacement
    if isinstance(node, expr_mod.Neg):
        return expr_mod.Neg(_substitute(node.child, replacement))
    if isinstance(node, expr_mod.BinOp):
        return expr_mod.BinOp(
            node.op,
            _substitute(node.left, replacement),
            _substitute(node.right, replacement),
        )
    if isinstance(node, expr_mod.Pow):
        return expr_mod.Pow(_substitute(node.base, replacement), node.exponent)
    if isinstance(node, expr_mod.Call):
        return expr_mod.Call(node.name, _substitute(node.arg, replacement))
    return node


def _unit_point(job: JobConfig, fallback: Fraction) -> Fraction:
    if job.at is None:
        return fallback
    s = parse_rational(job.at)
    if job.domain is not None:
        a, b = job.domain
        s = (s - a) / (b - a)
    if not 0 <= s <= 1:
        raise DomainError(f"point {job.at} falls outside the working domain")
    return s


def _scale(job: JobConfig) -> Fraction:
    if job.domain is None:
        return Fraction(1)
    a, b = job.domain
    return b - a


def _value_record(job: JobConfig, command: str, value: Fraction, label: str):
    if job.json_out:
        record = {
            "schema": 1,
            "command": command,
            "tau": job.tau,
            "context": {"H": job.H, "K": job.K},
            label: str(value),
            "decimal": render_decimal(value, job.digits),
        }
        if job.at is not None:
            record["at"] = str(parse_rational(job.at))
        return json.dumps(record, sort_keys=True, separators=(",", ":"))
    return f"{value}\n= {render_decimal(value, job.digits)}"


def _report_text(job: JobConfig, report: CheckReport) -> str:
    if job.json_out:
        return json.dumps(report.to_dict(), sort_keys=True, separators=(",", ":"))
    lines = [
        f"check {report.check}: {report.verdict}"
        f" (mode={report.mode}, samples={report.samples},"
        f" max_gap={report.max_gap}, tolerance={report.tolerance})"
    ]
    if report.witness is not None:
        lines.append(f"witness: {report.witness}")
    for key, val in sorted(report.detail.items()):
        lines.append(f"{key}: {val}")
    return "\n".join(lines)


def _series_term(name: str):
    if name == "zeros":
        return lambda n: Fraction(0)
    if name == "harmonic":
        return lambda n: Fraction(1, n + 1)
    if name == "inverse-squares":
        return lambda n: Fraction(1, (n + 1) ** 2)
    if name.startswith("geometric:"):
        ratio = parse_rational(name.split(":", 1)[1])
        return lambda n: ratio**n
    raise DomainError(
        f"unknown series {name!r}; use zeros, harmonic, inverse-squares,"
        " or geometric:<ratio>"
    )


def _run_sum(job: JobConfig, ctx: ObservationContext):
    term = _series_term(job.series)
    outcome = countable_sum(term, ctx, job.sum_cap)
    if is_unstable(outcome):
        verdict, value = "unstable", None
    elif not outcome.is_finite:
        verdict = "plus-infinity" if outcome.infinity_sign > 0 else "minus-infinity"
        value = None
    else:
        verdict, value = "finite", outcome.representative
    if job.json_out:
        record = {
            "schema": 1,
            "command": "sum",
            "series": job.series,
            "cap": job.sum_cap,
            "context": {"H": job.H, "K": job.K},
            "verdict": verdict,
            "value": None if value is None else str(value),
        }
        if value is not None:
            record["decimal"] = render_decimal(value, job.digits)
        return 0, json.dumps(record, sort_keys=True, separators=(",", ":"))
    if value is None:
        return 0, f"sum {job.series}: {verdict} (cap={job.sum_cap})"
    return 0, (
        f"sum {job.series}: {value}\n= {render_decimal(value, job.digits)}"
    )


def _run_check(job: JobConfig, ctx: ObservationContext):
    policy = _policy(job)
    spec = GridSpec(job.tau)
    plan = SamplingPlan(
        seed=job.seed,
        random_points=job.samples,
        dyadic_depth=12,
        exhaustive_limit=2**16 + 1,
    )
    f = expr_mod.compile(_tree(job), spec, policy)

    if job.check == "ftc":
        report = ftc_check(f, ctx, plan, workers=job.workers)
    elif job.check == "secant":
        report = secant_check(f, ctx, plan)
    elif job.check == "grid-independence":
        tau2 = job.tau2 if job.tau2 is not None else 3 * job.tau
        f2 = expr_mod.compile(_tree(job), GridSpec(tau2), policy)
        report = grid_independence_check(f, f2, ctx, job.samples, job.seed)
    elif job.check == "limit":
        margin = 2 * ctx.infinitesimal_scale
        span = 1 - 3 * margin
        points = [margin + u * span for u in sample_unit_fractions(job.samples, job.seed)]
        report = limit_check(f, ctx, points)
    else:
        verdict = continuity_check(f, ctx, plan)
        witness = None
        max_gap = Fraction(0)
        if verdict.witness is not None:
            a, b = verdict.witness
            witness = f"jump between {a.value} and {b.value}"
            max_gap = abs(f(b) - f(a))
        report = CheckReport(
            check="continuity",
            grids=(spec.tau,),
            context=ctx,
            samples=len(plan.indices(spec.tau)),
            max_gap=max_gap,
            tolerance=ctx.infinitesimal_scale,
            verdict="pass" if verdict else "fail",
            mode=verdict.status,
            witness=witness,
        )
    return (0 if report else 2), _report_text(job, report)


def run(job: JobConfig):
    """Execute a job; returns (exit_code, output_text)."""
    _enforce_cap(job)
    ctx = ObservationContext(job.H, job.K)

    if job.command == "sum":
        return _run_sum(job, ctx)
    if job.command == "check":
        return _run_check(job, ctx)

    spec = GridSpec(job.tau)
    f = expr_mod.compile(_tree(job), spec, _policy(job))
    u = _unit_point(job, Fraction(1 if job.command == "integrate" else 0))

    if job.command == "eval":
        value = f(round_to_grid(u, spec))
        return 0, _value_record(job, "eval", value, "value")
    if job.command == "diff":
        value = quotient_function(f)(round_to_grid(u, spec)) / _scale(job)
        return 0, _value_record(job, "diff", value, "quotient")
    if job.command == "integrate":
        anti = integral(f, ctx, workers=job.workers)
        value = anti(u) * _scale(job)
        return 0, _value_record(job, "integrate", value, "value")
    raise DomainError(f"unknown command {job.command!r}")


def main(argv=None) -> int:
    try:
        job = build_job(argv)
        code, text = run(job)
    except HypergridError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if text:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
