"""Differentiation and integration on the grid, with checkable claims.

A real function enters the system as a representation pair: a grid
function together with the rounding map of its grid.  Everything
downstream is exact rational arithmetic; "analysis" happens only when a
claim is read at an observation context.

The two load-bearing facts, both checked rather than assumed:

* the derivative of x -> sum(f(t) * eps for t <= x) is exactly
  f(successor(x)): the forward difference telescopes with zero error,
  whatever policy produced f's values;
* a modulus for the difference-quotient function bounds every secant
  deviation over gaps wider than the mesh, because a secant is an
  average of quotients.

Checks return ``CheckReport`` records rather than raising: a failed
comparison is a result, not an exception.  Reports serialize to a
stable JSON shape for the command-line tools.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence, Tuple

from .context import ObservationContext
from .errors import DomainError, NotDifferentiableError, ResourceLimitError
from .grid import GridPoint, GridSpec, round_to_grid, successor
from .gridfun import (
    Certificate,
    ContinuityVerdict,
    GridFunction,
    continuity_check,
    fn_indiscernible,
    grid_maps,
    transport,
)
from .sampling import SamplingPlan, sample_unit_fractions

INTEGRAL_LIMIT = 2**24


@dataclass(frozen=True)
class CheckReport:
    """Outcome of one verification job.  Truthy iff it passed.

    ``max_gap`` is the largest observed discrepancy in the check's own
    metric and ``tolerance`` the cutoff it was held to; for checks whose
    metric is an excess over a per-pair bound, the gap may be negative
    (slack) and the tolerance is zero.
    """

    check: str
    grids: Tuple[int, ...]
    context: ObservationContext
    samples: int
    max_gap: Fraction
    tolerance: Fraction
    verdict: str
    mode: str = "sampled"
    witness: Optional[str] = None
    detail: dict = field(default_factory=dict)

    def __bool__(self):
        return self.verdict == "pass"

    def to_dict(self) -> dict:
        record = {
            "schema": 1,
            "check": self.check,
            "grids": list(self.grids),
            "context": {"H": self.context.H, "K": self.context.K},
            "samples": self.samples,
            "max_gap": str(self.max_gap),
            "tolerance": str(self.tolerance),
            "verdict": self.verdict,
            "mode": self.mode,
        }
        if self.witness is not None:
            record["witness"] = self.witness
        if self.detail:
            record["detail"] = {k: str(v) for k, v in sorted(self.detail.items())}
        return record


def _report(check, grids, ctx, samples, max_gap, tol, ok, mode, witness=None, **detail):
    return CheckReport(
        check=check,
        grids=tuple(grids),
        context=ctx,
        samples=samples,
        max_gap=max_gap,
        tolerance=tol,
        verdict="pass" if ok else "fail",
        mode=mode,
        witness=witness,
        detail=detail,
    )


class RealFunctionRepr:
    """A real function carried by a grid: the pair (grid function,
    rounding map), read as f(round(s)) at any rational s in [0, 1]."""

    __slots__ = ("f", "verdict")

    def __init__(self, f: GridFunction, verdict: Optional[ContinuityVerdict] = None):
        self.f = f
        self.verdict = verdict

    @property
    def spec(self) -> GridSpec:
        return self.f.spec

    def round(self, s) -> GridPoint:
        return round_to_grid(Fraction(s), self.spec)

    def __call__(self, s) -> Fraction:
        return self.f(self.round(s))


def _as_grid_function(fr) -> GridFunction:
    return fr.f if isinstance(fr, RealFunctionRepr) else fr


def quotient_function(f: GridFunction) -> GridFunction:
    """The difference-quotient function as a grid function on the full
    grid, extended at the right endpoint by its value at 1 - eps."""
    last = f.spec.tau - 1

    def rule(p: GridPoint) -> Fraction:
        if p.index > last:
            p = f.spec.point(last)
        return f.quotient(p)

    return GridFunction(f.spec, rule, certificate=f.quotient_certificate)


def derivative(
    fr, ctx: ObservationContext, plan: SamplingPlan = SamplingPlan()
) -> RealFunctionRepr:
    """Differentiate a representation at a context.

    The difference-quotient function must survive a continuity check;
    a refutation witness (a spike across adjacent points) means the
    function is not differentiable at this context and raises.  The
    result carries the verdict under which it was admitted.
    """
    f = _as_grid_function(fr)
    q = quotient_function(f)
    verdict = continuity_check(q, ctx, plan)
    if not verdict:
        a, b = verdict.witness
        raise NotDifferentiableError(
            f"difference quotient jumps by more than 1/H between {a.value} and {b.value}",
            witness=verdict.witness,
        )
    return RealFunctionRepr(q, verdict)


def secant_deviation(f: GridFunction, a: GridPoint, x: GridPoint) -> Fraction:
    """(f(x) - f(a)) / (x - a) - quotient(a), exactly."""
    if a.spec != f.spec or x.spec != f.spec:
        raise DomainError("secant points must lie on the function's grid")
    if a.index == x.index:
        raise DomainError("secant needs two distinct points")
    secant = (f(x) - f(a)) / (x.value - a.value)
    return secant - f.quotient(a)


def _band(spec: GridSpec, ctx: ObservationContext) -> Tuple[Fraction, Fraction]:
    """Probe band for secant and limit tests: gaps below 4*eps or 1/H**2
    are excluded, gaps above 1/H are not indiscernible to begin with."""
    lo = max(4 * spec.epsilon, Fraction(1, ctx.H * ctx.H))
    return lo, Fraction(1, ctx.H)


def secant_check(
    f: GridFunction,
    ctx: ObservationContext,
    plan: SamplingPlan = SamplingPlan(),
) -> CheckReport:
    """Verify |secant_deviation(f, a, x)| <= modulus(x - a) over the band
    lo <= x - a <= 1/H with lo = max(4 eps, 1/H**2).

    The gap metric is the worst excess of the deviation over the
    registered quotient modulus, so pass means max_gap <= 0.  Exhaustive
    mode walks every admissible pair; sampled mode walks planned anchors
    with a doubling ladder of offsets.
    """
    if f.quotient_certificate is None:
        raise DomainError("secant check needs a registered quotient modulus")
    spec = f.spec
    lo, hi = _band(spec, ctx)
    lo_steps = -((-lo.numerator * spec.tau) // lo.denominator)  # ceil(lo / eps)
    hi_steps = (hi.numerator * spec.tau) // hi.denominator
    if hi_steps < lo_steps:
        raise DomainError("band is empty: grid too coarse for this context")

    omega = f.quotient_certificate.modulus
    mode = plan.mode(spec.tau)
    if mode == "exhaustive":
        anchors = range(spec.tau)
        offsets = lambda: range(lo_steps, hi_steps + 1)
    else:
        anchors = plan.indices(spec.tau)
        ladder = []
        k = lo_steps
        while k <= hi_steps:
            ladder.append(k)
            k *= 2
        ladder.append(hi_steps)
        offsets = lambda: ladder

    values = None
    quotients = None
    if mode == "exhaustive":
        values = [f(p) for p in spec.points()]
        quotients = [(values[n + 1] - values[n]) * spec.tau for n in range(spec.tau)]

    worst = None
    witness = None
    pairs = 0
    eps = spec.epsilon
    for n in anchors:
        if n >= spec.tau:
            continue
        qa = quotients[n] if quotients is not None else f.quotient(spec.point(n))
        fa = values[n] if values is not None else f(spec.point(n))
        for k in offsets():
            m = n + k
            if m > spec.tau:
                continue
            gap = k * eps
            fx = values[m] if values is not None else f(spec.point(m))
            deviation = (fx - fa) / gap - qa
            excess = abs(deviation) - omega(gap)
            pairs += 1
            if worst is None or excess > worst:
                worst = excess
                if excess > 0 and witness is None:
                    witness = f"a={Fraction(n, spec.tau)}, x={Fraction(m, spec.tau)}"
    if worst is None:
        raise DomainError("no admissible pairs to check")
    return _report(
        "secant", [spec.tau], ctx, pairs, worst, Fraction(0), worst <= 0, mode, witness
    )


def grid_independence_check(
    f1,
    f2,
    ctx: ObservationContext,
    samples: int = 1024,
    seed: int = 0,
) -> CheckReport:
    """Compare difference quotients of two representations of the same
    real function, each read on its own grid, at sampled real points.

    The claim that they do represent the same function is itself checked
    first, by transporting one onto the other's grid and comparing
    values; a failure there is reported as a precondition failure rather
    than a quotient gap.
    """
    g1 = _as_grid_function(f1)
    g2 = _as_grid_function(f2)
    tol = 2 * ctx.infinitesimal_scale
    grids = [g1.spec.tau, g2.spec.tau]

    to_b, from_b = grid_maps(g1.spec, g2.spec)
    carried = transport(g1, to_b, from_b)
    pre_plan = SamplingPlan(
        seed=seed, random_points=min(samples, 256), dyadic_depth=8, exhaustive_limit=1
    )
    agreement = fn_indiscernible(carried, g2, ctx, pre_plan)
    if not agreement:
        return _report(
            "grid-independence",
            grids,
            ctx,
            agreement.samples,
            agreement.max_gap,
            ctx.infinitesimal_scale,
            False,
            "sampled",
            witness=f"values differ at {agreement.witness.value}",
            precondition="representations disagree before quotients were compared",
        )

    max_gap = Fraction(0)
    witness = None
    for a in sample_unit_fractions(samples, seed):
        u1 = round_to_grid(a, g1.spec)
        u2 = round_to_grid(a, g2.spec)
        gap = abs(g1.quotient(u1) - g2.quotient(u2))
        if gap > max_gap:
            max_gap = gap
            if gap > tol and witness is None:
                witness = f"a={a}"
    return _report(
        "grid-independence",
        grids,
        ctx,
        samples,
        max_gap,
        tol,
        max_gap <= tol,
        "sampled",
        witness,
    )


@dataclass(frozen=True)
class ConvergentSequence:
    """A declared-limit sequence: a term rule, the limit it claims, and
    the context at which the claim is read."""

    rule: Callable[[int], Fraction]
    declared_limit: Fraction
    context: ObservationContext

    def terms(self, budget: int) -> list:
        return [Fraction(self.rule(i)) for i in range(budget)]

    def verify(self, budget: int = 128) -> bool:
        """Emulated convergence: for every probe q in 1/2, 1/4, ... down
        to 1/H, some sampled tail stays within q of the declared limit."""
        gaps = [abs(t - self.declared_limit) for t in self.terms(budget)]
        tol = self.context.infinitesimal_scale
        q = Fraction(1, 2)
        while True:
            last_bad = -1
            for i, g in enumerate(gaps):
                if g > q:
                    last_bad = i
            if last_bad >= budget - 1:
                return False
            if q <= tol:
                return True
            q = max(q / 2, tol)


@dataclass(frozen=True)
class LimitProbe:
    t: Fraction
    quotient: Fraction
    gap: Fraction


@dataclass(frozen=True)
class LimitQuotientResult:
    """Outcome of probing (f(round(x + t)) - f(x)) / t along a sequence:
    the reference value Delta f / Delta x at x, the probes that fell in
    the admissible band, and the verdict at tolerance 2/H."""

    value: Fraction
    verdict: str
    probes: Tuple[LimitProbe, ...]
    max_gap: Fraction
    tolerance: Fraction

    def __bool__(self):
        return self.verdict == "pass"


def limit_quotient(
    fr,
    x: GridPoint,
    seq: ConvergentSequence,
    budget: int = 64,
) -> LimitQuotientResult:
    """Read the sequence-limit form of the derivative at x.

    The sequence must converge to 0 by its own verify().  Terms are used
    as offsets, keeping only max(4 eps, 1/H**2) < |t| <= 1/H; each offset
    is realized on the grid (the probe runs between the grid points x and
    round(x + t), and the quotient divides by their exact gap, which is
    where an off-grid t lands once rounded).  Every surviving probe must
    land within 2/H of the difference quotient at x.
    """
    f = _as_grid_function(fr)
    ctx = seq.context
    if seq.declared_limit != 0:
        raise DomainError("offset sequence must converge to 0")
    if not seq.verify(budget):
        raise DomainError("sequence does not meet its own convergence claim")
    band_lo, band_hi = _band(f.spec, ctx)
    reference = f.quotient(x)
    tol = 2 * ctx.infinitesimal_scale

    probes = []
    max_gap = Fraction(0)
    for i in range(budget):
        t = Fraction(seq.rule(i))
        if t == 0 or not band_lo < abs(t) <= band_hi:
            continue
        target = x.value + t
        if not 0 <= target <= 1:
            raise DomainError(f"probe point {target} leaves [0, 1]")
        y = round_to_grid(target, f.spec)
        step = y.value - x.value
        if step == 0:
            continue
        q = (f(y) - f(x)) / step
        gap = abs(q - reference)
        probes.append(LimitProbe(t, q, gap))
        max_gap = max(max_gap, gap)
    verdict = "pass" if max_gap <= tol else "fail"
    return LimitQuotientResult(reference, verdict, tuple(probes), max_gap, tol)


def limit_check(
    fr,
    ctx: ObservationContext,
    points: Sequence[Fraction],
    budget: int = 64,
) -> CheckReport:
    """Run limit_quotient with the halving sequence t_i = 2**-i at each
    given point; pass iff every probe at every point lands within 2/H."""
    f = _as_grid_function(fr)
    seq = ConvergentSequence(lambda i: Fraction(1, 2**i), Fraction(0), ctx)
    max_gap = Fraction(0)
    witness = None
    count = 0
    tol = 2 * ctx.infinitesimal_scale
    for s in points:
        x = round_to_grid(Fraction(s), f.spec)
        if x.index >= f.spec.tau:
            x = f.spec.point(f.spec.tau - 1)
        result = limit_quotient(f, x, seq, budget)
        count += len(result.probes)
        if result.max_gap > max_gap:
            max_gap = result.max_gap
            if not result and witness is None:
                witness = f"x={x.value}"
    return _report(
        "limit", [f.spec.tau], ctx, count, max_gap, tol, max_gap <= tol, "sampled", witness
    )


def cumulative_values(f: GridFunction, workers: int = 1) -> list:
    """Prefix sums of f over the whole grid: out[n] = sum(f(i/tau) for
    i in 0..n).  With workers > 1 the grid is cut into chunks whose
    partial sums are combined in chunk order; exact arithmetic makes the
    result bit-identical to the serial one.
    """
    tau = f.spec.tau
    if tau + 1 > INTEGRAL_LIMIT:
        raise ResourceLimitError(
            f"cumulative sum over {tau + 1} points exceeds the limit {INTEGRAL_LIMIT};"
            " use integral_stream"
        )
    points = [f.spec.point(n) for n in range(tau + 1)]
    if workers <= 1:
        out = []
        acc = Fraction(0)
        for p in points:
            acc += f(p)
            out.append(acc)
        return out

    from concurrent.futures import ThreadPoolExecutor

    chunk = -(-(tau + 1) // workers)
    ranges = [(i, min(i + chunk, tau + 1)) for i in range(0, tau + 1, chunk)]

    def prefix(span):
        lo, hi = span
        acc = Fraction(0)
        part = []
        for n in range(lo, hi):
            acc += f(points[n])
            part.append(acc)
        return part

    with ThreadPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(prefix, ranges))
    out = []
    offset = Fraction(0)
    for part in parts:
        out.extend(offset + v for v in part)
        offset = out[-1]
    return out


def integral_stream(f: GridFunction):
    """Yield (point, integral value) pairs in grid order without storing
    the prefix table; the only mode available past the resource limit."""
    eps = f.spec.epsilon
    acc = Fraction(0)
    for p in f.spec.points():
        acc += f(p)
        yield p, acc * eps


def integral(
    fr,
    ctx: Optional[ObservationContext] = None,
    workers: int = 1,
) -> RealFunctionRepr:
    """The indefinite integral x -> sum(f(t) * eps for t from 0 through
    x, both ends included), as a representation on the same grid.

    When a context is given, f must be visibly bounded by K there:
    certified if possible, spot-checked otherwise.  The result carries
    the inherited certificates: the integral is Lipschitz with constant
    bound(f), and its difference quotient is f(successor(x)), so f's own
    value certificate becomes the quotient certificate.
    """
    f = _as_grid_function(fr)
    if ctx is not None:
        if f.certificate is not None:
            if f.certificate.bound > ctx.K:
                raise DomainError("certified bound exceeds K: integral may overflow")
        else:
            step = max(1, f.spec.tau // 64)
            for n in range(0, f.spec.tau + 1, step):
                if abs(f(f.spec.point(n))) > ctx.K:
                    raise DomainError(f"function exceeds K at {Fraction(n, f.spec.tau)}")

    sums = cumulative_values(f, workers)
    eps = f.spec.epsilon
    cert = None
    qcert = None
    if f.certificate is not None:
        bound = f.certificate.bound
        cert = Certificate(bound * (1 + eps), lambda d: bound * d)
        qcert = Certificate(bound, f.certificate.modulus)
    return RealFunctionRepr(
        GridFunction(f.spec, lambda p: sums[p.index] * eps, cert, qcert)
    )


def ftc_check(
    fr,
    ctx: ObservationContext,
    plan: SamplingPlan = SamplingPlan(),
    workers: int = 1,
) -> CheckReport:
    """Differentiate the integral and compare, in two layers.

    Layer one is exact: Delta(sum f dx)/dx (u) == f(successor(u)) must
    hold with zero error at every probed u; any violation is a hard
    failure regardless of context.  Layer two reads f(successor(u)) vs
    f(u) at the context; max_gap reports that comparison against 1/H.
    """
    f = _as_grid_function(fr)
    anti = integral(f, ctx, workers)
    spec = f.spec
    tol = ctx.infinitesimal_scale
    exact_violations = 0
    witness = None
    max_gap = Fraction(0)
    count = 0
    for n in plan.indices(spec.tau):
        if n >= spec.tau:
            continue
        u = spec.point(n)
        up = successor(u)
        count += 1
        if anti.f.quotient(u) != f(up):
            exact_violations += 1
            if witness is None:
                witness = f"u={u.value}"
        gap = abs(f(up) - f(u))
        if gap > max_gap:
            max_gap = gap
    ok = exact_violations == 0 and max_gap <= tol
    return _report(
        "ftc",
        [spec.tau],
        ctx,
        count,
        max_gap,
        tol,
        ok,
        plan.mode(spec.tau),
        witness,
        exact_violations=exact_violations,
    )
