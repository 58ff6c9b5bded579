"""Truncated power series and probed countable sums, all in exact
rational arithmetic.

The exponential here is literally the partial sum of q^i/i! through
i = tau.  Two truncation policies exist because exactness and cost pull
in opposite directions:

* ``full``: every term through i = tau.  This is the reference value;
  it is computed with an integer Horner recurrence (one normalization
  at the end) but still becomes expensive for large tau.
* ``tail-bounded``: stop once the remaining tail is provably below
  1/(tau * 2**guard).  Past i >= 2|q| the term ratio is at most 1/2, so
  twice the next term bounds the whole tail.  The result differs from
  the full sum by less than the threshold, which is far below any
  observation tolerance in use; when the threshold is never reached
  (tiny tau), the loop runs to tau and the result is the full sum.

The logarithm inverts the truncated exponential over the lattice
k/tau: it returns the largest lattice point whose exponential does not
exceed the argument.  Arguments below 1 are routed through the
reciprocal, which keeps the search on nonnegative lattice points where
the truncated series is provably monotone.

``countable_sum`` evaluates partial sums at doubling lengths and issues
a verdict: a value once the partials settle, an infinity once they
leave the bounded range, or the ``UNSTABLE`` sentinel when the probe
budget ends with the partials still moving.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator, Optional, Union

from .context import ObservationContext
from .errors import DomainError, ResourceLimitError, SearchRangeError
from .reals import MINUS_INFINITY, PLUS_INFINITY, ExtendedReal, real_from_rational

FULL_TAU_LIMIT = 2**17


@dataclass(frozen=True)
class TruncationPolicy:
    """How far to carry a series: ``mode`` is "full" or "tail-bounded";
    ``guard`` sets the tail threshold 1/(tau * 2**guard)."""

    mode: str = "tail-bounded"
    guard: int = 64

    def __post_init__(self):
        if self.mode not in ("full", "tail-bounded"):
            raise DomainError(f"unknown truncation mode {self.mode!r}")
        if self.guard < 1:
            raise DomainError("guard must be a positive integer")


DEFAULT_POLICY = TruncationPolicy()
FULL_POLICY = TruncationPolicy(mode="full")


@dataclass(frozen=True)
class SeriesState:
    """One step of a series evaluation: term index, the term itself, and
    the partial sum through that term."""

    index: int
    term: Fraction
    partial: Fraction


def _exp_loop(q: Fraction, tau: int, policy: TruncationPolicy):
    """Shared core: returns (numerator, denominator, stop_index) with
    numerator/denominator equal to the partial sum through stop_index.

    The recurrence keeps everything in integers over the running
    denominator b**i * i!: S_i = S_{i-1} * (b*i) + a**i.
    """
    if tau < 2:
        raise DomainError("tau must be at least 2")
    a, b = q.numerator, q.denominator
    if policy.mode == "full" and tau > FULL_TAU_LIMIT:
        raise ResourceLimitError(
            f"full truncation at tau={tau} exceeds the limit {FULL_TAU_LIMIT};"
            " use a tail-bounded policy"
        )
    check_tail = policy.mode == "tail-bounded"
    # tail bound is valid once the term ratio |q|/(i+1) is at most 1/2
    ratio_floor = 2 * (abs(a) // b + 1)
    tail_factor = tau << policy.guard

    s = 1
    den = 1
    a_pow = 1
    stop = 0
    for i in range(1, tau + 1):
        a_pow *= a
        den *= b * i
        s = s * (b * i) + a_pow
        stop = i
        if check_tail and i >= ratio_floor:
            # whole tail <= 2 |t_{i+1}|; compare over the denominator den*b*(i+1)
            if 2 * abs(a_pow * a) * tail_factor < den * b * (i + 1):
                break
    return s, den, stop


def exp_series(q: Fraction, tau: int, policy: TruncationPolicy = DEFAULT_POLICY):
    """Partial sum of exp at q through tau, plus the index of the last
    term actually added.  Returns (value, stop_index)."""
    s, den, stop = _exp_loop(Fraction(q), tau, policy)
    return Fraction(s, den), stop


def exp_approx(
    q: Fraction, tau: int, policy: TruncationPolicy = DEFAULT_POLICY
) -> Fraction:
    """The truncated exponential sum(q**i / i! for i in 0..tau)."""
    return exp_series(q, tau, policy)[0]


def series_states(
    q: Fraction, tau: int, policy: TruncationPolicy = DEFAULT_POLICY
) -> Iterator[SeriesState]:
    """Step-by-step view of the exponential evaluation, for inspection.
    Yields the same terms the fast path sums, in order."""
    q = Fraction(q)
    term = Fraction(1)
    partial = Fraction(1)
    yield SeriesState(0, term, partial)
    _, _, stop = _exp_loop(q, tau, policy)
    for i in range(1, stop + 1):
        term = term * q / i
        partial += term
        yield SeriesState(i, term, partial)


def log_approx(
    q: Fraction, tau: int, policy: TruncationPolicy = DEFAULT_POLICY
) -> Fraction:
    """Lattice inverse of the truncated exponential: the largest k/tau
    with exp_approx(k/tau, tau) <= q, searched over |k| <= tau**2.

    Arguments in (0, 1) are evaluated as -log_approx(1/q), which stays
    on the nonnegative half of the lattice; the two readings differ by
    at most one lattice step.
    """
    q = Fraction(q)
    if q <= 0:
        raise DomainError("log_approx needs a positive argument")
    if q < 1:
        return -log_approx(1 / q, tau, policy)
    if tau < 2:
        raise DomainError("tau must be at least 2")

    def probe(k: int) -> Fraction:
        return exp_approx(Fraction(k, tau), tau, policy)

    # bracket: double hi until the exponential overshoots q
    lo, hi = 0, 1
    limit = tau * tau
    while probe(hi) <= q:
        lo, hi = hi, hi * 2
        if lo > limit:
            raise SearchRangeError(
                f"log search left the lattice (|k| <= {limit}) for argument {q}"
            )
    # invariant: probe(lo) <= q < probe(hi)
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if probe(mid) <= q:
            lo = mid
        else:
            hi = mid
    return Fraction(lo, tau)


class _Unstable:
    """Sentinel verdict: the partial sums were still moving when the
    probe budget ran out.  Distinct from any value and from infinity."""

    _instance: Optional["_Unstable"] = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "UNSTABLE"

    def __bool__(self):
        return False


UNSTABLE = _Unstable()


def is_unstable(x) -> bool:
    return x is UNSTABLE


SumVerdict = Union[ExtendedReal, _Unstable]


def countable_sum(
    term: Callable[[int], Fraction],
    ctx: ObservationContext,
    cap: int = 2**16,
) -> SumVerdict:
    """Probe the series sum(term(n) for n = 0, 1, 2, ...) at ``ctx``.

    Partial sums are taken at lengths 1, 2, 4, ... up to ``cap``.  The
    verdict is an infinity as soon as a partial sum leaves [-K, K]; a
    finite value once two consecutive doublings each move the partial
    sum by at most 1/(4H); otherwise UNSTABLE.  A finite verdict is a
    reading at this context and cap, not a convergence proof.
    """
    if cap < 4:
        raise DomainError("cap must allow at least a few probes")
    quarter_tol = Fraction(1, 4 * ctx.H)

    partial = Fraction(0)
    n = 0
    length = 1
    previous = None
    settled = 0
    while length <= cap:
        while n < length:
            partial += Fraction(term(n))
            n += 1
        if partial > ctx.K:
            return PLUS_INFINITY
        if partial < -ctx.K:
            return MINUS_INFINITY
        if previous is not None:
            if abs(partial - previous) <= quarter_tol:
                settled += 1
                if settled >= 2:
                    return real_from_rational(partial, ctx)
            else:
                settled = 0
        previous = partial
        length *= 2
    return UNSTABLE
