"""Stock grid functions with certificates attached.

Every constructor here returns a ``GridFunction`` on the given grid,
carrying the tightest simple certificates that are actually provable:

* monomials x**k on [0, 1]: value modulus k*d, quotient bound k and
  quotient modulus k(k-1)*d, both from the factorization of A**k - B**k
  (each secant summand is a product of k-1 factors bounded by 1).
* the truncated exponential: termwise comparison gives Lipschitz
  constant 3 on [0, 1] for both the values and the difference quotient;
  a tail-bounded policy perturbs each value by less than the tail
  threshold, which the moduli absorb as an additive constant.

The logarithm and the step function carry no certificates: one is
unbounded near 0, the other is there to be refuted.
"""

from fractions import Fraction

from .errors import DomainError
from .grid import GridSpec
from .gridfun import Certificate, GridFunction
from .series import DEFAULT_POLICY, TruncationPolicy, exp_approx, log_approx


def constant(spec: GridSpec, c) -> GridFunction:
    c = Fraction(c)
    return GridFunction(
        spec,
        lambda p: c,
        certificate=Certificate(abs(c), lambda d: Fraction(0)),
        quotient_certificate=Certificate(Fraction(0), lambda d: Fraction(0)),
    )


def monomial(spec: GridSpec, k: int) -> GridFunction:
    """x**k on the grid, for a nonnegative integer k."""
    if k < 0:
        raise DomainError("monomial exponent must be a nonnegative integer")
    if k == 0:
        return constant(spec, 1)
    return GridFunction(
        spec,
        lambda p: p.value**k,
        certificate=Certificate(Fraction(1), lambda d, k=k: k * d),
        quotient_certificate=Certificate(
            Fraction(k), lambda d, k=k: k * (k - 1) * d
        ),
    )


def identity(spec: GridSpec) -> GridFunction:
    return monomial(spec, 1)


def square(spec: GridSpec) -> GridFunction:
    return monomial(spec, 2)


def exp_fn(
    spec: GridSpec, policy: TruncationPolicy = DEFAULT_POLICY
) -> GridFunction:
    """The truncated exponential as a grid function, memoized.

    On [0, 1] the partial sums stay below 3, and a termwise bound gives
    |e(x) - e(y)| <= 3 |x - y| for both the values and the quotient; the
    policy's tail threshold enters the moduli as a tiny additive slack.
    """
    theta = (
        Fraction(0)
        if policy.mode == "full"
        else Fraction(1, spec.tau << policy.guard)
    )
    wobble = 2 * theta
    quotient_wobble = 4 * theta * spec.tau
    return GridFunction(
        spec,
        lambda p: exp_approx(p.value, spec.tau, policy),
        certificate=Certificate(Fraction(3), lambda d: 3 * d + wobble),
        quotient_certificate=Certificate(
            Fraction(3), lambda d: 3 * d + quotient_wobble
        ),
        memoize=True,
    )


def log_fn(
    spec: GridSpec, policy: TruncationPolicy = DEFAULT_POLICY
) -> GridFunction:
    """Lattice logarithm on the grid; undefined at 0, so evaluation at
    the left endpoint raises.  Unbounded near 0, hence no certificate."""

    def rule(p):
        if p.index == 0:
            raise DomainError("log is undefined at 0")
        return log_approx(p.value, spec.tau, policy)

    return GridFunction(spec, rule, memoize=True)


def step(spec: GridSpec, at=Fraction(1, 2)) -> GridFunction:
    """Unit jump at ``at``: 0 below, 1 from ``at`` on.  Deliberately
    discontinuous; continuity checks should refute it."""
    at = Fraction(at)
    return GridFunction(spec, lambda p: Fraction(1 if p.value >= at else 0))
