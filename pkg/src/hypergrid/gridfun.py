"""Rational-valued functions on a grid.

A ``GridFunction`` is an evaluation rule, not a table: grids default to
resolutions where materialization is impossible, and rules scale where
tables do not.  Rules must be pure; the optional memo cache is the only
mutable state and behaves as a write-once-per-key map (duplicate
computation is allowed, divergent results are not).

Continuity here is a three-valued, auditable claim.  A function may carry
a certificate: an upper bound on |f| over the grid together with a modulus
``omega`` such that |x - y| <= d implies |f(x) - f(y)| <= omega(d).
``continuity_check`` then either certifies preservation of
indiscernibility at a context, refutes it with a concrete witness pair,
or reports that sampling found nothing ("sampled-ok").  Certificates
propagate compositionally: sums add moduli, products use the
bounded-factor rule, scaling scales.

Function-level indiscernibility compares |f - g| pointwise against 1/H.
(The absolute difference is used even where a one-sided gap would do;
the relation is treated as a symmetric distance throughout.)
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from .context import ObservationContext
from .errors import DomainError, GridMismatchError, ResourceLimitError
from .grid import GridPoint, GridSpec, round_to_grid, successor
from .sampling import SamplingPlan

MATERIALIZE_LIMIT = 2**24


@dataclass(frozen=True)
class Certificate:
    """Continuity certificate: ``bound`` >= sup |f| on the grid and a
    monotone ``modulus`` with |x-y| <= d  =>  |f(x)-f(y)| <= modulus(d)."""

    bound: Fraction
    modulus: Callable[[Fraction], Fraction]

    def __call__(self, d: Fraction) -> Fraction:
        return self.modulus(d)


def constant_certificate(c: Fraction) -> Certificate:
    return Certificate(abs(Fraction(c)), lambda d: Fraction(0))


def identity_certificate() -> Certificate:
    return Certificate(Fraction(1), lambda d: d)


def add_certificates(a: Certificate, b: Certificate) -> Certificate:
    return Certificate(a.bound + b.bound, lambda d: a.modulus(d) + b.modulus(d))


def scale_certificate(c: Fraction, a: Certificate) -> Certificate:
    c = abs(Fraction(c))
    return Certificate(c * a.bound, lambda d: c * a.modulus(d))


def multiply_certificates(a: Certificate, b: Certificate) -> Certificate:
    # bounded-factor rule: |fg(x)-fg(y)| <= |f| |g(x)-g(y)| + |g| |f(x)-f(y)|
    return Certificate(
        a.bound * b.bound,
        lambda d: a.bound * b.modulus(d) + b.bound * a.modulus(d),
    )


def _quotient_product_certificate(f_cert, f_qcert, g_cert, g_qcert):
    """Certificate for the difference quotient of a product, from the
    exact identity D(fg)(u) = f(u+) Dg(u) + g(u) Df(u)."""
    if None in (f_cert, f_qcert, g_cert, g_qcert):
        return None
    bound = f_cert.bound * g_qcert.bound + g_cert.bound * f_qcert.bound

    def modulus(d):
        return (
            f_cert.bound * g_qcert.modulus(d)
            + g_qcert.bound * f_cert.modulus(d)
            + g_cert.bound * f_qcert.modulus(d)
            + f_qcert.bound * g_cert.modulus(d)
        )

    return Certificate(bound, modulus)


class GridFunction:
    """A deterministic rule from grid points to exact rationals.

    ``certificate`` (optional) certifies continuity of the values;
    ``quotient_certificate`` (optional) certifies continuity of the
    difference-quotient function, which is what differentiability at a
    context ultimately needs.
    """

    __slots__ = ("spec", "_rule", "certificate", "quotient_certificate", "_cache")

    def __init__(
        self,
        spec: GridSpec,
        rule: Callable[[GridPoint], Fraction],
        certificate: Optional[Certificate] = None,
        quotient_certificate: Optional[Certificate] = None,
        memoize: bool = False,
    ):
        self.spec = spec
        self._rule = rule
        self.certificate = certificate
        self.quotient_certificate = quotient_certificate
        self._cache = {} if memoize else None

    @classmethod
    def pointwise(
        cls,
        spec: GridSpec,
        value_rule: Callable[[Fraction], Fraction],
        certificate: Optional[Certificate] = None,
        quotient_certificate: Optional[Certificate] = None,
        memoize: bool = False,
    ) -> "GridFunction":
        """Build from a rule on rational values rather than grid points."""
        return cls(
            spec,
            lambda p: value_rule(p.value),
            certificate,
            quotient_certificate,
            memoize,
        )

    def __call__(self, x: GridPoint) -> Fraction:
        if x.spec != self.spec:
            raise GridMismatchError(
                f"point on grid tau={x.spec.tau} given to function on tau={self.spec.tau}"
            )
        if self._cache is None:
            return self._rule(x)
        got = self._cache.get(x.index)
        if got is None:
            got = self._rule(x)
            self._cache[x.index] = got
        return got

    def difference(self, x: GridPoint) -> Fraction:
        """f(x+) - f(x); undefined at the right endpoint."""
        return self(successor(x)) - self(x)

    def quotient(self, x: GridPoint) -> Fraction:
        """The difference quotient (f(x+) - f(x)) / epsilon."""
        return self.difference(x) * self.spec.tau

    def materialize(self) -> list:
        """All values as a list; guarded against astronomical grids."""
        if self.spec.tau + 1 > MATERIALIZE_LIMIT:
            raise ResourceLimitError(
                f"refusing to materialize {self.spec.tau + 1} points"
                f" (limit {MATERIALIZE_LIMIT})"
            )
        return [self(p) for p in self.spec.points()]

    # Pointwise algebra; certificates propagate whenever both sides carry them.

    def _combine_binary(self, other, value_op, cert, qcert):
        if other.spec != self.spec:
            raise GridMismatchError("cannot combine functions on different grids")
        return GridFunction(
            self.spec,
            lambda p: value_op(self(p), other(p)),
            cert,
            qcert,
        )

    def __add__(self, other):
        if isinstance(other, GridFunction):
            cert = (
                add_certificates(self.certificate, other.certificate)
                if self.certificate and other.certificate
                else None
            )
            qcert = (
                add_certificates(self.quotient_certificate, other.quotient_certificate)
                if self.quotient_certificate and other.quotient_certificate
                else None
            )
            return self._combine_binary(other, lambda a, b: a + b, cert, qcert)
        shift = Fraction(other)
        cert = (
            Certificate(self.certificate.bound + abs(shift), self.certificate.modulus)
            if self.certificate
            else None
        )
        return GridFunction(
            self.spec, lambda p: self(p) + shift, cert, self.quotient_certificate
        )

    __radd__ = __add__

    def __neg__(self):
        return self * Fraction(-1)

    def __sub__(self, other):
        if isinstance(other, GridFunction):
            return self + (-other)
        return self + (-Fraction(other))

    def __rsub__(self, other):
        return (-self) + Fraction(other)

    def __mul__(self, other):
        if isinstance(other, GridFunction):
            cert = (
                multiply_certificates(self.certificate, other.certificate)
                if self.certificate and other.certificate
                else None
            )
            qcert = _quotient_product_certificate(
                self.certificate,
                self.quotient_certificate,
                other.certificate,
                other.quotient_certificate,
            )
            return self._combine_binary(other, lambda a, b: a * b, cert, qcert)
        c = Fraction(other)
        cert = scale_certificate(c, self.certificate) if self.certificate else None
        qcert = (
            scale_certificate(c, self.quotient_certificate)
            if self.quotient_certificate
            else None
        )
        return GridFunction(self.spec, lambda p: self(p) * c, cert, qcert)

    __rmul__ = __mul__


def evaluate(f: GridFunction, x: GridPoint) -> Fraction:
    return f(x)


def difference(f: GridFunction, x: GridPoint) -> Fraction:
    return f.difference(x)


def difference_quotient(f: GridFunction, x: GridPoint) -> Fraction:
    return f.quotient(x)


@dataclass(frozen=True)
class FnComparison:
    """Outcome of a pointwise function comparison.  Truthy iff the two
    functions were indiscernible everywhere probed; ``mode`` records
    whether the probe was exhaustive (a decision) or sampled (a sound
    refuter / statistical accepter)."""

    indiscernible: bool
    mode: str
    max_gap: Fraction
    samples: int
    witness: Optional[GridPoint] = None

    def __bool__(self):
        return self.indiscernible


def fn_indiscernible(
    f: GridFunction,
    g: GridFunction,
    ctx: ObservationContext,
    plan: SamplingPlan = SamplingPlan(),
) -> FnComparison:
    """Compare two functions on the same grid at context ``ctx``: their
    values must stay within 1/H at every probed point."""
    if f.spec != g.spec:
        raise GridMismatchError("cannot compare functions on different grids")
    tol = ctx.infinitesimal_scale
    max_gap = Fraction(0)
    witness = None
    count = 0
    for n in plan.indices(f.spec.tau):
        p = f.spec.point(n)
        gap = abs(f(p) - g(p))
        count += 1
        if gap > max_gap:
            max_gap = gap
            if gap > tol and witness is None:
                witness = p
    return FnComparison(witness is None, plan.mode(f.spec.tau), max_gap, count, witness)


def grid_maps(spec_a: GridSpec, spec_b: GridSpec):
    """The canonical rounding equivalences between two grids, as a pair
    (a_to_b, b_to_a).  Each direction rounds the point's value onto the
    other grid, so each is an almost inverse of the other: the roundtrip
    moves a point by less than epsilon_a + epsilon_b."""

    def a_to_b(x: GridPoint) -> GridPoint:
        return round_to_grid(x.value, spec_b)

    def b_to_a(y: GridPoint) -> GridPoint:
        return round_to_grid(y.value, spec_a)

    return a_to_b, b_to_a


def transport(
    f: GridFunction,
    to_b: Callable[[GridPoint], GridPoint],
    from_b: Callable[[GridPoint], GridPoint],
) -> GridFunction:
    """Carry ``f`` along a grid equivalence: the result on the target grid
    is y -> f(from_b(y)), with values untouched.

    ``to_b``/``from_b`` must be an almost-inverse pair (``grid_maps`` builds
    the canonical one); that obligation is the caller's, and violations
    surface in the roundtrip comparison rather than here.
    """
    probe = from_b(GridPoint(0, _probe_spec(to_b, f.spec)))
    if probe.spec != f.spec:
        raise GridMismatchError("from_b does not land on the source grid")
    target_spec = _probe_spec(to_b, f.spec)

    cert = None
    if f.certificate is not None:
        eps_src = f.spec.epsilon
        inner = f.certificate.modulus
        # rounding both arguments back can stretch a gap by one source mesh
        cert = Certificate(f.certificate.bound, lambda d: inner(d + eps_src))

    return GridFunction(target_spec, lambda y: f(from_b(y)), cert)


def _probe_spec(to_b, source_spec: GridSpec) -> GridSpec:
    return to_b(GridPoint(0, source_spec)).spec


@dataclass(frozen=True)
class ContinuityVerdict:
    """Three-valued continuity claim at a context.

    ``certified``: a certificate guarantees preservation of
    indiscernibility (``scale`` is an input gap at which the modulus
    drops below 1/H).  ``refuted``: ``witness`` is a pair of adjacent
    grid points whose values jump by more than 1/H; adjacent pairs are
    conclusive because every admissible input scale is at least the mesh
    width.  ``sampled-ok``: probing found no such jump.
    """

    status: str
    witness: Optional[tuple] = None
    scale: Optional[Fraction] = None

    CERTIFIED = "certified"
    SAMPLED_OK = "sampled-ok"
    REFUTED = "refuted"

    def __bool__(self):
        return self.status != self.REFUTED


def _certificate_scale(cert: Certificate, ctx: ObservationContext, eps: Fraction):
    """Largest probed input gap d >= eps with modulus(d) <= 1/H, or None."""
    tol = ctx.infinitesimal_scale
    d = tol
    while d >= eps:
        if cert.modulus(d) <= tol:
            return d
        d = d / 2
    if cert.modulus(eps) <= tol:
        return eps
    return None


def continuity_check(
    f: GridFunction,
    ctx: ObservationContext,
    plan: SamplingPlan = SamplingPlan(),
) -> ContinuityVerdict:
    """Decide, as far as possible, whether ``f`` maps indiscernible points
    to indiscernible values at ``ctx``.

    With a certificate the claim is certified outright when some input
    scale between the mesh width and 1/H pushes the modulus below 1/H.
    Without one (or when the certificate is too weak) the check samples
    jumps across adjacent pairs around each planned index: a jump above
    1/H refutes continuity at every admissible scale at once.
    """
    eps = f.spec.epsilon
    if f.certificate is not None:
        scale = _certificate_scale(f.certificate, ctx, eps)
        if scale is not None:
            return ContinuityVerdict(ContinuityVerdict.CERTIFIED, scale=scale)

    tol = ctx.infinitesimal_scale
    tau = f.spec.tau
    for n in plan.indices(tau):
        for lo in (n - 1, n):
            if lo < 0 or lo + 1 > tau:
                continue
            a = f.spec.point(lo)
            b = f.spec.point(lo + 1)
            if abs(f(b) - f(a)) > tol:
                return ContinuityVerdict(ContinuityVerdict.REFUTED, witness=(a, b))
    return ContinuityVerdict(ContinuityVerdict.SAMPLED_OK)
