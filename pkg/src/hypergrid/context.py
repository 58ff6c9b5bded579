"""Observation contexts and the indiscernibility relation they induce.

A context fixes two integer thresholds: H, below whose reciprocal a
magnitude counts as infinitesimal, and K, above which a magnitude counts
as infinite.  Every "two values are the same real number" judgement in
this package is made at a context, never absolutely.

The relation is reflexive and symmetric but deliberately NOT transitive:
chaining two judgements can double the gap (see
``ObservationContext.indiscernible``).  Treat it as a tolerance relation.
"""

from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError

DEFAULT_H = 10**6
DEFAULT_K = 10**12


@dataclass(frozen=True)
class ObservationContext:
    """Thresholds (H, K): magnitudes <= 1/H are infinitesimal, magnitudes
    <= K are bounded.  Both bounds are inclusive so that zero and exact
    identities sit strictly inside their classes."""

    H: int = DEFAULT_H
    K: int = DEFAULT_K

    def __post_init__(self):
        if self.H < 2 or self.K < 2:
            raise DomainError(f"context thresholds must be >= 2, got H={self.H}, K={self.K}")
        if self.K < self.H:
            raise DomainError(f"finiteness bound K={self.K} must dominate H={self.H}")

    @property
    def infinitesimal_scale(self) -> Fraction:
        return Fraction(1, self.H)

    def is_infinitesimal(self, q: Fraction) -> bool:
        """True iff |q| <= 1/H."""
        return abs(q) * self.H <= 1

    def is_bounded(self, q: Fraction) -> bool:
        """True iff |q| <= K."""
        return abs(q) <= self.K

    def indiscernible(self, p: Fraction, q: Fraction) -> bool:
        """True iff p and q are the same number at this context.

        Either both are bounded-ish and their gap is infinitesimal, or
        both sit beyond the same end of the bounded range.  The bounded
        branch requires only one of the two values to be bounded: the
        other is then within 1/H of it, which keeps the relation exactly
        symmetric at the K boundary.

        Not transitive: two accepted gaps of 1/H compose to 2/H.
        """
        if (abs(p) <= self.K or abs(q) <= self.K) and abs(p - q) * self.H <= 1:
            return True
        if p > self.K and q > self.K:
            return True
        if p < -self.K and q < -self.K:
            return True
        return False
