"""Real numbers as (representative, context) pairs, plus the two ends.

A finite value keeps one concrete rational representative together with
the context that decides which other rationals would have done equally
well.  Equality between two finite values with the same context is
indiscernibility of their representatives: a tolerance relation, not an
equivalence, so these objects are unhashable by design.
"""

from fractions import Fraction

from .context import ObservationContext
from .errors import DomainError


class ExtendedReal:
    """A finite real (representative, context) or one of +inf / -inf."""

    __slots__ = ("representative", "context", "_sign")

    def __init__(self, representative: Fraction, context: ObservationContext):
        if abs(representative) > context.K:
            raise DomainError(
                f"representative {representative} exceeds the bound K={context.K};"
                " use real_from_rational to map overflow to an infinity"
            )
        object.__setattr__(self, "representative", Fraction(representative))
        object.__setattr__(self, "context", context)
        object.__setattr__(self, "_sign", 0)

    @classmethod
    def _infinity(cls, sign: int) -> "ExtendedReal":
        self = object.__new__(cls)
        object.__setattr__(self, "representative", None)
        object.__setattr__(self, "context", None)
        object.__setattr__(self, "_sign", sign)
        return self

    def __setattr__(self, name, value):
        raise AttributeError("ExtendedReal is immutable")

    @property
    def is_finite(self) -> bool:
        return self._sign == 0

    @property
    def infinity_sign(self) -> int:
        """0 for finite values, +1 for +inf, -1 for -inf."""
        return self._sign

    def __eq__(self, other):
        if not isinstance(other, ExtendedReal):
            return NotImplemented
        if self._sign != 0 or other._sign != 0:
            return self._sign != 0 and self._sign == other._sign
        if self.context != other.context:
            return False
        return self.context.indiscernible(self.representative, other.representative)

    # Equality is a tolerance relation (not transitive), so hashing by
    # equivalence class is impossible.
    __hash__ = None

    def __repr__(self):
        if self._sign > 0:
            return "ExtendedReal(+inf)"
        if self._sign < 0:
            return "ExtendedReal(-inf)"
        return f"ExtendedReal({self.representative}, H={self.context.H}, K={self.context.K})"


PLUS_INFINITY = ExtendedReal._infinity(+1)
MINUS_INFINITY = ExtendedReal._infinity(-1)


def real_from_rational(q: Fraction, ctx: ObservationContext) -> ExtendedReal:
    """Wrap ``q`` at ``ctx``; magnitudes beyond K collapse to an infinity."""
    if q > ctx.K:
        return PLUS_INFINITY
    if q < -ctx.K:
        return MINUS_INFINITY
    return ExtendedReal(q, ctx)
