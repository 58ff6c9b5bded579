"""The exponential as a literal truncated power series, its lattice
logarithm, and probed countable sums.

Run:  python3 demos/04_exp_log.py
"""

from fractions import Fraction

from hypergrid import (
    ObservationContext,
    countable_sum,
    exp_approx,
    is_unstable,
    log_approx,
    render_decimal,
)
from hypergrid.series import exp_series

tau = 1000
print(f"exp as the partial sum of q^i/i! through i = {tau}:")
one = exp_approx(Fraction(1), tau)
print(f"  exp(1)  = {render_decimal(one, 15)}...")
value, stop = exp_series(Fraction(1), 10**6)
print(f"  at tau = 10^6 the tail bound stops the sum at term {stop}")

print()
print("The functional equation holds up to the truncation tail:")
p, q = Fraction(3, 7), Fraction(-5, 4)
gap = abs(exp_approx(p + q, tau) - exp_approx(p, tau) * exp_approx(q, tau))
print(f"  |exp(p+q) - exp(p) exp(q)| = {render_decimal(gap, 25)}")

print()
print("log inverts exp over the lattice k/tau:")
for x in (Fraction(2), Fraction(1, 2), Fraction(10)):
    v = log_approx(x, tau)
    print(f"  log({x}) = {v} = {render_decimal(v, 6)}")
roundtrip = log_approx(exp_approx(Fraction(3, 2), tau), tau)
print(f"  log(exp(3/2)) = {roundtrip}  (within 2/tau + 1/H of 3/2)")

print()
ctx = ObservationContext(H=1000, K=10**12)
print("Countable sums are probed at doubling lengths and read at a context:")
geometric = countable_sum(lambda n: Fraction(1, 2**n), ctx)
print(f"  sum 1/2^n      -> {render_decimal(geometric.representative, 9)} (finite)")
harmonic = countable_sum(lambda n: Fraction(1, n + 1), ctx, cap=2**14)
print(f"  sum 1/(n+1)    -> {'UNSTABLE: still moving at the cap' if is_unstable(harmonic) else harmonic}")
ones = countable_sum(lambda n: Fraction(1), ObservationContext(H=10, K=1000))
print(f"  sum 1          -> {ones!r}")
