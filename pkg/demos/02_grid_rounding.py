"""The grid [0, 1] at resolution tau, its rounding map, and the
observation context that decides what counts as "the same number".

Run:  python3 demos/02_grid_rounding.py
"""

from fractions import Fraction

from hypergrid import (
    GridSpec,
    ObservationContext,
    quasi_identity_defect,
    round_to_grid,
    successor,
)

spec = GridSpec(1000)
print(f"Grid at tau = {spec.tau}: points n/{spec.tau}, mesh epsilon = {spec.epsilon}")

s = Fraction(1, 3)
p = round_to_grid(s, spec)
print(f"rounding 1/3 gives index {p.index}, value {p.value}")
print(f"defect 1/3 - {p.value} = {quasi_identity_defect(s, spec)} (always in [0, epsilon))")
print(f"successor of {p.value} is {successor(p).value}")

print()
ctx = ObservationContext(H=1000, K=10**12)
print(f"Context H = {ctx.H}: gaps up to 1/H = {ctx.infinitesimal_scale} are invisible")
print(f"  1/3 ~ its rounding?   {ctx.indiscernible(s, p.value)}")

print()
print("Indiscernibility is a tolerance relation, not an equivalence:")
a, b, c = Fraction(0), Fraction(1, 1000), Fraction(2, 1000)
print(f"  0 ~ 1/1000:      {ctx.indiscernible(a, b)}")
print(f"  1/1000 ~ 2/1000: {ctx.indiscernible(b, c)}")
print(f"  0 ~ 2/1000:      {ctx.indiscernible(a, c)}  (two steps compose to 2/H)")

print()
print("The same rounding at a coarser observation scale is no longer exact")
coarse = ObservationContext(H=10**7, K=10**12)
print(f"  at H = {coarse.H}: 1/3 ~ its rounding? {coarse.indiscernible(s, p.value)}")
print("  a finer grid fixes it:")
fine = GridSpec(10**8)
q = round_to_grid(s, fine)
print(f"  at tau = {fine.tau}: 1/3 ~ {q.value}? {coarse.indiscernible(s, q.value)}")
