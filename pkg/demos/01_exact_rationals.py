"""Everything in this package is an exact rational: no floats, no
rounding drift, no accumulation error.  This script shows the substrate.

Run:  python3 demos/01_exact_rationals.py
"""

from fractions import Fraction

from hypergrid import format_rational, parse_rational, render_decimal

print("Parsing accepts p/q, integers, and exact decimals:")
for text in ("3/4", "-7/2", "42", "0.125", ".37"):
    q = parse_rational(text)
    print(f"  {text!r:10} -> {format_rational(q)}")

print()
print("Decimal text converts exactly, not through binary floats:")
q = parse_rational("0.1")
print(f"  0.1 is {q} (denominator {q.denominator}, not a power of two)")

print()
print("Arithmetic never rounds, so identities hold on the nose:")
a, b = Fraction(1, 3), Fraction(1, 6)
print(f"  1/3 + 1/6           = {a + b}")
print(f"  (1/3 + 1/6) * 2     = {(a + b) * 2}")
print(f"  sum of 10^6 * 1/10^6 = {sum(Fraction(1, 10**6) for _ in range(10**6))}")

print()
print("Fixed-point rendering is a display choice, applied once at the end:")
third = Fraction(1, 3)
for digits in (3, 6, 12):
    print(f"  1/3 to {digits:2} digits: {render_decimal(third, digits)}")
