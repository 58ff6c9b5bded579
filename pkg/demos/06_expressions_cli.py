"""The expression language and the command-line front end.

Run:  python3 demos/06_expressions_cli.py
"""

from fractions import Fraction

from hypergrid import GridSpec, compile, parse, pretty
from hypergrid.cli import main

tree = parse("x^3 - x/2 + 0.25")
print(f"parsed:   {tree}")
print(f"rendered: {pretty(tree)}")

spec = GridSpec(1000)
f = compile(tree, spec)
p = spec.point(600)
print(f"value at {p.value}: {f(p)}")
print(f"certified: values {f.certificate is not None}, quotients {f.quotient_certificate is not None}")

print()
print("The same machinery drives the hypergrid command:")
for argv in (
    ["eval", "x^2", "--tau", "10", "--at", "3/10"],
    ["diff", "x^2", "--tau", "1000000", "--at", "1/2"],
    ["integrate", "x", "--tau", "10"],
    ["eval", "x^2", "--domain", "0", "2", "--at", "3/2", "--tau", "65536"],
    ["sum", "geometric:1/2"],
    ["check", "ftc", "exp(x)", "--tau", "4096", "--json"],
):
    print(f"$ hypergrid {' '.join(argv)}")
    code = main(argv)
    print(f"  (exit {code})")
    print()
