"""Exact bigraded polynomial arithmetic: the substitution that drives
everything else in the workbench.

A fibration germ lives in coordinates (x, y, z, w) over a base parameter t.
Rescaling coordinates by powers of t moves coefficients between models; the
whole analysis of fiber transformations reduces to tracking those t-powers
exactly.
"""

from dpfib.exactpoly import (
    is_integral,
    parse_poly,
    partial_derivative,
    substitute_monomial,
    to_text,
)

W1 = (1, 1, 2, 3)

print("A degree-1 coefficient polynomial, g6 = x^5 y + x y^5:")
g6 = parse_poly("x^5 y + x y^5", W1)
print("  ", to_text(g6))

print()
print("Rescale x -> x, y -> t^6 y and divide by t^6 (the degree-1 transport")
print("with (a, b, c, d) = (0, 6, 2, 3), where the equation shift is -2d):")
f6 = substitute_monomial(g6, (0, 6, 0, 0), -6)
print("  ", to_text(f6))
print("   integral over the valuation ring:", is_integral(f6))

print()
print("The same rescaling applied the other way leaves the ring:")
laurent = substitute_monomial(g6, (0, -6, 0, 0), 6)
print("  ", to_text(laurent))
print("   integral:", is_integral(laurent))

print()
print("Derivatives stay exact, which the Jacobian criterion depends on:")
chart = parse_poly("w^2 + z^3 + x^5 + t^24 x", W1)
for var in ("t", "x", "z", "w"):
    print(f"   d/d{var}:", to_text(partial_derivative(chart, var)))
