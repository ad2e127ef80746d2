"""Fiber transformations between germs and the forced-singularity theorem.

Two germs related by a diagonal t-power map over the same base cannot both
be smooth unless the map is trivial.  The workbench solves the exponent
constraint system, transports coefficients, and confirms the forced singular
point by exact Jacobian evaluation.
"""

from dpfib.exactpoly import to_text
from dpfib.fibertrans import (
    Substitution,
    find_isomorphism,
    preserves_equation,
    solve_constraints,
    transport,
    uniqueness_check,
)
from dpfib.model import germ_model

print("Degree 1, the smooth-target pair:")
U = germ_model(1, "w^2 + z^3 + x y^5 + x^5 y")
mm = solve_constraints(1, (0, 6, 2, 3))
print("   map forward", mm.forward, "backward", mm.backward, "m =", mm.m)
result = transport(mm, U)
print("   transported V:", to_text(result.equation))
print("   forced singularity:", result.forced_singularity)
V = result.source_model
print("   verdict:", uniqueness_check(V, U, mm).verdict)
print()

print("Degree 2, the automorphism pair (both sides forced singular):")
V2 = germ_model(2, "w^2 + y z^3 + x^4 + t^2 y^3 z")
U2 = germ_model(2, "w^2 + y^3 z + x^4 + t^2 y z^3")
mm2 = solve_constraints(2, (1, 2, 0, 2))
res = uniqueness_check(V2, U2, mm2)
print("   verdict:", res.verdict)
print("   V singular at", res.forward.forced_singularity,
      "; U singular at", res.backward.forced_singularity)
print()

print("Degree 1, the automorphism pair: the diagonal map alone does not")
print("relate the models, but a permutation-composed substitution does:")
Va = germ_model(1, "w^2 + z^3 + x y^5 + t^4 x^5 y")
Ua = germ_model(1, "w^2 + z^3 + x^5 y + t^4 x y^5")
bad = transport(solve_constraints(1, (1, 0, 2, 3)), Ua)
print("   diagonal transport integral:", bad.integral)
sub = Substitution(("y", "x", "z", "w"), (-1, 1, 0, 0))
print("   x -> t^-1 y, y -> t x preserves V's equation:",
      preserves_equation(sub, Va))
iso = find_isomorphism(Va, Ua)
print("   biregular identification found:", iso.describe())
