"""The linear-system criterion: counting |n(-K) - F| and its base components.

Birational rigidity of these fibrations is conjecturally equivalent to every
system |n(-K) - F| being empty or carrying a base component.  The workbench
counts the systems exactly, extracts the common divisor of an explicit
spanning set, and compares the verdict against the classification.
"""

from dpfib.exactpoly import to_text
from dpfib.linsys import conjecture_status, fiber_h0, h0_double_cover_d2
from dpfib.model import StructureConstants
from dpfib.rigidity import classify

print("Fiberwise anticanonical dimensions (single del Pezzo fiber):")
print("   degree 1, n = 1, 2, 3, 6:", [fiber_h0(1, n) for n in (1, 2, 3, 6)])
print("   degree 2, n = 1, 2, 4:  ", [fiber_h0(2, n) for n in (1, 2, 4)])
print()

for sc in (
    StructureConstants.d2(1, 0, 0),    # non-rigid: free pencil of sections
    StructureConstants.d2(0, 0, 2),    # rigid-generic: z divides everything
    StructureConstants.d2(2, 0, 0),    # rigid: all systems empty
    StructureConstants.d1(0, 2, 2, 2), # non-rigid flop pair
    StructureConstants.d1(0, 0, 2, 4), # rigid
):
    statuses, verdict = conjecture_status(sc, n_max=4)
    print(f"constants {sc.as_tuple()} (degree {sc.degree}):")
    for status in statuses:
        comp = to_text(status.base_component) if status.base_component else "none"
        print(f"   n={status.n} h0={status.dim_h0} base_component={comp}")
    print("   criterion verdict:", verdict)
    print("   classification:   ", classify(sc).status)
    print()

print("Cross-check of the two counting engines on (a, n1, n2) = (0, 1, 1):")
sc = StructureConstants.d2(0, 1, 1)
for n in range(1, 4):
    k = -n * (sc.a + sc.b - 2) - 1
    print(f"   h0({n}H + {k}F) via double cover: {h0_double_cover_d2(sc, n, k)}")
