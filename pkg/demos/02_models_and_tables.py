"""Fibration models, their discrete invariants, and intersection tables.

A degree-1 or degree-2 del Pezzo fibration over P^1 is pinned down (up to
moduli) by a handful of integers: the splitting type of a direct-image
bundle.  From those constants the whole intersection lattice follows in
closed form.
"""

from dpfib.intersect import intersection_table, k2_condition
from dpfib.model import (
    StructureConstants,
    ambient_data,
    catalog_model,
    infer_constants,
    normal_bundle_of_section,
    serialize_model,
    validate,
)

for sc in (
    StructureConstants.d1(0, 2, 2, 2),
    StructureConstants.d1(0, 0, 1, 2),
    StructureConstants.d2(1, 0, 0),
    StructureConstants.d2(-1, 2, 3),
):
    print(f"constants {sc.as_tuple()} (degree {sc.degree})")
    data = ambient_data(sc)
    print("   splitting:", data.splitting, " branch class R ~", data.r_class)
    if sc.degree == 1:
        print("   normal bundle of the base-point section:",
              normal_bundle_of_section(sc))
    for row in intersection_table(sc).rows():
        print("  ", row)
    print("   K^2-condition:", k2_condition(sc))
    print()

print("Each constants tuple also has a generic hypersurface model over P^1;")
print("reading the constants back off its twists is the identity:")
sc = StructureConstants.d2(1, 0, 0)
mdl = catalog_model(sc)
print("   twists:", mdl.twists.as_tuple(), "-> inferred", infer_constants(mdl).as_tuple())
print("   validation:", "valid" if validate(mdl).is_valid else "invalid")
print()
print("Model file form (first lines):")
for line in serialize_model(mdl).splitlines()[:6]:
    print("  ", line)
