#!/usr/bin/env python3
"""Star constructions, their sizes, and how close they sit to the leading term.

Run: python3 demos/constructions_tour.py
"""

from fractions import Fraction
from math import comb

from hyperturan import (
    ConstructionSpec,
    StructureKind,
    extremal_candidate,
    find_structure,
    star_construction,
    turan_value_formula,
)
from hyperturan.constructions import TARGET_FAMILY, extra_variant
from hyperturan.structures import Family

# A star on a core L keeps every 3-set that touches L.
S = star_construction(10, 3, [0, 1])
print(f"star on a 2-vertex core in [10]: {len(S)} triples, C(10,3) - C(8,3) = {comb(10, 3) - comb(8, 3)}")

# Even k adds a small family inside the complement of the core.
print("\n n  k  target          core  extra            size  formula")
for n, k, target in [(12, 4, "path"), (12, 4, "cycle"), (12, 4, "minimal-cycle"),
                     (12, 5, "path"), (12, 6, "cycle"), (14, 6, "minimal-cycle")]:
    spec = ConstructionSpec(n, 3, k, target)
    H = extremal_candidate(spec)
    value = turan_value_formula(n, 3, k, target).value
    print(f"{n:2d} {k:2d}  {target:14s}  {spec.ell:4d}  {str(extra_variant(spec)):15s} {len(H):5d}  {value:7d}")

# The exhaustive detector confirms the forbidden structure is missing.
for k, target in [(4, "cycle"), (5, "minimal-cycle")]:
    H = extremal_candidate(ConstructionSpec(11, 3, k, target))
    hit = find_structure(H, StructureKind(Family(TARGET_FAMILY[target]), k))
    print(f"\nK-free check, n=11 k={k} {target}: {'absent' if hit is None else hit}")

# Leading term: the k=5 path value over 2 * C(n, 2).
print("\n    n   ratio")
for n in (20, 50, 200, 2000, 20000):
    ratio = Fraction(turan_value_formula(n, 3, 5, "path").value, 2 * comb(n, 2))
    print(f"{n:5d}   {float(ratio):.5f}")
