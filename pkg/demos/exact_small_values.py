#!/usr/bin/env python3
"""Exact extremal numbers for tiny parameters, set beside the closed forms.

Run: python3 demos/exact_small_values.py
"""

import time

from hyperturan import SolveConfig, StructureKind, compare_with_formula, format_hg, solve_exact
from hyperturan.structures import Family

# Graph paths: k = 2 forbids two edges sharing a vertex, so the answer is a matching.
for n, k in [(4, 2), (6, 3), (7, 3)]:
    res = solve_exact(SolveConfig(n, 2, StructureKind(Family.LINEAR_PATH, k)))
    print(f"ex_2({n}, P_{k}) = {res.value}  [{res.status}, {res.nodes_explored} nodes]")

# Triangles in 3-graphs: the optimum at n = 6 is a star.
res = solve_exact(SolveConfig(6, 3, StructureKind(Family.LINEAR_CYCLE, 3)))
print("\nan extremal linear-triangle-free family on 6 vertices:")
print(format_hg(res.witness_family, "optimal"))

# Berge, linear and minimal triangles give different answers.
for fam in (Family.BERGE_CYCLE, Family.LINEAR_CYCLE, Family.MINIMAL_CYCLE):
    t0 = time.perf_counter()
    res = solve_exact(SolveConfig(6, 3, StructureKind(fam, 3), symmetry_breaking=True))
    print(f"ex_3(6, {fam.value} k=3) = {res.value}  ({time.perf_counter() - t0:.2f}s)")

# Closed form versus search, including cases below the threshold.
print("\n n  r  k  target          solver  formula  agree  note")
for n, r, k, target in [(6, 3, 3, "minimal-cycle"), (6, 3, 3, "cycle"), (7, 3, 4, "cycle"), (6, 2, 3, "path")]:
    c = compare_with_formula(n, r, k, target)
    shown = "-" if c.formula is None else c.formula.value
    print(f"{n:2d} {r:2d} {k:2d}  {target:14s}  {c.solver.value:6d}  {shown!s:>7}  {c.agree!s:5}  {c.note or ''}")

# With a node budget the search reports a bracket instead of an answer.
res = solve_exact(SolveConfig(8, 3, StructureKind(Family.MINIMAL_CYCLE, 4), node_limit=3000))
print(f"\nn=8 minimal 4-cycle with 3000 nodes: {res.status}, {res.lower_bound} <= ex <= {res.upper_bound}")
