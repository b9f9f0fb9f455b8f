#!/usr/bin/env python3
"""From structures in the shadow to structures in the host.

A path in the shadow lifts to the host when its edge lists have distinct
representatives. Full subgraphs guarantee long lists, and random sampling
finds complete bipartite pieces of the shadow with the same property.

Run: python3 demos/shadow_to_host.py
"""

from hyperturan import (
    Hypergraph,
    PsiQuery,
    StructureKind,
    complete_hypergraph,
    compute_lists,
    cycle_in_full,
    expand_witness,
    find_sdr,
    find_structure,
    full_subgraph,
    is_full,
    psi_check,
    random_hypergraph,
    sample_psi_rounds,
    shadow,
)
from hyperturan.structures import Family


def show(w):
    return " | ".join(" ".join(str(v + 1) for v in e.members) for e in w.edges)


H = random_hypergraph(10, 3, 0.35, seed=4)
dH = shadow(H)
print(f"host: {len(H)} triples on 10 vertices, shadow has {len(dH)} pairs")

for k in (4, 3, 2):
    sw = find_structure(dH, StructureKind(Family.LINEAR_PATH, k))
    if sw is not None:
        break
print(f"shadow path of length {k}: {show(sw)}")

G = Hypergraph.from_masks(10, 2, (e.mask for e in sw.edges))
lists = compute_lists(H, G)
for e in sw.edges:
    print(f"  list of {[v + 1 for v in e.members]}: {[v + 1 for v in lists.list_of(e).members]}")
reps = find_sdr([lists.lists[e.mask] for e in sw.edges])
print("representatives:", None if reps is None else [v + 1 for v in reps])
lifted = expand_witness(H, sw)
print("lifted path:", "none" if lifted is None else show(lifted))

# Peeling low-codegree pairs leaves a subgraph where every pair has many extensions.
dense = random_hypergraph(16, 3, 0.4, seed=11)
for d in (1, 2, 3, 4):
    F = full_subgraph(dense, d)
    print(f"d={d}: kept {len(F)} of {len(dense)} triples, {d + 1}-full: {bool(is_full(F, d + 1))}")

# In a full host a linear cycle can be grown directly.
K = complete_hypergraph(14, 3)
print("\n4-cycle grown in K_14:", show(cycle_in_full(K, 4)))

# Sampling: a complete bipartite piece of the shadow whose lists behave well.
K30 = complete_hypergraph(30, 3)
res = sample_psi_rounds(K30, shadow(K30).masks, 4, 2, seed=1)
parts = [[v + 1 for v in p.members] for p in res.parts]
print(f"\nK_30: sample round {res.round} found parts {parts}, check passes: {psi_check(K30, PsiQuery(2, 4, res.G, res.parts))}")
