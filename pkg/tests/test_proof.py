import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperturan import (
    Hypergraph,
    HypothesisViolated,
    ParameterError,
    PreconditionError,
    PsiQuery,
    RepairFailed,
    SdrProblem,
    SearchLimitExceeded,
    StructureKind,
    StructureWitness,
    VertexSet,
    common_list_over_W,
    complete_hypergraph,
    compute_lists,
    cycle_in_full,
    expand_long_path,
    expand_witness,
    find_complete_partite,
    find_sdr,
    find_structure,
    full_subgraph,
    is_full,
    make_rng,
    psi_check,
    random_hypergraph,
    repair_minimal,
    sample_psi,
    sample_psi_rounds,
    shadow,
    verify_witness,
)
from hyperturan.core import bits, to_mask
from hyperturan.proof import complete_partite_edges, sparse_sequence
from hyperturan.structures import Family

from conftest import hg, vs, witness
from oracles import hall_systems, sdr_exists_brute


# --- lists ------------------------------------------------------------------------


def test_lists_examples():
    L = compute_lists(hg(6, "125", "236"), hg(6, "12", "23"))
    assert L.list_of(vs(6, 1, 2)) == vs(6, 5) and L.list_of(vs(6, 2, 3)) == vs(6, 6)
    K6 = complete_hypergraph(6, 3)
    assert compute_lists(K6, hg(6, "12")).list_of(vs(6, 1, 2)) == vs(6, 3, 4, 5, 6)
    L = compute_lists(hg(6, "123", "234"), hg(6, "12", "23", "34"))
    assert len(L.list_of(vs(6, 1, 2))) == 0


def test_lists_expanded_edges():
    H = random_hypergraph(9, 3, 0.5, 3)
    G = shadow(H).masks[:5]
    L = compute_lists(H, Hypergraph.from_masks(9, 2, G))
    vg = to_mask(v for e in G for v in bits(e))
    expected = {e for e in H.masks if any(e & g == g and not (e & ~g) & vg for g in G)}
    assert set(L.expanded_edges().masks) == expected


def test_lists_require_shadow_edges():
    with pytest.raises(PreconditionError, match=r"\(0, 3\)"):
        compute_lists(hg(6, "123"), hg(6, "12", "14"))


# --- SDR --------------------------------------------------------------------------


def test_sdr_examples():
    assert find_sdr([{0, 1}, {1, 2}, {2, 0}]) == (0, 1, 2)
    assert find_sdr([{0}, {0}]) is None
    a, b, c, d, e, f, g, h = range(8)
    prob = SdrProblem(({a, b, c}, {d, e, f}, {g, h}, {g, h}, {g, h}), p=2, q=5)
    assert find_sdr(prob) is None


@settings(max_examples=300, deadline=None)
@given(st.lists(st.sets(st.integers(0, 7), max_size=8), min_size=1, max_size=6))
def test_sdr_matches_exhaustive_search(sets):
    reps = find_sdr(sets)
    assert (reps is not None) == sdr_exists_brute(sets)
    if reps is not None:
        assert len(set(reps)) == len(reps) and all(x in s for x, s in zip(reps, sets))


@pytest.mark.parametrize("p", [1, 2, 3])
def test_hall_exception_family(p):
    seen = set()
    for sets in hall_systems(p):
        tail = sets[p:]
        exception = len(sets) == 2 * p + 1 and len(set(tail)) == 1 and len(tail[0]) == p
        assert (find_sdr(sets) is None) == exception
        seen.add(exception)
    assert seen == {True, False}


# --- expansion ----------------------------------------------------------------------


def test_expand_examples():
    w = witness(6, "linear-path", ["12", "23"], [2])
    out = expand_witness(hg(6, "125", "236"), w)
    assert [e.members for e in out.edges] == [(0, 1, 4), (1, 2, 5)]
    assert expand_witness(hg(6, "125", "235"), w) is None


def test_expand_rejects_non_shadow_witness():
    w = witness(6, "linear-path", ["12", "34"], [2])
    with pytest.raises(PreconditionError):
        expand_witness(hg(6, "125", "236"), w)
    with pytest.raises(PreconditionError):
        expand_witness(hg(6, "125", "235"), witness(6, "minimal-path", ["12", "23"], [2]))


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([("linear-path", 2), ("linear-path", 3), ("linear-cycle", 3),
                                               ("linear-path", 4), ("linear-cycle", 4)]))
def test_expansion_verifies_whenever_sdr_exists(seed, kind):
    H = random_hypergraph(10, 3, 0.5, seed)
    sw = find_structure(shadow(H), StructureKind(Family(kind[0]), kind[1]))
    if sw is None:
        return
    G = Hypergraph.from_masks(H.n, 2, (e.mask for e in sw.edges))
    lists = compute_lists(H, G)
    reps = find_sdr([lists.lists[e.mask] for e in sw.edges])
    out = expand_witness(H, sw)
    assert (out is None) == (reps is None)
    if out is not None:
        assert verify_witness(H, out)
        added = [(f.mask & ~e.mask).bit_length() - 1 for e, f in zip(sw.edges, out.edges)]
        assert len(set(added)) == len(added)
        assert not any(G.vertex_mask >> x & 1 for x in added)


def shadow_path_host(length, r, lists):
    """A linear path of (r-1)-sets plus, for each edge, the edges through its colours."""
    step = r - 2
    path = [list(range(i * step, i * step + r - 1)) for i in range(length)]
    base = length * step + 1
    n = base + max(max(c) for c in lists) + 1
    edges = {to_mask(e + [base + c]) for e, cs in zip(path, lists) for c in cs}
    H = Hypergraph.from_masks(n, r, edges)
    kind = StructureKind(Family.LINEAR_PATH, length)
    P = StructureWitness(kind, tuple(VertexSet.of(n, e) for e in path),
                         tuple(i * step + step for i in range(length - 1)))
    return H, P, base


def test_long_path_example():
    H, P, base = shadow_path_host(8, 3, [[0, 1]] * 8)
    A, B = base, base + 1
    w = expand_long_path(H, P, 4)
    e = [p.mask for p in P.edges]
    assert [x.mask for x in w.edges] == [e[0] | 1 << A, e[2] | 1 << A, e[3] | 1 << B, e[5] | 1 << B]


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([(3, 3), (4, 3), (5, 3), (6, 3), (4, 4), (5, 4)]))
def test_long_path_on_random_lists(seed, case):
    k, r = case
    ell = (k - 1) // 2
    length = 2 ** (2 * ell + 1)
    rng = make_rng(seed)
    pool = ell + 1 + int(rng.integers(0, 4))
    lists = [sorted(rng.choice(pool, size=ell + 1, replace=False).tolist()) for _ in range(length)]
    H, P, _ = shadow_path_host(length, r, lists)
    w = expand_long_path(H, P, k)
    assert verify_witness(H, w) and w.kind.k == k
    assert w.edges[0].mask & P.edges[0].mask == P.edges[0].mask


def test_long_path_with_disjoint_lists():
    lists = [[2 * i, 2 * i + 1] for i in range(8)]
    H, P, _ = shadow_path_host(8, 3, lists)
    assert verify_witness(H, expand_long_path(H, P, 4))


def test_long_path_preconditions():
    H, P, _ = shadow_path_host(8, 3, [[0]] * 8)
    with pytest.raises(PreconditionError, match="colours"):
        expand_long_path(H, P, 4)
    H, P, _ = shadow_path_host(7, 3, [[0, 1]] * 7)
    with pytest.raises(PreconditionError, match="need at least 8"):
        expand_long_path(H, P, 4)


# --- full subgraphs and cycles --------------------------------------------------------


def test_full_subgraph_examples():
    K5 = complete_hypergraph(5, 3)
    assert full_subgraph(K5, 2) == K5
    assert len(full_subgraph(hg(5, "123", "345"), 1)) == 0
    assert [s.members for s in sparse_sequence(hg(5, "123", "345"), 1)] == [(0, 1), (2, 3)]
    with pytest.raises(ParameterError):
        full_subgraph(K5, 0)


@pytest.mark.parametrize("seed", range(40))
def test_full_subgraph_properties(seed):
    rng = make_rng(seed)
    n = int(rng.integers(6, 21))
    H = random_hypergraph(n, 3, float(rng.choice([0.1, 0.3])), seed)
    for d in (1, 2, 3):
        F = full_subgraph(H, d)
        assert is_full(F, d + 1)
        assert len(F) >= len(H) - d * len(shadow(H))
        assert set(F.masks) <= set(H.masks)


@pytest.mark.parametrize("n, k", [(11, 3), (14, 4), (17, 5)])
def test_cycle_in_complete_hosts(n, k):
    K = complete_hypergraph(n, 3)
    w = cycle_in_full(K, k)
    assert verify_witness(K, w) and w.kind == StructureKind(Family.LINEAR_CYCLE, k)


def test_cycle_in_full_needs_fullness():
    with pytest.raises(PreconditionError, match="9-full"):
        cycle_in_full(hg(3, "123"), 3)
    with pytest.raises(PreconditionError, match="non-empty"):
        cycle_in_full(Hypergraph(5, 3), 3)


def test_cycle_in_full_on_four_uniform_host():
    K = complete_hypergraph(15, 4)
    assert is_full(K, 12)
    assert verify_witness(K, cycle_in_full(K, 3))


# --- superfull hosts -------------------------------------------------------------------


def test_repair_examples():
    K = complete_hypergraph(12, 3)
    lin = find_structure(K, StructureKind(Family.LINEAR_CYCLE, 3))
    assert repair_minimal(K, lin, 1, 9) == lin
    w = witness(12, "minimal-cycle", ["123", "234", "451"], [2, 4, 1])
    out = repair_minimal(K, w, 1, 9)
    assert out.kind.family is Family.LINEAR_CYCLE and verify_witness(K, out)


def test_repair_fails_on_tiny_host():
    K5 = complete_hypergraph(5, 3)
    w = witness(5, "minimal-cycle", ["123", "234", "451"], [2, 4, 1])
    with pytest.raises(RepairFailed):
        repair_minimal(K5, w, 1, 2)


def test_repair_checks_preconditions():
    with pytest.raises(PreconditionError):
        repair_minimal(complete_hypergraph(5, 3), witness(5, "minimal-cycle", ["123", "234", "451"], [2, 4, 1]), 1, 9)


def superfull_host(base, hubs, extra=10):
    """Embed 1-based ``base`` edges (each containing a hub) in a superfull host."""
    X = list(range(10, 10 + extra))
    edges = {to_mask(v - 1 for v in e) for e in base}
    for e in base:
        h = next(v - 1 for v in e if v in hubs)
        for a in (v - 1 for v in e if v - 1 != h):
            edges.update(to_mask([a, h, x]) for x in X)
    for h in (v - 1 for v in hubs):
        edges.update(to_mask([h, x, y]) for x, y in itertools.combinations(X, 2))
    return Hypergraph.from_masks(10 + extra, 3, edges)


W = [1, 2, 3, 4, 5]


def test_common_list_found():
    H = superfull_host([(a, b, 9) for a, b in itertools.combinations(W, 2)], {9})
    res = common_list_over_W(H, vs(20, *W), 1, 9)
    assert res and res.common == vs(20, 9)


def test_common_list_codegree_violation():
    base = [(a, b, 9) for a, b in itertools.combinations(W, 2)] + [(1, 2, 8)]
    H = superfull_host(base, {8, 9})
    with pytest.raises(HypothesisViolated, match="codegree 2"):
        common_list_over_W(H, vs(20, *W), 1, 9)


def test_common_list_mismatch():
    base = [(1, 2, 8)] + [(a, b, 9) for a, b in itertools.combinations(W, 2) if (a, b) != (1, 2)]
    H = superfull_host(base, {8, 9})
    res = common_list_over_W(H, vs(20, *W), 1, 9)
    assert not res and res.mismatch == (vs(20, 1, 2), vs(20, 1, 3))


# --- complete partite graphs and sampling ---------------------------------------------------


def test_psi_examples():
    K12 = complete_hypergraph(12, 3)
    G = hg(12, "13", "14", "23", "24")
    assert psi_check(K12, PsiQuery(2, 4, G))
    assert not psi_check(complete_hypergraph(5, 3), PsiQuery(2, 4, hg(5, "13", "14", "23", "24")))
    assert not psi_check(K12, PsiQuery(2, 5, G))  # pair codegree 10 < 16


def test_psi_condition_b_satisfiable():
    K20 = complete_hypergraph(20, 3)
    assert psi_check(K20, PsiQuery(2, 5, hg(20, "13", "14", "23", "24")))


def test_psi_rejects_malformed_g():
    K12 = complete_hypergraph(12, 3)
    with pytest.raises(PreconditionError):
        psi_check(K12, PsiQuery(2, 4, hg(12, "13", "14", "23")))
    with pytest.raises(PreconditionError):
        psi_check(K12, PsiQuery(3, 4, hg(12, "13", "14", "23", "24")))


def test_complete_partite_examples():
    C4 = hg(4, "12", "23", "34", "14")
    assert find_complete_partite(C4, 2) == (vs(4, 1, 3), vs(4, 2, 4))
    assert find_complete_partite(hg(3, "12", "23", "13"), 2) is None
    blocks = [range(0, 3), range(3, 6), range(6, 9)]
    cross = [to_mask([a, b]) for x, y in itertools.combinations(blocks, 2) for a in x for b in y]
    G = Hypergraph.from_masks(9, 2, cross)  # shadow of K_9 restricted to a 3-partition
    assert len(G) == 27 and set(G.masks) <= set(shadow(complete_hypergraph(9, 3)).masks)
    found = find_complete_partite(G, 3)
    assert found is not None and len(found) == 2
    assert set(complete_partite_edges(9, found).masks) <= set(G.masks)


def test_complete_partite_three_uniform():
    G = complete_partite_edges(9, parts := [vs(9, 1, 2), vs(9, 3, 4), vs(9, 5, 6)])
    found = find_complete_partite(G, 2)
    assert found == tuple(parts)
    assert find_complete_partite(G, 3) is None


def test_complete_partite_budget():
    with pytest.raises(SearchLimitExceeded):
        find_complete_partite(shadow(complete_hypergraph(12, 3)), 3, node_limit=2)


def test_sampling_examples():
    assert sample_psi(Hypergraph(10, 3), [], 4, 2, 1) is None
    K30 = complete_hypergraph(30, 3)
    E = shadow(K30).masks
    assert sample_psi(K30, E, 4, 2, 5) == sample_psi(K30, E, 4, 2, 5)
    hits = [s for s in (sample_psi(K30, E, 4, 2, seed) for seed in range(20)) if s is not None]
    assert hits and all(psi_check(K30, PsiQuery(2, 4, s.G, s.parts)) for s in hits)


def test_sampling_odd_k_uses_witness_edges():
    K30 = complete_hypergraph(30, 3)
    res = sample_psi_rounds(K30, shadow(K30).masks, 5, 2, 0)
    assert res is not None and psi_check(K30, PsiQuery(2, 5, res.G))


def test_sampling_preconditions():
    with pytest.raises(PreconditionError):
        sample_psi(hg(6, "123"), [to_mask([0, 1])], 4, 2, 0)


def test_sampling_rounds_are_reproducible():
    K12 = complete_hypergraph(12, 3)
    E = shadow(K12).masks
    a = sample_psi_rounds(K12, E, 4, 3, 17)
    b = sample_psi_rounds(K12, E, 4, 3, 17)
    assert a == b
