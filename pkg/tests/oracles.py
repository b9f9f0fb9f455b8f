"""Brute-force references that share no search code with the library."""

import itertools
from math import comb

import numpy as np

from hyperturan import StructureKind, min_vertices
from hyperturan.core import to_mask
from hyperturan.structures import Family, check_pattern


def _connector_count(kind):
    if kind.is_cycle:
        return kind.k
    if kind.style == "berge":
        return kind.k + 1
    return kind.k - 1


def _required(kind, i, conns):
    """Connectors that edge ``i`` must contain."""
    k = kind.k
    if kind.is_cycle:
        return conns[i - 1], conns[i]  # c_{i-1} in e_{i-1} & e_i, with c_{-1} = c_{k-1}
    if kind.style == "berge":
        return conns[i], conns[i + 1]
    return tuple(conns[j] for j in (i - 1, i) if 0 <= j < k - 1)


def _berge_orderings(edges, kind):
    """Candidate (edge order, connectors) pairs for a Berge copy on ``edges``."""

    def path(order, conns, left):
        if not left:
            yield order, conns
        for e in left:
            if conns[-1] in e:
                for v in e:
                    if v not in conns:
                        yield from path(order + [e], conns + [v], [f for f in left if f != e])

    def cycle(order, conns, left, a):
        if not left:
            if a in order[-1] and a not in conns:
                yield order, conns + [a]
            return
        for e in left:
            if conns[-1] not in e:
                continue
            rest = [f for f in left if f != e]
            if not rest:
                yield from cycle(order + [e], conns, rest, a)
            for v in e:
                if rest and v not in conns and v != a:
                    yield from cycle(order + [e], conns + [v], rest, a)

    if kind.is_cycle:
        first, rest = edges[0], edges[1:]
        for a in first:
            for c0 in first:
                if c0 != a:
                    yield from cycle([first], [c0], rest, a)
    else:
        for first in edges:
            rest = [f for f in edges if f != first]
            for a, b in itertools.permutations(first, 2):
                yield from path([first], [a, b], rest)


def _is_berge_copy(masks, kind):
    sets = [tuple(v for v in range(m.bit_length()) if m >> v & 1) for m in masks]
    back = dict(zip(sets, masks))
    return any(check_pattern([back[e] for e in order], conns, kind)
               for order, conns in _berge_orderings(sets, kind))


def structure_copies(n, r, kind):
    """Every copy of ``kind`` in the complete r-graph, as frozensets of r-set masks.

    Linear and minimal kinds: connector sequences are enumerated first
    (cycles start at their smallest connector), then every choice of r-sets
    containing the required connectors is checked with ``check_pattern``.
    Berge kinds: every k-set of r-sets is tried in every order.
    """
    cands = [to_mask(c) for c in itertools.combinations(range(n), r)]
    copies = set()
    if kind.k == 1 and kind.style != "berge":
        return {frozenset([c]) for c in cands}
    if kind.style == "berge":
        return {frozenset(S) for S in itertools.combinations(cands, kind.k) if _is_berge_copy(S, kind)}
    for conns in itertools.permutations(range(n), _connector_count(kind)):
        if kind.is_cycle and conns[0] != min(conns):
            continue
        pools = []
        for i in range(kind.k):
            need = to_mask(_required(kind, i, conns))
            pools.append([c for c in cands if c & need == need])
        for edges in itertools.product(*pools):
            if len(set(edges)) == kind.k and check_pattern(list(edges), list(conns), kind):
                copies.add(frozenset(edges))
    return copies


def brute_force_ex(n, r, kind):
    """Largest family of r-subsets of [n] containing no copy of ``kind``."""
    cands = [to_mask(c) for c in itertools.combinations(range(n), r)]
    M = len(cands)
    index = {c: i for i, c in enumerate(cands)}
    bad = np.zeros(1 << M, dtype=bool)
    for copy in structure_copies(n, r, kind):
        bad[sum(1 << index[c] for c in copy)] = True
    # superset closure: a family is bad when it contains a copy
    for i in range(M):
        view = bad.reshape(-1, 2, 1 << i)
        view[:, 1, :] |= view[:, 0, :]
    pop = np.zeros(1 << M, dtype=np.int8)
    for i in range(M):
        view = pop.reshape(-1, 2, 1 << i)
        view[:, 1, :] += 1
    return int(pop[~bad].max())


def oracle_grid(max_candidates=24):
    """(n, r, kind) with at most ``max_candidates`` r-sets and an embeddable kind."""
    out = []
    for n in range(2, 9):
        for r in range(2, n + 1):
            if comb(n, r) > max_candidates:
                continue
            for fam in Family:
                for k in range(1, comb(n, r) + 1):
                    try:
                        kind = StructureKind(fam, k)
                    except ValueError:
                        continue
                    if min_vertices(kind, r) <= n:
                        out.append((n, r, kind))
    return out


def sdr_exists_brute(sets):
    return any(len(set(c)) == len(c) for c in itertools.product(*sets))


def hall_systems(p):
    """Set systems over {0..6} for the Hall-type exception check.

    p = 1 is exhaustive; for p = 2, 3 the first set is fixed by symmetry and
    all sets take the boundary sizes (p + 1 for the first p, p or p + 1 after).
    """
    U = range(7)

    def subsets(pool, sizes):
        return [frozenset(c) for s in sizes for c in itertools.combinations(sorted(pool), s)]

    for q in (2 * p, 2 * p + 1):
        if p == 1:
            heads_iter = ([h] for h in subsets(U, range(2, 8)))
            tail_sizes = range(1, 8)
        else:
            first = frozenset(range(p + 1))
            heads_iter = ([first] + list(rest)
                          for rest in itertools.product(subsets(U, [p + 1]), repeat=p - 1))
            tail_sizes = [p, p + 1]
        for heads in heads_iter:
            used = frozenset().union(*heads)
            near = subsets(U, tail_sizes)
            far = subsets(set(U) - used, tail_sizes)
            for s_next in near:
                for rest in itertools.product(far, repeat=q - p - 1):
                    yield heads + [s_next] + list(rest)
