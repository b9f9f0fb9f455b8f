"""Constructive steps for lifting shadow structures into the host.

Each function turns an existence argument into an algorithm that either
returns a witness verified against the host or fails loudly.  Lists
(``compute_lists``) assign to every (r-1)-set of a shadow subgraph ``G``
the vertices outside ``V(G)`` that extend it to an edge of the host.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Sequence

import numpy as np

from .constructions import core_size
from .core import (
    Hypergraph,
    VertexSet,
    bits,
    is_full,
    is_superfull,
    iter_bits,
    lex_key,
    make_rng,
    shadow,
    subsets_of_size,
    to_mask,
)
from .errors import (
    HypothesisViolated,
    ParameterError,
    PreconditionError,
    RepairFailed,
    SearchLimitExceeded,
)
from .structures import (
    Family,
    StructureKind,
    StructureWitness,
    check_pattern,
    default_connectors,
    verify_witness,
)


def _low(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


# --- lists --------------------------------------------------------------------


@dataclass(frozen=True)
class ListAssignment:
    """Lists of the edges of a shadow subgraph ``G`` relative to ``host``."""

    host: Hypergraph
    G: Hypergraph
    lists: Mapping[int, int]  # edge mask of G -> mask of colours

    def list_of(self, e) -> VertexSet:
        m = e.mask if isinstance(e, VertexSet) else e
        return VertexSet(self.host.n, self.lists[m])

    @property
    def colours(self) -> VertexSet:
        out = 0
        for c in self.lists.values():
            out |= c
        return VertexSet(self.host.n, out)

    def expanded_edges(self) -> Hypergraph:
        """All ``e + x`` with ``e`` in ``G`` and ``x`` in the list of ``e``."""
        out = [e | 1 << x for e, c in self.lists.items() for x in iter_bits(c)]
        return Hypergraph.from_masks(self.host.n, self.host.r, out)


def _neighbourhood_mask(H: Hypergraph, sub: int) -> int:
    out = 0
    for v in range(H.n):
        if not sub >> v & 1 and (sub | 1 << v) in H.mask_set:
            out |= 1 << v
    return out


def compute_lists(H: Hypergraph, G: Hypergraph) -> ListAssignment:
    """Lists ``N_H(e) - V(G)`` for every edge ``e`` of ``G``.

    Raises PreconditionError if some edge of ``G`` is not a sub-edge of ``H``.
    """
    if G.n != H.n or G.r != H.r - 1:
        raise PreconditionError(f"G must be an ({H.r - 1})-graph on {H.n} vertices")
    table = H.subedge_codegrees
    for e in G.masks:
        if e not in table:
            raise PreconditionError(f"edge {bits(e)} of G is not a sub-edge of the host")
    vg = G.vertex_mask
    lists = {e: _neighbourhood_mask(H, e) & ~vg for e in G.masks}
    return ListAssignment(H, G, lists)


# --- systems of distinct representatives ----------------------------------------


@dataclass(frozen=True)
class SdrProblem:
    """Sets ``S_1..S_q`` (as bitmasks or iterables) with optional structure hints."""

    sets: tuple
    p: Optional[int] = None
    q: Optional[int] = None

    def __post_init__(self):
        if len(self.sets) < 1:
            raise ParameterError("an SDR problem needs at least one set")

    def masks(self) -> list[int]:
        out = []
        for s in self.sets:
            if isinstance(s, VertexSet):
                out.append(s.mask)
            elif isinstance(s, int):
                out.append(s)
            else:
                out.append(to_mask(s))
        return out


def find_sdr(prob) -> Optional[tuple[int, ...]]:
    """Distinct representatives ``x_i in S_i`` or None when Hall's condition fails.

    Augmenting-path bipartite matching, trying elements in increasing order,
    so the answer is deterministic.  Accepts an :class:`SdrProblem` or a plain
    sequence of sets.
    """
    sets = prob.masks() if isinstance(prob, SdrProblem) else SdrProblem(tuple(prob)).masks()
    owner: dict[int, int] = {}

    def augment(i: int, seen: set) -> bool:
        # a free element beats any augmenting path
        for x in iter_bits(sets[i]):
            if x not in owner:
                seen.add(x)
                owner[x] = i
                return True
        for x in iter_bits(sets[i]):
            if x in seen:
                continue
            seen.add(x)
            if x not in owner or augment(owner[x], seen):
                owner[x] = i
                return True
        return False

    for i in range(len(sets)):
        if not augment(i, set()):
            return None
    reps = [0] * len(sets)
    for x, i in owner.items():
        reps[i] = x
    return tuple(reps)


# --- expansion ------------------------------------------------------------------


def expand_witness(H: Hypergraph, shadow_w: StructureWitness) -> Optional[StructureWitness]:
    """Lift a linear path or cycle of the shadow of ``H`` into ``H``.

    Each shadow edge ``e`` becomes ``e + x_e`` where the ``x_e`` form an SDR
    of the lists; None when no SDR exists.
    """
    if shadow_w.kind.family not in (Family.LINEAR_PATH, Family.LINEAR_CYCLE):
        raise PreconditionError("expansion needs a linear path or cycle in the shadow")
    sh = shadow(H, 1)
    if not verify_witness(sh, shadow_w):
        raise PreconditionError(
            f"witness is not a {shadow_w.kind} in the shadow: {verify_witness(sh, shadow_w).reason}"
        )
    G = Hypergraph.from_masks(H.n, H.r - 1, (e.mask for e in shadow_w.edges))
    lists = compute_lists(H, G)
    order = [e.mask for e in shadow_w.edges]
    reps = find_sdr([lists.lists[e] for e in order])
    if reps is None:
        return None
    edges = tuple(VertexSet(H.n, e | 1 << x) for e, x in zip(order, reps))
    out = StructureWitness(shadow_w.kind, edges, shadow_w.connectors)
    assert verify_witness(H, out), "expanded witness failed verification"
    return out


def _pick_distinct(a: int, b: int) -> Optional[tuple[int, int]]:
    for x in iter_bits(a):
        for y in iter_bits(b):
            if x != y:
                return x, y
    return None


def _long_path_even(P: Sequence[int], L: list[int], k: int) -> list[tuple[int, int]]:
    """A k-path (k even) in the expansion of ``P`` whose first edge extends ``P[0]``.

    ``P`` is a linear path of (r-1)-sets with ``len(P) >= 2**(k-1)`` and
    ``L[i]`` the colour mask of ``P[i]``, each of size at least ``k/2``.
    Returns ``(index into P, colour)`` pairs in path order.
    """
    N = len(P)
    if k == 4:
        hits = [i for i in range(2, N) if L[0] & L[i]]
        if hits:
            i = hits[0]
            alpha = _low(L[0] & L[i])
            step = 1 if i + 3 <= N - 1 else -1
            f, g, h = i + step, i + 2 * step, i + 3 * step
            without = [c & ~(1 << alpha) for c in L]
            pair = _pick_distinct(without[f], without[g])
            if pair:
                beta, gamma = pair
                return [(0, alpha), (i, alpha), (f, beta), (g, gamma)]
            # L[f] == L[g] == {alpha, alpha'}; repeat with f in place of i
            pair = _pick_distinct(without[g], without[h])
            if pair:
                beta, gamma = pair
                return [(0, alpha), (f, alpha), (g, beta), (h, gamma)]
            alpha2 = _low(without[f])
            return [(0, alpha), (i, alpha), (f, alpha2), (h, alpha2)]
        if L[0] & L[1]:
            beta = _low(L[0] & L[1])
            alpha = _low(L[0] & ~(1 << beta))
            gamma, delta = _pick_distinct(L[2], L[3])
            return [(0, alpha), (1, beta), (2, gamma), (3, delta)]
        alpha = _low(L[0])
        if L[1] & L[3]:
            gamma = _low(L[1] & L[3])
            lam = _low(L[4] & ~(1 << gamma))
            return [(0, alpha), (1, gamma), (3, gamma), (4, lam)]
        reps = find_sdr([L[1], L[2], L[3]])
        assert reps is not None, "three lists of size >= 2 with L1, L3 disjoint always have an SDR"
        return [(0, alpha)] + [(i + 1, x) for i, x in enumerate(reps)]

    half = 2 ** (k - 3)
    hits = [i for i in range(2, N) if L[0] & L[i]]
    if hits:
        i = hits[0]
        beta = _low(L[0] & L[i])
        if i <= half + 1:
            idx = list(range(i + 1, i + 1 + half))
        else:
            idx = list(range(i - 1, i - 1 - half, -1))
        sub = _long_path_even([P[j] for j in idx], [L[j] & ~(1 << beta) for j in idx], k - 2)
        return [(0, beta), (i, beta)] + [(idx[j], c) for j, c in sub]
    gamma_set = L[1] & ~L[0]
    gamma = _low(gamma_set) if gamma_set else None
    drop = L[0] | (1 << gamma if gamma is not None else 0)
    idx = list(range(2, N))
    sub = _long_path_even([P[j] for j in idx], [L[j] & ~drop for j in idx], k - 2)
    beta = gamma if gamma is not None else _low(L[1])
    alpha = _low(L[0] & ~(1 << beta))
    return [(0, alpha), (1, beta)] + [(idx[j], c) for j, c in sub]


def expand_long_path(H: Hypergraph, P: StructureWitness, k: int) -> StructureWitness:
    """A linear k-path in ``H`` whose first edge contains the first edge of ``P``.

    ``P`` must be a linear path in the shadow of ``H`` with at least
    ``2**(2*ell + 1)`` edges (``ell = (k - 1) // 2``) whose lists, taken
    relative to ``P``, all have at least ``ell + 1`` colours.  Only the first
    ``2**(2*ell + 1)`` edges are used.  Odd ``k`` is handled by building a
    ``(k + 1)``-path and dropping its last edge.
    """
    if k < 3:
        raise ParameterError(f"k={k} must be at least 3")
    ell = core_size(k)
    need = 2 ** (2 * ell + 1)
    if P.kind.family is not Family.LINEAR_PATH:
        raise PreconditionError("expand_long_path needs a linear path in the shadow")
    sh = shadow(H, 1)
    verdict = verify_witness(sh, P)
    if not verdict:
        raise PreconditionError(f"P is not a linear path in the shadow: {verdict.reason}")
    if P.kind.k < need:
        raise PreconditionError(f"P has {P.kind.k} edges; need at least {need}")
    path = [e.mask for e in P.edges[:need]]
    G = Hypergraph.from_masks(H.n, H.r - 1, path)
    lists = compute_lists(H, G)
    L = [lists.lists[e] for e in path]
    short = [i for i, c in enumerate(L) if c.bit_count() < ell + 1]
    if short:
        i = short[0]
        raise PreconditionError(
            f"list of shadow edge {bits(path[i])} has {L[i].bit_count()} colours; need {ell + 1}"
        )
    even_k = k if k % 2 == 0 else k + 1
    picks = _long_path_even(path, L, even_k)[:k]
    edges = [path[i] | 1 << c for i, c in picks]
    kind = StructureKind(Family.LINEAR_PATH, k)
    w = StructureWitness(kind, tuple(VertexSet(H.n, e) for e in edges),
                         default_connectors(edges, kind) or ())
    assert verify_witness(H, w), "expand_long_path produced an invalid path"
    assert edges[0] & path[0] == path[0]
    return w


# --- full subgraphs and cycles in full hypergraphs ----------------------------------


def sparse_sequence(H: Hypergraph, d: int) -> list[VertexSet]:
    """The greedy sequence of low-codegree sub-edges deleted by :func:`full_subgraph`."""
    return full_subgraph_trace(H, d)[1]


def full_subgraph_trace(H: Hypergraph, d: int) -> tuple[Hypergraph, list[VertexSet]]:
    if d < 1:
        raise ParameterError(f"d={d} must be at least 1")
    alive = set(H.masks)
    codeg: dict[int, int] = {}
    containing: dict[int, list[int]] = {}
    for e in H.masks:
        for v in iter_bits(e):
            sub = e ^ (1 << v)
            codeg[sub] = codeg.get(sub, 0) + 1
            containing.setdefault(sub, []).append(e)
    order = sorted(codeg, key=lex_key)
    seq: list[VertexSet] = []
    changed = True
    while changed:
        changed = False
        for sub in order:
            c = codeg[sub]
            if 0 < c <= d:
                seq.append(VertexSet(H.n, sub))
                for e in containing[sub]:
                    if e in alive:
                        alive.discard(e)
                        for v in iter_bits(e):
                            codeg[e ^ (1 << v)] -= 1
                changed = True
                break
    return Hypergraph.from_masks(H.n, H.r, alive), seq


def full_subgraph(H: Hypergraph, d: int) -> Hypergraph:
    """Greedy (d+1)-full subgraph keeping at least ``|H| - d |shadow(H)|`` edges.

    While some sub-edge lies in between 1 and ``d`` surviving edges, delete
    those edges; the lexicographically smallest such sub-edge goes first.
    """
    return full_subgraph_trace(H, d)[0]


def _graph_triangle(adj: dict[int, int]) -> Optional[list[int]]:
    for u in sorted(adj):
        for v in iter_bits(adj[u] & ~((1 << (u + 1)) - 1)):
            common = adj[u] & adj[v]
            if common:
                return [u, v, _low(common)]
    return None


def cycle_in_full(H: Hypergraph, k: int) -> StructureWitness:
    """A linear k-cycle in a non-empty (r*k)-full r-graph.

    Builds a k-cycle in the graph ``shadow(H, r - 2)`` by growing a triangle,
    lifts each graph edge to an edge of ``H``, then repeatedly swaps a
    shared vertex for a fresh one until the lifted edges form a linear cycle.
    """
    r = H.r
    if r < 3 or k < 3:
        raise ParameterError(f"need r >= 3 and k >= 3, got r={r}, k={k}")
    if len(H) == 0:
        raise PreconditionError("host must be non-empty")
    report = is_full(H, r * k)
    if not report:
        raise PreconditionError(
            f"host is not {r * k}-full: sub-edge {report.violating_subedge.members} "
            f"has codegree below {r * k}"
        )
    F = shadow(H, r - 2) if r > 2 else H
    adj: dict[int, int] = {}
    for e in F.masks:
        u, v = bits(e)
        adj[u] = adj.get(u, 0) | 1 << v
        adj[v] = adj.get(v, 0) | 1 << u
    cyc = _graph_triangle(adj)
    assert cyc is not None, "every edge of H spans a clique in the 2-shadow"
    while len(cyc) < k:
        on = to_mask(cyc)
        slots = sorted(range(len(cyc)), key=lambda i: tuple(sorted((cyc[i], cyc[(i + 1) % len(cyc)]))))
        for i in slots:
            a, b = cyc[i], cyc[(i + 1) % len(cyc)]
            fresh = adj[a] & adj[b] & ~on
            if fresh:
                cyc.insert(i + 1, _low(fresh))
                break
        else:
            raise AssertionError("no triangle extends the graph cycle; host is not full enough")
    graph_edges = [1 << cyc[i] | 1 << cyc[(i + 1) % k] for i in range(k)]
    lifted = []
    for f in graph_edges:
        lifted.append(next(e for e in H.masks if e & f == f))
    table = H.subedge_codegrees
    for _ in range(len(H) + 1):
        conflict = None
        for i in range(k):
            extra = lifted[i] & ~graph_edges[i]
            others = 0
            for j in range(k):
                if j != i:
                    others |= lifted[j]
            if extra & others:
                conflict = (i, _low(extra & others))
                break
        if conflict is None:
            break
        i, v = conflict
        Y = 0
        for e in lifted:
            Y |= e
        base = lifted[i] & ~(1 << v)
        assert table.get(base, 0) >= r * k
        z = next((x for x in range(H.n) if not Y >> x & 1 and (base | 1 << x) in H.mask_set), None)
        assert z is not None, "no fresh vertex although |Y| < r*k <= codegree"
        lifted[i] = base | 1 << z
    else:
        raise AssertionError("swap repair did not terminate")
    kind = StructureKind(Family.LINEAR_CYCLE, k)
    w = StructureWitness(kind, tuple(VertexSet(H.n, e) for e in lifted),
                         default_connectors(lifted, kind) or ())
    assert verify_witness(H, w), "cycle_in_full produced an invalid cycle"
    return w


# --- superfull hosts ------------------------------------------------------------


def repair_minimal(H: Hypergraph, w: StructureWitness, ell: int, threshold: int) -> StructureWitness:
    """Turn a minimal path or cycle of a superfull host into a linear one.

    While two consecutive edges ``f, g`` share two vertices ``x, y``, replace
    ``f`` by ``f - x + z`` (or ``f - y + z``) with ``z`` outside the current
    structure, using whichever of ``f - x``, ``f - y`` has codegree above
    ``threshold``.  Raises :class:`RepairFailed` when no fresh ``z`` exists.
    """
    if w.kind.family not in (Family.MINIMAL_CYCLE, Family.MINIMAL_PATH,
                             Family.LINEAR_CYCLE, Family.LINEAR_PATH):
        raise PreconditionError(f"repair needs a minimal or linear structure, got {w.kind}")
    if not is_superfull(H, ell, threshold):
        raise PreconditionError(f"host is not {ell}-superfull at threshold {threshold}")
    verdict = verify_witness(H, w)
    if not verdict:
        raise PreconditionError(f"witness is not a {w.kind} in the host: {verdict.reason}")
    cycle = w.kind.is_cycle
    linear = StructureKind(Family.LINEAR_CYCLE if cycle else Family.LINEAR_PATH, w.kind.k)
    edges = [e.mask for e in w.edges]
    if w.kind.style == "linear":
        return w
    k = len(edges)
    table = H.subedge_codegrees
    pairs = [(i, (i + 1) % k) for i in range(k if cycle else k - 1)]
    for _ in range(H.n + 1):
        bad = next(((i, j) for i, j in pairs if (edges[i] & edges[j]).bit_count() >= 2), None)
        if bad is None:
            break
        i, j = bad
        f = edges[i]
        x, y = bits(f & edges[j])[:2]
        drop = next((v for v in (x, y) if table[f ^ (1 << v)] > threshold), None)
        assert drop is not None, "superfull edge has two low-codegree sub-edges"
        base = f ^ (1 << drop)
        used = 0
        for e in edges:
            used |= e
        z = next((v for v in range(H.n) if not used >> v & 1 and (base | 1 << v) in H.mask_set), None)
        if z is None:
            raise RepairFailed(
                f"no vertex outside the structure extends {bits(base)}; host too small"
            )
        edges[i] = base | 1 << z
    else:
        raise AssertionError("repair did not terminate")
    conns = default_connectors(edges, linear)
    out = StructureWitness(linear, tuple(VertexSet(H.n, e) for e in edges), conns or ())
    assert verify_witness(H, out), "repair produced an invalid structure"
    return out


@dataclass(frozen=True)
class CommonList:
    """Outcome of :func:`common_list_over_W`; truthy when a common list exists."""

    common: Optional[VertexSet]
    mismatch: Optional[tuple[VertexSet, VertexSet]] = None

    def __bool__(self) -> bool:
        return self.common is not None


def common_list_over_W(H: Hypergraph, W, ell: int, threshold: int) -> CommonList:
    """Check that all (r-1)-subsets of ``W`` share one list disjoint from ``W``.

    Every such subset must have codegree exactly ``ell`` (HypothesisViolated
    otherwise).  When the lists differ, ``mismatch`` holds the first two
    subsets, in lexicographic order, whose lists disagree.
    """
    Wm = W.mask if isinstance(W, VertexSet) else to_mask(W)
    if Wm.bit_count() < H.r - 1:
        raise ParameterError(f"|W|={Wm.bit_count()} is smaller than r-1={H.r - 1}")
    if not is_superfull(H, ell, threshold):
        raise PreconditionError(f"host is not {ell}-superfull at threshold {threshold}")
    table = H.subedge_codegrees
    subs = sorted(subsets_of_size(Wm, H.r - 1), key=lex_key)
    for s in subs:
        if table.get(s, 0) != ell:
            raise HypothesisViolated(
                f"sub-edge {bits(s)} has codegree {table.get(s, 0)}, expected exactly {ell}"
            )
    first = subs[0]
    first_nbr = _neighbourhood_mask(H, first)
    for s in subs:
        nbr = _neighbourhood_mask(H, s)
        if nbr & Wm or nbr != first_nbr:
            other = first if nbr != first_nbr else s
            return CommonList(None, (VertexSet(H.n, other), VertexSet(H.n, s)))
    return CommonList(VertexSet(H.n, first_nbr))


# --- complete multipartite subgraphs and the sampling step ------------------------------


@dataclass(frozen=True)
class PsiQuery:
    """A candidate complete (r-1)-partite shadow subgraph with parts of size ``t``.

    ``parts`` may be omitted; it is then recovered from ``G`` (two vertices
    share a part exactly when no edge of ``G`` contains both).
    """

    t: int
    k: int
    G: Hypergraph
    parts: Optional[tuple[VertexSet, ...]] = None

    @property
    def ell(self) -> int:
        return core_size(self.k)


def _infer_parts(G: Hypergraph) -> list[int]:
    verts = list(iter_bits(G.vertex_mask))
    together: dict[int, int] = {v: 0 for v in verts}
    for e in G.masks:
        for v in iter_bits(e):
            together[v] |= e
    parts: list[int] = []
    placed = 0
    for v in verts:
        if placed >> v & 1:
            continue
        part = G.vertex_mask & ~together[v] | 1 << v
        parts.append(part)
        placed |= part
    return parts


def _check_complete_partite(G: Hypergraph, parts: list[int], t: int) -> None:
    s = G.r
    if len(parts) != s:
        raise PreconditionError(f"G has {len(parts)} parts, expected {s}")
    union = 0
    for p in parts:
        if p.bit_count() != t:
            raise PreconditionError(f"part {bits(p)} has size {p.bit_count()}, expected {t}")
        if union & p:
            raise PreconditionError("parts overlap")
        union |= p
    expected = {to_mask(c) for c in itertools.product(*(bits(p) for p in parts))}
    if set(G.masks) != expected:
        raise PreconditionError("G is not the complete multipartite graph on its parts")


def psi_check(H: Hypergraph, q: PsiQuery) -> bool:
    """Membership test for the family of well-coloured complete partite shadows.

    True iff every edge of ``G`` has more than ``ell`` colours and, when
    ``r = 3`` and ``k`` is odd, every pair ``xy`` of ``G`` has a colour
    ``a`` with ``min(d(xa), d(ya)) >= 2`` and ``max(d(xa), d(ya)) >= 3k + 1``.
    """
    G = q.G
    if G.r != H.r - 1 or G.n != H.n:
        raise PreconditionError(f"G must be an ({H.r - 1})-graph on {H.n} vertices")
    if len(G) == 0:
        raise PreconditionError("G is empty")
    parts = [p.mask for p in q.parts] if q.parts is not None else _infer_parts(G)
    _check_complete_partite(G, parts, q.t)
    lists = compute_lists(H, G)
    ell = q.ell
    if any(c.bit_count() <= ell for c in lists.lists.values()):
        return False
    if H.r == 3 and q.k % 2 == 1:
        table = H.subedge_codegrees
        for e, colours in lists.lists.items():
            x, y = bits(e)
            ok = False
            for a in iter_bits(colours):
                dx = table.get(1 << x | 1 << a, 0)
                dy = table.get(1 << y | 1 << a, 0)
                if min(dx, dy) >= 2 and max(dx, dy) >= 3 * q.k + 1:
                    ok = True
                    break
            if not ok:
                return False
    return True


def _link(edges: set[int], part: int) -> set[int]:
    """(s-1)-sets ``S`` disjoint from ``part`` with ``S + x`` an edge for every ``x`` in ``part``."""
    out = None
    for x in iter_bits(part):
        bit = 1 << x
        here = {e ^ bit for e in edges if e & bit and not (e ^ bit) & part}
        out = here if out is None else out & here
        if not out:
            return set()
    return out or set()


class _PartiteSearch:
    def __init__(self, t: int, node_limit: int):
        self.t = t
        self.limit = node_limit
        self.nodes = 0

    def tick(self):
        self.nodes += 1
        if self.nodes > self.limit:
            raise SearchLimitExceeded(f"complete partite search exceeded {self.limit} nodes", self.nodes)

    def search(self, edges: set[int], s: int) -> Optional[list[int]]:
        """Parts ``X_1..X_s`` of size t spanning a complete s-partite subgraph of ``edges``."""
        if not edges:
            return None
        if s == 1:
            verts = sorted(_low(e) for e in edges)
            return [to_mask(verts[: self.t])] if len(verts) >= self.t else None
        verts = 0
        for e in edges:
            verts |= e
        return self._grow(edges, s, 0, sorted(iter_bits(verts)), 0)

    def _grow(self, edges, s, part, candidates, start):
        self.tick()
        if part.bit_count() == self.t:
            link = _link(edges, part)
            rest = self.search(link, s - 1)
            return None if rest is None else [part] + rest
        for idx in range(start, len(candidates)):
            v = candidates[idx]
            new = part | 1 << v
            if not _link(edges, new):
                continue
            res = self._grow(edges, s, new, candidates, idx + 1)
            if res is not None:
                return res
        return None


def find_complete_partite(G: Hypergraph, t: int, node_limit: int = 10**6) -> Optional[tuple[VertexSet, ...]]:
    """Parts of a complete ``G.r``-partite subgraph of ``G`` with all parts of size ``t``.

    Exhaustive: None means no such subgraph exists.  Raises
    :class:`SearchLimitExceeded` when the node budget runs out.
    """
    if t < 1:
        raise ParameterError(f"t={t} must be at least 1")
    found = _PartiteSearch(t, node_limit).search(set(G.masks), G.r)
    if found is None:
        return None
    return tuple(VertexSet(G.n, p) for p in found)


def complete_partite_edges(n: int, parts: Sequence[VertexSet]) -> Hypergraph:
    masks = [to_mask(c) for c in itertools.product(*(p.members for p in parts))]
    return Hypergraph.from_masks(n, len(parts), masks)


def _witness_edge(H: Hypergraph, f: int, k: int) -> Optional[int]:
    """First edge ``f + a`` whose new pairs satisfy the degree conditions for odd k."""
    table = H.subedge_codegrees
    x, y = bits(f)
    for e in H.masks:
        if e & f == f:
            a = _low(e & ~f)
            dx = table.get(1 << x | 1 << a, 0)
            dy = table.get(1 << y | 1 << a, 0)
            if min(dx, dy) >= 2 and max(dx, dy) >= 3 * k + 1:
                return e
    return None


@dataclass(frozen=True)
class PsiSample:
    """A successful sampling round: the complete partite shadow and its parts."""

    G: Hypergraph
    parts: tuple[VertexSet, ...]
    round: int = 0
    T: Optional[VertexSet] = field(default=None, compare=False)


def _prepare_E(H: Hypergraph, E, k: int) -> dict[int, Optional[int]]:
    ell = core_size(k)
    table = H.subedge_codegrees
    odd_r3 = H.r == 3 and k % 2 == 1
    if isinstance(E, Mapping):
        items = [((f.mask if isinstance(f, VertexSet) else f),
                  (e.mask if isinstance(e, VertexSet) else e)) for f, e in E.items()]
    else:
        items = [((f.mask if isinstance(f, VertexSet) else f), None) for f in E]
    out: dict[int, Optional[int]] = {}
    for f, ef in items:
        if f.bit_count() != H.r - 1:
            raise PreconditionError(f"set {bits(f)} is not an (r-1)-set")
        if table.get(f, 0) < ell + 1:
            raise PreconditionError(f"sub-edge {bits(f)} has codegree {table.get(f, 0)} < {ell + 1}")
        if odd_r3:
            if ef is None:
                ef = _witness_edge(H, f, k)
                if ef is None:
                    raise PreconditionError(f"no edge through {bits(f)} meets the degree conditions")
            elif ef & f != f or ef not in H.mask_set:
                raise PreconditionError(f"witness edge {bits(ef)} does not contain {bits(f)}")
        else:
            ef = None
        out[f] = ef
    return out


def sample_psi(H: Hypergraph, E, k: int, t: int, seed) -> Optional[PsiSample]:
    """One random-sampling round.

    Keeps each vertex in ``T`` independently with probability 1/2 and
    collects the sets ``f`` of ``E`` inside ``T`` with at least ``ell + 1``
    neighbours outside ``T`` (and, for ``r = 3`` with odd ``k``, whose
    witness edge leaves ``T``), then searches that family for a complete
    (r-1)-partite subgraph with parts of size ``t``.

    ``E`` is an iterable of (r-1)-sets, or a mapping from each set to its
    witness edge when ``r = 3`` and ``k`` is odd; missing witness edges are
    found automatically.
    """
    if t < 1:
        raise ParameterError(f"t={t} must be at least 1")
    if len(H) == 0:
        return None
    prepared = _prepare_E(H, E, k)
    m = core_size(k) + 1
    keep = make_rng(seed).random(H.n) < 0.5
    T = to_mask(v for v in range(H.n) if keep[v])
    F = []
    for f, ef in prepared.items():
        if f & ~T:
            continue
        if (_neighbourhood_mask(H, f) & ~T).bit_count() < m:
            continue
        if ef is not None and not (ef & ~f) & ~T:
            continue
        F.append(f)
    if not F:
        return None
    parts = find_complete_partite(Hypergraph.from_masks(H.n, H.r - 1, F), t)
    if parts is None:
        return None
    G = complete_partite_edges(H.n, parts)
    return PsiSample(G, parts, 0, VertexSet(H.n, T))


def sample_psi_rounds(H: Hypergraph, E, k: int, t: int, seed, rounds: int = 20) -> Optional[PsiSample]:
    """Retry :func:`sample_psi` on independent child seeds until one succeeds.

    Child seeds come from ``SeedSequence(seed).spawn(rounds)``.
    """
    children = np.random.SeedSequence(seed).spawn(rounds)
    for i, child in enumerate(children):
        res = sample_psi(H, E, k, t, child)
        if res is not None:
            return PsiSample(res.G, res.parts, i, res.T)
    return None
