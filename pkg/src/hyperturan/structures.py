"""Linear, minimal and Berge paths and cycles: certificates and exhaustive search.

Connector convention, shared by every family:

* cycles: ``connectors[i]`` lies in ``edges[i] & edges[(i + 1) % k]``;
* linear and minimal paths: ``connectors[i]`` lies in ``edges[i] & edges[i + 1]``
  (``k - 1`` entries);
* Berge paths: ``k + 1`` entries ``v_0 .. v_k`` with ``v_0`` in the first
  edge, ``v_i`` in ``edges[i - 1] & edges[i]`` and ``v_k`` in the last edge.

All connectors of a witness are distinct.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, NamedTuple, Optional

from .core import Hypergraph, VertexSet, bits, iter_bits, lex_key
from .errors import FormatError, ParameterError, SearchLimitExceeded

DEFAULT_NODE_LIMIT = 10**8


class Family(str, Enum):
    LINEAR_PATH = "linear-path"
    LINEAR_CYCLE = "linear-cycle"
    MINIMAL_PATH = "minimal-path"
    MINIMAL_CYCLE = "minimal-cycle"
    BERGE_PATH = "berge-path"
    BERGE_CYCLE = "berge-cycle"

    @property
    def is_cycle(self) -> bool:
        return self.value.endswith("cycle")

    @property
    def style(self) -> str:
        return self.value.split("-")[0]


@dataclass(frozen=True)
class StructureKind:
    family: Family
    k: int

    def __post_init__(self):
        object.__setattr__(self, "family", Family(self.family))
        if self.family.is_cycle:
            low = 2 if self.family is Family.BERGE_CYCLE else 3
        else:
            low = 1
        if self.k < low:
            raise ParameterError(f"{self.family.value} needs k >= {low}, got k={self.k}")

    @property
    def is_cycle(self) -> bool:
        return self.family.is_cycle

    @property
    def style(self) -> str:
        return self.family.style

    def __str__(self) -> str:
        return f"{self.family.value}(k={self.k})"


@dataclass(frozen=True)
class StructureWitness:
    kind: StructureKind
    edges: tuple[VertexSet, ...]
    connectors: tuple[int, ...]

    def to_json(self, verified: bool) -> str:
        return json.dumps(
            {
                "kind": self.kind.family.value,
                "k": self.kind.k,
                "edges": [[v + 1 for v in e.members] for e in self.edges],
                "connectors": [v + 1 for v in self.connectors],
                "verified": bool(verified),
            }
        )

    @classmethod
    def from_json(cls, text: str, n: int) -> "StructureWitness":
        """Parse the witness JSON document for a universe of ``n`` vertices."""
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise FormatError(f"invalid JSON: {exc.msg}", line=exc.lineno) from None
        if not isinstance(doc, dict):
            raise FormatError("witness must be a JSON object")
        for key in ("kind", "k", "edges", "connectors"):
            if key not in doc:
                raise FormatError("missing key", field=key)
        try:
            kind = StructureKind(Family(doc["kind"]), int(doc["k"]))
        except ValueError as exc:
            raise FormatError(str(exc), field="kind") from None
        edges = []
        for i, e in enumerate(doc["edges"]):
            if not isinstance(e, list) or not all(isinstance(v, int) and 1 <= v <= n for v in e):
                raise FormatError(f"edge {i} must list vertices in 1..{n}", field="edges")
            edges.append(VertexSet.of(n, (v - 1 for v in e)))
        conns = doc["connectors"]
        if not isinstance(conns, list) or not all(isinstance(v, int) and 1 <= v <= n for v in conns):
            raise FormatError(f"connectors must be vertices in 1..{n}", field="connectors")
        return cls(kind, tuple(edges), tuple(v - 1 for v in conns))


class Verdict(NamedTuple):
    ok: bool
    reason: str

    def __bool__(self) -> bool:
        return self.ok


_OK = Verdict(True, "ok")


def _adjacent(i: int, j: int, k: int, cycle: bool) -> bool:
    d = abs(i - j)
    return d == 1 or (cycle and d == k - 1)


def check_pattern(edges: list[int], connectors: list[int], kind: StructureKind) -> Verdict:
    """Check intersection pattern and connectors of raw edge masks."""
    k = kind.k
    cycle = kind.is_cycle
    style = kind.style
    if len(edges) != k:
        return Verdict(False, "wrong-length")
    if len(set(edges)) != k:
        return Verdict(False, "duplicate-edge")
    if style != "berge":
        for i in range(k):
            for j in range(i + 1, k):
                inter = (edges[i] & edges[j]).bit_count()
                if _adjacent(i, j, k, cycle):
                    if inter == 0 or (style == "linear" and inter != 1):
                        return Verdict(False, "bad-intersection")
                elif inter:
                    return Verdict(False, "bad-intersection")
        if cycle:
            common = edges[0]
            for e in edges[1:]:
                common &= e
            if common:
                return Verdict(False, "common-vertex")
    if len(set(connectors)) != len(connectors):
        return Verdict(False, "bad-connectors")
    if cycle:
        slots = [edges[i] & edges[(i + 1) % k] for i in range(k)]
    elif style == "berge":
        slots = [edges[0]] + [edges[i - 1] & edges[i] for i in range(1, k)] + [edges[-1]]
    else:
        slots = [edges[i] & edges[i + 1] for i in range(k - 1)]
    if len(connectors) != len(slots):
        return Verdict(False, "bad-connectors")
    for v, slot in zip(connectors, slots):
        if v < 0 or not slot >> v & 1:
            return Verdict(False, "bad-connectors")
    return _OK


def verify_witness(H: Hypergraph, w: StructureWitness) -> Verdict:
    """Check that ``w`` is a genuine structure of its kind inside ``H``.

    Returns a falsy :class:`Verdict` carrying a reason code instead of
    raising.
    """
    for e in w.edges:
        if e.n != H.n or len(e) != H.r:
            return Verdict(False, "wrong-uniformity")
        if e.mask not in H.mask_set:
            return Verdict(False, "edge-not-in-host")
    return check_pattern([e.mask for e in w.edges], list(w.connectors), w.kind)


def default_connectors(edges: list[int], kind: StructureKind) -> Optional[tuple[int, ...]]:
    """Smallest-vertex connectors for a linear or minimal structure.

    Returns None for Berge kinds, whose threading is not determined by the
    intersections.
    """
    k = len(edges)
    if kind.style == "berge":
        return None
    if kind.is_cycle:
        pairs = [(edges[i], edges[(i + 1) % k]) for i in range(k)]
    else:
        pairs = [(edges[i], edges[i + 1]) for i in range(k - 1)]
    out = []
    for a, b in pairs:
        inter = a & b
        if not inter:
            return None
        out.append((inter & -inter).bit_length() - 1)
    return tuple(out)


def min_vertices(kind: StructureKind, r: int) -> int:
    """Fewest vertices any structure of ``kind`` in an r-graph can occupy.

    Searches answer "absent" immediately on hosts with fewer vertices.
    """
    k = kind.k
    fam = kind.family
    if fam is Family.LINEAR_CYCLE:
        return k * (r - 1)
    if fam is Family.LINEAR_PATH:
        return k * (r - 1) + 1
    if fam is Family.MINIMAL_CYCLE:
        # every vertex lies in at most two edges
        return -(-k * r // 2)
    if fam is Family.MINIMAL_PATH:
        # consecutive overlaps a_1..a_{k-1} with a_i + a_{i+1} <= r, end overlaps <= r-1
        joins = k - 1
        if joins == 0:
            return r
        if joins % 2 == 0:
            shared = joins // 2 * r
        else:
            shared = (joins - 1) // 2 * r + (r - 1)
        return k * r - shared
    if fam is Family.BERGE_CYCLE:
        return max(k, r + 1)
    return max(k + 1, r + (1 if k >= 2 else 0))


class _Search:
    """Memoised depth-first search for one structure kind in one host.

    A search state is summarised by the vertices already used and the
    vertices the next edge may touch; whether a state can be completed
    depends on nothing else, so failed states are cached.
    """

    def __init__(self, n: int, masks: Iterable[int], kind: StructureKind, node_limit: int | None):
        self.n = n
        self.kind = kind
        self.masks: list[int] = sorted(set(masks), key=lex_key)
        self.index = {m: i for i, m in enumerate(self.masks)}
        self.by_vertex: list[list[int]] = [[] for _ in range(n)]
        for i, m in enumerate(self.masks):
            for v in iter_bits(m):
                self.by_vertex[v].append(i)
        self.linear = kind.style == "linear"
        self.limit = DEFAULT_NODE_LIMIT if node_limit is None else node_limit
        self.nodes = 0
        self.min_index = -1
        self.dead: set = set()

    def _tick(self) -> None:
        self.nodes += 1
        if self.nodes > self.limit:
            raise SearchLimitExceeded(
                f"search for {self.kind} exceeded {self.limit} nodes", nodes=self.nodes
            )

    def _touching(self, avail: int) -> list[int]:
        """Indices (> min_index) of edges meeting ``avail``, in lexicographic order."""
        seen: set[int] = set()
        for v in iter_bits(avail):
            seen.update(self.by_vertex[v])
        lo = self.min_index
        return sorted(i for i in seen if i > lo)

    def _next_edges(self, used: int, avail: int) -> list[int]:
        out = []
        for i in self._touching(avail):
            f = self.masks[i]
            inter = f & used
            if self.linear:
                if inter.bit_count() == 1 and inter & avail:
                    out.append(f)
            elif inter & ~avail == 0 and f & ~used:
                out.append(f)
        return out

    def _closing_edge(self, used: int, avail: int, close: int) -> Optional[int]:
        for i in self._touching(avail):
            f = self.masks[i]
            inter = f & used
            if self.linear:
                if inter.bit_count() == 2 and inter & avail and inter & close:
                    return f
            elif inter & ~(avail | close) == 0 and inter & avail and inter & close:
                return f
        return None

    # -- linear and minimal --------------------------------------------------

    def _walk(self, used, avail, remaining, close, pending, chain):
        """Extend ``chain`` by ``remaining`` edges from ``avail``.

        ``close`` is nonzero for cycles: the final edge must also meet it.
        ``pending`` is ``(left_avail, left_len)`` for the second arm of a
        path anchored in its middle.
        """
        if remaining == 0:
            if pending is not None:
                left_avail, left_len = pending
                return self._walk(used, left_avail, left_len, 0, None, chain + [None])
            return chain
        if close and remaining == 1:
            f = self._closing_edge(used, avail, close)
            return None if f is None else chain + [f]
        key = (used, avail, remaining, close, pending)
        if key in self.dead:
            return None
        self._tick()
        for f in self._next_edges(used, avail):
            res = self._walk(used | f, f & ~used, remaining - 1, close, pending, chain + [f])
            if res is not None:
                return res
        self.dead.add(key)
        return None

    def _cycle_from(self, e0: int) -> Optional[list[int]]:
        k = self.kind.k
        self._tick()
        for f in self._next_edges(e0, e0):
            close = e0 & ~f
            if not close:
                continue
            res = self._walk(e0 | f, f & ~e0, k - 2, close, None, [e0, f])
            if res is not None:
                return res
        return None

    def _path_through(self, e: int) -> Optional[list[int]]:
        k = self.kind.k
        if k == 1:
            return [e]
        for left_len in range((k - 1) // 2 + 1):
            right_len = k - 1 - left_len
            self._tick()
            for f in self._next_edges(e, e):
                pending = (e & ~f, left_len) if left_len else None
                res = self._walk(e | f, f & ~e, right_len - 1, 0, pending, [e, f])
                if res is not None:
                    cut = res.index(None) if None in res else len(res)
                    right, left = res[:cut], res[cut + 1:]
                    return left[::-1] + right
        return None

    # -- Berge ---------------------------------------------------------------

    def _berge_walk(self, threaded, used_edges, v, remaining, close_v, pending, chain, conns):
        """Thread ``remaining`` more edges starting at vertex ``v``.

        ``close_v`` (cycles) must lie in the final edge.  ``pending`` is
        ``(start_vertex, length)`` for the left arm of an anchored path.
        """
        if remaining == 0:
            if pending is not None:
                start, length = pending
                return self._berge_walk(threaded, used_edges, start, length, -1, None,
                                        chain + [None], conns + [None])
            return chain, conns
        key = (threaded, used_edges, v, remaining, close_v, pending)
        if key in self.dead:
            return None
        self._tick()
        lo = self.min_index
        for i in self.by_vertex[v]:
            if i <= lo or used_edges >> i & 1:
                continue
            f = self.masks[i]
            if remaining == 1 and close_v >= 0:
                if f >> close_v & 1:
                    return chain + [f], conns
                continue
            for w in iter_bits(f & ~threaded):
                res = self._berge_walk(threaded | 1 << w, used_edges | 1 << i, w, remaining - 1,
                                       close_v, pending, chain + [f], conns + [w])
                if res is not None:
                    return res
        self.dead.add(key)
        return None

    def _berge_cycle_from(self, i0: int) -> Optional[tuple[list[int], list[int]]]:
        e0 = self.masks[i0]
        for v0 in iter_bits(e0):
            for v1 in iter_bits(e0 & ~(1 << v0)):
                res = self._berge_walk((1 << v0) | (1 << v1), 1 << i0, v1, self.kind.k - 1, v0,
                                       None, [e0], [v1])
                if res is not None:
                    chain, conns = res
                    return chain, conns + [v0]
        return None

    def _berge_path_through(self, i0: int) -> Optional[tuple[list[int], list[int]]]:
        k = self.kind.k
        e0 = self.masks[i0]
        for left_len in range((k - 1) // 2 + 1):
            right_len = k - 1 - left_len
            for a in iter_bits(e0):
                for b in iter_bits(e0 & ~(1 << a)):
                    pending = (a, left_len) if left_len else None
                    res = self._berge_walk((1 << a) | (1 << b), 1 << i0, b, right_len, -1, pending,
                                           [e0], [b])
                    if res is None:
                        continue
                    chain, conns = res
                    if None in chain:
                        cut = chain.index(None)
                        ccut = conns.index(None)
                        right, left = chain[:cut], chain[cut + 1:]
                        rconn, lconn = conns[:ccut], conns[ccut + 1:]
                        edges = left[::-1] + right
                        vertices = lconn[::-1] + [a] + rconn
                    else:
                        edges = chain
                        vertices = [a] + conns
                    return edges, vertices
        return None

    # -- drivers ---------------------------------------------------------------

    def find(self) -> Optional[tuple[list[int], tuple[int, ...]]]:
        kind = self.kind
        if kind.style == "berge":
            for i in range(len(self.masks)):
                if kind.is_cycle:
                    self.min_index = i - 1
                    self.dead = set()
                    res = self._berge_cycle_from(i)
                else:
                    res = self._berge_path_from(i)
                if res is not None:
                    return res[0], tuple(res[1])
            return None
        for i, e0 in enumerate(self.masks):
            if kind.is_cycle:
                # e0 is the edge of smallest index on the cycle
                self.min_index = i
                self.dead = set()
                res = self._cycle_from(e0)
            else:
                res = self._walk(e0, e0, kind.k - 1, 0, None, [e0])
            if res is not None:
                return res, default_connectors(res, kind)
        return None

    def _berge_path_from(self, i0: int):
        e0 = self.masks[i0]
        k = self.kind.k
        for a in iter_bits(e0):
            for b in iter_bits(e0 & ~(1 << a)):
                res = self._berge_walk((1 << a) | (1 << b), 1 << i0, b, k - 1, -1, None, [e0], [b])
                if res is not None:
                    chain, conns = res
                    return chain, [a] + conns
        return None

    def find_through(self, e: int) -> Optional[tuple[list[int], tuple[int, ...]]]:
        kind = self.kind
        self.min_index = -1
        if kind.style == "berge":
            i0 = self.index[e]
            res = self._berge_cycle_from(i0) if kind.is_cycle else self._berge_path_through(i0)
            return None if res is None else (res[0], tuple(res[1]))
        res = self._cycle_from(e) if kind.is_cycle else self._path_through(e)
        return None if res is None else (res, default_connectors(res, kind))


def _witness(H_n: int, kind: StructureKind, found) -> StructureWitness:
    edges, conns = found
    return StructureWitness(kind, tuple(VertexSet(H_n, m) for m in edges), tuple(conns))


def find_structure(H: Hypergraph, kind: StructureKind, node_limit: int | None = None
                   ) -> Optional[StructureWitness]:
    """Exhaustive search for a structure of ``kind`` in ``H``.

    Returns the first witness in lexicographic edge order, or None when
    ``H`` contains no such structure.  Raises :class:`SearchLimitExceeded`
    when the node budget (default ``10**8``) runs out, which means unknown,
    never absent.
    """
    if H.n < min_vertices(kind, H.r) or len(H) < kind.k:
        return None
    found = _Search(H.n, H.masks, kind, node_limit).find()
    if found is None:
        return None
    w = _witness(H.n, kind, found)
    assert verify_witness(H, w), f"search produced an invalid witness: {w}"
    return w


def find_structure_through(H: Hypergraph, edge, kind: StructureKind, node_limit: int | None = None
                           ) -> Optional[StructureWitness]:
    """Like :func:`find_structure` but only structures that use ``edge``."""
    e = edge.mask if isinstance(edge, VertexSet) else edge
    if e not in H.mask_set:
        raise ParameterError(f"edge {bits(e)} is not in the host")
    if H.n < min_vertices(kind, H.r) or len(H) < kind.k:
        return None
    found = _Search(H.n, H.masks, kind, node_limit).find_through(e)
    if found is None:
        return None
    w = _witness(H.n, kind, found)
    assert verify_witness(H, w), f"search produced an invalid witness: {w}"
    return w
