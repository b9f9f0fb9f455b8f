"""Uniform hypergraphs on at most 128 labelled vertices.

Vertex sets are Python integers used as bitsets; :class:`VertexSet` pairs a
mask with the size of its universe.  Vertices are 0-based in memory and
1-based in the ``.hg`` text format.
"""

from __future__ import annotations

import io
import itertools
import os
from dataclasses import dataclass
from functools import cached_property
from math import comb
from typing import Iterable, Iterator, Optional, TextIO, Union

import numpy as np

from .errors import FormatError, ParameterError, PreconditionError

MAX_VERTICES = 128


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the positions of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def bits(mask: int) -> tuple[int, ...]:
    return tuple(iter_bits(mask))


def to_mask(members: Iterable[int]) -> int:
    mask = 0
    for v in members:
        mask |= 1 << v
    return mask


_FLIP = str.maketrans("01", "10")


def lex_key(mask: int) -> str:
    """Sort key placing equal-size masks in lexicographic order of their sorted members.

    The lowest differing bit decides, and the set holding it comes first.
    """
    return format(mask, f"0{MAX_VERTICES}b")[::-1].translate(_FLIP)


def subsets_of_size(mask: int, size: int) -> Iterator[int]:
    for combo in itertools.combinations(bits(mask), size):
        yield to_mask(combo)


@dataclass(frozen=True, slots=True)
class VertexSet:
    """A subset of ``{0, ..., n-1}`` stored as a bitmask."""

    n: int
    mask: int

    def __post_init__(self):
        if not 0 <= self.n <= MAX_VERTICES:
            raise ParameterError(f"universe size {self.n} outside [0, {MAX_VERTICES}]")
        if self.mask < 0 or self.mask >> self.n:
            raise ParameterError(f"members outside universe of size {self.n}")

    @classmethod
    def of(cls, n: int, members: Iterable[int]) -> "VertexSet":
        members = list(members)
        for v in members:
            if not 0 <= v < n:
                raise ParameterError(f"vertex {v} outside universe of size {n}")
        return cls(n, to_mask(members))

    @classmethod
    def empty(cls, n: int) -> "VertexSet":
        return cls(n, 0)

    @property
    def members(self) -> tuple[int, ...]:
        return bits(self.mask)

    def __iter__(self) -> Iterator[int]:
        return iter_bits(self.mask)

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __contains__(self, v: object) -> bool:
        return isinstance(v, int) and v >= 0 and bool(self.mask >> v & 1)

    def _other(self, other: "VertexSet") -> int:
        if not isinstance(other, VertexSet):
            return NotImplemented
        if other.n != self.n:
            raise ParameterError(f"universe mismatch: {self.n} vs {other.n}")
        return other.mask

    def __or__(self, other: "VertexSet") -> "VertexSet":
        return VertexSet(self.n, self.mask | self._other(other))

    def __and__(self, other: "VertexSet") -> "VertexSet":
        return VertexSet(self.n, self.mask & self._other(other))

    def __sub__(self, other: "VertexSet") -> "VertexSet":
        return VertexSet(self.n, self.mask & ~self._other(other))

    def issubset(self, other: "VertexSet") -> bool:
        return self.mask & ~self._other(other) == 0

    def isdisjoint(self, other: "VertexSet") -> bool:
        return self.mask & self._other(other) == 0

    def sort_key(self) -> tuple[int, ...]:
        return self.members

    def __repr__(self) -> str:
        return f"VertexSet({self.n}, {set(self.members) or '{}'})"


EdgeLike = Union[VertexSet, int, Iterable[int]]


def _coerce_mask(e: EdgeLike, n: int) -> int:
    if isinstance(e, VertexSet):
        if e.n != n:
            raise ParameterError(f"edge {e!r} lives in a universe of size {e.n}, expected {n}")
        return e.mask
    if isinstance(e, int):
        if e < 0 or e >> n:
            raise ParameterError(f"mask {e:#x} outside universe of size {n}")
        return e
    return VertexSet.of(n, e).mask


class Hypergraph:
    """An ``r``-uniform hypergraph on vertex set ``{0, ..., n-1}``.

    Edges are kept in lexicographic order of their sorted vertex lists, which
    fixes the iteration order every search in the package relies on.
    Instances are treated as immutable.

    Duplicate edges raise :class:`ParameterError` rather than being merged.
    """

    def __init__(self, n: int, r: int, edges: Iterable[EdgeLike] = ()):
        if not 0 <= n <= MAX_VERTICES:
            raise ParameterError(f"n={n} outside [0, {MAX_VERTICES}]")
        if r < 1:
            raise ParameterError(f"uniformity r={r} must be positive")
        seen: set[int] = set()
        for e in edges:
            m = _coerce_mask(e, n)
            if m.bit_count() != r:
                raise ParameterError(f"edge {bits(m)} has {m.bit_count()} vertices, expected {r}")
            if m in seen:
                raise ParameterError(f"duplicate edge {bits(m)}")
            seen.add(m)
        self._init(n, r, seen)

    def _init(self, n: int, r: int, masks: Iterable[int], presorted: bool = False) -> None:
        self.n = n
        self.r = r
        self.masks: tuple[int, ...] = tuple(masks) if presorted else tuple(sorted(masks, key=lex_key))
        self.mask_set = frozenset(self.masks)

    @classmethod
    def from_masks(cls, n: int, r: int, masks: Iterable[int], presorted: bool = False) -> "Hypergraph":
        """Build without validation; duplicates are merged.  Internal fast path.

        With ``presorted`` the masks must already be distinct and in lex order.
        """
        h = cls.__new__(cls)
        h._init(n, r, masks if presorted else set(masks), presorted)
        return h

    @property
    def edges(self) -> tuple[VertexSet, ...]:
        return tuple(VertexSet(self.n, m) for m in self.masks)

    def edge_lists(self) -> list[list[int]]:
        return [list(bits(m)) for m in self.masks]

    def __len__(self) -> int:
        return len(self.masks)

    def __iter__(self) -> Iterator[VertexSet]:
        return iter(self.edges)

    def __contains__(self, e: object) -> bool:
        try:
            return _coerce_mask(e, self.n) in self.mask_set  # type: ignore[arg-type]
        except (ParameterError, TypeError):
            return False

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Hypergraph):
            return NotImplemented
        return (self.n, self.r, self.mask_set) == (other.n, other.r, other.mask_set)

    def __hash__(self) -> int:
        return hash((self.n, self.r, self.mask_set))

    def __repr__(self) -> str:
        return f"Hypergraph(n={self.n}, r={self.r}, m={len(self)})"

    @cached_property
    def vertex_mask(self) -> int:
        out = 0
        for m in self.masks:
            out |= m
        return out

    @property
    def vertices(self) -> VertexSet:
        return VertexSet(self.n, self.vertex_mask)

    @cached_property
    def subedge_codegrees(self) -> dict[int, int]:
        """Codegree of every (r-1)-set that lies in at least one edge."""
        table: dict[int, int] = {}
        for m in self.masks:
            for v in iter_bits(m):
                sub = m ^ (1 << v)
                table[sub] = table.get(sub, 0) + 1
        return table

    def union(self, other: "Hypergraph") -> "Hypergraph":
        if (self.n, self.r) != (other.n, other.r):
            raise ParameterError("union of hypergraphs with different n or r")
        return Hypergraph.from_masks(self.n, self.r, self.mask_set | other.mask_set)


@dataclass(frozen=True)
class FullnessReport:
    is_full: bool
    violating_subedge: Optional[VertexSet]
    min_nonzero_codegree: int

    def __bool__(self) -> bool:
        return self.is_full


def shadow(H: Hypergraph, s: int = 1) -> Hypergraph:
    """The (r-s)-graph of all (r-s)-sets contained in some edge of ``H``."""
    if not 1 <= s <= H.r - 1:
        raise ParameterError(f"shadow level s={s} outside [1, {H.r - 1}]")
    size = H.r - s
    out: set[int] = set()
    for m in H.masks:
        out.update(subsets_of_size(m, size))
    return Hypergraph.from_masks(H.n, size, out)


def _set_mask(H: Hypergraph, S: EdgeLike) -> int:
    m = _coerce_mask(S, H.n)
    if m.bit_count() > H.r:
        raise ParameterError(f"|S|={m.bit_count()} exceeds r={H.r}")
    return m


def codegree(H: Hypergraph, S: EdgeLike) -> int:
    """Number of edges of ``H`` containing ``S``."""
    m = _set_mask(H, S)
    if m.bit_count() == H.r - 1:
        return H.subedge_codegrees.get(m, 0)
    return sum(1 for e in H.masks if e & m == m)


def neighborhood(H: Hypergraph, S: EdgeLike) -> VertexSet:
    """Vertices ``x`` outside ``S`` lying in an edge together with ``S``.

    For ``|S| = r - 1`` this is exactly ``{x : S + x in H}``.
    """
    m = _set_mask(H, S)
    out = 0
    for e in H.masks:
        if e & m == m:
            out |= e
    return VertexSet(H.n, out & ~m)


def remove_vertices(H: Hypergraph, X: EdgeLike) -> Hypergraph:
    """Edges of ``H`` disjoint from ``X``; labels are unchanged."""
    x = _coerce_mask(X, H.n)
    return Hypergraph.from_masks(H.n, H.r, (e for e in H.masks if not e & x))


def is_full(H: Hypergraph, d: int) -> FullnessReport:
    """Whether every sub-edge of ``H`` has codegree at least ``d``.

    The empty hypergraph is d-full for every d.
    """
    if d < 1:
        raise ParameterError(f"d={d} must be at least 1")
    table = H.subedge_codegrees
    if not table:
        return FullnessReport(True, None, 0)
    low = min(table.values())
    if low >= d:
        return FullnessReport(True, None, low)
    bad = min((m for m, c in table.items() if c < d), key=lex_key)
    return FullnessReport(False, VertexSet(H.n, bad), low)


def is_superfull(H: Hypergraph, ell: int, threshold: int) -> bool:
    """``ell``-full, and each edge has at most one sub-edge of codegree <= threshold."""
    report = is_full(H, ell)
    if not report:
        sub = report.violating_subedge
        raise PreconditionError(
            f"hypergraph is not {ell}-full: sub-edge {sub.members} has codegree "
            f"{codegree(H, sub)}"
        )
    table = H.subedge_codegrees
    for e in H.masks:
        low = 0
        for v in iter_bits(e):
            if table[e ^ (1 << v)] <= threshold:
                low += 1
                if low > 1:
                    return False
    return True


def is_sparse(H: Hypergraph, t: int, c: int) -> bool:
    """Whether every ``t``-set of vertices lies in at most ``c`` edges."""
    if not 1 <= t <= H.r:
        raise ParameterError(f"t={t} outside [1, {H.r}]")
    counts: dict[int, int] = {}
    for e in H.masks:
        for sub in subsets_of_size(e, t):
            n_sub = counts.get(sub, 0) + 1
            if n_sub > c:
                return False
            counts[sub] = n_sub
    return True


def complete_hypergraph(n: int, r: int) -> Hypergraph:
    """All ``C(n, r)`` r-subsets of ``{0, ..., n-1}``."""
    if r > n:
        raise ParameterError(f"r={r} exceeds n={n}")
    if r < 1:
        raise ParameterError(f"uniformity r={r} must be positive")
    masks = [to_mask(c) for c in itertools.combinations(range(n), r)]
    h = Hypergraph.from_masks(n, r, masks, presorted=True)
    assert len(h) == comb(n, r)
    return h


def make_rng(seed) -> np.random.Generator:
    """PCG64 generator seeded through :class:`numpy.random.SeedSequence`.

    ``seed`` may be an int or a SeedSequence; children obtained with
    ``SeedSequence.spawn`` give independent, reproducible streams.
    """
    ss = seed if isinstance(seed, np.random.SeedSequence) else np.random.SeedSequence(seed)
    return np.random.Generator(np.random.PCG64(ss))


def random_hypergraph(n: int, r: int, p: float, seed) -> Hypergraph:
    """Each r-set is an edge independently with probability ``p``.

    One uniform draw is consumed per r-set, in lexicographic order, so the
    result depends only on ``(n, r, p, seed)``.
    """
    if not 0.0 <= p <= 1.0:
        raise ParameterError(f"probability p={p} outside [0, 1]")
    if r > n:
        raise ParameterError(f"r={r} exceeds n={n}")
    combos = list(itertools.combinations(range(n), r))
    draws = make_rng(seed).random(len(combos))
    return Hypergraph.from_masks(n, r, (to_mask(c) for c, u in zip(combos, draws) if u < p))


# --- .hg text format ---------------------------------------------------------


def parse_hg(text: str) -> Hypergraph:
    """Parse the ``.hg`` format; see :func:`format_hg`.

    Comment lines start with ``#``.  The first data line is ``n r m``; the
    next ``m`` lines each hold ``r`` strictly increasing 1-based vertices
    separated by single spaces.  Any deviation raises :class:`FormatError`
    carrying the offending line number.
    """
    header = None
    n = r = m = 0
    seen: set[int] = set()
    masks: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        if raw.startswith("#"):
            continue
        if raw.strip() == "":
            raise FormatError("blank line", line=lineno)
        fields = raw.split(" ")
        try:
            nums = [int(f) for f in fields]
        except ValueError:
            raise FormatError(f"expected integers separated by single spaces: {raw!r}", line=lineno) from None
        if any(f != str(x) for f, x in zip(fields, nums)):
            raise FormatError(f"non-canonical integer in {raw!r}", line=lineno)
        if header is None:
            if len(nums) != 3:
                raise FormatError("header must be 'n r m'", line=lineno)
            n, r, m = nums
            if not 0 <= n <= MAX_VERTICES or r < 1 or m < 0:
                raise FormatError(f"invalid header values n={n} r={r} m={m}", line=lineno)
            header = lineno
            continue
        if len(masks) == m:
            raise FormatError(f"more than m={m} edge lines", line=lineno)
        if len(nums) != r:
            raise FormatError(f"edge has {len(nums)} vertices, expected {r}", line=lineno)
        if any(not 1 <= v <= n for v in nums):
            raise FormatError(f"vertex outside 1..{n}", line=lineno)
        if any(a >= b for a, b in zip(nums, nums[1:])):
            raise FormatError("vertices must be strictly increasing", line=lineno)
        mask = to_mask(v - 1 for v in nums)
        if mask in seen:
            raise FormatError(f"duplicate edge {nums}", line=lineno)
        seen.add(mask)
        masks.append(mask)
    if header is None:
        raise FormatError("missing 'n r m' header", line=None)
    if len(masks) != m:
        raise FormatError(f"header announces {m} edges, found {len(masks)}", line=None)
    return Hypergraph.from_masks(n, r, masks)


def format_hg(H: Hypergraph, comment: str | None = None) -> str:
    out = io.StringIO()
    if comment:
        for line in comment.splitlines():
            out.write(f"# {line}\n")
    out.write(f"{H.n} {H.r} {len(H)}\n")
    for m in H.masks:
        out.write(" ".join(str(v + 1) for v in iter_bits(m)) + "\n")
    return out.getvalue()


def read_hg(source: Union[str, os.PathLike, TextIO]) -> Hypergraph:
    if hasattr(source, "read"):
        return parse_hg(source.read())  # type: ignore[union-attr]
    with open(source, encoding="utf-8") as fh:
        return parse_hg(fh.read())


def write_hg(H: Hypergraph, path: Union[str, os.PathLike], comment: str | None = None) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(format_hg(H, comment))
