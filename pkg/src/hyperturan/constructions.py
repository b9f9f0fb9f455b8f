"""Extremal constructions and closed-form Turán values for paths and cycles.

Every value here is proven only above an unquantified threshold on ``n``;
:class:`TuranValue` carries a ``validity_note`` so callers never present a
formula as unconditional.
"""

from __future__ import annotations

import bisect
import itertools
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import comb
from typing import Optional

from .core import Hypergraph, VertexSet, complete_hypergraph, iter_bits, lex_key, to_mask
from .errors import ParameterError, UnsupportedError

TARGETS = ("path", "cycle", "minimal-cycle")
EXTRA_VARIANTS = ("P2-and-2P1-free", "P2-free", "matching")

# structure family forbidden by each construction target
TARGET_FAMILY = {"path": "linear-path", "cycle": "linear-cycle", "minimal-cycle": "minimal-cycle"}


class Validity(str, Enum):
    LARGE_N = "holds-for-large-n"
    SMALL_N_THRESHOLD = "known-small-n-threshold"


@dataclass(frozen=True)
class TuranValue:
    """An exact value (or upper bound) together with where it is known to hold.

    ``threshold`` is the smallest ``n`` covered by the cited result when one
    is stated, and ``valid`` tells whether the queried ``n`` meets it.
    """

    value: int
    validity_note: Validity
    threshold: Optional[Fraction] = None
    valid: Optional[bool] = None
    is_upper_bound: bool = False


def core_size(k: int) -> int:
    """Size of the core set: ``floor((k - 1) / 2)``."""
    return (k - 1) // 2


@dataclass(frozen=True)
class ConstructionSpec:
    """Parameters of one extremal candidate.

    ``core`` holds 0-based vertices and defaults to ``{0, ..., ell - 1}``.
    ``k = 3`` is admitted only for minimal cycles, where the size of the
    star is a previously known value rather than the main formula
    (see :attr:`uses_literature_value`).
    """

    n: int
    r: int
    k: int
    target: str
    core: Optional[VertexSet] = None

    def __post_init__(self):
        if self.target not in TARGETS:
            raise ParameterError(f"target must be one of {TARGETS}, got {self.target!r}")
        if self.r < 3:
            raise ParameterError(f"constructions need r >= 3, got r={self.r}")
        low = 3 if self.target == "minimal-cycle" else 4
        if self.k < low:
            raise ParameterError(f"target {self.target} needs k >= {low}, got k={self.k}")
        if self.core is None:
            object.__setattr__(self, "core", VertexSet.of(self.n, range(self.ell)))
        elif self.core.n != self.n:
            raise ParameterError(f"core set lives in universe {self.core.n}, expected {self.n}")
        if len(self.core) != self.ell:
            raise ParameterError(f"core set must have {self.ell} vertices, got {len(self.core)}")

    @property
    def ell(self) -> int:
        return core_size(self.k)

    @property
    def uses_literature_value(self) -> bool:
        return self.k == 3


def star_construction(n: int, r: int, L) -> Hypergraph:
    """All r-subsets of ``{0..n-1}`` meeting ``L``."""
    if isinstance(L, VertexSet):
        if L.n != n:
            raise ParameterError(f"core set lives in universe {L.n}, expected {n}")
        core = L
    else:
        core = VertexSet.of(n, L)
    if len(core) < 1:
        raise ParameterError("core set must be non-empty")
    if r > n:
        raise ParameterError(f"r={r} exceeds n={n}")
    H = Hypergraph.from_masks(n, r, [m for m in complete_hypergraph(n, r).masks if m & core.mask], presorted=True)
    assert len(H) == comb(n, r) - comb(n - len(core), r)
    return H


def even_k_extra_family(m: int, r: int, variant: str) -> Hypergraph:
    """The lower-order family placed outside the core, on vertices ``0..m-1``.

    * ``"P2-and-2P1-free"``: all r-sets through the pair ``{0, 1}``;
    * ``"P2-free"`` (r = 3 only): the larger of the pair star ``{0, 1, x}``
      and a packing of disjoint copies of ``K_4^(3)``; the packing wins ties;
    * ``"matching"``: ``floor(m / r)`` disjoint edges.
    """
    if variant not in EXTRA_VARIANTS:
        raise ParameterError(f"variant must be one of {EXTRA_VARIANTS}, got {variant!r}")
    if m < r:
        raise ParameterError(f"need m >= r, got m={m}, r={r}")
    if variant == "P2-and-2P1-free":
        pair = 0b11
        masks = [pair | to_mask(c) for c in itertools.combinations(range(2, m), r - 2)]
    elif variant == "P2-free":
        if r != 3:
            raise UnsupportedError("the P2-free extra family is only available for r = 3")
        if 4 * (m // 4) >= m - 2:
            masks = []
            for block in range(m // 4):
                base = list(range(4 * block, 4 * block + 4))
                masks.extend(to_mask(c) for c in itertools.combinations(base, 3))
        else:
            masks = [0b11 | 1 << x for x in range(2, m)]
    else:
        masks = [to_mask(range(r * i, r * i + r)) for i in range(m // r)]
    return Hypergraph.from_masks(m, r, masks)


def extra_variant(spec: ConstructionSpec) -> Optional[str]:
    """Which extra family (if any) completes the star for ``spec``.

    Returns ``"one-edge"`` for even minimal cycles of length at least 6.
    """
    if spec.k % 2 == 1:
        return None
    if spec.target == "path":
        return "P2-and-2P1-free"
    if spec.target == "cycle":
        return "P2-free" if (spec.k, spec.r) == (4, 3) else "P2-and-2P1-free"
    return "matching" if spec.k == 4 else "one-edge"


def extremal_candidate(spec: ConstructionSpec) -> Hypergraph:
    """The star on ``spec.core`` plus the extra family on the remaining vertices.

    The extra family occupies the smallest vertices outside the core, in
    increasing order.
    """
    n, r = spec.n, spec.r
    star = star_construction(n, r, spec.core)
    variant = extra_variant(spec)
    if variant is None:
        return star
    outside = [v for v in range(n) if v not in spec.core]
    if len(outside) < r:
        raise ParameterError(f"n={n} leaves {len(outside)} vertices outside the core; need {r}")
    if variant == "one-edge":
        extra = [to_mask(outside[:r])]
    else:
        local = even_k_extra_family(len(outside), r, variant)
        extra = [to_mask(outside[v] for v in iter_bits(m)) for m in local.masks]
    # extra edges miss the core, so they can be slotted into the sorted star
    masks = list(star.masks)
    for m in sorted(extra, key=lex_key):
        bisect.insort(masks, m, key=lex_key)
    return Hypergraph.from_masks(n, r, masks, presorted=True)


def _p2_free_r3(m: int) -> int:
    return max(m - 2, 4 * (m // 4))


def turan_value_formula(n: int, r: int, k: int, target: str) -> TuranValue:
    """Closed-form extremal number for forbidding a k-path or k-cycle.

    ``target`` is ``"path"`` (linear k-path), ``"cycle"`` (linear k-cycle)
    or ``"minimal-cycle"``.  Exact integer arithmetic throughout.
    """
    if target not in TARGETS:
        raise ParameterError(f"target must be one of {TARGETS}, got {target!r}")
    if r < 3:
        hint = "use literature_value(..., 'graph-path-upper-bound') for graphs" if r == 2 else ""
        raise UnsupportedError(f"r={r} is not covered; nearest covered case is r=3. {hint}".strip())
    if target == "minimal-cycle" and k == 3:
        raise UnsupportedError(
            "k=3 minimal cycles are not covered by a display; nearest covered case is "
            "literature_value(n, r, 'minimal-triangle')"
        )
    if k < 4:
        hint = " or literature_value(n, 3, 'linear-triangle-r3')" if target == "cycle" and r == 3 else ""
        raise UnsupportedError(f"k={k} is not covered; nearest covered case is k=4{hint}")
    ell = core_size(k)
    base = comb(n, r) - comb(n - ell, r)
    if target == "minimal-cycle":
        if k == 4:
            value = comb(n, r) - comb(n - 1, r) + (n - 1) // r
        else:
            value = base + (1 if k % 2 == 0 else 0)
    elif target == "cycle" and (k, r) == (4, 3):
        value = comb(n, 3) - comb(n - 1, 3) + _p2_free_r3(n - 1)
    else:
        value = base + (comb(n - ell - 2, r - 2) if k % 2 == 0 else 0)
    return TuranValue(value, Validity.LARGE_N)


LITERATURE_KINDS = ("minimal-triangle", "linear-triangle-r3", "graph-path-upper-bound")


def literature_value(n: int, r: int, kind: str, k: Optional[int] = None) -> TuranValue:
    """Previously known values for small k, used next to the main formula.

    * ``minimal-triangle``: ``C(n-1, r-1)`` for r >= 3 and n >= 3r/2;
    * ``linear-triangle-r3``: ``C(n-1, 2)`` for r = 3 and n >= 6;
    * ``graph-path-upper-bound``: ``floor((k-1) n / 2)`` for graphs with no
      path of ``k`` edges (tight when k divides n).
    """
    if kind == "minimal-triangle":
        if r < 3:
            raise UnsupportedError("minimal-triangle value needs r >= 3")
        threshold = Fraction(3 * r, 2)
        return TuranValue(comb(n - 1, r - 1), Validity.SMALL_N_THRESHOLD, threshold, n >= threshold)
    if kind == "linear-triangle-r3":
        if r != 3:
            raise UnsupportedError("linear-triangle-r3 value is only known for r = 3")
        return TuranValue(comb(n - 1, 2), Validity.SMALL_N_THRESHOLD, Fraction(6), n >= 6)
    if kind == "graph-path-upper-bound":
        if r != 2:
            raise UnsupportedError("graph-path-upper-bound applies to graphs (r = 2)")
        if k is None or k < 1:
            raise ParameterError("graph-path-upper-bound needs the path length k >= 1")
        return TuranValue((k - 1) * n // 2, Validity.SMALL_N_THRESHOLD, Fraction(1), True,
                          is_upper_bound=True)
    raise UnsupportedError(f"kind must be one of {LITERATURE_KINDS}, got {kind!r}")


def formula_tsv_row(n: int, r: int, k: int, target: str) -> str:
    tv = turan_value_formula(n, r, k, target)
    return "\t".join([str(n), str(r), str(k), target, str(tv.value), tv.validity_note.value])
