"""Exact extremal numbers at small n by branch-and-bound.

Candidates are the r-subsets of ``{0..n-1}`` in lexicographic order.  The
include branch is explored first; a candidate can be included only if no
forbidden structure passes through it, which is all that needs checking
because the rest of the family is already free.
"""

from __future__ import annotations

import itertools
import json
import math
import multiprocessing as mp
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

from .constructions import (
    TARGET_FAMILY,
    TARGETS,
    ConstructionSpec,
    TuranValue,
    extremal_candidate,
    literature_value,
    turan_value_formula,
)
from .core import MAX_VERTICES, Hypergraph, bits, to_mask
from .errors import ParameterError, SearchLimitExceeded, UnsupportedError
from .structures import Family, StructureKind, _Search, find_structure, min_vertices


@dataclass(frozen=True)
class SolveConfig:
    n: int
    r: int
    forbidden: StructureKind
    node_limit: Optional[int] = None
    time_limit: Optional[float] = None
    deterministic: bool = True
    workers: int = 1
    symmetry_breaking: bool = False

    def __post_init__(self):
        if not 1 <= self.n <= MAX_VERTICES:
            raise ParameterError(f"n={self.n} must lie in 1..{MAX_VERTICES}")
        if self.r < 1:
            raise ParameterError(f"r={self.r} must be positive")
        if self.workers < 1:
            raise ParameterError(f"workers={self.workers} must be positive")
        if self.node_limit is not None and self.node_limit < 1:
            raise ParameterError("node_limit must be positive")


@dataclass
class SolveResult:
    status: str  # "optimal" or "bounds-only"
    lower_bound: int
    upper_bound: int
    witness_family: Hypergraph
    nodes_explored: int

    @property
    def value(self) -> Optional[int]:
        return self.lower_bound if self.status == "optimal" else None

    def report(self, witness_file: Optional[str] = None) -> dict:
        return {
            "status": self.status,
            "lower": self.lower_bound,
            "upper": self.upper_bound,
            "nodes": self.nodes_explored,
            "witness-file": witness_file,
        }

    def to_json(self, witness_file: Optional[str] = None) -> str:
        return json.dumps(self.report(witness_file), sort_keys=True)


def _candidates(n: int, r: int) -> list[int]:
    return [to_mask(c) for c in itertools.combinations(range(n), r)]


def _free_with(n: int, masks: list[int], new: int, kind: StructureKind) -> bool:
    """True when adding ``new`` to the free family ``masks`` creates no structure."""
    if len(masks) + 1 < kind.k:
        return True
    return _Search(n, masks + [new], kind, None).find_through(new) is None


def _construction_target(kind: StructureKind, r: int) -> Optional[str]:
    if r < 3:
        return None
    for target, family in TARGET_FAMILY.items():
        if kind.family.value == family:
            low = 3 if target == "minimal-cycle" else 4
            return target if kind.k >= low else None
    return None


def greedy_lower_bound(cfg: SolveConfig) -> Hypergraph:
    """A verified forbidden-free family to seed the search.

    Uses the extremal construction when one applies and is free at this
    ``n``, otherwise adds candidates greedily in lexicographic order.
    """
    n, r, kind = cfg.n, cfg.r, cfg.forbidden
    if n < r:
        return Hypergraph.from_masks(n, r, ())
    target = _construction_target(kind, r)
    if target is not None:
        try:
            H = extremal_candidate(ConstructionSpec(n, r, kind.k, target))
        except (ParameterError, UnsupportedError):
            H = None
        if H is not None and find_structure(H, kind) is None:
            return H
    fam: list[int] = []
    for c in _candidates(n, r):
        if _free_with(n, fam, c, kind):
            fam.append(c)
    return Hypergraph.from_masks(n, r, fam)


class _Stop(Exception):
    pass


class _BranchAndBound:
    def __init__(self, cfg: SolveConfig, cands: list[int], best: int, best_fam: list[int],
                 shared=None, node_limit: Optional[int] = None, deadline: Optional[float] = None):
        self.cfg = cfg
        self.n = cfg.n
        self.kind = cfg.forbidden
        self.cands = cands
        self.M = len(cands)
        self.best = best
        self.best_fam = list(best_fam)
        self.shared = shared
        self.limit = node_limit
        self.deadline = deadline
        self.nodes = 0
        self.open_bound = -1
        self.fam: list[int] = []
        self.deg = [0] * cfg.n
        # candidates through vertex 0 come first in lexicographic order
        self.v0_end = math.comb(cfg.n - 1, cfg.r - 1) if cfg.symmetry_breaking else None

    def _best(self) -> int:
        if self.shared is not None and self.shared.value > self.best:
            return self.shared.value
        return self.best

    def _record(self, count: int) -> None:
        if count > self.best:
            self.best = count
            self.best_fam = list(self.fam)
            if self.shared is not None:
                with self.shared.get_lock():
                    if count > self.shared.value:
                        self.shared.value = count

    def _tick(self, bound: int) -> None:
        self.nodes += 1
        over = self.limit is not None and self.nodes > self.limit
        if not over and self.deadline is not None and self.nodes & 255 == 0:
            over = time.monotonic() > self.deadline
        if over:
            self.open_bound = max(self.open_bound, bound)
            raise _Stop

    def _symmetry_prunes(self, idx: int, count: int, best: int) -> bool:
        if self.v0_end is None or idx < self.v0_end:
            return False
        d0 = self.deg[0]
        if max(self.deg[1:], default=0) > d0:
            return True
        return self.n * d0 // self.cfg.r <= best

    def run(self, idx: int = 0, count: int = 0) -> None:
        best = self._best()
        bound = count + self.M - idx
        if bound <= best:
            return
        self._tick(bound)
        if idx == self.M:
            self._record(count)
            return
        if self._symmetry_prunes(idx, count, best):
            return
        c = self.cands[idx]
        try:
            ok = _free_with(self.n, self.fam, c, self.kind)
        except SearchLimitExceeded:
            self.open_bound = max(self.open_bound, bound)
            raise _Stop
        if ok:
            self.fam.append(c)
            for v in bits(c):
                self.deg[v] += 1
            try:
                self.run(idx + 1, count + 1)
            except _Stop:
                self.open_bound = max(self.open_bound, count + self.M - idx - 1)
                raise
            finally:
                self.fam.pop()
                for v in bits(c):
                    self.deg[v] -= 1
        self.run(idx + 1, count)


def _prefixes(cfg: SolveConfig, cands: list[int], depth: int) -> list[tuple[int, ...]]:
    """Free include/exclude decisions on the first ``depth`` candidates, include first."""
    out = []
    for choice in itertools.product((1, 0), repeat=depth):
        fam: list[int] = []
        ok = True
        for take, c in zip(choice, cands):
            if take:
                if not _free_with(cfg.n, fam, c, cfg.forbidden):
                    ok = False
                    break
                fam.append(c)
        if ok:
            out.append(tuple(fam))
    return out


_SHARED = None


def _init_worker(shared) -> None:
    global _SHARED
    _SHARED = shared


def _solve_subtree(args):
    cfg, cands, depth, prefix, best, best_fam, node_limit, deadline = args
    bb = _BranchAndBound(cfg, cands, best, best_fam, _SHARED, node_limit, deadline)
    bb.fam = list(prefix)
    for c in prefix:
        for v in bits(c):
            bb.deg[v] += 1
    try:
        bb.run(depth, len(prefix))
        stopped = False
    except _Stop:
        stopped = True
    return bb.best, bb.best_fam, bb.nodes, stopped, bb.open_bound


def solve_exact(cfg: SolveConfig) -> SolveResult:
    """Maximum size of a family of r-sets on n vertices with no ``cfg.forbidden``.

    Returns ``optimal`` when the tree is exhausted and ``bounds-only`` when
    a node or time limit stops it first; the family is always re-verified
    by the exhaustive detector.  In deterministic mode a single worker is
    used and the time limit is ignored, so value, witness and node count
    depend only on the configuration.
    """
    n, r, kind = cfg.n, cfg.r, cfg.forbidden
    cands = _candidates(n, r) if n >= r else []
    if n < r or n < min_vertices(kind, r) or len(cands) < kind.k:
        H = Hypergraph.from_masks(n, r, cands)
        assert find_structure(H, kind) is None
        return SolveResult("optimal", len(H), len(H), H, 0)

    start = greedy_lower_bound(cfg)
    deterministic = cfg.deterministic
    deadline = None
    if cfg.time_limit is not None and not deterministic:
        deadline = time.monotonic() + cfg.time_limit
    workers = 1 if deterministic else cfg.workers

    if workers == 1:
        bb = _BranchAndBound(cfg, cands, len(start), list(start.masks), None, cfg.node_limit, deadline)
        try:
            bb.run()
            stopped = False
        except _Stop:
            stopped = True
        best, best_fam, nodes, open_bound = bb.best, bb.best_fam, bb.nodes, bb.open_bound
    else:
        depth = min(len(cands), max(1, (4 * workers - 1).bit_length()))
        shared = mp.Value("i", len(start))
        tasks = [(cfg, cands, depth, p, len(start), list(start.masks), cfg.node_limit, deadline)
                 for p in _prefixes(cfg, cands, depth)]
        best, best_fam, nodes, stopped, open_bound = len(start), list(start.masks), 0, False, -1
        with ProcessPoolExecutor(workers, mp.get_context("fork"), _init_worker, (shared,)) as ex:
            for b, fam, k_nodes, k_stopped, k_open in ex.map(_solve_subtree, tasks):
                nodes += k_nodes
                if b > best or (b == best and fam and sorted(fam) < sorted(best_fam)):
                    best, best_fam = b, fam
                if k_stopped:
                    stopped = True
                    open_bound = max(open_bound, k_open)

    H = Hypergraph.from_masks(n, r, best_fam)
    assert len(H) == best
    assert find_structure(H, kind) is None, "solver family contains the forbidden structure"
    if stopped and open_bound > best:
        return SolveResult("bounds-only", best, open_bound, H, nodes)
    return SolveResult("optimal", best, best, H, nodes)


# --- comparison with closed forms ------------------------------------------------------

_KIND_TARGET = {v: k for k, v in TARGET_FAMILY.items()}


@dataclass
class Comparison:
    n: int
    r: int
    k: int
    target: str
    solver: SolveResult
    formula: TuranValue
    source: str
    applicable: bool
    note: str = field(default="")

    @property
    def agree(self) -> Optional[bool]:
        if self.solver.status != "optimal":
            return None
        if self.formula.is_upper_bound:
            return self.solver.lower_bound <= self.formula.value
        return self.solver.lower_bound == self.formula.value

    def report(self) -> dict:
        return {
            "n": self.n, "r": self.r, "k": self.k, "target": self.target,
            "solver_status": self.solver.status,
            "solver_lower": self.solver.lower_bound,
            "solver_upper": self.solver.upper_bound,
            "formula_value": self.formula.value,
            "formula_source": self.source,
            "agree": self.agree,
            "applicable": self.applicable,
            "validity_note": self.formula.validity_note.value,
            "note": self.note,
        }


def _closed_form(n: int, r: int, k: int, target: str) -> tuple[TuranValue, str]:
    if target == "minimal-cycle" and k == 3:
        return literature_value(n, r, "minimal-triangle"), "minimal-triangle"
    if target == "cycle" and k == 3:
        return literature_value(n, r, "linear-triangle-r3"), "linear-triangle-r3"
    if target == "path" and r == 2:
        return literature_value(n, 2, "graph-path-upper-bound", k), "graph-path-upper-bound"
    return turan_value_formula(n, r, k, target), "formula"


def compare_with_formula(n: int, r: int, k: int, target: str, *, node_limit: Optional[int] = None,
                         time_limit: Optional[float] = None, symmetry_breaking: bool = False
                         ) -> Comparison:
    """Solve exactly and set the result beside the matching closed form.

    ``target`` is ``path``, ``cycle`` or ``minimal-cycle`` (the structure
    family names ``linear-path`` and so on are accepted too).  Disagreement
    at small ``n`` is data: every closed form is proven only for large ``n``.
    """
    target = _KIND_TARGET.get(target, target)
    if target not in TARGETS:
        raise ParameterError(f"target must be one of {TARGETS}, got {target!r}")
    formula, source = _closed_form(n, r, k, target)
    kind = StructureKind(Family(TARGET_FAMILY[target]), k)
    cfg = SolveConfig(n, r, kind, node_limit=node_limit, time_limit=time_limit,
                      symmetry_breaking=symmetry_breaking)
    res = solve_exact(cfg)
    applicable = n >= min_vertices(kind, r)
    note = ""
    if not applicable:
        note = "not-applicable-below-threshold"
    elif formula.valid is False:
        note = "below-stated-threshold"
    return Comparison(n, r, k, target, res, formula, source, applicable, note)
