"""Turán problems for paths and cycles in uniform hypergraphs.

Edges are Python-int bitsets over ``{0..n-1}``; the text formats use
1-based vertices.
"""

from .constructions import (
    ConstructionSpec,
    TuranValue,
    Validity,
    core_size,
    even_k_extra_family,
    extremal_candidate,
    formula_tsv_row,
    literature_value,
    star_construction,
    turan_value_formula,
)
from .core import (
    FullnessReport,
    Hypergraph,
    VertexSet,
    codegree,
    complete_hypergraph,
    format_hg,
    is_full,
    is_sparse,
    is_superfull,
    make_rng,
    neighborhood,
    parse_hg,
    random_hypergraph,
    read_hg,
    remove_vertices,
    shadow,
    write_hg,
)
from .errors import (
    FormatError,
    HypergraphError,
    HypothesisViolated,
    ParameterError,
    PreconditionError,
    RepairFailed,
    SearchLimitExceeded,
    UnsupportedError,
)
from .proof import (
    CommonList,
    ListAssignment,
    PsiQuery,
    PsiSample,
    SdrProblem,
    common_list_over_W,
    compute_lists,
    cycle_in_full,
    expand_long_path,
    expand_witness,
    find_complete_partite,
    find_sdr,
    full_subgraph,
    psi_check,
    repair_minimal,
    sample_psi,
    sample_psi_rounds,
)
from .solver import SolveConfig, SolveResult, compare_with_formula, greedy_lower_bound, solve_exact
from .structures import (
    Family,
    StructureKind,
    StructureWitness,
    Verdict,
    check_pattern,
    find_structure,
    find_structure_through,
    min_vertices,
    verify_witness,
)

__version__ = "0.1.0"
