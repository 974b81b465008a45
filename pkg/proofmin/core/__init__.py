"""
Core package for proofmin components.
"""

from .bounds import (
    BoundProvenance,
    BoundResult,
    LowerBounder,
    SmusQuery,
    SmusResult,
    mus_bound,
    smus_lower_bound,
    subproblem_bound,
    unused_frontier_clauses,
)
from .cnf import EMPTY_CLAUSE, Clause, Formula, Literal, frontier, parse_dimacs, resolve, subsumes
from .config import OrderDirection, SearchConfig, SearchMode
from .dominance import DominanceCache, DominanceEntry, dominates
from .dpll import SatStatus, SolveResult, complete, correcting_clauses, is_sat, solve
from .exceptions import (
    ConfigurationError,
    DimacsParseError,
    GeneratorParameterError,
    InvalidCertificateError,
    LratParseError,
    NotAProofSetError,
    ProofFormatError,
    ProofminError,
    SatInputError,
    SearchInvariantError,
    SolverTimeoutError,
    UnsupportedRatError,
)
from .generators import Family, InstanceSpec, generate, generate_mus_variant
from .lrat import LratLine, MeasureReport, expand_to_resolution, measure, parse_lrat
from .proof import (
    LayerList,
    Proof,
    ProofBuilder,
    ProofStep,
    Verdict,
    VerdictReason,
    canonical_layer_list,
    layers_to_proof,
    read_proof,
    verify_proof,
    write_proof,
)
from .search import ProofMinimizer, ProgressEvent, SearchOutcome, SearchStats, SearchStatus, minimize
from .subproblem import Derivation, Subproblem, derivable, partition, prune_unused, root_subproblem

__all__ = [
    # Values
    "Literal",
    "Clause",
    "Formula",
    "EMPTY_CLAUSE",
    "resolve",
    "subsumes",
    "frontier",
    "parse_dimacs",

    # Proofs
    "Proof",
    "ProofStep",
    "ProofBuilder",
    "Verdict",
    "VerdictReason",
    "LayerList",
    "verify_proof",
    "canonical_layer_list",
    "layers_to_proof",
    "read_proof",
    "write_proof",

    # LRAT
    "LratLine",
    "MeasureReport",
    "parse_lrat",
    "expand_to_resolution",
    "measure",

    # SAT
    "SatStatus",
    "SolveResult",
    "solve",
    "complete",
    "is_sat",
    "correcting_clauses",

    # Bounds
    "SmusQuery",
    "SmusResult",
    "BoundProvenance",
    "BoundResult",
    "LowerBounder",
    "mus_bound",
    "smus_lower_bound",
    "subproblem_bound",
    "unused_frontier_clauses",

    # Search
    "Subproblem",
    "Derivation",
    "root_subproblem",
    "derivable",
    "partition",
    "prune_unused",
    "DominanceEntry",
    "DominanceCache",
    "dominates",
    "SearchConfig",
    "SearchMode",
    "OrderDirection",
    "ProofMinimizer",
    "ProgressEvent",
    "SearchOutcome",
    "SearchStats",
    "SearchStatus",
    "minimize",

    # Generators
    "Family",
    "InstanceSpec",
    "generate",
    "generate_mus_variant",

    # Errors
    "ProofminError",
    "DimacsParseError",
    "ProofFormatError",
    "LratParseError",
    "UnsupportedRatError",
    "InvalidCertificateError",
    "NotAProofSetError",
    "SatInputError",
    "SolverTimeoutError",
    "SearchInvariantError",
    "GeneratorParameterError",
    "ConfigurationError",
]
