"""Combinatorial toolkit for self-assembly of graphs from branched tiles.

Pots of tiles, their construction matrices and spectra, realization search,
scenario checks, optimal-pot searches and 3-colouring reductions.
"""

from .errors import (
    BudgetExhausted,
    ClosureError,
    DegenerateInputError,
    DegreesOfFreedomError,
    InvalidDesignError,
    MalformedDesignError,
    PotSyntaxError,
    TilepotError,
)
from .graph import (
    MultiGraph,
    canonical_form,
    canonical_key,
    generate,
    isomorphic,
    load_graph,
    valency_stats,
)
from .pot import CohesiveEnd, Pot, Tile, collapse_bonds, load_pot, net_count, parse_pot, render_pot
from .realize import (
    AssemblyDesign,
    RealizationCertificate,
    assembling_pot,
    enumerate_realizable,
    find_realization,
    iter_realizable,
    verify_design,
)
from .reduction import prp_pot, srp_pot, subdivided_target, three_colorable
from .registry import results_registry, verify_entry
from .scenario import OptimaResult, ScenarioReport, canonical_pot, check_scenario, search_optimum, t1_bounds
from .spectrum import (
    ConstructionMatrix,
    OrderWitness,
    SpectrumSolution,
    construction_matrix,
    integer_feasible_at,
    min_order,
    rref,
    smallest_order,
    spectrum,
)

__version__ = "0.1.0"

__all__ = [
    "AssemblyDesign", "BudgetExhausted", "ClosureError", "CohesiveEnd", "ConstructionMatrix",
    "DegenerateInputError", "DegreesOfFreedomError", "InvalidDesignError", "MalformedDesignError",
    "MultiGraph", "OptimaResult", "OrderWitness", "Pot", "PotSyntaxError", "RealizationCertificate",
    "ScenarioReport", "SpectrumSolution", "Tile", "TilepotError", "assembling_pot", "canonical_form",
    "canonical_key", "canonical_pot", "check_scenario", "collapse_bonds", "construction_matrix",
    "enumerate_realizable", "find_realization", "generate", "integer_feasible_at", "isomorphic",
    "iter_realizable", "load_graph", "load_pot", "min_order", "net_count", "parse_pot", "prp_pot",
    "render_pot", "results_registry", "rref", "search_optimum", "smallest_order", "spectrum",
    "srp_pot", "subdivided_target", "t1_bounds", "three_colorable", "valency_stats", "verify_design",
    "verify_entry",
]
