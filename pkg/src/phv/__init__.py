"""phv: exact calculus for reductive prehomogeneous modules.

The package models modules (G, V) for reductive groups G = torus x simple
factors acting on direct sums of irreducible representations, entirely in
exact integer arithmetic: dimension bookkeeping, the castling transform and
its orbits, a catalog of the classically known families, and mechanical
consistency checks over those orbits.
"""

from .castling import (
    CastlingMove,
    EquivalenceResult,
    OrbitFragment,
    OrbitLimits,
    OrbitMember,
    castle,
    castling_equivalent,
    castling_moves,
    enumerate_orbit,
    is_reduced,
    reduce_module,
)
from .catalog import (
    FLAGS,
    CatalogEntry,
    catalog_entry,
    catalog_instantiate,
    catalog_list,
    export_catalog,
    match_nonregular_family,
)
from .core import (
    GroupShape,
    Module,
    SimpleFactor,
    Summand,
    Weight,
    canonical_form,
    canonical_key,
    dual_weight,
    dualize_factor,
    equivalent,
    group_dim,
    has_outer_symmetry,
    irrep_dim,
    is_etale_candidate,
    module,
    module_dim,
    module_from_key,
    simple_dim,
    summand_dim,
)
from .grammar import ParseError, format_module, parse_module
from .verify import (
    VIOLATION_CODES,
    Report,
    Violation,
    baues_decomposition_check,
    chain_invariant_check,
    theorem_A_check,
    theorem_B_scan,
    verify_catalog,
)

__version__ = "0.1.0"

__all__ = [
    "CastlingMove",
    "CatalogEntry",
    "EquivalenceResult",
    "FLAGS",
    "GroupShape",
    "Module",
    "OrbitFragment",
    "OrbitLimits",
    "OrbitMember",
    "ParseError",
    "Report",
    "SimpleFactor",
    "Summand",
    "VIOLATION_CODES",
    "Violation",
    "Weight",
    "baues_decomposition_check",
    "canonical_form",
    "canonical_key",
    "castle",
    "castling_equivalent",
    "castling_moves",
    "catalog_entry",
    "catalog_instantiate",
    "catalog_list",
    "chain_invariant_check",
    "dual_weight",
    "dualize_factor",
    "enumerate_orbit",
    "equivalent",
    "export_catalog",
    "format_module",
    "group_dim",
    "has_outer_symmetry",
    "irrep_dim",
    "is_etale_candidate",
    "is_reduced",
    "match_nonregular_family",
    "module",
    "module_dim",
    "module_from_key",
    "parse_module",
    "reduce_module",
    "simple_dim",
    "summand_dim",
    "theorem_A_check",
    "theorem_B_scan",
    "verify_catalog",
]
