"""Exact rational-curve counts on del Pezzo surfaces and the reduction
to point-invariants of index-two Fano threefolds."""

from .curves import CandidateClass, candidate_classes, exceptional_classes
from .errors import (
    CacheFormatError,
    IntegrityError,
    OrbitCapExceededError,
    RankMismatchError,
    ReductionStepLimitError,
    RootError,
    UnderdeterminedClassError,
)
from .lattice import (
    LatticeVector,
    PicardLattice,
    basis_vector,
    canonical_class,
    degree,
    discriminant,
    is_canonical_multiple,
    max_interpolation_points,
    normal_bundle_splitting,
    pair,
    self_intersection,
)
from .surface import (
    InvariantTable,
    WdvvRelation,
    chamber_orbits,
    check_class,
    load_cache,
    save_cache,
    seed_table,
    solve_up_to,
    wdvv_relation_R2,
    wdvv_relation_R3,
    wdvv_relation_R4,
)
from .threefold import (
    OrbitContribution,
    ThreefoldInvariantReport,
    kappa,
    lines_through_point_closed_form,
    lines_through_point_lattice,
    pencil_incidence_count,
    threefold_invariant,
)
from .weyl import (
    OrbitSummary,
    SaturationType,
    WeylContext,
    group_order,
    in_chamber,
    invariant_bilinear_dimension,
    orbit,
    orbit_summary,
    reduce_to_chamber,
    reflect,
    saturated_invariant_subgroup,
    simple_roots,
    stabilizer_order,
)

__version__ = "0.1.0"

__all__ = [
    "CandidateClass",
    "CacheFormatError",
    "IntegrityError",
    "InvariantTable",
    "LatticeVector",
    "OrbitCapExceededError",
    "OrbitContribution",
    "OrbitSummary",
    "PicardLattice",
    "RankMismatchError",
    "ReductionStepLimitError",
    "RootError",
    "SaturationType",
    "ThreefoldInvariantReport",
    "UnderdeterminedClassError",
    "WdvvRelation",
    "WeylContext",
    "basis_vector",
    "candidate_classes",
    "canonical_class",
    "chamber_orbits",
    "check_class",
    "degree",
    "discriminant",
    "exceptional_classes",
    "group_order",
    "in_chamber",
    "invariant_bilinear_dimension",
    "is_canonical_multiple",
    "kappa",
    "lines_through_point_closed_form",
    "lines_through_point_lattice",
    "load_cache",
    "max_interpolation_points",
    "normal_bundle_splitting",
    "orbit",
    "orbit_summary",
    "pair",
    "pencil_incidence_count",
    "reduce_to_chamber",
    "reflect",
    "saturated_invariant_subgroup",
    "save_cache",
    "seed_table",
    "self_intersection",
    "simple_roots",
    "solve_up_to",
    "stabilizer_order",
    "threefold_invariant",
    "wdvv_relation_R2",
    "wdvv_relation_R3",
    "wdvv_relation_R4",
    "__version__",
]
