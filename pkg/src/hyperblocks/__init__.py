"""Finite hyperfields assembled from blocks of pairs.

The package builds candidate hyperfields on a finite abelian group by
choosing, for each group element x, which elements may appear in x + 1.
The choices that can possibly work come in indivisible orbits (blocks),
so whole families can be enumerated, verified, counted, and compared
against quotients of finite fields.
"""
from .blocks import (
    BlockPartition,
    CoeffMatrix,
    block_label,
    coefficient_matrix,
    compute_blocks,
)
from .catalog import (
    TOOL_VERSION as __version__,
    CatalogRecord,
    append_records,
    dedup_records,
    load_records,
    make_record,
)
from .census import (
    MODE_AMPLE_ONLY,
    MODE_FULL,
    Census,
    CensusClass,
    canonical_form,
    census_all_minus_ones,
    certified_candidates,
    enumerate_sharded,
    enumerate_subsets,
    merge_censuses,
    SweepReport,
    verify_all_subsets,
)
from .counting import (
    BoundReport,
    InequalitySystem,
    InfiniteQuotientBound,
    InvalidSwapError,
    ample_system,
    count_solutions,
    decompose_and_bound,
    infinite_quotient_upper_bound,
    valid_swap,
)
from .errors import CapacityError
from .groups import AbelianGroup, abelian_groups_up_to, invariant_factors
from .hyperfields import (
    STATUS_CERTIFIED,
    STATUS_UNVERIFIED,
    STATUS_VERIFIED,
    AmpleParams,
    HyperfieldCandidate,
    VerificationReport,
    ample_params,
    block_subset_of,
    build_candidate,
    certify_ample,
    is_ample,
    is_union_of_blocks,
    krasner,
    sign_hyperfield,
    verify_axioms,
)
from .linear import (
    FetvinsReport,
    LinearSystem,
    SolverInvariantError,
    ample_solve,
    brute_force_solve,
    check,
    check_fetvins,
    iter_normalized_systems,
    set_sum,
)
from .quotients import (
    NONQUOTIENT,
    QUOTIENT,
    UNKNOWN,
    FiniteField,
    QuotientStatusReport,
    excludes_infinite_quotient,
    find_finite_quotient,
    quotient_hyperfield,
    quotient_status,
)

__all__ = [
    "AbelianGroup",
    "AmpleParams",
    "BlockPartition",
    "BoundReport",
    "CapacityError",
    "CatalogRecord",
    "Census",
    "CensusClass",
    "CoeffMatrix",
    "FetvinsReport",
    "FiniteField",
    "HyperfieldCandidate",
    "InequalitySystem",
    "InfiniteQuotientBound",
    "InvalidSwapError",
    "LinearSystem",
    "MODE_AMPLE_ONLY",
    "MODE_FULL",
    "NONQUOTIENT",
    "QUOTIENT",
    "QuotientStatusReport",
    "STATUS_CERTIFIED",
    "STATUS_UNVERIFIED",
    "STATUS_VERIFIED",
    "SolverInvariantError",
    "UNKNOWN",
    "VerificationReport",
    "abelian_groups_up_to",
    "ample_params",
    "ample_solve",
    "ample_system",
    "append_records",
    "block_label",
    "block_subset_of",
    "brute_force_solve",
    "build_candidate",
    "canonical_form",
    "census_all_minus_ones",
    "certified_candidates",
    "certify_ample",
    "check",
    "check_fetvins",
    "coefficient_matrix",
    "compute_blocks",
    "count_solutions",
    "decompose_and_bound",
    "dedup_records",
    "enumerate_sharded",
    "enumerate_subsets",
    "excludes_infinite_quotient",
    "find_finite_quotient",
    "infinite_quotient_upper_bound",
    "invariant_factors",
    "is_ample",
    "is_union_of_blocks",
    "iter_normalized_systems",
    "krasner",
    "load_records",
    "make_record",
    "merge_censuses",
    "SweepReport",
    "verify_all_subsets",
    "quotient_hyperfield",
    "quotient_status",
    "set_sum",
    "sign_hyperfield",
    "valid_swap",
    "verify_axioms",
]
