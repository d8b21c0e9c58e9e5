"""Exact arithmetic of zero-sum sequence monoids over finitely generated abelian groups."""

from ._version import __version__
from .constructions import (
    QuotientTransfer,
    SplitReport,
    box_region,
    line_quotient_transfer,
    parabola_region,
    random_split_instance,
    split_is_inner_product,
)
from .diophantine import DiophSystem, MinimalSolutionSet, in_submonoid, minimal_solutions, submonoid_witness
from .errors import (
    BlockMonoidError,
    GroupMismatchError,
    NotCondensedError,
    NotContainedError,
    NotZeroSumError,
    PreconditionError,
    RefinementCapExceeded,
    ResourceLimitExceeded,
    ShapeViolation,
    UndefinedExponentError,
)
from .factorization import (
    ElementReport,
    Factorization,
    catenary_bounded,
    catenary_degree,
    delta_bounded,
    delta_star_bounded,
    distance,
    factorizations,
    length_set,
    sweep,
    tame_bounded,
)
from .groups import (
    FgGroup,
    GroupElement,
    QuotientMap,
    SubgroupBasis,
    hermite_normal_form,
    is_subgroup,
    quotient_structure,
    rank_of,
    smith_normal_form,
    subgroup_contains,
    subgroup_from,
    whole_group,
)
from .refine import (
    PrimeClassification,
    RefinementChain,
    RefinementStep,
    TransferReport,
    apply_beta,
    classify_primes,
    divisor_theory_step,
    divisor_theory_witness,
    is_divisor_theory,
    refine_chain,
    verify_transfer,
)
from .zerosum import (
    AtomSet,
    GroundSet,
    ZSequence,
    atoms_of,
    condense,
    davenport,
    exponent_e,
    is_condensed,
    is_zero_sum,
    seq_sum,
    zero_sum_sequences,
)
