"""Commutative algebra on pointed monoids at desk scale.

Two computable monoid families (finite multiplication tables and lattice
monoids N^a x Z^b with a basepoint) carry ideals, Zariski and hull-kernel
spectra, closure operations, valuations into lex Z^k, and the continuity
machinery for ideal-defined topologies.  See the README for the CLI.
"""

from .errors import (
    BenchError,
    DegenerateLocalization,
    DomainError,
    InvalidElement,
    InvalidHom,
    InvalidMonoid,
    NotProper,
    NotSeparated,
    NotTorsionFree,
    PreconditionError,
    RelationAxiomError,
    ResourceBound,
    UnsupportedQuotient,
)
from .monoids import (
    BOTTOM,
    LatticeMonoid,
    MonoidHom,
    TableMonoid,
    check_hom,
    cyclic_group_monoid,
    free_monoid,
    group_completion,
    group_monoid,
    identity_hom,
    is_cancellative,
    localize,
    mul,
    power_hom,
    quotient_by_ideal,
    truncated_free_monoid,
    two_element_monoid,
)
from .ideals import (
    Ideal,
    bracket_power,
    colon,
    ideal_generate,
    ideal_membership,
    ideal_power,
    is_prime,
    is_rad_finite,
    maximal_ideal,
    minimal_generators,
    mspec,
    prime_of_support,
    radical,
    unit_ideal,
    units,
    zero_ideal,
)
from .topology import (
    FiniteSpace,
    SubbasisSpace,
    export_dot,
    hochster_check,
    hull_kernel_space,
    is_t0,
    patch_closed_check,
    patch_topology,
    specialization_order,
    ultrafilter_criterion,
)
from .asets import (
    ASet,
    aset_via_hom,
    enumerate_asubsets,
    id_proper_space,
    id_space,
    is_finitely_generated,
    regular_aset,
    sset_proper_space,
    sset_space,
    wedge,
)
from .closures import (
    ClosureOp,
    apply_closure,
    apply_closure_report,
    close_asubset,
    finite_type_ify,
    fixed_point_space,
    frobenius_closure,
    identity_closure,
    in_integral_closure,
    indiscrete_closure,
    integral_closure,
    localization_check,
    persistence_check,
    radical_closure,
    saturation_closure,
    standard_closures,
    tight_closure,
)
from .ordgroups import (
    ZERO,
    ConvexSubgroup,
    Subgroup,
    convex_subgroup_generated,
    is_cofinal,
    lex_cmp,
    lex_le,
    lex_lt,
    subgroup_generated,
)
from .valuations import (
    DivOracle,
    DivRelation,
    Valuation,
    are_equivalent,
    canonicalize,
    char_subgroup,
    check_relation_axioms,
    equivalence_witness,
    evaluate,
    in_max_ideal_of_valuation_monoid,
    induced_on_completion,
    is_valid_valuation,
    lattice_valuation,
    relation_of,
    restrict,
    supp,
    trivial_valuation,
    valuation_from_relation,
    valuation_monoid_membership,
    value_group,
)
from .spv import (
    ITopology,
    basic_open_contains,
    basis_R_intersection_params,
    basis_R_member,
    c_gamma_I,
    cont_space,
    continuous_by_open_preimage,
    in_spv_A_I,
    is_continuous,
    is_open_in_Itop,
    is_top_nilpotent,
    metric_d,
    retract,
    retract_preimage_check,
    spv_enumerate,
    spv_functor,
)
