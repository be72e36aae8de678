"""alcove-center: exact alcove combinatorics, characters and central traces
for quantum groups at a root of unity, with built-in verification suites."""

from .center_calc import (
    CentralElement,
    CentralFunction,
    IdempotentSpec,
    bernstein_trace,
    build_block_idempotent,
    central_character,
    central_function_from_invariant,
    membership_order,
    quantum_trace_oracle,
    translation_trace_scalar,
)
from .charring import (
    InvariantPoly,
    TorusChar,
    evaluate_at,
    exact_divide,
    factorize_denominator,
    freudenthal_multiplicities,
    quantum_dimension,
    specialize,
    tau_twist,
    to_fundamental_basis,
    weight_multiset,
    weyl_character,
    weyl_denominator,
)
from .gkm import (
    FixedPointFamily,
    NormalConeElement,
    PolyOnCartan,
    check_pushforward_square,
    lambda_omega,
    nc_membership,
    pi_star_fixed,
    pi_star_poly,
    poincare_gr_exponents,
    restrict_invariant,
)
from .linkage import (
    BlockLabel,
    block_of,
    enumerate_blocks,
    jantzen_block_criterion,
    linkage_raises,
    same_block,
    translation_verma_factors,
)
from .root_datum import (
    RootDatum,
    build_root_datum,
    coroot_pairing,
    dominance_leq,
    l_restricted_decompose,
    pairing,
    parse_type,
    validate_l,
)
from .scalars import CycScalar, QLaurent
from .weyl import (
    AffineElement,
    FiniteWeylElement,
    ParabolicType,
    act_on_weight,
    dot_action,
    generate_finite_weyl,
    length,
    min_coset_reps,
    poincare_series,
)

__version__ = "0.1.0"
