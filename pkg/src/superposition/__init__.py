"""Numerical toolkit for the resource theory of superposition over linearly
independent non-orthogonal bases."""

from .basis import (
    SuperpositionBasis,
    basis_from_json,
    build_basis,
    constant_overlap_basis,
    constant_overlap_gram,
    gram_determinant,
)
from .channels import (
    FreeKrausSpec,
    KrausChannel,
    apply,
    apply_selective,
    build_free_kraus,
    compose,
    cyclic_preparation_channel,
    example1_channel,
    is_superposition_free,
    make_channel,
    permutation_mixture_channel,
    random_free_channel,
)
from .errors import SuperpositionError
from .generalized import (
    BlockKrausSpec,
    BlockPartition,
    ObliqueProjectors,
    block_dephase,
    block_projectors,
    block_shift_channel,
    contiguous_partition,
    generalized_free_channel,
    is_block_free,
    m_robustness_generalized,
    m_weight_generalized,
    partition_from_json,
)
from .harness import (
    AxiomReport,
    MEASURES,
    run_axiom_campaign,
    run_oracle_campaign,
)
from .measures import (
    MeasureResult,
    RoofOptions,
    convex_roof,
    delta_map,
    example1_optimal_state,
    gamma_example1,
    m_delta,
    m_l1,
    m_l1_pure,
    m_l1_roof,
    m_rank,
    m_rank_pure,
    m_rel_ent,
    m_rel_ent_roof,
    m_robustness,
    m_weight,
    max_measure_value,
    real_dual_kraus,
    relative_entropy,
)
from .qstate import (
    CoefficientMatrix,
    DensityMatrix,
    Ensemble,
    PureState,
    coefficients_of,
    density_from_json,
    ensemble_from_isometry,
    free_state,
    is_free,
    pure_coefficients,
    random_density,
    random_free,
    random_pure,
    rho_x,
    rho_x_eigenvalues,
    state_from_coefficients,
)

__all__ = [name for name in dir() if not name.startswith("_")]
