"""Trade-off capacity regions for public/private classical communication
and secret key over small quantum channels."""

from .channels import (
    EvolveResult,
    Isometry,
    KrausChannel,
    channel_document,
    evolve,
    is_antidegradable_label,
    is_degradable_label,
    isometric_extension,
    load_channel,
    make_cloning,
    make_dephasing,
    make_erasure,
    make_identity,
    tensor_channels,
)
from .entropy import (
    binary_entropy,
    cq_conditional_entropy,
    entropy_from_eigenvalues,
    mutual_information,
    shannon_entropy,
    von_neumann_entropy,
)
from .linalg import (
    dag,
    hermitian_eigenvalues,
    partial_trace,
    tensor_product,
    validate_density,
)
from .regions import (
    BoundTriple,
    BoundaryFamily,
    Halfspace,
    MembershipResult,
    ParetoPoint,
    RateTriple,
    additivity_gap,
    cloning_bounds,
    cloning_family,
    cloning_spectra,
    corner_from_cq,
    dephasing_bounds,
    dephasing_family,
    dephasing_gamma,
    eb_bounds,
    eb_family,
    erasure_bounds,
    erasure_family,
    membership,
    pareto_point,
    sample_boundary,
    translated_region,
    unit_matrix_inverse_check,
    unit_resource_region,
)
from .tradeoff import (
    CqEnsemble,
    CqEvaluation,
    RegionQuantities,
    SearchConfig,
    TradeoffWeights,
    antidegradable_value,
    cq_tradeoff_f,
    evaluate_ensemble,
    holevo_capacity,
    maximize_p,
    objective_p,
    pauli_symmetrize,
    private_information,
    public_private_tradeoff,
    quantum_dynamic_d,
    region_quantities,
    tensor_ensembles,
)

__version__ = "0.1.0"
