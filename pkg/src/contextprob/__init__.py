"""Contextual probability calculus with complex and hyperbolic
Hilbert-space representations of finite probabilistic models."""

from .errors import (
    BasisMismatch,
    ConstraintUnsatisfiable,
    ContextualProbabilityError,
    DegenerateCell,
    DegenerateContext,
    HyperbolicContext,
    InvariantViolation,
    MixedContext,
    ModelValidationError,
    NonUnitaryBasis,
    NotInPositiveCone,
    OutOfRangeProbability,
    PhaseInconsistency,
    QOutOfRange,
    RapidityOverflow,
    SplitOutOfRange,
    TrigonometricContext,
    ZeroConditioningContext,
)
from .space import (
    Event,
    FiniteKolmogorovSpace,
    RandomVariable,
    ReferencePair,
    TransitionMatrix,
    are_incompatible,
    check_incompatibility_structure,
    classical_total_probability,
    conditional_probability,
    dispersion,
    is_double_stochastic,
    is_nondegenerate,
    is_symmetrically_conditioned,
    probability,
    transition_matrix,
)
from .interference import (
    ContextClass,
    InterferenceCoefficients,
    OutcomeClass,
    PhaseAssignment,
    assign_phases,
    classify_context,
    delta,
    interference_coefficients,
    k_coefficient,
    lambda_coefficient,
    reconstruct_probability,
    verify_no_global_alpha,
)
from .complex_repr import (
    ComplexAmplitude,
    HermitianOperator,
    HilbertBasis,
    a_basis_for_context,
    b_basis,
    born_probability,
    build_amplitude,
    commutator,
    distribution_mismatch,
    extend_to_a_contexts,
    image_of_context_family,
    inner_product,
    operator_for_b,
    operator_for_variable,
    quantum_average,
    verify_average_preservation,
)
from .hyperbolic import (
    HyperbolicNumber,
    HyperbolicPolar,
    exp_j,
    polar,
)
from .hyperbolic_repr import (
    GModuleBasis,
    HyperbolicAmplitude,
    build_hyperbolic_amplitude,
    check_decomposability,
    expand_in_basis,
    hyperbolic_a_basis,
    hyperbolic_born,
    hyperbolic_inner_product,
    hyperbolic_interference_transform,
)
from .multivalued import (
    SplitChain,
    build_amplitude_nvalued,
    contextual_total_probability_split,
    mu_coefficient,
)
from .models import (
    ModelDocument,
    dumps_model,
    generate_kq,
    generate_random_model,
    load_model,
    loads_model,
    save_model,
)
from .verify import VerificationReport, run_suite

__version__ = "0.1.0"
