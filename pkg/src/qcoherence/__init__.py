"""Basis-relative quantum coherence: measures, basis distances, Haar experiments."""

from .distance import (
    BoundReport,
    OverlapMatrix,
    basis_distance,
    commutator_lower_bound,
    commutator_upper_bound,
    is_mutually_unbiased,
    jensen_gap_bound,
    overlap_matrix,
    quadratic_jensen_gap,
)
from .errors import (
    CoherenceError,
    ConvergenceFailureError,
    CounterexampleNotFoundError,
    DegenerateSpectrumError,
    DimensionMismatchError,
    MatrixParseError,
    NotHermitianError,
    NotOrthonormalError,
    NotPSDError,
    PointsNotDistinctError,
    TraceNotOneError,
    ValidationError,
    WeightsNotNormalizedError,
)
from .experiments import (
    ExperimentReport,
    load_report,
    random_density_matrix,
    random_hermitian,
    run_proposition31_suite,
    run_purity_sweep,
    run_srel_demo,
    run_theorem42_suite,
    write_report,
)
from .haar import (
    MomentCheck,
    MonteCarloEstimate,
    SeededGenerator,
    as_generator,
    estimate_diag_square_sum,
    estimate_expected_eta2_sq,
    exact_expected_diag_square_sum,
    exact_expected_eta2_sq,
    monomial_moment,
    overlap_moment_check,
    random_basis,
    sample_haar_unitaries,
    sample_haar_unitary,
)
from .linalg import (
    DensityMatrix,
    HermitianObservable,
    OrthonormalBasis,
    Subspace,
    fourier_basis,
    hermitian_eigendecomposition,
    operator_norm,
    purity,
    validate_density,
    von_neumann_entropy,
)
from .measures import (
    DELTA,
    ETA1,
    ETA2,
    ETA_INF,
    MeasureId,
    StateInBasis,
    approach_path,
    check_axiom1,
    check_axiom2,
    delta,
    diagonal_part,
    eta1,
    eta2,
    eta_inf,
    evaluate_measure,
    off_diagonal_part,
    random_subspace,
    rewrite_in_basis,
    s_rel,
    srel_counterexample,
    srel_family_state,
    srel_id,
    tpf_deviation,
)

__version__ = "0.1.0"
