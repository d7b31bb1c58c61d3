"""Single-query ensemble database search, simulated and validated at desk scale.

Prepare eta identical N-state subsystems, ask the database one parity
question, reflect each subsystem about its amplitude mean, measure, and
decode the marked item by majority vote.  A brute-force global-state oracle
certifies the factorized pipeline; a seeded harness runs reproducible
experiments against the classical binary-search baseline.
"""

from .backends import active_backend, available_backends, use_backend
from .bruteforce import (
    CrossValidationResult,
    ValidationCase,
    cross_validate,
    global_d_all,
    global_parity_phase,
    marginal,
)
from .ensemble import (
    DeviationStats,
    ExperimentPlan,
    MeasurementTally,
    decode,
    deviation_stats,
    measurement_distribution,
    probability_gap,
    recommended_eta,
    sample_tally,
)
from .errors import DomainError, ResourceCapError, UnsupportedCaseError, ValidationFailure
from .harness import (
    ExperimentReport,
    TrialResult,
    place_marked,
    run_experiment,
    run_trial,
    sweep,
    to_csv,
    to_json,
)
from .operators import (
    AncillaState,
    attach_ancilla,
    d_matrix,
    inversion_about_average,
    minus_ancilla,
    phase_invert,
    post_step_amplitudes,
    xor_oracle_apply,
)
from .oracle import (
    DatabaseSpec,
    ParityQuery,
    QueryLedger,
    classical_binary_search,
    classical_query_bound,
    counts_to_query,
    parity_answer,
    quantum_phase_query,
)
from .states import (
    GlobalState,
    SubsystemState,
    default_amplitude_cap,
    equal_up_to_global_phase,
    norm,
    tensor_power,
    uniform_state,
)

__version__ = "0.1.0"

__all__ = [
    "AncillaState",
    "CrossValidationResult",
    "DatabaseSpec",
    "DeviationStats",
    "DomainError",
    "ExperimentPlan",
    "ExperimentReport",
    "GlobalState",
    "MeasurementTally",
    "ParityQuery",
    "QueryLedger",
    "ResourceCapError",
    "SubsystemState",
    "TrialResult",
    "UnsupportedCaseError",
    "ValidationCase",
    "ValidationFailure",
    "active_backend",
    "attach_ancilla",
    "available_backends",
    "classical_binary_search",
    "classical_query_bound",
    "counts_to_query",
    "cross_validate",
    "d_matrix",
    "decode",
    "default_amplitude_cap",
    "deviation_stats",
    "equal_up_to_global_phase",
    "global_d_all",
    "global_parity_phase",
    "inversion_about_average",
    "marginal",
    "measurement_distribution",
    "minus_ancilla",
    "norm",
    "parity_answer",
    "phase_invert",
    "place_marked",
    "post_step_amplitudes",
    "probability_gap",
    "quantum_phase_query",
    "recommended_eta",
    "run_experiment",
    "run_trial",
    "sample_tally",
    "sweep",
    "tensor_power",
    "to_csv",
    "to_json",
    "uniform_state",
    "use_backend",
    "xor_oracle_apply",
]
