"""Identify a sign-flip oracle with as few queries as possible.

The package simulates and analyzes query strategies for the following game:
a black box applies O_j = I - 2|j><j| for some hidden index j out of N, and
the player must name j. It provides dense state-vector simulation, the
tailored test states whose "yes" outcome is orthogonal to every "no"
outcome, the square-root and unambiguous-discrimination measurements on the
"no" pyramid, closed-form expected query counts, Monte Carlo strategy runs,
and gate-level circuit constructions, plus a CLI wrapping all of it.

Qubit 1 is the most significant bit of an index ket throughout.
"""
from .analytics import (
    CLASSICAL_RATIO,
    FULLSPACE_GAMMA,
    GROVER_ANGLE,
    GROVER_K_COEF,
    GROVER_LIMIT,
    MUD_DIVISOR,
    MUD_FULL_DIVISOR,
    POINTER_GAIN,
    TESTSTATE_DIVISOR,
    TESTSTATE_FULL_DIVISOR,
    GroverPlan,
    QueryCurve,
    comparison_curves,
    g_classical,
    g_grover,
    g_grover_opt,
    g_mud,
    g_mud_fullspace,
    g_teststate,
    g_teststate_fullspace,
    recurrence_step,
    termination_probs,
)
from .circuits import (
    Circuit,
    Gate,
    ancilla_basis_angle,
    compile_graph_prep,
    compile_pair_check,
    compile_srm_unitary,
    compile_teststate_prep,
    complex_test_state,
    export,
    import_circuit,
    localize_teststate,
    prepare_graph_test_state,
    simulate,
    unitary,
)
from .measurement import (
    MudPom,
    PomOutcome,
    alpha_beta,
    build_mud,
    first_query_success,
    mud_measure,
    srm_measure,
)
from .oracle import BlackBox, apply_oracle, diffusion, grover_cycle, success_probability
from .statevector import (
    ATOL,
    Ket,
    apply_controlled,
    apply_single,
    basis_ket,
    inner,
    ry,
    sample_index,
)
from .strategies import (
    STRATEGIES,
    SearchTranscript,
    StrategyStats,
    estimate,
    run_classical,
    run_grover_verified,
    run_mud,
    run_pair_confirm,
    run_teststate_full,
    run_teststate_relevant,
)
from .teststate import (
    CandidateSet,
    SrmBasis,
    amplitudes,
    processed_state,
    pyramid_overlap,
    srm_basis,
    srm_coefficients,
    test_state,
)

__version__ = "0.1.0"

__all__ = [
    "ATOL",
    "CLASSICAL_RATIO",
    "FULLSPACE_GAMMA",
    "GROVER_ANGLE",
    "GROVER_K_COEF",
    "GROVER_LIMIT",
    "MUD_DIVISOR",
    "MUD_FULL_DIVISOR",
    "POINTER_GAIN",
    "STRATEGIES",
    "TESTSTATE_DIVISOR",
    "TESTSTATE_FULL_DIVISOR",
    "BlackBox",
    "CandidateSet",
    "Circuit",
    "Gate",
    "GroverPlan",
    "Ket",
    "MudPom",
    "PomOutcome",
    "QueryCurve",
    "SearchTranscript",
    "SrmBasis",
    "StrategyStats",
    "alpha_beta",
    "amplitudes",
    "ancilla_basis_angle",
    "apply_controlled",
    "apply_oracle",
    "apply_single",
    "basis_ket",
    "build_mud",
    "comparison_curves",
    "compile_graph_prep",
    "compile_pair_check",
    "compile_srm_unitary",
    "compile_teststate_prep",
    "complex_test_state",
    "diffusion",
    "estimate",
    "export",
    "first_query_success",
    "g_classical",
    "g_grover",
    "g_grover_opt",
    "g_mud",
    "g_mud_fullspace",
    "g_teststate",
    "g_teststate_fullspace",
    "grover_cycle",
    "import_circuit",
    "inner",
    "localize_teststate",
    "mud_measure",
    "prepare_graph_test_state",
    "processed_state",
    "pyramid_overlap",
    "recurrence_step",
    "run_classical",
    "run_grover_verified",
    "run_mud",
    "run_pair_confirm",
    "run_teststate_full",
    "run_teststate_relevant",
    "ry",
    "sample_index",
    "simulate",
    "srm_basis",
    "srm_coefficients",
    "srm_measure",
    "success_probability",
    "termination_probs",
    "test_state",
    "unitary",
]
