"""pairfringe: a two-spin two-particle interferometer simulator.

Simulates a pair of spin-1/2 particles through variable phase shifters and
symmetric beam splitters, extracts one- and two-particle fringe visibilities,
which-way predictability and distinguishability, and entanglement, and checks
the identities that tie them together. A small pulse-program DSL compiles
spin-rotation/coupling sequences (including the analyzer decomposition and
built-in state preparations) into the same simulation.
"""

from .analysis import (
    ComplementarityReport,
    FringeScan,
    complementarity_report,
    complementarity_report_mixed,
    entanglement_closed_form,
    family_asymmetric,
    family_psi_alpha,
    predictability,
    distinguishability,
    scan_fringe,
    visibility_from_scan,
    visibility_joint_analytic,
    visibility_joint_matrix,
    visibility_single_analytic,
    visibility_single_matrix,
)
from .errors import (
    InvalidDensityError,
    InvalidStateError,
    ParameterError,
    PulseParseError,
    UndefinedVisibilityError,
    UnsupportedClosedFormError,
)
from .interferometer import (
    InterferenceCoefficients,
    PhasePair,
    ProbabilityTable,
    analyzer_unitary,
    closed_form_corrected_joint,
    closed_form_singles,
    detect,
    detect_rho,
    interference_coefficients,
    joint_unitary,
)
from .pulsedsl import (
    Convention,
    DEFAULT_CONVENTION,
    GradientChannel,
    PulseOp,
    PulseSequence,
    assess_preparations,
    builtin_preparations,
    calibrate_convention,
    compile_sequence,
    decompose_analyzer,
    gradient_dephase,
    parse,
    render,
)
from .qstate import (
    PARTICLE_1,
    PARTICLE_2,
    QubitId,
    SourceState,
    apply_phase_gauge,
    depolarize,
    make_source,
    partial_trace,
    state_fidelity,
    to_density,
    von_neumann_entropy,
)

__version__ = "0.1.0"
