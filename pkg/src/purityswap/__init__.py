"""purityswap: purity exchange between a qubit and a cavity mode.

A numerical toolkit for the resonant Jaynes-Cummings model read as a two-way
interferometer with a which-way marker. It evaluates the closed-form
interferometric observables (way weights, predictability, visibility,
contrast, Bloch vector, subsystem purities), cross-checks them against an
explicit joint-density-matrix oracle, audits the triangle-type bounds on
linear entropies over parameter grids, and generates figure data through the
`purity-swap` command line.
"""

from .entropy import (
    EntropyTriple,
    PurityExchangeCheck,
    alpha_entropy,
    araki_lieb_slack,
    linear_entropy,
    mutual_information,
    nonextensivity_defect,
    purity_exchange_bounds,
    tsallis,
    von_neumann,
)
from .errors import ConsistencyViolation, TruncationTooSmall
from .fock import (
    FieldState,
    FockOperator,
    JointState,
    annihilator,
    auto_dim,
    coherent_state,
    diag_fn,
    expectation,
    partial_trace_field,
    partial_trace_qubit,
    purity,
)
from .interferometer import (
    DualitySummary,
    InterferometerConfig,
    QubitState,
    attractor_fidelity,
    attractor_state,
    beam_splitter_state,
    contrast,
    contrast_factors,
    delta_purity_unitary_wwm,
    final_bloch,
    marker_purity,
    marker_purity_closed_form,
    marker_state,
    predictability,
    quanton_purity,
    summarize,
    visibility,
    way_probabilities,
)
from .jcm import (
    BlockConvention,
    JcmBlocks,
    assemble_joint,
    build_blocks,
    unitarity_defect,
)
from .oracle import (
    OracleReport,
    equivalence_report,
    final_joint_state,
    pre_merger_state,
)
from .scan import (
    AuditReport,
    GridSpec,
    RecreationResult,
    SweepRow,
    audit_araki_lieb,
    figdata,
    locate_recreation,
    oracle_check,
    sweep,
)

__version__ = "0.1.0"
