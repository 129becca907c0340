"""Independent ground truth: explicit joint-state matrices after the interferometer.

The closed forms in the interferometer module reduce everything to scalar
expectations. This module never uses those reductions: it assembles the full
(2d)x(2d) output density matrix from the evolution-block sandwiches, weights
the two preparation branches by (1 +/- s)/2, and derives every observable by
partial tracing. Agreement between the two routes (to 1e-10 under the
standard convention) is the package's core correctness check.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConsistencyViolation
from .fock import JointState, _reduce_to_field, _reduce_to_qubit, purity
from .interferometer import InterferometerConfig, summarize
from .jcm import BlockConvention, JcmBlocks, assemble_joint, unitarity_defect

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
_I2 = np.eye(2, dtype=complex)

TRACE_TOL = 1e-8
EQUIVALENCE_TOL = 1e-10


@dataclass(frozen=True)
class OracleReport:
    """Deviations between the closed-form pipeline and the matrix route."""

    config: InterferometerConfig
    max_dev_bloch: float
    max_dev_pq: float
    max_dev_pm: float
    max_dev_g_joint: float
    unitarity_defect: float

    @property
    def max_deviation(self) -> float:
        return max(self.max_dev_bloch, self.max_dev_pq, self.max_dev_pm,
                   self.max_dev_g_joint)

    def passes(self, tol: float = EQUIVALENCE_TOL):
        """True/False under the standard convention; None (no verdict) under literal."""
        if self.config.convention is not BlockConvention.UNITARY_STANDARD:
            return None
        return self.max_deviation <= tol


def _branch(rho_m: np.ndarray, way: np.ndarray, other: np.ndarray, phi: float,
            pauli_x: np.ndarray, pauli_y: np.ndarray, pauli_z: np.ndarray) -> np.ndarray:
    """One preparation branch of the output state.

    way/other are the two blocks feeding this branch; the qubit factors are
    projectors (1 +/- pauli_x)/4 on the way basis plus the phase-dressed
    coherence terms.
    """
    out = np.kron((_I2 + pauli_x) / 4.0, way.conj().T @ rho_m @ way)
    out += np.kron((_I2 - pauli_x) / 4.0, other.conj().T @ rho_m @ other)
    out -= np.exp(-1j * phi) * np.kron(
        (pauli_z - 1j * pauli_y) / 4.0, way.conj().T @ rho_m @ other
    )
    out -= np.exp(1j * phi) * np.kron(
        (pauli_z + 1j * pauli_y) / 4.0, other.conj().T @ rho_m @ way
    )
    return out


def _assemble_final(s: float, rho_m: np.ndarray, blocks: JcmBlocks, phi: float,
                    pauli_x: np.ndarray, pauli_y: np.ndarray,
                    pauli_z: np.ndarray) -> np.ndarray:
    """Weighted sum of the excited and ground preparation branches.

    The ground branch substitutes way -> -V_mp and other -> V_mm.
    """
    upper = _branch(rho_m, blocks.vpp.entries, blocks.vpm.entries, phi,
                    pauli_x, pauli_y, pauli_z)
    lower = _branch(rho_m, -blocks.vmp.entries, blocks.vmm.entries, phi,
                    pauli_x, pauli_y, pauli_z)
    return 0.5 * (1.0 + s) * upper + 0.5 * (1.0 - s) * lower


def final_joint_state(config: InterferometerConfig) -> JointState:
    """Joint qubit-field density matrix at the output port.

    Under the standard convention the trace must equal 1; a deviation beyond
    1e-8 raises ConsistencyViolation. Under the literal convention the trace
    drifts and is reported as-is.
    """
    field = config.field_state()
    blocks = config.blocks()
    rho = _assemble_final(config.s, field.rho, blocks, config.phi,
                          SIGMA_X, SIGMA_Y, SIGMA_Z)
    if config.convention is BlockConvention.UNITARY_STANDARD:
        trace_dev = abs(complex(np.trace(rho)) - 1.0)
        if trace_dev > TRACE_TOL:
            raise ConsistencyViolation(
                f"joint-state trace deviates by {trace_dev:.3e} at {config}"
            )
    return JointState(config.resolved_dim, rho)


def pre_merger_state(config: InterferometerConfig) -> JointState:
    """Joint state just after the beam splitter, with the merger undone.

    Exchanges the way and population axes (sigma_x -> sigma_z,
    sigma_z -> -sigma_x) in the output-state construction and forces phi = 0,
    which is the regime where the attractor appears. The qubit reduction of
    this state must match beam_splitter_state.
    """
    field = config.field_state()
    blocks = config.blocks()
    rho = _assemble_final(config.s, field.rho, blocks, 0.0,
                          SIGMA_Z, SIGMA_Y, -SIGMA_X)
    return JointState(config.resolved_dim, rho)


def equivalence_report(config: InterferometerConfig) -> OracleReport:
    """Compare the closed-form pipeline against the matrix route at one point."""
    summary = summarize(config)
    js = final_joint_state(config)
    d = js.dim
    rho_q = _reduce_to_qubit(js.rho, d)
    rho_m = _reduce_to_field(js.rho, d)
    bloch_oracle = np.array([
        float(np.trace(rho_q @ SIGMA_X).real),
        float(np.trace(rho_q @ SIGMA_Y).real),
        float(np.trace(rho_q @ SIGMA_Z).real),
    ])
    dev_bloch = float(np.abs(summary.bloch_final - bloch_oracle).max())
    dev_pq = abs(summary.p_q - purity(rho_q))
    dev_pm = abs(summary.p_m - purity(rho_m))
    dev_g_joint = abs(summary.g_joint - (1.0 - purity(js.rho)))
    defect = unitarity_defect(assemble_joint(config.blocks()))
    return OracleReport(
        config=config,
        max_dev_bloch=dev_bloch,
        max_dev_pq=dev_pq,
        max_dev_pm=dev_pm,
        max_dev_g_joint=dev_g_joint,
        unitarity_defect=defect,
    )
