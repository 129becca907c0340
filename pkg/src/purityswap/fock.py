"""Truncated Fock-space operator algebra for a single bosonic mode.

Everything is a dense complex matrix on a d-dimensional number basis
|0>, ..., |d-1>. Composite (qubit x field) states use a fixed qubit-major
ordering: joint index k = q*d + n with q = 0 for the excited level and
q = 1 for the ground level.

All constructors return immutable values (the wrapped arrays are marked
read-only), so results can be shared freely between worker processes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import TruncationTooSmall

HERMITICITY_TOL = 1e-12
EIGENVALUE_TOL = 1e-10
NORM_DEFICIT_TOL = 1e-12


def auto_dim(nbar: float) -> int:
    """Default truncation dimension for a coherent state of mean photon number nbar.

    ceil(nbar + 8*sqrt(nbar) + 20): the Poisson photon-number tail beyond
    nbar + O(sqrt(nbar)) decays super-exponentially, so this cutoff keeps the
    truncated norm deficit far below 1e-12 for desk-scale nbar.
    """
    if nbar < 0:
        raise ValueError(f"nbar must be nonnegative, got {nbar}")
    return int(math.ceil(nbar + 8.0 * math.sqrt(nbar) + 20.0))


def _readonly(arr: np.ndarray) -> np.ndarray:
    if arr.dtype == complex and arr.flags.owndata and arr.flags.writeable:
        arr.setflags(write=False)
        return arr
    out = np.array(arr, dtype=complex)
    out.setflags(write=False)
    return out


def hermiticity_defect(m: np.ndarray) -> float:
    """Largest entrywise deviation of m from its conjugate transpose."""
    return float(np.abs(m - m.conj().T).max()) if m.size else 0.0


@dataclass(frozen=True)
class FockOperator:
    """A dense operator on the truncated Fock space."""

    dim: int
    entries: np.ndarray

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError(f"dimension must be >= 1, got {self.dim}")
        if self.entries.shape != (self.dim, self.dim):
            raise ValueError(
                f"entries must be {self.dim}x{self.dim}, got {self.entries.shape}"
            )
        object.__setattr__(self, "entries", _readonly(self.entries))

    def dag(self) -> "FockOperator":
        """Conjugate transpose."""
        return FockOperator(self.dim, self.entries.conj().T)

    def __matmul__(self, other: "FockOperator") -> "FockOperator":
        if self.dim != other.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")
        return FockOperator(self.dim, self.entries @ other.entries)

    def single_band(self):
        """(offset, values) when the operator lives on one diagonal, else None.

        Ladder-operator expressions are diagonal or a single off-diagonal;
        recognizing that lets products and sandwiches run in O(d) or O(d^2)
        instead of O(d^3). The result is memoized (the entries are frozen).
        """
        try:
            return self._band
        except AttributeError:
            pass
        rows, cols = np.nonzero(self.entries)
        if rows.size == 0:
            band = (0, np.zeros(self.dim, dtype=complex))
        else:
            offsets = cols - rows
            offset = int(offsets[0])
            if offset in (-1, 0, 1) and not np.any(offsets != offset):
                band = (offset, np.diag(self.entries, offset).copy())
            else:
                band = None
        object.__setattr__(self, "_band", band)
        return band


@dataclass(frozen=True)
class FieldState:
    """Density matrix of the cavity mode, tagged with its preparation's nbar."""

    dim: int
    rho: np.ndarray
    nbar: float

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError(f"dimension must be >= 1, got {self.dim}")
        if self.rho.shape != (self.dim, self.dim):
            raise ValueError(f"rho must be {self.dim}x{self.dim}, got {self.rho.shape}")
        defect = hermiticity_defect(self.rho)
        if defect > HERMITICITY_TOL:
            raise ValueError(f"state is not Hermitian (defect {defect:.3e})")
        smallest = float(np.linalg.eigvalsh(self.rho)[0])
        if smallest < -EIGENVALUE_TOL:
            raise ValueError(f"state is not positive semidefinite (eig {smallest:.3e})")
        object.__setattr__(self, "rho", _readonly(self.rho))


@dataclass(frozen=True)
class JointState:
    """Density matrix on the composite qubit x field space (qubit-major ordering).

    dim is the field dimension d; rho is (2d)x(2d). The trace may lawfully
    differ from 1 for states produced by non-unitary block conventions, so
    only Hermiticity is enforced here.
    """

    dim: int
    rho: np.ndarray

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError(f"dimension must be >= 1, got {self.dim}")
        if self.rho.shape != (2 * self.dim, 2 * self.dim):
            raise ValueError(
                f"rho must be {2 * self.dim}x{2 * self.dim}, got {self.rho.shape}"
            )
        defect = hermiticity_defect(self.rho)
        if defect > HERMITICITY_TOL:
            raise ValueError(f"joint state is not Hermitian (defect {defect:.3e})")
        object.__setattr__(self, "rho", _readonly(self.rho))


def annihilator(dim: int) -> FockOperator:
    """Annihilation operator a with a|n> = sqrt(n)|n-1> on the truncated basis."""
    if dim < 1:
        raise ValueError(f"dimension must be >= 1, got {dim}")
    a = np.zeros((dim, dim), dtype=complex)
    for n in range(1, dim):
        a[n - 1, n] = math.sqrt(n)
    return FockOperator(dim, a)


def diag_fn(f: Callable[[float], complex], shift: int, dim: int) -> FockOperator:
    """Diagonal operator with entry f(sqrt(n + shift)) at position (n, n).

    This realizes operator functions of the number operator's square root;
    shift = 1 gives the Rabi-phase argument family sqrt(n + 1). The caller's
    f must handle any removable singularity (for example sin(x)/x at x = 0)
    itself.
    """
    if dim < 1:
        raise ValueError(f"dimension must be >= 1, got {dim}")
    if shift < 0:
        raise ValueError(f"shift {shift} makes n + shift negative at n = 0")
    vals = [complex(f(math.sqrt(n + shift))) for n in range(dim)]
    return FockOperator(dim, np.diag(np.asarray(vals, dtype=complex)))


def coherent_state(nbar: float, phase: float = 0.0, dim: int | None = None) -> FieldState:
    """Pure coherent state |alpha><alpha| with alpha = sqrt(nbar) e^{i phase}.

    Amplitudes are built by the stable recursion c_{n+1} = c_n alpha/sqrt(n+1)
    and renormalized after truncation. nbar = 0 yields the vacuum projector
    exactly.

    Raises TruncationTooSmall if the truncated norm deficit exceeds 1e-12
    before renormalization.
    """
    if nbar < 0:
        raise ValueError(f"nbar must be nonnegative, got {nbar}")
    if dim is None:
        dim = auto_dim(nbar)
    if dim < 1:
        raise ValueError(f"dimension must be >= 1, got {dim}")
    if nbar == 0.0:
        rho = np.zeros((dim, dim), dtype=complex)
        rho[0, 0] = 1.0
        return FieldState(dim, rho, 0.0)
    alpha = math.sqrt(nbar) * np.exp(1j * phase)
    amps = np.zeros(dim, dtype=complex)
    amps[0] = math.exp(-nbar / 2.0)
    for n in range(1, dim):
        amps[n] = amps[n - 1] * alpha / math.sqrt(n)
    norm_sq = float(np.sum(np.abs(amps) ** 2))
    deficit = 1.0 - norm_sq
    if deficit > NORM_DEFICIT_TOL:
        raise TruncationTooSmall(
            f"dim={dim} loses {deficit:.3e} of the nbar={nbar} coherent state; "
            f"need at least dim={auto_dim(nbar)}"
        )
    amps /= math.sqrt(norm_sq)
    return FieldState(dim, np.outer(amps, amps.conj()), float(nbar))


def expectation(state: FieldState, op: FockOperator) -> complex:
    """trace(rho * op) for a field state and an operator of matching dimension."""
    if state.dim != op.dim:
        raise ValueError(f"dimension mismatch: state {state.dim}, operator {op.dim}")
    return complex(np.einsum("ij,ji->", state.rho, op.entries))


def purity(rho: np.ndarray) -> float:
    """Re trace(rho^2), rejecting inputs whose imaginary residue exceeds 1e-12."""
    rho = np.asarray(rho)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ValueError(f"rho must be square, got shape {rho.shape}")
    t = complex(np.einsum("ij,ji->", rho, rho))
    if abs(t.imag) > 1e-12:
        raise ValueError(f"trace(rho^2) has imaginary residue {t.imag:.3e}; "
                         "input is not Hermitian")
    return float(t.real)


def _reduce_to_field(rho: np.ndarray, dim: int) -> np.ndarray:
    """Partial trace over the qubit of a raw (2d)x(2d) qubit-major matrix."""
    return np.einsum("qnqm->nm", rho.reshape(2, dim, 2, dim))


def _reduce_to_qubit(rho: np.ndarray, dim: int) -> np.ndarray:
    """Partial trace over the field of a raw (2d)x(2d) qubit-major matrix."""
    return np.einsum("qnrn->qr", rho.reshape(2, dim, 2, dim))


def partial_trace_qubit(js: JointState) -> FieldState:
    """Reduced field state of a composite state (trace over the qubit)."""
    rho_m = _reduce_to_field(js.rho, js.dim)
    n_op = np.arange(js.dim)
    mean_n = float(np.einsum("nn,n->", rho_m, n_op).real)
    return FieldState(js.dim, rho_m, mean_n)


def partial_trace_field(js: JointState) -> np.ndarray:
    """Reduced 2x2 qubit density matrix of a composite state (trace over the field)."""
    return _reduce_to_qubit(js.rho, js.dim)
