"""Resonant Jaynes-Cummings evolution blocks on the truncated Fock space.

The joint qubit-field propagator is assembled from four field-space blocks

    U = (1/sqrt(2)) [[ V_pp,  V_pm ],
                     [ -V_mp, V_mm ]]

with the upper row fixed in both conventions:

    V_pp = sqrt(2) cos(2 pi theta sqrt(a a+))
    V_pm = -i sqrt(2) [sin(2 pi theta sqrt(a a+)) / sqrt(a a+)] a

theta is the dimensionless vacuum Rabi phase (coupling * interaction time
divided by 2 pi); it is the only time-like parameter.

Two conventions for the lower row are supported:

* "standard": V_mp = V_pm+ and V_mm = sqrt(2) cos(2 pi theta sqrt(a+ a)),
  which makes U the resonant Jaynes-Cummings propagator,
  exp(-2 pi i theta (sigma+ a + sigma- a+)), unitary to machine precision.
* "literal": V_mp = -V_pm+ and V_mm = V_pp+. These relations circulate as a
  shortcut but are not self-consistent: V_pp is Hermitian, so V_mm = V_pp,
  which breaks both unitarity and probability normalization for any mixed
  preparation. The variant is kept selectable so the size of that defect can
  be audited rather than silently corrected.

Operator functions of a a+ and a+ a are evaluated on the spectra of the
truncated matrix products (whose top entry is 0, not d), not on n + 1 for
every n. That distinction only touches the cutoff row, and it is what keeps
the standard propagator exactly unitary at finite dimension.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .fock import FockOperator


class BlockConvention(str, Enum):
    """How the lower-row evolution blocks are completed."""

    LITERAL_PAPER = "literal"
    UNITARY_STANDARD = "standard"

    @classmethod
    def from_string(cls, text: str) -> "BlockConvention":
        for member in cls:
            if member.value == text:
                return member
        raise ValueError(f"unknown convention {text!r}; use 'standard' or 'literal'")


@dataclass(frozen=True)
class JcmBlocks:
    """The four evolution blocks, tagged with their phase and convention."""

    vpp: FockOperator
    vpm: FockOperator
    vmp: FockOperator
    vmm: FockOperator
    theta: float
    convention: BlockConvention

    def __post_init__(self):
        dims = {self.vpp.dim, self.vpm.dim, self.vmp.dim, self.vmm.dim}
        if len(dims) != 1:
            raise ValueError(f"blocks must share one dimension, got {sorted(dims)}")

    @property
    def dim(self) -> int:
        return self.vpp.dim


def _sin_over_x(x: np.ndarray) -> np.ndarray:
    """sin(x)/x with the x -> 0 limit 1, elementwise."""
    out = np.ones_like(x)
    nz = x != 0
    out[nz] = np.sin(x[nz]) / x[nz]
    return out


def build_blocks(
    theta: float,
    dim: int,
    convention: BlockConvention = BlockConvention.UNITARY_STANDARD,
) -> JcmBlocks:
    """Construct the four evolution blocks at vacuum Rabi phase theta.

    Requires dim >= 2 for any nonzero theta; a one-dimensional space cannot
    host the photon-exchange block.
    """
    if dim < 1:
        raise ValueError(f"dimension must be >= 1, got {dim}")
    if dim < 2 and theta != 0.0:
        raise ValueError(f"dim={dim} cannot host photon exchange at theta={theta}")
    # Spectra of the truncated products: a a+ -> [1, ..., d-1, 0], a+ a -> [0, ..., d-1].
    x_up = np.concatenate([np.arange(1.0, dim), [0.0]])
    x_down = np.arange(float(dim))
    ang = 2.0 * math.pi * theta
    root2 = math.sqrt(2.0)
    vpp = np.diag((root2 * np.cos(ang * np.sqrt(x_up))).astype(complex))
    # sin(ang sqrt(x))/sqrt(x) = ang * sinc(ang sqrt(x)), finite at x = 0; the
    # exchange block is that function times a, a single superdiagonal.
    h = ang * _sin_over_x(ang * np.sqrt(x_up))
    vpm = np.diag(-1j * root2 * h[:-1] * np.sqrt(np.arange(1.0, dim)), 1)
    if convention is BlockConvention.LITERAL_PAPER:
        vmp = -vpm.conj().T
        vmm = vpp.conj().T
    else:
        vmp = vpm.conj().T
        vmm = np.diag((root2 * np.cos(ang * np.sqrt(x_down))).astype(complex))
    wrap = lambda m: FockOperator(dim, m)
    return JcmBlocks(wrap(vpp), wrap(vpm), wrap(vmp), wrap(vmm), float(theta), convention)


def assemble_joint(blocks: JcmBlocks) -> np.ndarray:
    """The (2d)x(2d) joint operator (1/sqrt 2) [[V_pp, V_pm], [-V_mp, V_mm]].

    Qubit-major ordering with the excited level first, matching JointState.
    """
    top = np.hstack([blocks.vpp.entries, blocks.vpm.entries])
    bottom = np.hstack([-blocks.vmp.entries, blocks.vmm.entries])
    return np.vstack([top, bottom]) / math.sqrt(2.0)


def unitarity_defect(u: np.ndarray) -> float:
    """max |U+ U - 1| entrywise; zero exactly for a unitary matrix."""
    u = np.asarray(u)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        raise ValueError(f"operator must be square, got shape {u.shape}")
    return float(np.abs(u.conj().T @ u - np.eye(u.shape[0])).max())
