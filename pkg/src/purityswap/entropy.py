"""Entropy and entanglement-monotone toolkit.

The workhorse is the linear entropy G = 1 - tr(rho^2), i.e. the q = 2 member
of the Tsallis family. For a bipartite system it obeys (numerically, on every
state this package produces, and conjecturally in general) the triangle-type
bounds

    |G_A - G_B| <= G_AB <= G_A + G_B

which limit how much purity two interacting systems can exchange. This module
also carries the von Neumann and alpha-entropies used to cross-check limits
of the Tsallis family.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

NEGATIVE_EIG_TOL = 1e-10
RANGE_TOL = 1e-12


def _spectrum(rho: np.ndarray) -> np.ndarray:
    """Eigenvalues of a density matrix, with tiny negatives clamped to zero.

    Numerical partial traces routinely produce eigenvalues in [-1e-10, 0);
    anything below -1e-10 is treated as a genuinely invalid state.
    """
    rho = np.asarray(rho)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ValueError(f"rho must be square, got shape {rho.shape}")
    eig = np.linalg.eigvalsh(rho)
    if eig[0] < -NEGATIVE_EIG_TOL:
        raise ValueError(f"state has negative eigenvalue {eig[0]:.3e}")
    return np.clip(eig, 0.0, None)


@dataclass(frozen=True)
class EntropyTriple:
    """Linear entropies of two subsystems and of their joint state."""

    g_a: float
    g_b: float
    g_ab: float

    def __post_init__(self):
        for name, value in (("g_a", self.g_a), ("g_b", self.g_b), ("g_ab", self.g_ab)):
            if not (-RANGE_TOL <= value <= 1.0 + RANGE_TOL):
                raise ValueError(f"{name}={value} outside [0, 1]")


def tsallis(rho_or_purity, q: float) -> float:
    """Tsallis q-entropy (1 - tr rho^q) / (q - 1).

    Accepts a density matrix for any valid q, or the scalar purity tr(rho^2)
    directly when q = 2 (then T_2 = 1 - purity, the linear entropy). q must
    be positive and different from 1; the q -> 1 limit is von_neumann (up to
    the bits/nats unit change).
    """
    if q <= 0 or q == 1:
        raise ValueError(f"q must be positive and != 1, got {q}")
    if np.isscalar(rho_or_purity):
        if q != 2:
            raise ValueError("scalar purity input is only meaningful for q = 2")
        return 1.0 - float(rho_or_purity)
    eig = _spectrum(rho_or_purity)
    powsum = float(np.sum(eig[eig > 0] ** q))
    return (1.0 - powsum) / (q - 1.0)


def alpha_entropy(rho: np.ndarray, alpha: float) -> float:
    """Renyi-type entropy log2(tr rho^alpha) / (1 - alpha) in bits, alpha in (0, 1)."""
    if not (0.0 < alpha < 1.0):
        raise ValueError(f"alpha must lie strictly inside (0, 1), got {alpha}")
    eig = _spectrum(rho)
    powsum = float(np.sum(eig[eig > 0] ** alpha))
    return math.log2(powsum) / (1.0 - alpha)


def von_neumann(rho: np.ndarray) -> float:
    """Von Neumann entropy -tr(rho log2 rho) in bits, with 0 log 0 = 0."""
    eig = _spectrum(rho)
    pos = eig[eig > 0]
    return float(-np.sum(pos * np.log2(pos)))


def linear_entropy(purity: float) -> float:
    """1 - purity, clamped into [0, 1]."""
    if not (-RANGE_TOL <= purity <= 1.0 + RANGE_TOL):
        raise ValueError(f"purity {purity} outside [0, 1]")
    return min(1.0, max(0.0, 1.0 - purity))


def mutual_information(g_q: float, g_m: float, g_joint: float) -> float:
    """Linear-entropy mutual information G_Q + G_M - G_Q G_M - G.

    Vanishes exactly for product states, where the joint linear entropy
    satisfies the non-extensive composition rule.
    """
    for name, value in (("g_q", g_q), ("g_m", g_m), ("g_joint", g_joint)):
        if not (-RANGE_TOL <= value <= 1.0 + RANGE_TOL):
            raise ValueError(f"{name}={value} outside [0, 1]")
    return g_q + g_m - g_q * g_m - g_joint


def araki_lieb_slack(t: EntropyTriple) -> tuple[float, float]:
    """Slacks (G_AB - |G_A - G_B|, G_A + G_B - G_AB) of the triangle bounds.

    The conjectured inequality holds at a point iff both slacks are above
    -tolerance; violations beyond roundoff are counterexample candidates and
    must be reported with their full configuration, never clamped.
    """
    return (t.g_ab - abs(t.g_a - t.g_b), t.g_a + t.g_b - t.g_ab)


def nonextensivity_defect(g_a: float, g_b: float, g_ab: float) -> float:
    """G_AB - (G_A + G_B - G_A G_B); zero iff the subsystems are uncorrelated."""
    for name, value in (("g_a", g_a), ("g_b", g_b), ("g_ab", g_ab)):
        if not (-RANGE_TOL <= value <= 1.0 + RANGE_TOL):
            raise ValueError(f"{name}={value} outside [0, 1]")
    return g_ab - (g_a + g_b - g_a * g_b)


@dataclass(frozen=True)
class PurityExchangeCheck:
    """Result of the unpolarized-preparation purity-exchange bounds."""

    left_slack: float
    right_slack: float

    @property
    def ok(self) -> bool:
        return self.left_slack >= -1e-9 and self.right_slack >= -1e-9


def purity_exchange_bounds(p_q: float, p_m: float) -> PurityExchangeCheck:
    """Check |P_M - P_Q| <= 1/2 <= 2 - P_M - P_Q for an unpolarized preparation.

    This is the triangle inequality specialized to a totally mixed qubit and
    a pure marker, whose conserved joint linear entropy is exactly 1/2. The
    returned slacks are (1/2 - |P_M - P_Q|) and ((2 - P_M - P_Q) - 1/2).
    """
    return PurityExchangeCheck(
        left_slack=0.5 - abs(p_m - p_q),
        right_slack=(2.0 - p_m - p_q) - 0.5,
    )
