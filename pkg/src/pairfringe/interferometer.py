"""Phase-shifter/beam-splitter unitaries and detection probabilities.

Each particle passes a variable phase shifter and a symmetric beam splitter,
described jointly by the analyzer

    U(phi) = (1/sqrt2) [[1, e^{i phi}], [-e^{-i phi}, 1]],

and the two-particle optic is the tensor product U(phi1) (x) U(phi2) in the
fixed (uu, ud, du, dd) basis. Detection probabilities are available both by
matrix evolution (any state, any density matrix) and by closed forms valid
for real amplitudes; the matrix path is the general-case authority.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import UnsupportedClosedFormError
from .qstate import SourceState

__all__ = [
    "PhasePair",
    "canonicalize",
    "analyzer_unitary",
    "joint_unitary",
    "ProbabilityTable",
    "detect",
    "detect_rho",
    "closed_form_singles",
    "InterferenceCoefficients",
    "interference_coefficients",
    "closed_form_corrected_joint",
    "corrected_joint_grid",
    "extremum_index_sets",
]

TWO_PI = 2.0 * math.pi


class PhasePair(NamedTuple):
    """Settings (phi1, phi2) of the two phase shifters, in radians."""

    phi1: float
    phi2: float


def canonicalize(phases) -> PhasePair:
    """Map both phases into [0, 2*pi). Optional; nothing below requires it."""
    p1, p2 = phases
    return PhasePair(float(p1) % TWO_PI, float(p2) % TWO_PI)


def analyzer_unitary(phi: float) -> np.ndarray:
    """2x2 analyzer (phase shifter followed by a symmetric beam splitter)."""
    e = np.exp(1j * phi)
    return np.array([[1.0, e], [-np.conj(e), 1.0]], dtype=complex) / math.sqrt(2.0)


def joint_unitary(phases) -> np.ndarray:
    """4x4 tensor product of the two analyzers in the fixed basis ordering."""
    p1, p2 = phases
    return np.kron(analyzer_unitary(float(p1)), analyzer_unitary(float(p2)))


@dataclass(frozen=True)
class ProbabilityTable:
    """Single, joint, and corrected detection probabilities at one setting.

    Corrected values are pbar(xy) = p(xy) - p(x)p(y) + 1/4 for all four
    outcome pairs; the +1/4 recentering keeps them in [0, 1/2].
    """

    p_up1: float
    p_dn1: float
    p_up2: float
    p_dn2: float
    p_uu: float
    p_ud: float
    p_du: float
    p_dd: float
    pbar_uu: float
    pbar_ud: float
    pbar_du: float
    pbar_dd: float

    @classmethod
    def from_joint(cls, joint) -> "ProbabilityTable":
        """Build the full table from the four joint probabilities (uu, ud, du, dd)."""
        p = np.clip(np.asarray(joint, dtype=float), 0.0, None)  # roundoff floor
        p_uu, p_ud, p_du, p_dd = (float(x) for x in p)
        p_up1 = p_uu + p_ud
        p_dn1 = p_du + p_dd
        p_up2 = p_uu + p_du
        p_dn2 = p_ud + p_dd
        return cls(
            p_up1=p_up1,
            p_dn1=p_dn1,
            p_up2=p_up2,
            p_dn2=p_dn2,
            p_uu=p_uu,
            p_ud=p_ud,
            p_du=p_du,
            p_dd=p_dd,
            pbar_uu=p_uu - p_up1 * p_up2 + 0.25,
            pbar_ud=p_ud - p_up1 * p_dn2 + 0.25,
            pbar_du=p_du - p_dn1 * p_up2 + 0.25,
            pbar_dd=p_dd - p_dn1 * p_dn2 + 0.25,
        )

    def validate(self, atol: float = 1e-12) -> None:
        """Raise ValueError on any probability-table invariant violation."""
        if abs(self.p_up1 + self.p_dn1 - 1.0) > atol or abs(self.p_up2 + self.p_dn2 - 1.0) > atol:
            raise ValueError("single-detection pairs must each sum to 1")
        if abs(self.p_uu + self.p_ud + self.p_du + self.p_dd - 1.0) > atol:
            raise ValueError("joint probabilities must sum to 1")
        marginals = (
            (self.p_up1, self.p_uu + self.p_ud),
            (self.p_dn1, self.p_du + self.p_dd),
            (self.p_up2, self.p_uu + self.p_du),
            (self.p_dn2, self.p_ud + self.p_dd),
        )
        for single, from_joint in marginals:
            if abs(single - from_joint) > atol:
                raise ValueError("marginal inconsistency between singles and joints")
        for pbar in (self.pbar_uu, self.pbar_ud, self.pbar_du, self.pbar_dd):
            if not -atol <= pbar <= 0.5 + atol:
                raise ValueError(f"corrected value {pbar!r} outside [0, 1/2]")

    def csv_values(self) -> tuple:
        """Values in the fringe-CSV column order (after the two phase columns)."""
        return (
            self.p_up1, self.p_dn1, self.p_up2, self.p_dn2,
            self.p_uu, self.p_ud, self.p_du, self.p_dd,
            self.pbar_uu, self.pbar_ud, self.pbar_du, self.pbar_dd,
        )


def detect(state: SourceState, phases) -> ProbabilityTable:
    """Detection probabilities by matrix evolution of a pure state."""
    out = joint_unitary(phases) @ state.gamma
    return ProbabilityTable.from_joint(np.abs(out) ** 2)


def detect_rho(rho: np.ndarray, phases) -> ProbabilityTable:
    """Detection probabilities by matrix evolution of a density matrix."""
    u = joint_unitary(phases)
    diag = np.einsum("ij,jk,ik->i", u, np.asarray(rho, dtype=complex), u.conj())
    return ProbabilityTable.from_joint(diag.real)


def _require_real(state: SourceState, what: str) -> np.ndarray:
    if not state.is_real:
        raise UnsupportedClosedFormError(
            f"{what} assumes real amplitudes; use the matrix-evolution path for complex states"
        )
    return state.gamma.real


def closed_form_singles(state: SourceState, phases) -> tuple:
    """Single-detection probabilities (p_up1, p_dn1, p_up2, p_dn2), real amplitudes only.

    p(up_1) = (1/2)[1 + 2(g1 g3 + g2 g4) cos phi1], and companions.
    """
    g = _require_real(state, "closed_form_singles")
    p1, p2 = (float(x) for x in phases)
    c1 = g[0] * g[2] + g[1] * g[3]
    c2 = g[0] * g[1] + g[2] * g[3]
    up1 = 0.5 * (1.0 + 2.0 * c1 * math.cos(p1))
    up2 = 0.5 * (1.0 + 2.0 * c2 * math.cos(p2))
    return (up1, 1.0 - up1, up2, 1.0 - up2)


class InterferenceCoefficients(NamedTuple):
    """Cosine-cosine (M) and sine-sine (N) modulation amplitudes of pbar(uu).

    |N| >= |M| for every normalized real-amplitude state, and the
    two-particle visibility equals |N|.
    """

    M: float
    N: float


def interference_coefficients(state: SourceState) -> InterferenceCoefficients:
    """Coefficients (M, N) of the corrected joint fringe, real amplitudes only."""
    g = _require_real(state, "interference_coefficients")
    n = 2.0 * (g[0] * g[3] - g[1] * g[2])
    m = 2.0 * (g[0] * g[3] + g[1] * g[2]) - 4.0 * (g[0] * g[2] + g[1] * g[3]) * (
        g[0] * g[1] + g[2] * g[3]
    )
    return InterferenceCoefficients(M=float(m), N=float(n))


def closed_form_corrected_joint(state: SourceState, phases) -> float:
    """pbar(uu) = (1/4)[1 + M cos phi1 cos phi2 - N sin phi1 sin phi2]."""
    m, n = interference_coefficients(state)
    p1, p2 = (float(x) for x in phases)
    return 0.25 * (1.0 + m * math.cos(p1) * math.cos(p2) - n * math.sin(p1) * math.sin(p2))


def corrected_joint_grid(state: SourceState, points: int = 64):
    """pbar(uu) on a points x points phase grid over [0, 2*pi), by matrix evolution.

    Returns ``(grid, phis)`` with ``grid[i, j]`` at (phi1, phi2) = (phis[i], phis[j]).
    """
    phis = np.arange(points) * (TWO_PI / points)
    e = np.exp(1j * phis)
    u = np.empty((points, 2, 2), dtype=complex)
    u[:, 0, 0] = 1.0
    u[:, 0, 1] = e
    u[:, 1, 0] = -e.conj()
    u[:, 1, 1] = 1.0
    u /= math.sqrt(2.0)
    psi = state.gamma.reshape(2, 2)
    out = np.einsum("iab,jcd,bd->ijac", u, u, psi)
    prob = np.abs(out) ** 2
    p_uu = prob[:, :, 0, 0]
    p_up1 = prob[:, :, 0, 0] + prob[:, :, 0, 1]
    p_up2 = prob[:, :, 0, 0] + prob[:, :, 1, 0]
    return p_uu - p_up1 * p_up2 + 0.25, phis


def extremum_index_sets(grid: np.ndarray, tie_tol: float = 1e-12):
    """Index sets of all grid maximizers and minimizers (within ``tie_tol``).

    Degenerate states have non-unique extrema; the full tied sets are
    reported rather than a single point.
    """
    g = np.asarray(grid, dtype=float)
    argmax = np.argwhere(g >= g.max() - tie_tol)
    argmin = np.argwhere(g <= g.min() + tie_tol)
    return argmax, argmin
