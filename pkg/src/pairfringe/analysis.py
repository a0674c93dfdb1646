"""Visibilities, which-way quantities, entanglement, and the identities tying them.

For a pure source with amplitudes g = (g1, g2, g3, g4):

* one-particle visibility  V_i  = fringe contrast of p(up_i) as phi_i varies;
* two-particle visibility  V_12 = fringe contrast of the corrected joint
  probability pbar(uu);
* predictability           P_i  = |w_i_up - w_i_down| from path weights alone;
* distinguishability       D_i  = sqrt(1 - V_i^2);
* entanglement             E    = entropy (bits) of either one-particle marginal.

For real amplitudes the closed forms are V1 = |2(g1 g3 + g2 g4)|,
V2 = |2(g1 g2 + g3 g4)|, V12 = |2(g1 g4 - g2 g3)|. The matrix route extends
to complex amplitudes: V_i = 2|<u|rho_i|d>| (fringe contrast maximized
analytically over the analyzer phase) and V12 = 2 sqrt(det rho_1) (Schmidt
route, which coincides with the corrected-joint sweep contrast on the real
manifold). Both routes obey

    V_i^2 + V12^2 + P_i^2 = 1        (triality)
    V_i^2 + D_i^2 = 1                (duality)
    D_i^2 = P_i^2 + V12^2

exactly for every pure state, and E is a fixed monotone function of V12.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from .errors import (
    ParameterError,
    UndefinedVisibilityError,
    UnsupportedClosedFormError,
)
from .interferometer import ProbabilityTable, detect, detect_rho
from .qstate import (
    PARTICLE_1,
    QubitId,
    SourceState,
    depolarize,
    make_source,
    partial_trace,
    to_density,
    von_neumann_entropy,
)

__all__ = [
    "FringeScan",
    "scan_fringe",
    "SCAN_CHANNELS",
    "visibility_from_scan",
    "visibility_single_analytic",
    "visibility_joint_analytic",
    "visibility_single_matrix",
    "visibility_joint_matrix",
    "predictability",
    "distinguishability",
    "entanglement_closed_form",
    "ComplementarityReport",
    "complementarity_report",
    "complementarity_report_mixed",
    "family_psi_alpha",
    "family_asymmetric",
]

TWO_PI = 2.0 * math.pi

# Channels extractable from a scan: four singles and four corrected joints.
SCAN_CHANNELS = (
    "p_up1", "p_dn1", "p_up2", "p_dn2",
    "pbar_uu", "pbar_ud", "pbar_du", "pbar_dd",
)

_AXES = ("phi1", "phi2", "both_locked")


@dataclass(frozen=True)
class FringeScan:
    """Ordered fringe samples: (swept phase, full probability table).

    ``axis`` says which shifter was swept; for single-axis scans the other
    shifter sits at ``fixed_phase``; ``both_locked`` sweeps phi1 = phi2
    together (the simultaneous-variation protocol used for the extreme-case
    fringes).
    """

    axis: str
    fixed_phase: float
    samples: Tuple[Tuple[float, ProbabilityTable], ...]

    def __post_init__(self):
        if self.axis not in _AXES:
            raise ParameterError(f"axis must be one of {_AXES}, got {self.axis!r}")
        if len(self.samples) < 8:
            raise ParameterError("a fringe scan needs at least 8 samples")
        phases = np.array([p for p, _ in self.samples], dtype=float)
        steps = np.diff(phases)
        if not np.all(steps > 0.0):
            raise ParameterError("scan phases must be strictly increasing")
        span = phases[-1] - phases[0]
        if span < TWO_PI - steps.max() - 1e-9:
            raise ParameterError("scan must span at least 2*pi minus one grid step")

    def channel_values(self, channel: str) -> np.ndarray:
        if channel not in SCAN_CHANNELS:
            raise ParameterError(f"unknown scan channel {channel!r}")
        return np.array([getattr(t, channel) for _, t in self.samples], dtype=float)


def scan_fringe(
    state: SourceState,
    *,
    axis: str = "phi1",
    fixed_phase: float = math.pi / 2.0,
    points: int = 256,
    noise_lambda: float = 0.0,
) -> FringeScan:
    """Sample detection probabilities over [0, 2*pi) on a uniform grid.

    ``noise_lambda`` > 0 routes through the depolarizing channel applied to
    the source density matrix.
    """
    if points < 8:
        raise ParameterError("points must be at least 8")
    rho = depolarize(to_density(state), noise_lambda) if noise_lambda > 0.0 else None
    phases = np.arange(points) * (TWO_PI / points)
    samples = []
    for phi in phases:
        if axis == "phi1":
            pair = (phi, fixed_phase)
        elif axis == "phi2":
            pair = (fixed_phase, phi)
        else:
            pair = (phi, phi)
        table = detect(state, pair) if rho is None else detect_rho(rho, pair)
        samples.append((float(phi), table))
    return FringeScan(axis=axis, fixed_phase=float(fixed_phase), samples=tuple(samples))


def visibility_from_scan(scan: FringeScan, channel: str) -> float:
    """Fringe contrast (max - min)/(max + min) of one scan channel.

    Corrected-joint channels on a single-axis scan require the fixed phase to
    sit where the cosine-cosine term vanishes (pi/2 modulo pi), which is the
    slice the extrema provably lie on; both-locked scans are accepted as the
    simultaneous-variation protocol.
    """
    if channel.startswith("pbar") and scan.axis in ("phi1", "phi2"):
        if abs(math.cos(scan.fixed_phase)) > 1e-9:
            raise ParameterError(
                "corrected-joint visibility from a single-axis scan requires the "
                f"other phase fixed at pi/2 (mod pi), got {scan.fixed_phase!r}"
            )
    values = scan.channel_values(channel)
    vmax = float(values.max())
    vmin = float(values.min())
    if vmax + vmin == 0.0:
        raise UndefinedVisibilityError(f"channel {channel!r} is identically zero")
    return (vmax - vmin) / (vmax + vmin)


def _real_gamma(state: SourceState, what: str) -> np.ndarray:
    if not state.is_real:
        raise UnsupportedClosedFormError(
            f"{what} assumes real amplitudes; use the matrix route for complex states"
        )
    return state.gamma.real


def visibility_single_analytic(state: SourceState, particle: QubitId) -> float:
    """Closed-form V_i for real amplitudes."""
    g = _real_gamma(state, "visibility_single_analytic")
    if particle is PARTICLE_1:
        return abs(2.0 * (g[0] * g[2] + g[1] * g[3]))
    return abs(2.0 * (g[0] * g[1] + g[2] * g[3]))


def visibility_joint_analytic(state: SourceState) -> float:
    """Closed-form V12 = |2(g1 g4 - g2 g3)| for real amplitudes."""
    g = _real_gamma(state, "visibility_joint_analytic")
    return abs(2.0 * (g[0] * g[3] - g[1] * g[2]))


def visibility_single_matrix(state: SourceState, particle: QubitId) -> float:
    """V_i by the matrix path: 2|<u|rho_i|d>|.

    This is the analyzer fringe contrast with the extremization over phi done
    analytically instead of on a grid, and it is exact for complex amplitudes.
    """
    red = partial_trace(to_density(state), particle)
    return float(2.0 * abs(red[0, 1]))


def visibility_joint_matrix(state: SourceState) -> float:
    """V12 by the matrix path: 2 sqrt(det rho_1) (Schmidt route).

    Equals |2(g1 g4 - g2 g3)| for every pure state (complex modulus), hence
    the corrected-joint sweep contrast on real-amplitude states. Off the real
    manifold the raw two-phase sweep can undershoot this value; the Schmidt
    route is the one that keeps the triality and entanglement identities
    exact, so reports use it.
    """
    red = partial_trace(to_density(state), PARTICLE_1)
    det = red[0, 0].real * red[1, 1].real - abs(red[0, 1]) ** 2
    return float(2.0 * math.sqrt(max(det, 0.0)))


def predictability(state: SourceState, particle: QubitId) -> float:
    """A-priori which-way knowledge P_i = |w_i_up - w_i_down| from path weights."""
    w = np.abs(state.gamma) ** 2
    if particle is PARTICLE_1:
        return float(abs(w[0] + w[1] - w[2] - w[3]))
    return float(abs(w[0] + w[2] - w[1] - w[3]))


def distinguishability(state: SourceState, particle: QubitId) -> float:
    """D_i = sqrt(1 - V_i^2) with the closed-form V_i (real amplitudes).

    Also satisfies D_i^2 = P_i^2 + V12^2 for pure states.
    """
    v = visibility_single_analytic(state, particle)
    return math.sqrt(max(0.0, 1.0 - v * v))


def entanglement_closed_form(v12: float) -> float:
    """Entanglement (bits) as a function of the two-particle visibility.

    E = H2(lam) with lam = (1 +- sqrt(1 - V12^2)) / 2; strictly increasing in
    V12 with E(0) = 0 and E(1) = 1.
    """
    v = float(v12)
    if not -1e-9 <= v <= 1.0 + 1e-9:
        raise ParameterError(f"V12 must lie in [0, 1], got {v!r}")
    v = min(max(v, 0.0), 1.0)
    s = math.sqrt(max(0.0, 1.0 - v * v))
    e = 0.0
    for lam in ((1.0 - s) / 2.0, (1.0 + s) / 2.0):
        if lam > 0.0:
            e -= lam * math.log2(lam)
    return e


@dataclass(frozen=True)
class ComplementarityReport:
    """All fringe/which-way quantities of one source plus identity residuals.

    Residuals are signed so that systematic bias under noise stays visible:
    residual_triality_i = V_i^2 + V12^2 + P_i^2 - 1 and
    residual_duality_i = V_i^2 + D_i^2 - 1. ``pure_identities`` is False for
    reports built from mixed inputs, where the pure-state identities are not
    claimed and the residuals are informational only.
    """

    V1: float
    V2: float
    V12: float
    P1: float
    P2: float
    D1: float
    D2: float
    E: float
    residual_triality_1: float
    residual_triality_2: float
    residual_duality_1: float
    residual_duality_2: float
    method: str = "closed-form"
    pure_identities: bool = True

    def quantities(self) -> Tuple[float, float, float, float, float, float]:
        """(V1, V2, V12, P1, P2, E) for visibility-level comparisons."""
        return (self.V1, self.V2, self.V12, self.P1, self.P2, self.E)


def _assemble_report(v1, v2, v12, p1, p2, e, method, pure=True) -> ComplementarityReport:
    d1 = math.sqrt(max(0.0, 1.0 - v1 * v1))
    d2 = math.sqrt(max(0.0, 1.0 - v2 * v2))
    return ComplementarityReport(
        V1=v1, V2=v2, V12=v12, P1=p1, P2=p2, D1=d1, D2=d2, E=e,
        residual_triality_1=v1 * v1 + v12 * v12 + p1 * p1 - 1.0,
        residual_triality_2=v2 * v2 + v12 * v12 + p2 * p2 - 1.0,
        residual_duality_1=v1 * v1 + d1 * d1 - 1.0,
        residual_duality_2=v2 * v2 + d2 * d2 - 1.0,
        method=method,
        pure_identities=pure,
    )


def complementarity_report(state: SourceState, method: str = "auto") -> ComplementarityReport:
    """Full report for a pure source.

    ``method='closed'`` uses the real-amplitude closed forms (raising for
    complex input); ``'matrix'`` uses the reduced-density route; ``'auto'``
    picks closed forms when the amplitudes are real.
    """
    if method == "auto":
        method = "closed" if state.is_real else "matrix"
    if method == "closed":
        v1 = visibility_single_analytic(state, PARTICLE_1)
        v2 = visibility_single_analytic(state, QubitId.PARTICLE_2)
        v12 = visibility_joint_analytic(state)
        e = entanglement_closed_form(v12)
        label = "closed-form"
    elif method == "matrix":
        v1 = visibility_single_matrix(state, PARTICLE_1)
        v2 = visibility_single_matrix(state, QubitId.PARTICLE_2)
        v12 = visibility_joint_matrix(state)
        e = von_neumann_entropy(partial_trace(to_density(state), PARTICLE_1))
        label = "matrix"
    else:
        raise ParameterError(f"method must be 'auto', 'closed', or 'matrix', got {method!r}")
    p1 = predictability(state, PARTICLE_1)
    p2 = predictability(state, QubitId.PARTICLE_2)
    return _assemble_report(v1, v2, v12, p1, p2, e, label)


def complementarity_report_mixed(rho: np.ndarray, points: int = 512) -> ComplementarityReport:
    """Scan-based report for a (possibly mixed) density matrix.

    V_i come from marginal coherences, V12 from a fixed-pi/2 corrected-joint
    scan, and E from the closed form applied to that scan value. The
    pure-state identities are not asserted for mixed inputs, so the report
    carries ``pure_identities=False`` and its residuals are informational.
    """
    r = np.asarray(rho, dtype=complex)
    red1 = partial_trace(r, PARTICLE_1)
    red2 = partial_trace(r, QubitId.PARTICLE_2)
    v1 = float(2.0 * abs(red1[0, 1]))
    v2 = float(2.0 * abs(red2[0, 1]))
    phases = np.arange(points) * (TWO_PI / points)
    pbars = np.array(
        [detect_rho(r, (phi, math.pi / 2.0)).pbar_uu for phi in phases], dtype=float
    )
    v12 = float((pbars.max() - pbars.min()) / (pbars.max() + pbars.min()))
    p1 = float(abs(red1[0, 0].real - red1[1, 1].real))
    p2 = float(abs(red2[0, 0].real - red2[1, 1].real))
    e = entanglement_closed_form(min(v12, 1.0))
    return _assemble_report(v1, v2, v12, p1, p2, e, "scan", pure=False)


def family_psi_alpha(alpha: float) -> SourceState:
    """Symmetric one-parameter family (cos a, sin a, sin a, cos a)/sqrt(2).

    V_i = |sin 2a| and V12 = |cos 2a|, so the family sweeps the full duality
    circle with P1 = P2 = 0; a = 0 is the maximally entangled source and
    a = pi/4 the fully interfering product source.
    """
    c, s = math.cos(alpha), math.sin(alpha)
    return make_source(np.array([c, s, s, c], dtype=complex) / math.sqrt(2.0))


def family_asymmetric(alpha: float, beta: float) -> SourceState:
    """Asymmetric family (cos a, sin a, cos b, sin b)/sqrt(2).

    P1 = 0, P2 = |cos(a+b) cos(a-b)|, V1 = |cos(a-b)|,
    V2 = |sin(a+b) cos(a-b)|, V12 = |sin(a-b)|. With b = pi/2 - a it reduces
    exactly to :func:`family_psi_alpha`.
    """
    return make_source(
        np.array(
            [math.cos(alpha), math.sin(alpha), math.cos(beta), math.sin(beta)],
            dtype=complex,
        )
        / math.sqrt(2.0)
    )
