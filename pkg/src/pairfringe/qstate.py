"""Two-qubit state representations, channels, partial trace, and entropy.

Conventions used throughout the package:

* basis ordering is (|uu>, |ud>, |du>, |dd>), first slot = particle 1;
* spin-up is the column vector (1, 0);
* entropies are in bits (log base 2), so the entanglement of a pure
  two-qubit state lies in [0, 1].

All values are immutable and all operations are pure functions, so they are
safe to share between concurrent sweep workers.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import InvalidDensityError, InvalidStateError, ParameterError

__all__ = [
    "QubitId",
    "PARTICLE_1",
    "PARTICLE_2",
    "SourceState",
    "make_source",
    "apply_phase_gauge",
    "to_density",
    "validate_density",
    "partial_trace",
    "von_neumann_entropy",
    "depolarize",
    "state_fidelity",
    "random_source_amplitudes",
    "random_source_state",
]

# Amplitudes with |Im| below this are treated as real for closed-form gating.
REAL_ATOL = 1e-12
# Input norms deviating from 1 by more than this get the renormalization flag.
NORM_FLAG_TOL = 1e-9


class QubitId(Enum):
    """Which particle of the pair; labels only, both are plain spin-1/2."""

    PARTICLE_1 = 0
    PARTICLE_2 = 1


PARTICLE_1 = QubitId.PARTICLE_1
PARTICLE_2 = QubitId.PARTICLE_2


@dataclass(frozen=True, eq=False)
class SourceState:
    """Normalized pure two-qubit source state.

    ``gamma`` holds the four complex amplitudes in basis order
    (|uu>, |ud>, |du>, |dd>). ``renormalized`` records whether
    :func:`make_source` had to rescale the input.
    """

    gamma: np.ndarray
    renormalized: bool = False

    def __post_init__(self):
        g = np.array(self.gamma, dtype=complex).reshape(-1)
        if g.shape != (4,):
            raise InvalidStateError(f"expected 4 amplitudes, got shape {np.shape(self.gamma)}")
        if not (np.all(np.isfinite(g.real)) and np.all(np.isfinite(g.imag))):
            raise InvalidStateError("non-finite amplitude")
        norm = np.linalg.norm(g)
        if abs(norm - 1.0) > 1e-12:
            raise InvalidStateError(
                f"SourceState must be normalized (norm={norm!r}); build via make_source()"
            )
        g.setflags(write=False)
        object.__setattr__(self, "gamma", g)

    @property
    def is_real(self) -> bool:
        """True when every amplitude is real to within 1e-12."""
        return bool(np.max(np.abs(self.gamma.imag)) <= REAL_ATOL)

    def __repr__(self):  # pragma: no cover - debugging aid
        amps = ", ".join(f"{a:.6g}" for a in self.gamma)
        return f"SourceState([{amps}])"


def make_source(gamma) -> SourceState:
    """Build a normalized :class:`SourceState` from four amplitudes.

    The amplitudes are always rescaled to unit norm; the ``renormalized``
    flag is set only when the input norm deviated from 1 by more than 1e-9.
    An all-zero input raises :class:`InvalidStateError`.
    """
    g = np.asarray(gamma, dtype=complex).reshape(-1)
    if g.shape != (4,):
        raise InvalidStateError(f"expected 4 amplitudes, got shape {np.shape(gamma)}")
    if not (np.all(np.isfinite(g.real)) and np.all(np.isfinite(g.imag))):
        raise InvalidStateError("non-finite amplitude")
    norm = float(np.linalg.norm(g))
    if norm < 1e-150:
        raise InvalidStateError("amplitude vector must be nonzero")
    return SourceState(g / norm, renormalized=abs(norm - 1.0) > NORM_FLAG_TOL)


def apply_phase_gauge(
    state: SourceState, eta1: float, eta2: float, global_phase: float = 0.0
) -> SourceState:
    """Apply the local z-phase gauge (theta, theta+eta2, theta+eta1, theta+eta1+eta2).

    These are the amplitude phases absorbable into analyzer phase offsets and a
    global phase, so every observable fringe visibility is invariant under them.
    Arbitrary independent per-amplitude phases are NOT a gauge: the combination
    arg(g1)-arg(g2)-arg(g3)+arg(g4) is physical and changes visibilities.
    """
    phases = np.exp(
        1j * (global_phase + np.array([0.0, eta2, eta1, eta1 + eta2]))
    )
    return make_source(state.gamma * phases)


def to_density(state: SourceState) -> np.ndarray:
    """Rank-1 projector |state><state| as a 4x4 complex array."""
    return np.outer(state.gamma, state.gamma.conj())


def validate_density(rho: np.ndarray, *, herm_atol: float = 1e-12,
                     trace_atol: float = 1e-12, eig_floor: float = -1e-10) -> None:
    """Raise :class:`InvalidDensityError` unless ``rho`` is a valid density matrix.

    Checks Hermiticity, unit trace, and positive semidefiniteness (eigenvalues
    above ``eig_floor``, which allows double-precision roundoff after channel
    composition).
    """
    r = np.asarray(rho, dtype=complex)
    if r.ndim != 2 or r.shape[0] != r.shape[1]:
        raise InvalidDensityError(f"density matrix must be square, got shape {r.shape}")
    if not (np.all(np.isfinite(r.real)) and np.all(np.isfinite(r.imag))):
        raise InvalidDensityError("non-finite entry")
    if np.max(np.abs(r - r.conj().T)) > herm_atol:
        raise InvalidDensityError("matrix is not Hermitian within tolerance")
    tr = np.trace(r)
    if abs(tr - 1.0) > trace_atol:
        raise InvalidDensityError(f"trace must be 1, got {tr!r}")
    if np.min(np.linalg.eigvalsh(r)) < eig_floor:
        raise InvalidDensityError("matrix has a negative eigenvalue beyond tolerance")


def partial_trace(rho: np.ndarray, keep: QubitId) -> np.ndarray:
    """Reduce a 4x4 two-qubit density matrix to the 2x2 marginal of ``keep``."""
    r = np.asarray(rho, dtype=complex).reshape(2, 2, 2, 2)
    if keep is QubitId.PARTICLE_1:
        return np.einsum("ikjk->ij", r)
    return np.einsum("kikj->ij", r)


def von_neumann_entropy(reduced: np.ndarray) -> float:
    """Entropy -sum(lam * log2(lam)) of a 2x2 density matrix, in bits.

    ``0*log(0)`` is taken as 0. Eigenvalues below -1e-8 raise
    :class:`InvalidDensityError`; smaller negative roundoff is clipped.
    """
    r = np.asarray(reduced, dtype=complex)
    lam = np.linalg.eigvalsh(r)
    if lam.min() < -1e-8:
        raise InvalidDensityError(f"negative eigenvalue {lam.min()!r} in reduced density matrix")
    lam = np.clip(lam.real, 0.0, 1.0)
    nz = lam[lam > 0.0]
    return float(-(nz * np.log2(nz)).sum())


def depolarize(rho: np.ndarray, lam: float) -> np.ndarray:
    """Depolarizing channel (1-lam)*rho + lam*I/d for lam in [0, 1]."""
    if not 0.0 <= lam <= 1.0:
        raise ParameterError(f"depolarizing strength must be in [0, 1], got {lam!r}")
    r = np.asarray(rho, dtype=complex)
    d = r.shape[0]
    return (1.0 - lam) * r + lam * np.eye(d, dtype=complex) / d


def state_fidelity(a: SourceState, b: SourceState) -> float:
    """|<a|b>|^2; insensitive to global phase."""
    return float(abs(np.vdot(a.gamma, b.gamma)) ** 2)


def random_source_amplitudes(n: int, rng: np.random.Generator, *, real: bool = False) -> np.ndarray:
    """(n, 4) array of Haar-uniform normalized amplitude vectors.

    ``real=True`` restricts to real amplitudes (uniform on the 3-sphere).
    """
    if real:
        g = rng.standard_normal((n, 4)).astype(complex)
    else:
        g = rng.standard_normal((n, 4)) + 1j * rng.standard_normal((n, 4))
    g /= np.linalg.norm(g, axis=1, keepdims=True)
    return g


def random_source_state(rng: np.random.Generator, *, real: bool = False) -> SourceState:
    """A single Haar-random :class:`SourceState`."""
    return make_source(random_source_amplitudes(1, rng, real=real)[0])
