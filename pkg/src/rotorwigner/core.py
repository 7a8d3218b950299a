"""Plane-rotor states.

A state is stored by its angular-momentum coefficients ``c_n``, ``n = -N..N``,
in the basis ``exp(i n phi) / sqrt(2 pi)``.  The angle representation is
always derived from them.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np
from scipy.special import ive

from .exceptions import (
    CutoffError,
    DegenerateStateError,
    ResolutionError,
    SpecMismatchError,
)

HBAR_SI = 1.054571817e-34  # J s
NORM_TOL = 1e-12
PARITY_TOL = 1e-12

_SQRT_2PI = np.sqrt(2.0 * np.pi)


@dataclass(frozen=True)
class RotorSpec:
    """Action scale and moment of inertia of a plane rotor."""

    hbar: float = 1.0
    inertia: float = 1.0

    def __post_init__(self):
        if not self.hbar > 0:
            raise ValueError(f"hbar must be positive, got {self.hbar}")
        if not self.inertia > 0:
            raise ValueError(f"inertia must be positive, got {self.inertia}")


class ParityClass(enum.Enum):
    EVEN = "even"
    ODD = "odd"
    MIXED = "mixed"


@dataclass(frozen=True)
class AngleGrid:
    """Uniform grid ``phi_j = -pi + 2 pi j / M`` on ``[-pi, pi)``."""

    size: int

    def __post_init__(self):
        if int(self.size) != self.size or self.size < 2:
            raise ValueError(f"grid size must be an integer >= 2, got {self.size}")

    @property
    def points(self) -> np.ndarray:
        return -np.pi + 2.0 * np.pi * np.arange(self.size) / self.size

    @property
    def spacing(self) -> float:
        return 2.0 * np.pi / self.size


@dataclass(frozen=True, eq=False)
class AngularWaveFunction:
    """Normalized rotor state truncated to ``|n| <= cutoff``."""

    spec: RotorSpec
    cutoff: int
    coeffs: np.ndarray = field(repr=False)

    def __post_init__(self):
        if int(self.cutoff) != self.cutoff or self.cutoff < 0:
            raise CutoffError(f"cutoff must be a non-negative integer, got {self.cutoff}")
        c = np.array(self.coeffs, dtype=complex).reshape(-1)
        if c.size != 2 * self.cutoff + 1:
            raise CutoffError(
                f"expected {2 * self.cutoff + 1} coefficients for cutoff {self.cutoff}, got {c.size}"
            )
        norm = np.linalg.norm(c)
        if norm == 0.0:
            raise DegenerateStateError("state has zero norm")
        if abs(norm**2 - 1.0) > NORM_TOL:
            c = c / norm
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @property
    def indices(self) -> np.ndarray:
        """Angular-momentum quantum numbers ``-N..N`` aligned with ``coeffs``."""
        return np.arange(-self.cutoff, self.cutoff + 1)

    def coeff(self, n: int) -> complex:
        if abs(n) > self.cutoff:
            return 0j
        return complex(self.coeffs[n + self.cutoff])

    def padded(self, cutoff: int) -> np.ndarray:
        """Coefficient vector zero-padded to a larger cutoff."""
        if cutoff < self.cutoff:
            raise CutoffError(f"cannot pad cutoff {self.cutoff} down to {cutoff}")
        out = np.zeros(2 * cutoff + 1, dtype=complex)
        out[cutoff - self.cutoff : cutoff + self.cutoff + 1] = self.coeffs
        return out

    def with_coeffs(self, coeffs) -> "AngularWaveFunction":
        return AngularWaveFunction(self.spec, self.cutoff, coeffs)

    @property
    def mean_momentum(self) -> float:
        """``<J> = sum |c_n|^2 n hbar``."""
        return float(np.sum(np.abs(self.coeffs) ** 2 * self.indices)) * self.spec.hbar

    @property
    def momentum_second_moment(self) -> float:
        """``<J^2> = sum |c_n|^2 (n hbar)^2``."""
        return float(np.sum(np.abs(self.coeffs) ** 2 * self.indices**2)) * self.spec.hbar**2

    @property
    def energy(self) -> float:
        """Free-rotor energy ``<J^2> / 2I``."""
        return self.momentum_second_moment / (2.0 * self.spec.inertia)


def make_eigenstate(n: int, cutoff: int, spec: RotorSpec = RotorSpec()) -> AngularWaveFunction:
    if abs(n) > cutoff:
        raise CutoffError(f"|n| = {abs(n)} exceeds cutoff {cutoff}")
    c = np.zeros(2 * cutoff + 1, dtype=complex)
    c[n + cutoff] = 1.0
    return AngularWaveFunction(spec, cutoff, c)


def make_superposition(
    terms: Iterable[tuple[int, complex]],
    cutoff: int,
    spec: RotorSpec = RotorSpec(),
) -> AngularWaveFunction:
    """Build ``sum amp_n psi_n`` and renormalize it.

    Repeated indices are accumulated.
    """
    c = np.zeros(2 * cutoff + 1, dtype=complex)
    for n, amp in terms:
        if abs(n) > cutoff:
            raise CutoffError(f"|n| = {abs(n)} exceeds cutoff {cutoff}")
        c[int(n) + cutoff] += complex(amp)
    if not np.any(np.abs(c) > 0):
        raise DegenerateStateError("all superposition amplitudes are zero")
    return AngularWaveFunction(spec, cutoff, c)


def make_wavepacket(
    mean_angle: float,
    concentration: float,
    cutoff: int,
    spec: RotorSpec = RotorSpec(),
    momentum: int = 0,
) -> AngularWaveFunction:
    """Localized state with a von Mises amplitude ``exp(k cos(phi - mean_angle))``.

    The exact Fourier coefficients ``I_n(k) exp(-i n mean_angle)`` are
    projected onto the cutoff window and renormalized.  ``momentum`` is an
    integer kick: the profile is multiplied by ``exp(i momentum phi)``.
    """
    if concentration < 0:
        raise ValueError("concentration must be non-negative")
    if concentration > 0 and cutoff < 1:
        raise CutoffError("a localized wavepacket needs cutoff >= 1")
    n = np.arange(-cutoff, cutoff + 1)
    base = n - int(momentum)
    # ive is I_n scaled by exp(-k); the common factor drops out on renormalization
    c = ive(np.abs(base), concentration) * np.exp(-1j * base * mean_angle)
    if not np.any(c != 0):
        raise CutoffError(f"momentum kick {momentum} pushes the packet outside cutoff {cutoff}")
    return AngularWaveFunction(spec, cutoff, c)


def to_angle_samples(psi: AngularWaveFunction, grid: AngleGrid) -> np.ndarray:
    """Evaluate ``psi(phi_j) = sum_n c_n exp(i n phi_j) / sqrt(2 pi)`` on the grid."""
    M, N = grid.size, psi.cutoff
    if M < 2 * N + 1:
        raise ResolutionError(f"grid of {M} points aliases modes up to |n| = {N}; need >= {2 * N + 1}")
    n = psi.indices
    spectrum = np.zeros(M, dtype=complex)
    # grid starts at -pi, hence the (-1)^n shift factor
    spectrum[n % M] = psi.coeffs * (-1.0) ** n
    return M * np.fft.ifft(spectrum) / _SQRT_2PI


def from_angle_samples(
    samples: Sequence[complex],
    cutoff: int,
    spec: RotorSpec = RotorSpec(),
) -> AngularWaveFunction:
    s = np.asarray(samples, dtype=complex).reshape(-1)
    M = s.size
    if M < 2 * cutoff + 1:
        raise ResolutionError(f"{M} samples cannot resolve cutoff {cutoff}; need >= {2 * cutoff + 1}")
    if not np.any(np.abs(s) > 0):
        raise DegenerateStateError("all samples are zero")
    n = np.arange(-cutoff, cutoff + 1)
    c = _SQRT_2PI / M * (-1.0) ** n * np.fft.fft(s)[n % M]
    if not np.any(np.abs(c) > 0):
        raise DegenerateStateError("samples have no weight inside the cutoff window")
    return AngularWaveFunction(spec, cutoff, c)


def check_same_spec(*states) -> RotorSpec:
    spec = states[0].spec
    for other in states[1:]:
        if other.spec != spec:
            raise SpecMismatchError(f"spec mismatch: {spec} vs {other.spec}")
    return spec


def inner_product(psi1: AngularWaveFunction, psi2: AngularWaveFunction) -> complex:
    """``<psi1|psi2> = sum_n conj(c1_n) c2_n``."""
    check_same_spec(psi1, psi2)
    N = max(psi1.cutoff, psi2.cutoff)
    return complex(np.vdot(psi1.padded(N), psi2.padded(N)))


def parity_class(psi: AngularWaveFunction) -> ParityClass:
    occupied = psi.indices[np.abs(psi.coeffs) >= PARITY_TOL]
    if np.all(occupied % 2 == 0):
        return ParityClass.EVEN
    if np.all(occupied % 2 == 1):
        return ParityClass.ODD
    return ParityClass.MIXED
