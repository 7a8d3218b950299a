"""Rotational coherent states of a particle on a circular orbit.

The state is a displaced ground state of the isotropic 2D oscillator.  Its
Wigner function is a Gaussian that follows the orbit, and its angular
momentum quanta are Poisson distributed with mean ``J / hbar``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.stats import poisson

from .exceptions import TailMassError

TAIL_TOL = 1e-10


@dataclass(frozen=True)
class CoherentStateSpec:
    mass: float
    omega: float
    radius: float
    phase: float = 0.0
    hbar: float = 1.0

    def __post_init__(self):
        if not self.mass > 0:
            raise ValueError("mass must be positive")
        if not self.omega > 0:
            raise ValueError("omega must be positive")
        if self.radius < 0:
            raise ValueError("radius must be non-negative")
        if not self.hbar > 0:
            raise ValueError("hbar must be positive")

    @property
    def action(self) -> float:
        """``J = M omega R^2``."""
        return self.mass * self.omega * self.radius**2

    @property
    def momentum(self) -> float:
        """Orbital momentum ``P = M omega R``."""
        return self.mass * self.omega * self.radius

    @property
    def z(self) -> complex:
        return np.sqrt(self.action / self.hbar) * np.exp(-1j * self.phase)

    @property
    def position_width(self) -> float:
        """``a = hbar / (M omega)``."""
        return self.hbar / (self.mass * self.omega)

    @property
    def momentum_width(self) -> float:
        """``b = hbar M omega``."""
        return self.hbar * self.mass * self.omega

    def orbit_point(self, angle: float) -> tuple[np.ndarray, np.ndarray]:
        """Centre ``(u, v)`` of the Gaussian at orbital angle ``angle``."""
        c, s = np.cos(angle), np.sin(angle)
        u = np.array([self.radius * c, self.radius * s])
        v = np.array([-self.momentum * s, self.momentum * c])
        return u, v


def gaussian_wigner_point(spec: CoherentStateSpec, q, p, angle: float | None = None):
    """``exp(-(q-u)^2/a - (p-v)^2/b) / (pi hbar)^2``.

    ``q`` and ``p`` have a trailing axis of length 2; ``angle`` defaults to
    ``spec.phase``.
    """
    if angle is None:
        angle = spec.phase
    u, v = spec.orbit_point(angle)
    dq = np.asarray(q, dtype=float) - u
    dp = np.asarray(p, dtype=float) - v
    exponent = np.sum(dq**2, axis=-1) / spec.position_width + np.sum(dp**2, axis=-1) / spec.momentum_width
    out = np.exp(-exponent) / (np.pi * spec.hbar) ** 2
    return out if np.ndim(out) else float(out)


@dataclass(frozen=True, eq=False)
class WeightDistribution:
    weights: np.ndarray = field(repr=False)
    mean: float

    @property
    def n(self) -> np.ndarray:
        return np.arange(self.weights.size)

    @property
    def n_max(self) -> int:
        return self.weights.size - 1


def poisson_weights(lam: float, n_max: int) -> WeightDistribution:
    """``w_n = exp(-lam) lam^n / n!`` for ``n = 0..n_max`` by upward recursion.

    Raises :class:`TailMassError` when the mass beyond ``n_max`` exceeds 1e-10.
    """
    if lam < 0:
        raise ValueError(f"lambda must be non-negative, got {lam}")
    if n_max < 0:
        raise ValueError("n_max must be non-negative")
    tail = float(poisson.sf(n_max, lam)) if lam > 0 else 0.0
    if tail > TAIL_TOL:
        raise TailMassError(f"n_max = {n_max} leaves tail mass {tail:.3e} for lambda = {lam}")
    w = np.empty(n_max + 1)
    w[0] = np.exp(-lam)
    for n in range(n_max):
        w[n + 1] = w[n] * lam / (n + 1)
    return WeightDistribution(w, float(lam))


def coherent_amplitudes(z: complex, n_max: int) -> np.ndarray:
    """``<n|Z>`` for ``n = 0..n_max``.

    From the normal-ordered displacement ``exp(-|z|^2/2) exp(z b+) exp(-z* b)``
    acting on the vacuum: ``<n|Z> = exp(-|z|^2/2) z^n / sqrt(n!)``.
    """
    amp = np.empty(n_max + 1, dtype=complex)
    amp[0] = np.exp(-abs(z) ** 2 / 2.0)
    for n in range(n_max):
        amp[n + 1] = amp[n] * z / np.sqrt(n + 1)
    return amp


def coherent_overlap_weight(z: complex, n: int) -> float:
    """``|<n|Z>|^2``."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return float(abs(coherent_amplitudes(z, n)[n]) ** 2)


def distribution_entropy(w) -> float:
    """Shannon entropy ``-sum w ln w`` with ``0 ln 0 = 0``."""
    w = np.asarray(getattr(w, "weights", w), dtype=float)
    nz = w[w > 0]
    return float(-np.sum(nz * np.log(nz)))


def gaussian_reference_entropy(lam: float) -> float:
    """``[1 + ln(2 pi lam)] / 2``, the entropy of a Gaussian with mean and variance ``lam``."""
    if not lam > 0:
        raise ValueError(f"lambda must be positive, got {lam}")
    return 0.5 * (1.0 + np.log(2.0 * np.pi * lam))


def entropy_gap(lam: float, n_max: int | None = None) -> float:
    """``|S_w - S_J|`` for the Poisson distribution of mean ``lam``."""
    if n_max is None:
        n_max = int(lam + 20 * np.sqrt(lam) + 40)
    return abs(distribution_entropy(poisson_weights(lam, n_max)) - gaussian_reference_entropy(lam))
