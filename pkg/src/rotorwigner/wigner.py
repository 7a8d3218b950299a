"""Wigner functions on the cylinder ``T*S^1``.

Two independent evaluation routes are provided:

* :func:`wigner_point` integrates the Brillouin-zone transform in closed
  form, ``sum_{n,n'} c_n c*_n' e^{i(n-n')phi} j0(pi((n+n')/2 - J/hbar))``,
  and works at any real ``J``;
* :func:`wigner_field` builds the separable mode spectrum
  ``F(m, J) = c_b conj(c_a)`` with ``a = J/hbar + m/2``, ``b = J/hbar - m/2``
  on a momentum lattice and sums the Fourier series in ``phi``.

On the integer lattice and for states of good parity the two agree exactly.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .core import (
    AngleGrid,
    AngularWaveFunction,
    ParityClass,
    RotorSpec,
    check_same_spec,
    inner_product,
    parity_class,
)
from .exceptions import ConsistencyError, ParityLatticeError, ResolutionError

IMAG_TOL = 1e-10  # on hbar * |Im f|, which is independent of the unit of action


def imag_residue(raw, hbar: float) -> float:
    """Largest ``hbar * |Im f|``; the field itself scales as ``1/hbar``."""
    return float(np.max(np.abs(raw.imag), initial=0.0)) * hbar
_J0_SERIES_CUTOFF = 1e-4


def sinc_j0(x):
    """Spherical Bessel ``j0(x) = sin(x)/x`` with ``j0(0) = 1``.

    Below ``|x| < 1e-4`` a three-term Taylor series is used.
    """
    x = np.asarray(x, dtype=float)
    small = np.abs(x) < _J0_SERIES_CUTOFF
    safe = np.where(small, 1.0, x)
    x2 = x * x
    out = np.where(small, 1.0 - x2 / 6.0 + x2 * x2 / 120.0, np.sin(safe) / safe)
    return out if out.ndim else float(out)


class LatticeStep(enum.Enum):
    INTEGER = "int"
    HALF = "half"

    @property
    def unit(self) -> float:
        return 1.0 if self is LatticeStep.INTEGER else 0.5


@dataclass(frozen=True)
class MomentumLattice:
    """Points ``J/hbar = k * step`` for ``k = a_min..a_max``.

    Every point carries the weight ``hbar`` in lattice sums, on both lattices.
    """

    step: LatticeStep
    a_min: int
    a_max: int

    def __post_init__(self):
        if self.a_max < self.a_min:
            raise ValueError(f"empty lattice range [{self.a_min}, {self.a_max}]")

    @classmethod
    def covering(cls, cutoff: int, step: LatticeStep | str = LatticeStep.INTEGER) -> "MomentumLattice":
        """Smallest lattice containing every ``J/hbar`` in ``[-cutoff, cutoff]``."""
        step = LatticeStep(step)
        k = cutoff if step is LatticeStep.INTEGER else 2 * cutoff
        return cls(step, -k, k)

    @classmethod
    def for_state(cls, psi: AngularWaveFunction, step: LatticeStep | str | None = None) -> "MomentumLattice":
        if step is None:
            step = LatticeStep.HALF if parity_class(psi) is ParityClass.MIXED else LatticeStep.INTEGER
        return cls.covering(psi.cutoff, step)

    @property
    def twice_points(self) -> np.ndarray:
        """``2 J/hbar`` as exact integers."""
        scale = 2 if self.step is LatticeStep.INTEGER else 1
        return np.arange(self.a_min, self.a_max + 1) * scale

    @property
    def points(self) -> np.ndarray:
        """``J/hbar`` at each lattice node."""
        return self.twice_points / 2.0

    def __len__(self) -> int:
        return self.a_max - self.a_min + 1


def check_lattice(psi: AngularWaveFunction, lattice: MomentumLattice) -> None:
    if lattice.step is LatticeStep.INTEGER and parity_class(psi) is ParityClass.MIXED:
        raise ParityLatticeError(
            "integer momentum lattice needs a state of good parity; use the half lattice"
        )


@dataclass(frozen=True, eq=False)
class ModeSpectrum:
    """Angular Fourier modes ``F(m, J)`` of a distribution on a lattice.

    ``values[i, k]`` multiplies ``exp(-i m_i phi) / (2 pi hbar)`` at lattice
    node ``k``.
    """

    modes: np.ndarray
    lattice: MomentumLattice
    values: np.ndarray = field(repr=False)
    spec: RotorSpec

    def __add__(self, other: "ModeSpectrum") -> "ModeSpectrum":
        if other.lattice != self.lattice or not np.array_equal(other.modes, self.modes):
            raise ValueError("mode spectra live on different supports")
        check_same_spec(self, other)
        return ModeSpectrum(self.modes, self.lattice, self.values + other.values, self.spec)

    def __mul__(self, scalar) -> "ModeSpectrum":
        return ModeSpectrum(self.modes, self.lattice, self.values * scalar, self.spec)

    __rmul__ = __mul__

    def hermitian_defect(self) -> float:
        """``max |F(-m) - conj F(m)|``; zero for real distributions."""
        return float(np.max(np.abs(self.values[::-1] - np.conj(self.values)), initial=0.0))


@dataclass(frozen=True, eq=False)
class WignerField:
    """Real distribution sampled on ``grid x lattice``; ``values[j, k] = f(phi_j, J_k)``."""

    grid: AngleGrid
    lattice: MomentumLattice
    values: np.ndarray = field(repr=False)
    spec: RotorSpec
    imag_residue: float = 0.0  # hbar * max |Im f| left over by synthesis

    @property
    def J(self) -> np.ndarray:
        return self.lattice.points * self.spec.hbar

    def angle_marginal(self) -> np.ndarray:
        """Lattice sum ``hbar sum_k f(phi_j, J_k)``."""
        return self.spec.hbar * self.values.sum(axis=1)

    def momentum_marginal(self) -> np.ndarray:
        """Grid quadrature ``(2 pi / M) sum_j f(phi_j, J_k)``."""
        return self.grid.spacing * self.values.sum(axis=0)

    def mass(self) -> float:
        return float(self.spec.hbar * self.grid.spacing * self.values.sum())


def _pair_table(psi: AngularWaveFunction) -> np.ndarray:
    """``G[d, s] = sum c_n conj(c_n')`` over pairs with ``n - n' = d``, ``n + n' = s``.

    Both axes run over ``-2N..2N``.
    """
    N = psi.cutoff
    c = psi.coeffs
    G = np.zeros((4 * N + 1, 4 * N + 1), dtype=complex)
    n = psi.indices
    for i, cn in enumerate(c):
        if cn == 0:
            continue
        d = n[i] - n + 2 * N
        s = n[i] + n + 2 * N
        G[d, s] += cn * np.conj(c)
    return G


def _kernel_sum(psi, phi, J, kernel) -> np.ndarray:
    phi, J = np.broadcast_arrays(np.asarray(phi, dtype=float), np.asarray(J, dtype=float))
    shape = phi.shape
    phi, x = phi.reshape(-1), J.reshape(-1) / psi.spec.hbar
    N = psi.cutoff
    G = _pair_table(psi)
    lag = np.arange(-2 * N, 2 * N + 1)
    phase = np.exp(1j * np.outer(phi, lag))  # (P, D)
    K = kernel(lag[None, :] / 2.0 - x[:, None])  # (P, S), lag doubles as n + n'
    total = np.sum((phase @ G) * K, axis=1)
    return (total / (2.0 * np.pi * psi.spec.hbar)).reshape(shape)


def wigner_point(psi: AngularWaveFunction, phi, J):
    """Cylinder Wigner function at arbitrary ``(phi, J)`` (arrays broadcast).

    ``J`` need not lie on a lattice; off-lattice values show the
    non-positivity of the momentum marginal.
    """
    raw = _kernel_sum(psi, phi, J, lambda x: sinc_j0(np.pi * x))
    residue = imag_residue(raw, psi.spec.hbar)
    if residue >= IMAG_TOL:
        raise ConsistencyError(f"imaginary residue {residue:.3e} in Wigner function")
    out = raw.real
    return out if out.ndim else float(out)


def wigner_point_window(psi: AngularWaveFunction, phi, J, window_start: float = -np.pi):
    """The same transform with the ``gamma`` integral taken over
    ``[window_start, window_start + 2 pi]``.

    The result is complex in general; it equals :func:`wigner_point` for
    every window only when the integrand is periodic in ``gamma``.
    """
    shift = window_start + np.pi
    out = _kernel_sum(psi, phi, J, lambda x: np.exp(1j * x * shift) * sinc_j0(np.pi * x))
    return out if out.ndim else complex(out)


def mode_spectrum(psi: AngularWaveFunction, lattice: MomentumLattice) -> ModeSpectrum:
    """Separable spectrum ``F(m, J) = c_b conj(c_a)``.

    Entries whose ``a``, ``b`` are not both integers in ``[-N, N]`` are zero.
    """
    N = psi.cutoff
    m = np.arange(-2 * N, 2 * N + 1)
    two_j = lattice.twice_points
    twice_a = two_j[None, :] + m[:, None]
    twice_b = two_j[None, :] - m[:, None]
    valid = (twice_a % 2 == 0) & (np.abs(twice_a) <= 2 * N) & (np.abs(twice_b) <= 2 * N)
    a = np.where(valid, twice_a // 2 + N, 0)
    b = np.where(valid, twice_b // 2 + N, 0)
    c = psi.coeffs
    values = np.where(valid, c[b] * np.conj(c[a]), 0.0)
    return ModeSpectrum(m, lattice, values, psi.spec)


def synthesize_field(spectrum: ModeSpectrum, grid: AngleGrid) -> WignerField:
    """Sum ``(1/2 pi hbar) sum_m exp(-i m phi_j) F(m, J_k)`` on the grid."""
    phase = np.exp(-1j * np.outer(grid.points, spectrum.modes))
    raw = phase @ spectrum.values / (2.0 * np.pi * spectrum.spec.hbar)
    residue = imag_residue(raw, spectrum.spec.hbar)
    if residue >= IMAG_TOL:
        raise ConsistencyError(f"imaginary residue {residue:.3e} in synthesized field")
    return WignerField(grid, spectrum.lattice, raw.real, spectrum.spec, residue)


def wigner_field(
    psi: AngularWaveFunction,
    grid: AngleGrid,
    lattice: MomentumLattice | None = None,
) -> WignerField:
    """Wigner field of ``psi`` on ``grid x lattice``.

    The grid must hold at least ``2N + 1`` points so that grid quadrature of
    the field is exact.
    """
    if lattice is None:
        lattice = MomentumLattice.for_state(psi)
    check_lattice(psi, lattice)
    if grid.size < 2 * psi.cutoff + 1:
        raise ResolutionError(f"grid of {grid.size} points is too coarse for cutoff {psi.cutoff}")
    return synthesize_field(mode_spectrum(psi, lattice), grid)


def marginal_angle(psi: AngularWaveFunction, phi):
    """Angle density ``|psi(phi)|^2``."""
    phi = np.asarray(phi, dtype=float)
    n = psi.indices
    amp = np.exp(1j * np.multiply.outer(phi, n)) @ psi.coeffs / np.sqrt(2.0 * np.pi)
    out = np.abs(amp) ** 2
    return out if out.ndim else float(out)


def marginal_momentum(psi: AngularWaveFunction, J):
    """``<psi|P_J|psi> / hbar = sum_n |c_n|^2 j0(pi(n - J/hbar)) / hbar``.

    Non-negative at integer ``J/hbar``; may be negative elsewhere.
    """
    x = np.asarray(J, dtype=float) / psi.spec.hbar
    w = np.abs(psi.coeffs) ** 2
    out = sinc_j0(np.pi * (psi.indices - x[..., None])) @ w / psi.spec.hbar
    return out if np.ndim(out) else float(out)


def phase_space_overlap(psi1: AngularWaveFunction, psi2: AngularWaveFunction) -> float:
    """``(f1, f2) = |<psi1|psi2>|^2 / (2 pi hbar)``."""
    return abs(inner_product(psi1, psi2)) ** 2 / (2.0 * np.pi * psi1.spec.hbar)


def field_overlap(field1: WignerField, field2: WignerField) -> float:
    """Lattice-grid quadrature of ``f1 f2`` over the cylinder."""
    if field1.grid != field2.grid or field1.lattice != field2.lattice:
        raise ValueError("fields are sampled on different supports")
    check_same_spec(field1, field2)
    return float(field1.spec.hbar * field1.grid.spacing * np.sum(field1.values * field2.values))


def correlation_defect(psi: AngularWaveFunction, phi, J):
    """``f(phi, J) - F_cs(phi) F_ms(J)``."""
    return wigner_point(psi, phi, J) - marginal_angle(psi, phi) * marginal_momentum(psi, J)
