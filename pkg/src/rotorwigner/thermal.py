"""Thermal mixtures of rotor states, dephasing, and the classical wave limit.

The ensemble spectrum is ``F_T(m, J) = sum_s w_s psi^s_b conj(psi^s_a)`` and
the ensemble field follows from it exactly as for a pure state.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .core import (
    AngleGrid,
    AngularWaveFunction,
    ParityClass,
    RotorSpec,
    check_same_spec,
    parity_class,
)
from .exceptions import RotorError, SpecMismatchError
from .wigner import (
    LatticeStep,
    MomentumLattice,
    ModeSpectrum,
    WignerField,
    check_lattice,
    mode_spectrum,
    synthesize_field,
)

WEIGHT_TOL = 1e-12
MOMENT_CHOICES = ("mean", "second")


@dataclass(frozen=True)
class EnsembleMember:
    state: AngularWaveFunction
    weight: float
    energy: float
    mean_momentum: float


@dataclass(frozen=True, eq=False)
class ThermalEnsemble:
    """Weighted rotor states.  Energies and mean momenta are always
    recomputed from the coefficients."""

    members: tuple[EnsembleMember, ...]
    spec: RotorSpec
    temperature: float | None = None

    @classmethod
    def from_weights(
        cls,
        states: Sequence[AngularWaveFunction],
        weights: Sequence[float],
        temperature: float | None = None,
    ) -> "ThermalEnsemble":
        if len(states) == 0:
            raise RotorError("ensemble needs at least one state")
        if len(weights) != len(states):
            raise ValueError(f"{len(states)} states but {len(weights)} weights")
        spec = check_same_spec(*states)
        w = np.asarray(weights, dtype=float)
        if np.any(w < 0) or not np.isfinite(w).all():
            raise ValueError("weights must be finite and non-negative")
        total = w.sum()
        if total <= 0:
            raise RotorError("weights sum to zero")
        w = w / total
        members = tuple(
            EnsembleMember(psi, float(ws), psi.energy, psi.mean_momentum)
            for psi, ws in zip(states, w)
        )
        return cls(members, spec, temperature)

    @property
    def states(self) -> list[AngularWaveFunction]:
        return [mem.state for mem in self.members]

    @property
    def weights(self) -> np.ndarray:
        return np.array([mem.weight for mem in self.members])

    @property
    def energies(self) -> np.ndarray:
        return np.array([mem.energy for mem in self.members])

    @property
    def mean_momenta(self) -> np.ndarray:
        return np.array([mem.mean_momentum for mem in self.members])

    @property
    def second_moments(self) -> np.ndarray:
        return np.array([mem.state.momentum_second_moment for mem in self.members])

    def momentum_spread(self) -> float:
        """Weighted standard deviation of the member mean momenta."""
        w, J = self.weights, self.mean_momenta
        mean = np.dot(w, J)
        return float(np.sqrt(max(np.dot(w, (J - mean) ** 2), 0.0)))


def build_boltzmann_ensemble(
    states: Sequence[AngularWaveFunction],
    kT: float,
    spec: RotorSpec | None = None,
) -> ThermalEnsemble:
    """Weights ``exp(-E_s / kT)``; ``kT = 0`` splits weight over the ground states
    and ``kT = inf`` gives uniform weights."""
    if len(states) == 0:
        raise RotorError("ensemble needs at least one state")
    if kT < 0:
        raise ValueError(f"kT must be non-negative, got {kT}")
    if spec is not None and any(psi.spec != spec for psi in states):
        raise SpecMismatchError(f"states were not built with {spec}")
    E = np.array([psi.energy for psi in states])
    shifted = E - E.min()
    if kT == 0:
        w = (shifted <= WEIGHT_TOL * max(1.0, abs(E.min()))).astype(float)
    elif np.isinf(kT):
        w = np.ones_like(E)
    else:
        w = np.exp(-shifted / kT)
    return ThermalEnsemble.from_weights(states, w, temperature=kT)


def _check_ensemble_lattice(ens: ThermalEnsemble, lattice: MomentumLattice) -> None:
    for psi in ens.states:
        check_lattice(psi, lattice)


def default_lattice(ens: ThermalEnsemble) -> MomentumLattice:
    N = max(psi.cutoff for psi in ens.states)
    mixed = any(parity_class(psi) is ParityClass.MIXED for psi in ens.states)
    return MomentumLattice.covering(N, LatticeStep.HALF if mixed else LatticeStep.INTEGER)


def _member_spectra(ens: ThermalEnsemble, lattice: MomentumLattice) -> list[ModeSpectrum]:
    N = max(psi.cutoff for psi in ens.states)
    spectra = []
    for psi in ens.states:
        if psi.cutoff < N:
            psi = AngularWaveFunction(psi.spec, N, psi.padded(N))
        spectra.append(mode_spectrum(psi, lattice))
    return spectra


def thermal_spectrum(ens: ThermalEnsemble, lattice: MomentumLattice | None = None) -> ModeSpectrum:
    if lattice is None:
        lattice = default_lattice(ens)
    _check_ensemble_lattice(ens, lattice)
    spectra = _member_spectra(ens, lattice)
    values = sum(w * s.values for w, s in zip(ens.weights, spectra))
    return ModeSpectrum(spectra[0].modes, lattice, values, ens.spec)


def thermal_field(
    ens: ThermalEnsemble,
    grid: AngleGrid,
    lattice: MomentumLattice | None = None,
) -> WignerField:
    return synthesize_field(thermal_spectrum(ens, lattice), grid)


def dephasing_phases(psi: AngularWaveFunction, J_s: float, tau: float) -> np.ndarray:
    """Per-coefficient phase of a member over one coherence time.

    The coefficient at ``a = J/hbar + mu`` moves by
    ``exp(-(i/hbar)(E_s - mu hbar J_s / I) tau)`` with ``mu = a - J_s/hbar``,
    so mode ``m`` of the member spectrum picks up ``exp(-i tau m J_s / I)``.
    """
    spec = psi.spec
    mu = psi.indices - J_s / spec.hbar
    return np.exp(-1j / spec.hbar * (psi.energy - mu * spec.hbar * J_s / spec.inertia) * tau)


def dephase(ens: ThermalEnsemble, tau: float) -> ThermalEnsemble:
    if tau < 0:
        raise ValueError(f"tau must be non-negative, got {tau}")
    states = [
        mem.state.with_coeffs(mem.state.coeffs * dephasing_phases(mem.state, mem.mean_momentum, tau))
        for mem in ens.members
    ]
    return ThermalEnsemble.from_weights(states, ens.weights, ens.temperature)


def mean_square_momentum(ens: ThermalEnsemble, moment: str = "mean") -> float:
    """``<J^2>_T`` from member mean momenta (``"mean"``) or second moments (``"second"``)."""
    if moment == "mean":
        per_member = ens.mean_momenta**2
    elif moment == "second":
        per_member = ens.second_moments
    else:
        raise ValueError(f"moment must be one of {MOMENT_CHOICES}, got {moment!r}")
    return float(np.dot(ens.weights, per_member))


def omega_T(ens: ThermalEnsemble, moment: str = "mean") -> float:
    """Wave speed ``Omega_T = sqrt(<J^2>_T) / I``."""
    return float(np.sqrt(mean_square_momentum(ens, moment)) / ens.spec.inertia)


@dataclass(frozen=True)
class WaveEquationReport:
    residual: float
    absolute: bool
    omega: float
    lhs: WignerField
    rhs: WignerField


def wave_equation_check(
    ens: ThermalEnsemble,
    grid: AngleGrid,
    lattice: MomentumLattice | None = None,
    moment: str = "mean",
) -> WaveEquationReport:
    """Compare ``d^2 f_T / dt^2`` under dephasing with ``Omega_T^2 d^2 f_T / dphi^2``.

    Per mode: ``-sum_s w_s (m J_s / I)^2 F_s(m)`` against ``-m^2 Omega_T^2 F_T(m)``.
    The residual is the max-abs field difference over the max-abs of the
    right-hand side, or absolute when the right-hand side vanishes.
    """
    if lattice is None:
        lattice = default_lattice(ens)
    _check_ensemble_lattice(ens, lattice)
    spectra = _member_spectra(ens, lattice)
    m = spectra[0].modes.astype(float)[:, None]
    inertia = ens.spec.inertia
    lhs = sum(
        -w * (m * J_s / inertia) ** 2 * s.values
        for w, J_s, s in zip(ens.weights, ens.mean_momenta, spectra)
    )
    omega = omega_T(ens, moment)
    total = sum(w * s.values for w, s in zip(ens.weights, spectra))
    rhs = -(m**2) * omega**2 * total
    lhs_field = synthesize_field(ModeSpectrum(spectra[0].modes, lattice, lhs, ens.spec), grid)
    rhs_field = synthesize_field(ModeSpectrum(spectra[0].modes, lattice, rhs, ens.spec), grid)
    diff = float(np.max(np.abs(lhs_field.values - rhs_field.values)))
    scale = float(np.max(np.abs(rhs_field.values)))
    if scale == 0.0:
        return WaveEquationReport(diff, True, omega, lhs_field, rhs_field)
    return WaveEquationReport(diff / scale, False, omega, lhs_field, rhs_field)


def wave_equation_residual(
    ens: ThermalEnsemble,
    grid: AngleGrid,
    lattice: MomentumLattice | None = None,
    moment: str = "mean",
) -> float:
    return wave_equation_check(ens, grid, lattice, moment).residual
