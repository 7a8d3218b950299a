"""Free-rotor evolution, quantum and classical.

Both evolutions have closed forms, so no integrator is involved:

* Schroedinger, ``H = J^2 / 2I``: ``c_n -> exp(-i n^2 hbar t / 2I) c_n``;
* Liouville, ``f_t + (J/I) f_phi = 0``: angular mode ``exp(-i m phi)`` at
  momentum ``J`` picks up ``exp(i m J t / I)``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import AngleGrid, AngularWaveFunction, RotorSpec
from .exceptions import ConsistencyError, ResolutionError, SpecMismatchError
from .wigner import IMAG_TOL, MomentumLattice, imag_residue, WignerField, wigner_field


@dataclass(frozen=True)
class EvolutionParams:
    """Evolution time; ``spec`` defaults to that of the evolved object."""

    time: float
    spec: RotorSpec | None = None

    def resolve(self, spec: RotorSpec) -> RotorSpec:
        if self.spec is not None and self.spec != spec:
            raise SpecMismatchError(f"evolution spec {self.spec} does not match {spec}")
        return spec


def evolve_quantum(psi: AngularWaveFunction, params: EvolutionParams) -> AngularWaveFunction:
    spec = params.resolve(psi.spec)
    n = psi.indices
    phase = np.exp(-1j * n**2 * spec.hbar * params.time / (2.0 * spec.inertia))
    return psi.with_coeffs(psi.coeffs * phase)


def _angle_modes(M: int) -> np.ndarray:
    """Signed mode numbers matching ``np.fft`` ordering."""
    return np.fft.fftfreq(M, d=1.0 / M).astype(int)


def field_modes(field: WignerField) -> tuple[np.ndarray, np.ndarray]:
    """Coefficients ``G[m, k]`` with ``f(phi_j, J_k) = sum_m G[m, k] exp(-i m phi_j)``."""
    M = field.grid.size
    m = _angle_modes(M)
    # grid starts at -pi: exp(i m phi_j) = (-1)^m exp(2 pi i m j / M)
    G = np.fft.ifft(field.values, axis=0) * ((-1.0) ** m)[:, None]
    return m, G


def liouville_transport(field: WignerField, params: EvolutionParams) -> WignerField:
    """Exact free streaming ``f(phi, J, t) = f(phi - J t / I, J, 0)``.

    Exact for fields band-limited below the grid Nyquist mode.  For even
    grids the Nyquist mode is ambiguous between ``+-M/2`` and is split
    symmetrically, which keeps the result real.
    """
    inertia = params.resolve(field.spec).inertia
    if params.time == 0:
        return field
    M = field.grid.size
    m, G = field_modes(field)
    speed = field.J / inertia
    shift = np.exp(1j * np.outer(m, speed) * params.time)
    if M % 2 == 0:
        shift[M // 2] = np.cos(M // 2 * speed * params.time)
    G = G * shift
    raw = np.fft.fft(G * ((-1.0) ** m)[:, None], axis=0)
    residue = imag_residue(raw, field.spec.hbar)
    if residue >= IMAG_TOL:
        raise ConsistencyError(f"imaginary residue {residue:.3e} after transport")
    return WignerField(field.grid, field.lattice, raw.real, field.spec, residue)


def coherence_residual(
    psi: AngularWaveFunction,
    params: EvolutionParams,
    grid: AngleGrid,
    lattice: MomentumLattice | None = None,
) -> float:
    """``max |W[evolve(psi, t)] - transport(W[psi], t)|`` over the grid and lattice.

    The grid has to resolve every angular mode of the field, ``M >= 4N + 1``.
    """
    if grid.size < 4 * psi.cutoff + 1:
        raise ResolutionError(
            f"grid of {grid.size} points cannot carry field modes up to {2 * psi.cutoff}; "
            f"need >= {4 * psi.cutoff + 1}"
        )
    if lattice is None:
        lattice = MomentumLattice.for_state(psi)
    quantum = wigner_field(evolve_quantum(psi, params), grid, lattice)
    classical = liouville_transport(wigner_field(psi, grid, lattice), params)
    return float(np.max(np.abs(quantum.values - classical.values)))
