"""Entropy-quantized circular orbits around a central body.

The hypothesis ``3 log2(J / J_G) = n`` with ``J_G = M c R_G`` and Kepler's
third law give the radii ``r_n = R_G 2^(1 + 2n/3)``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

G_CODATA = 6.674e-11  # m^3 kg^-1 s^-2
C_LIGHT = 299_792_458.0  # m/s
JUPITER_MASS = 1.898e27  # kg
SUN_MASS = 1.989e30  # kg

# Observed orbital radii (m) of the Galilean satellites with their orbit
# indices, as tabulated alongside the quantization hypothesis.
GALILEAN_SATELLITES = (
    ("Io", 39, 421.6e6),
    ("Europa", 40, 670.8e6),
    ("Ganymede", 41, 1070e6),
    ("Callisto", 42, 1882e6),
)
# Printed r_n (m) for the same rows, kept for comparison only.
PUBLISHED_RADII = (378.5e6, 600.8e6, 953.7e6, 1514e6)


@dataclass(frozen=True)
class OrbitSystem:
    central_mass: float
    gravitational_constant: float = G_CODATA
    light_speed: float = C_LIGHT

    def __post_init__(self):
        if not self.central_mass > 0:
            raise ValueError(f"central mass must be positive, got {self.central_mass}")
        if not self.gravitational_constant > 0 or not self.light_speed > 0:
            raise ValueError("gravitational constant and light speed must be positive")

    @classmethod
    def jupiter(cls) -> "OrbitSystem":
        return cls(JUPITER_MASS)

    @classmethod
    def sun(cls) -> "OrbitSystem":
        return cls(SUN_MASS)

    @property
    def schwarzschild_radius(self) -> float:
        return 2.0 * self.gravitational_constant * self.central_mass / self.light_speed**2

    def action_scale(self, orbiter_mass: float) -> float:
        """``J_G = M c R_G``."""
        if not orbiter_mass > 0:
            raise ValueError("orbiter mass must be positive")
        return orbiter_mass * self.light_speed * self.schwarzschild_radius


SYSTEMS = {"jupiter": OrbitSystem.jupiter, "sun": OrbitSystem.sun}


def schwarzschild_radius(system: OrbitSystem) -> float:
    return system.schwarzschild_radius


def orbit_radius(n: int, system: OrbitSystem) -> float:
    if n < 0:
        raise ValueError(f"orbit index must be non-negative, got {n}")
    return system.schwarzschild_radius * 2.0 ** (1.0 + 2.0 * n / 3.0)


def quantization_index(J: float, system: OrbitSystem, orbiter_mass: float) -> float:
    """Continuous index ``3 log2(J / J_G)``."""
    if not J > 0:
        raise ValueError(f"action must be positive, got {J}")
    return 3.0 * np.log2(J / system.action_scale(orbiter_mass))


def action_from_index(n: float, system: OrbitSystem, orbiter_mass: float) -> float:
    return system.action_scale(orbiter_mass) * 2.0 ** (n / 3.0)


@dataclass(frozen=True)
class IndexReport:
    index: float
    nearest: int
    deviation: float


def quantization_report(J: float, system: OrbitSystem, orbiter_mass: float) -> IndexReport:
    x = quantization_index(J, system, orbiter_mass)
    nearest = int(round(x))
    return IndexReport(x, nearest, x - nearest)


def kepler_consistency(n: int, system: OrbitSystem, orbiter_mass: float) -> tuple[float, float]:
    """Radius from the quantized action via ``J = M sqrt(G M_o r)``, and from the closed form."""
    if n < 0:
        raise ValueError(f"orbit index must be non-negative, got {n}")
    J = action_from_index(n, system, orbiter_mass)
    r_from_J = J**2 / (orbiter_mass**2 * system.gravitational_constant * system.central_mass)
    return r_from_J, orbit_radius(n, system)


@dataclass(frozen=True)
class OrbitRow:
    name: str
    n: int
    r_obs: float
    r_n: float

    @property
    def ratio(self) -> float:
        return self.r_obs / self.r_n


def table1(system: OrbitSystem | None = None) -> list[OrbitRow]:
    if system is None:
        system = OrbitSystem.jupiter()
    return [OrbitRow(name, n, r_obs, orbit_radius(n, system)) for name, n, r_obs in GALILEAN_SATELLITES]
