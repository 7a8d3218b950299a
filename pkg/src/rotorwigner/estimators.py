"""scikit-learn compatible wrappers.

Each row of ``X`` holds the coefficients ``c_{-N} .. c_N`` of one rotor
state, so the transformers chain in a :class:`sklearn.pipeline.Pipeline`::

    Pipeline([("evolve", QuantumEvolver(time=0.5)),
              ("wigner", WignerTransformer(grid_size=64))])
"""
import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from ._validation import check_coefficients, check_n_features
from .core import AngleGrid, AngularWaveFunction, ParityClass, RotorSpec, parity_class, to_angle_samples
from .dynamics import EvolutionParams, evolve_quantum
from .wigner import LatticeStep, MomentumLattice, wigner_field


def _states(X, spec, cutoff):
    return [AngularWaveFunction(spec, cutoff, row) for row in X]


class _RotorTransformer(TransformerMixin, BaseEstimator):
    def _spec(self):
        return RotorSpec(self.hbar, self.inertia)

    def fit(self, X, y=None):
        X, self.cutoff_ = check_coefficients(X)
        self.n_features_in_ = X.shape[1]
        return self

    def _check_transform_input(self, X):
        check_is_fitted(self, "n_features_in_")
        X, _ = check_coefficients(X)
        check_n_features(self, X)
        return X


class QuantumEvolver(_RotorTransformer):
    """Free Schroedinger evolution of each row over ``time``."""

    def __init__(self, time=0.0, hbar=1.0, inertia=1.0):
        self.time = time
        self.hbar = hbar
        self.inertia = inertia

    def transform(self, X):
        X = self._check_transform_input(X)
        params = EvolutionParams(self.time)
        return np.array([evolve_quantum(psi, params).coeffs for psi in _states(X, self._spec(), self.cutoff_)])


class AngleSampler(_RotorTransformer):
    """Wave function values ``psi(phi_j)`` on a uniform angle grid."""

    def __init__(self, grid_size=64, hbar=1.0, inertia=1.0):
        self.grid_size = grid_size
        self.hbar = hbar
        self.inertia = inertia

    def transform(self, X):
        X = self._check_transform_input(X)
        grid = AngleGrid(self.grid_size)
        return np.array([to_angle_samples(psi, grid) for psi in _states(X, self._spec(), self.cutoff_)])


class WignerTransformer(_RotorTransformer):
    """Flattened Wigner fields, one row per state.

    ``lattice="auto"`` picks the half lattice when any training row has
    mixed parity, otherwise the integer lattice.  Output columns are ordered
    angle-major: column ``j * n_lattice + k`` is ``f(phi_j, J_k)``.
    """

    def __init__(self, grid_size=64, lattice="auto", hbar=1.0, inertia=1.0):
        self.grid_size = grid_size
        self.lattice = lattice
        self.hbar = hbar
        self.inertia = inertia

    def fit(self, X, y=None):
        super().fit(X, y)
        X, _ = check_coefficients(X)
        if self.lattice == "auto":
            mixed = any(parity_class(psi) is ParityClass.MIXED for psi in _states(X, self._spec(), self.cutoff_))
            step = LatticeStep.HALF if mixed else LatticeStep.INTEGER
        else:
            step = LatticeStep(self.lattice)
        self.lattice_ = MomentumLattice.covering(self.cutoff_, step)
        self.grid_ = AngleGrid(self.grid_size)
        return self

    def transform(self, X):
        X = self._check_transform_input(X)
        fields = [wigner_field(psi, self.grid_, self.lattice_) for psi in _states(X, self._spec(), self.cutoff_)]
        return np.array([f.values.reshape(-1) for f in fields])

    def momentum_values(self):
        """``J`` at each lattice column."""
        check_is_fitted(self, "lattice_")
        return self.lattice_.points * self.hbar
