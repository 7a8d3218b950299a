"""Wigner distributions for the plane rotator on the cylinder ``T*S^1``."""
from .angle import (
    QUOTED_GIBBS_CONSTANT,
    AngleOperatorMatrix,
    angle_fourier_series,
    angle_operator_matrix,
    gibbs_limit,
    gibbs_limit_sum,
)
from .coherent import (
    CoherentStateSpec,
    WeightDistribution,
    coherent_overlap_weight,
    distribution_entropy,
    gaussian_reference_entropy,
    gaussian_wigner_point,
    poisson_weights,
)
from .core import (
    HBAR_SI,
    AngleGrid,
    AngularWaveFunction,
    ParityClass,
    RotorSpec,
    from_angle_samples,
    inner_product,
    make_eigenstate,
    make_superposition,
    make_wavepacket,
    parity_class,
    to_angle_samples,
)
from .dynamics import EvolutionParams, coherence_residual, evolve_quantum, liouville_transport
from .exceptions import *  # noqa: F401,F403
from .orbits import (
    OrbitRow,
    OrbitSystem,
    action_from_index,
    kepler_consistency,
    orbit_radius,
    quantization_index,
    schwarzschild_radius,
    table1,
)
from .thermal import (
    ThermalEnsemble,
    build_boltzmann_ensemble,
    dephase,
    omega_T,
    thermal_field,
    wave_equation_residual,
)
from .wigner import (
    LatticeStep,
    ModeSpectrum,
    MomentumLattice,
    WignerField,
    correlation_defect,
    marginal_angle,
    marginal_momentum,
    phase_space_overlap,
    sinc_j0,
    wigner_field,
    wigner_point,
)

__version__ = "0.1.0"
