import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.linalg import expm

from rotorwigner.coherent import (
    CoherentStateSpec,
    coherent_amplitudes,
    coherent_overlap_weight,
    distribution_entropy,
    entropy_gap,
    gaussian_reference_entropy,
    gaussian_wigner_point,
    poisson_weights,
)
from rotorwigner.exceptions import TailMassError

# -sum w ln w for Poisson(10), mpmath direct summation to n = 200 at 50 digits
POISSON_ENTROPY_10 = 2.561409935274909

SPEC = CoherentStateSpec(mass=1.3, omega=0.8, radius=2.0, phase=0.4, hbar=0.9)


def rotation(theta):
    c, s = np.cos(theta), np.sin(theta)
    return np.array([[c, -s], [s, c]])


class TestSpec:
    def test_derived_quantities(self):
        assert SPEC.position_width * SPEC.momentum_width == pytest.approx(SPEC.hbar**2)
        assert abs(SPEC.z) ** 2 == pytest.approx(SPEC.action / SPEC.hbar)
        assert SPEC.momentum == pytest.approx(1.3 * 0.8 * 2.0)

    @pytest.mark.parametrize("kwargs", [{"mass": 0}, {"omega": -1}, {"radius": -1}, {"hbar": 0}])
    def test_validation(self, kwargs):
        base = dict(mass=1.0, omega=1.0, radius=1.0)
        with pytest.raises(ValueError):
            CoherentStateSpec(**{**base, **kwargs})


class TestGaussian:
    def test_peak_and_unit_displacement(self):
        u, v = SPEC.orbit_point(SPEC.phase)
        peak = 1 / (np.pi * SPEC.hbar) ** 2
        assert gaussian_wigner_point(SPEC, u, v) == pytest.approx(peak, rel=1e-15)
        q = u + np.array([np.sqrt(SPEC.position_width), 0.0])
        assert gaussian_wigner_point(SPEC, q, v) == pytest.approx(peak / np.e, rel=1e-14)

    def test_normalization_by_tensor_quadrature(self):
        spec = CoherentStateSpec(mass=1.0, omega=1.0, radius=1.5, phase=0.0)
        u, v = spec.orbit_point(0.0)
        sq, sp = np.sqrt(spec.position_width / 2), np.sqrt(spec.momentum_width / 2)
        x, w = np.polynomial.legendre.leggauss(60)
        axes = []
        for centre, sigma in zip((*u, *v), (sq, sq, sp, sp)):
            axes.append((centre + 6 * sigma * x, 6 * sigma * w))
        grids = np.meshgrid(*[a[0] for a in axes], indexing="ij")
        weights = np.einsum("i,j,k,l->ijkl", *[a[1] for a in axes])
        q = np.stack(grids[:2], axis=-1)
        p = np.stack(grids[2:], axis=-1)
        total = np.sum(weights * gaussian_wigner_point(spec, q, p, 0.0))
        assert total == pytest.approx(1.0, abs=1e-6)

    @settings(max_examples=40)
    @given(
        angle=st.floats(-np.pi, np.pi),
        q=st.tuples(st.floats(-3, 3), st.floats(-3, 3)),
        p=st.tuples(st.floats(-3, 3), st.floats(-3, 3)),
    )
    def test_rotation_covariance(self, angle, q, p):
        R = rotation(-angle)
        a = gaussian_wigner_point(SPEC, np.array(q), np.array(p), angle)
        b = gaussian_wigner_point(SPEC, R @ np.array(q), R @ np.array(p), 0.0)
        assert abs(a - b) < 1e-12


class TestPoisson:
    def test_zero_mean(self):
        d = poisson_weights(0.0, 5)
        assert np.array_equal(d.weights, [1, 0, 0, 0, 0, 0])

    def test_lambda_four(self):
        d = poisson_weights(4.0, 60)
        assert d.weights[4] == pytest.approx(np.exp(-4) * 256 / 24, rel=1e-14)
        assert d.weights[4] == pytest.approx(0.195367, abs=1e-6)
        assert np.dot(d.n, d.weights) == pytest.approx(4.0, abs=1e-10)
        assert d.weights.sum() == pytest.approx(1.0, abs=1e-10)

    def test_large_lambda_has_no_overflow(self):
        d = poisson_weights(300.0, 600)
        assert np.isfinite(d.weights).all()
        assert d.weights.sum() == pytest.approx(1.0, abs=1e-10)

    def test_tail_mass_error(self):
        with pytest.raises(TailMassError):
            poisson_weights(10.0, 20)

    def test_invalid(self):
        with pytest.raises(ValueError):
            poisson_weights(-1.0, 5)


class TestOverlap:
    def test_examples(self):
        assert coherent_overlap_weight(0, 0) == 1.0
        assert coherent_overlap_weight(2, 4) == pytest.approx(0.195367, abs=1e-6)
        total = sum(coherent_overlap_weight(2, n) for n in range(61))
        assert total == pytest.approx(1.0, abs=1e-12)

    def test_matches_displacement_operator(self):
        # truncated Fock space, displacement by matrix exponential
        K = 120
        b = np.diag(np.sqrt(np.arange(1, K)), 1)
        for z in (0.7 + 0.4j, 2.0, np.sqrt(10) * np.exp(-0.9j)):
            D = expm(z * b.conj().T - np.conj(z) * b)
            amp = D[:, 0]
            assert np.allclose(coherent_amplitudes(z, 40), amp[:41], atol=1e-12)
            ref = poisson_weights(abs(z) ** 2, 80).weights
            for n in range(41):
                assert coherent_overlap_weight(z, n) == pytest.approx(ref[n], abs=1e-12)


class TestEntropy:
    def test_trivial_distributions(self):
        assert distribution_entropy([1.0, 0.0, 0.0]) == 0.0
        assert distribution_entropy(np.full(7, 1 / 7)) == pytest.approx(np.log(7), abs=1e-15)

    def test_poisson_ten(self):
        S = distribution_entropy(poisson_weights(10.0, 200))
        assert S == pytest.approx(POISSON_ENTROPY_10, abs=1e-12)
        assert S == pytest.approx(2.56, abs=5e-3)

    def test_gaussian_reference(self):
        assert gaussian_reference_entropy(1 / (2 * np.pi)) == pytest.approx(0.5, abs=1e-15)
        assert gaussian_reference_entropy(np.e / (2 * np.pi)) == pytest.approx(1.0, abs=1e-15)
        assert gaussian_reference_entropy(10.0) == pytest.approx((1 + np.log(20 * np.pi)) / 2, abs=1e-15)
        assert gaussian_reference_entropy(10.0) == pytest.approx(2.570231, abs=1e-6)
        with pytest.raises(ValueError):
            gaussian_reference_entropy(0.0)

    def test_gap_decreases(self):
        gaps = [entropy_gap(lam) for lam in (1, 2, 5, 10, 20, 50)]
        assert np.all(np.diff(gaps) < 0)
        assert gaps[-1] < 0.01
