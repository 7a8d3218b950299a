import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rotorwigner.core import (
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
from rotorwigner.exceptions import (
    CutoffError,
    DegenerateStateError,
    ResolutionError,
    SpecMismatchError,
)

from .conftest import psi_direct, states


def test_rotor_spec_validation():
    assert RotorSpec() == RotorSpec(1.0, 1.0)
    with pytest.raises(ValueError):
        RotorSpec(hbar=0)
    with pytest.raises(ValueError):
        RotorSpec(inertia=-1)


def test_angle_grid_points():
    g = AngleGrid(8)
    assert g.points[0] == -np.pi
    assert np.allclose(np.diff(g.points), 2 * np.pi / 8)
    assert g.points[-1] < np.pi
    with pytest.raises(ValueError):
        AngleGrid(1)


@pytest.mark.parametrize("n, cutoff", [(3, 8), (0, 0), (-2, 4)])
def test_make_eigenstate(n, cutoff):
    psi = make_eigenstate(n, cutoff)
    expected = np.zeros(2 * cutoff + 1)
    expected[n + cutoff] = 1
    assert np.array_equal(psi.coeffs, expected)
    assert psi.coeff(n) == 1
    assert psi.coeff(cutoff + 5) == 0


def test_make_eigenstate_cutoff_violation():
    with pytest.raises(CutoffError):
        make_eigenstate(5, 4)


def test_make_superposition_examples():
    cat = make_superposition([(0, 1), (2, 1)], 4)
    assert cat.coeff(0) == pytest.approx(0.707107, abs=1e-6)
    assert cat.coeff(2) == pytest.approx(1 / np.sqrt(2), abs=1e-15)

    phased = make_superposition([(1, 2j)], 2)
    assert phased.coeff(1) == pytest.approx(1j, abs=1e-15)

    three = make_superposition([(0, 1), (1, 1), (2, 1)], 2)
    assert np.allclose(np.abs(three.coeffs[2:]), 1 / np.sqrt(3), atol=1e-15)
    assert 1 / np.sqrt(3) == pytest.approx(0.577350, abs=1e-6)


def test_make_superposition_errors():
    with pytest.raises(DegenerateStateError):
        make_superposition([(0, 0), (1, 0)], 2)
    with pytest.raises(CutoffError):
        make_superposition([(3, 1)], 2)


def test_coefficients_are_read_only():
    psi = make_eigenstate(1, 2)
    with pytest.raises(ValueError):
        psi.coeffs[0] = 1


def test_wavepacket_zero_concentration_is_uniform():
    psi = make_wavepacket(0.0, 0.0, 4)
    assert psi.coeff(0) == pytest.approx(1.0, abs=1e-15)
    assert np.sum(np.abs(psi.coeffs) ** 2) - abs(psi.coeff(0)) ** 2 == pytest.approx(0.0, abs=1e-30)


def test_wavepacket_matches_discrete_fourier_oracle():
    # project exp(2 cos phi) by a fine DFT, truncate to |n| <= 16, renormalize
    M = 1024
    phi = -np.pi + 2 * np.pi * np.arange(M) / M
    amp = np.exp(2.0 * np.cos(phi))
    n = np.arange(-16, 17)
    oracle = np.array([np.sum(amp * np.exp(-1j * k * phi)) for k in n]) / M
    oracle /= np.linalg.norm(oracle)

    psi = make_wavepacket(0.0, 2.0, 16)
    assert np.allclose(psi.coeffs, oracle, atol=1e-13)
    assert np.all(psi.coeffs.real > 0)
    assert np.allclose(psi.coeffs.imag, 0)
    assert np.allclose(psi.coeffs, psi.coeffs[::-1])


@given(delta=st.floats(-np.pi, np.pi), kappa=st.floats(0.1, 5.0))
def test_wavepacket_angle_shift_covariance(delta, kappa):
    base = make_wavepacket(0.0, kappa, 16)
    shifted = make_wavepacket(delta, kappa, 16)
    assert np.allclose(shifted.coeffs, base.coeffs * np.exp(-1j * base.indices * delta), atol=1e-12)


def test_wavepacket_peaks_at_mean_angle():
    psi = make_wavepacket(np.pi / 2, 2.0, 16)
    grid = AngleGrid(256)
    density = np.abs(to_angle_samples(psi, grid)) ** 2
    assert grid.points[np.argmax(density)] == pytest.approx(np.pi / 2, abs=grid.spacing)


def test_wavepacket_momentum_kick():
    psi = make_wavepacket(0.0, 1.0, 14, momentum=3)
    assert psi.mean_momentum == pytest.approx(3.0, abs=1e-12)


def test_to_angle_samples_examples():
    g = AngleGrid(8)
    s0 = to_angle_samples(make_eigenstate(0, 2), g)
    assert np.allclose(s0, 0.398942, atol=1e-6)
    s1 = to_angle_samples(make_eigenstate(1, 2), g)
    assert np.allclose(s1, np.exp(1j * g.points) / np.sqrt(2 * np.pi), atol=1e-15)


def test_to_angle_samples_aliasing():
    with pytest.raises(ResolutionError):
        to_angle_samples(make_eigenstate(0, 4), AngleGrid(8))


def test_from_angle_samples_examples():
    g = AngleGrid(16)
    psi = from_angle_samples(np.exp(2j * g.points) / np.sqrt(2 * np.pi), 4)
    assert psi.coeff(2) == pytest.approx(1.0, abs=1e-12)
    others = np.delete(psi.coeffs, 2 + 4)
    assert np.max(np.abs(others)) < 1e-12

    const = from_angle_samples(np.full(16, 3.0), 4)
    assert const.coeff(0) == pytest.approx(1.0, abs=1e-12)

    cos = from_angle_samples(np.cos(g.points) / np.sqrt(np.pi), 4)
    assert cos.coeff(1) == pytest.approx(1 / np.sqrt(2), abs=1e-12)
    assert cos.coeff(-1) == pytest.approx(1 / np.sqrt(2), abs=1e-12)


def test_from_angle_samples_errors():
    with pytest.raises(DegenerateStateError):
        from_angle_samples(np.zeros(16), 4)
    with pytest.raises(ResolutionError):
        from_angle_samples(np.ones(8), 4)


@settings(max_examples=50)
@given(psi=states(max_cutoff=12), extra=st.integers(0, 20))
def test_round_trip_and_parseval(psi, extra):
    grid = AngleGrid(2 * psi.cutoff + 1 + extra)
    samples = to_angle_samples(psi, grid)
    assert np.allclose(samples, psi_direct(psi, grid.points), atol=1e-12)
    back = from_angle_samples(samples, psi.cutoff, psi.spec)
    assert np.max(np.abs(back.coeffs - psi.coeffs)) < 1e-12
    assert grid.spacing * np.sum(np.abs(samples) ** 2) == pytest.approx(1.0, abs=1e-10)


@settings(max_examples=50)
@given(psi=states(max_cutoff=12))
def test_norm_preserved(psi):
    assert np.sum(np.abs(psi.coeffs) ** 2) == pytest.approx(1.0, abs=1e-12)
    assert inner_product(psi, psi) == pytest.approx(1.0, abs=1e-12)


def test_inner_product_examples():
    assert inner_product(make_eigenstate(1, 3), make_eigenstate(2, 3)) == 0
    cat = make_superposition([(0, 1), (2, 1)], 4)
    # differing cutoffs: missing coefficients read as zero
    assert inner_product(make_eigenstate(0, 0), cat) == pytest.approx(0.707107, abs=1e-6)


def test_inner_product_spec_mismatch():
    a = make_eigenstate(0, 1, RotorSpec(hbar=1.0))
    b = make_eigenstate(0, 1, RotorSpec(hbar=2.0))
    with pytest.raises(SpecMismatchError):
        inner_product(a, b)


@pytest.mark.parametrize(
    "terms, expected",
    [
        ([(2, 1)], ParityClass.EVEN),
        ([(0, 1), (2, 1)], ParityClass.EVEN),
        ([(1, 1), (3, 1)], ParityClass.ODD),
        ([(-1, 1)], ParityClass.ODD),
        ([(0, 1), (1, 1)], ParityClass.MIXED),
        ([(0, 1), (1, 1e-13)], ParityClass.EVEN),
    ],
)
def test_parity_class(terms, expected):
    assert parity_class(make_superposition(terms, 4)) is expected


def test_constructor_renormalizes_and_checks_length():
    psi = AngularWaveFunction(RotorSpec(), 1, [0, 2, 0])
    assert psi.coeff(0) == 1
    with pytest.raises(CutoffError):
        AngularWaveFunction(RotorSpec(), 1, [1, 0])


def test_moments():
    psi = make_superposition([(-2, 1), (2, 1)], 2, RotorSpec(hbar=0.5, inertia=2.0))
    assert psi.mean_momentum == pytest.approx(0.0, abs=1e-15)
    assert psi.momentum_second_moment == pytest.approx(1.0)
    assert psi.energy == pytest.approx(0.25)
