import numpy as np
import pytest
from hypothesis import strategies as st

from rotorwigner.core import AngularWaveFunction, RotorSpec

ACCEPTANCE_RESULTS = []

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(400)


def gauss_legendre(f, lo, hi):
    """Fixed 400-node Gauss-Legendre rule; vectorized ``f``."""
    half = 0.5 * (hi - lo)
    x = lo + half * (_GL_NODES + 1.0)
    return half * np.sum(_GL_WEIGHTS * f(x))


def psi_direct(psi, phi):
    """``sum_n c_n exp(i n phi) / sqrt(2 pi)`` by direct summation (no FFT)."""
    phi = np.asarray(phi, dtype=float)
    return np.exp(1j * np.multiply.outer(phi, psi.indices)) @ psi.coeffs / np.sqrt(2 * np.pi)


def quadrature_wigner(psi, phi, J, lo=-np.pi):
    """Numerical gamma-integral of the cylinder Wigner transform over ``[lo, lo + 2 pi]``."""
    hbar = psi.spec.hbar

    def integrand(g):
        return np.exp(-1j * g * J / hbar) * psi_direct(psi, phi + g / 2) * np.conj(psi_direct(psi, phi - g / 2))

    return gauss_legendre(integrand, lo, lo + 2 * np.pi) / (2 * np.pi * hbar)


def random_state(rng, cutoff, parity="mixed", spec=RotorSpec()):
    n = np.arange(-cutoff, cutoff + 1)
    c = rng.normal(size=n.size) + 1j * rng.normal(size=n.size)
    if parity == "even":
        c[n % 2 == 1] = 0
    elif parity == "odd":
        c[n % 2 == 0] = 0
    return AngularWaveFunction(spec, cutoff, c)


@st.composite
def states(draw, max_cutoff=6, parity=None):
    cutoff = draw(st.integers(1, max_cutoff))
    if parity is None:
        parity = draw(st.sampled_from(["even", "odd", "mixed"]))
    seed = draw(st.integers(0, 2**32 - 1))
    rng = np.random.default_rng(seed)
    psi = random_state(rng, cutoff, parity)
    return psi


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_RESULTS:
            terminalreporter.write_line(line)
