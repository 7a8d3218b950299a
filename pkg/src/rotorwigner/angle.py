"""Angle operator in the angular-momentum basis and its Fourier series."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.special import sici

# Value quoted in the literature for the limit of gibbs_limit_sum(n, pi), in units of pi.
# Direct evaluation converges to 2 Si(pi) / pi = 1.17898 instead; 1.08949 = 1/2 + Si(pi)/pi.
QUOTED_GIBBS_CONSTANT = 1.08949


@dataclass(frozen=True, eq=False)
class AngleOperatorMatrix:
    """``<b|phi|a>`` for ``a, b = -N..N``; ``entries[b + N, a + N]``."""

    cutoff: int
    entries: np.ndarray = field(repr=False)

    @property
    def indices(self) -> np.ndarray:
        return np.arange(-self.cutoff, self.cutoff + 1)

    def element(self, b: int, a: int) -> complex:
        return complex(self.entries[b + self.cutoff, a + self.cutoff])


def angle_matrix_element(b, a):
    """``-i (-1)^(a-b) / (a-b)`` off the diagonal, 0 on it."""
    k = np.asarray(a) - np.asarray(b)
    safe = np.where(k == 0, 1, k)
    out = np.where(k == 0, 0.0, -1j * (-1.0) ** np.abs(k) / safe)
    return out if out.ndim else complex(out)


def angle_operator_matrix(cutoff: int) -> AngleOperatorMatrix:
    if cutoff < 1:
        raise ValueError(f"cutoff must be >= 1, got {cutoff}")
    n = np.arange(-cutoff, cutoff + 1)
    entries = angle_matrix_element(n[:, None], n[None, :])
    entries.setflags(write=False)
    return AngleOperatorMatrix(cutoff, entries)


def angle_fourier_series(n_terms: int, phi):
    """Partial sum ``2 sum_{m=1}^{n} (-1)^(m+1) sin(m phi) / m`` of the sawtooth ``phi``."""
    if n_terms < 1:
        raise ValueError("n_terms must be >= 1")
    phi = np.asarray(phi, dtype=float)
    m = np.arange(1, n_terms + 1)
    sign = np.where(m % 2 == 1, 1.0, -1.0)
    out = 2.0 * np.sin(np.multiply.outer(phi, m)) @ (sign / m)
    return out if out.ndim else float(out)


def gibbs_limit_sum(n: int, phi=np.pi):
    """``2 sum_{m=1}^{n} sin(m phi / n) / m``.

    At ``phi = pi`` this is a Riemann sum for ``2 Si(pi)``.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    phi = np.asarray(phi, dtype=float)
    m = np.arange(1, n + 1)
    out = 2.0 * np.sin(np.multiply.outer(phi, m) / n) @ (1.0 / m)
    return out if out.ndim else float(out)


def gibbs_limit(phi=np.pi):
    """``lim_n gibbs_limit_sum(n, phi) = 2 Si(phi)``."""
    return 2.0 * sici(phi)[0]
