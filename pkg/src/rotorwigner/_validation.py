"""Input checks for the estimator wrappers.

``sklearn.utils.check_array`` rejects complex input, so coefficient
matrices are validated here.
"""
import numpy as np

from .core import NORM_TOL
from .exceptions import CutoffError, DegenerateStateError


def check_coefficients(X, normalize=True):
    """Return ``X`` as a complex ``(n_samples, 2N + 1)`` array and the cutoff ``N``.

    Rows are renormalized to unit norm unless ``normalize`` is False.
    """
    X = np.array(X, dtype=complex)
    if X.ndim == 1:
        X = X[None, :]
    if X.ndim != 2:
        raise ValueError(f"expected a 2D coefficient array, got shape {X.shape}")
    if X.shape[1] % 2 == 0:
        raise CutoffError(f"coefficient rows need an odd length 2N + 1, got {X.shape[1]}")
    if not np.isfinite(X).all():
        raise ValueError("coefficients contain NaN or inf")
    norms = np.linalg.norm(X, axis=1)
    if np.any(norms == 0):
        raise DegenerateStateError(f"rows {np.flatnonzero(norms == 0).tolist()} have zero norm")
    if normalize:
        off = np.abs(norms**2 - 1.0) > NORM_TOL
        X[off] /= norms[off, None]
    return X, (X.shape[1] - 1) // 2


def check_n_features(estimator, X):
    if X.shape[1] != estimator.n_features_in_:
        raise ValueError(
            f"X has {X.shape[1]} coefficients per row, but {type(estimator).__name__} "
            f"was fitted with {estimator.n_features_in_}"
        )
