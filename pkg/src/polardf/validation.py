"""Input validation helpers for the estimator API."""
import numpy as np
from sklearn.utils.validation import check_array

from .geometry import BeaconGeometry


def check_geometry(d, wavelength):
    try:
        return BeaconGeometry(float(d), float(wavelength))
    except (TypeError, ValueError) as exc:
        raise ValueError(f"invalid beacon geometry: {exc}") from exc


def check_bearings(X):
    """Bearings as an ``(n, 1)`` float array within [-pi/2, pi/2]."""
    X = check_array(X, ensure_2d=False, dtype=float)
    X = X.reshape(-1, 1) if X.ndim == 1 else X
    if X.shape[1] != 1:
        raise ValueError(f"expected a single bearing column, got {X.shape[1]} columns")
    if np.any(np.abs(X) > np.pi / 2 + 1e-12):
        raise ValueError("bearings must lie in [-pi/2, pi/2] radians")
    return X


def check_observables(X, n_columns):
    """Receiver observables as a finite ``(n, n_columns)`` array.

    Amplitude pairs must be non-negative and not both zero.
    """
    X = check_array(X, ensure_2d=False, dtype=float)
    X = X.reshape(-1, 1) if X.ndim == 1 and n_columns == 1 else X
    if X.ndim != 2 or X.shape[1] != n_columns:
        raise ValueError(f"expected {n_columns} observable column(s), got shape {X.shape}")
    if n_columns == 2:
        if np.any(X < 0):
            raise ValueError("amplitudes must be non-negative")
        if np.any((X[:, 0] == 0) & (X[:, 1] == 0)):
            raise ValueError("both amplitudes are zero in at least one row")
    return X
