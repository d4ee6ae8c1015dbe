"""scikit-learn compatible wrappers around the receiver model and estimators.

``PolarizationReceiver`` is a transformer from bearings to receiver
observables; ``AmplitudeBearingEstimator`` and ``PhaseBearingEstimator`` are
regressors from observables back to bearings. They chain in a
:class:`~sklearn.pipeline.Pipeline`::

    pipe = make_pipeline(
        PolarizationReceiver(d=1.0, wavelength=1.0, observable="phase"),
        PhaseBearingEstimator(d=1.0, wavelength=1.0),
    )
    pipe.fit(alphas).predict(alphas)   # recovers alphas inside the sector

The physics has no free parameters, so ``fit`` only validates the
configuration and records derived quantities (zone widths, steepness).
"""
import numpy as np
from sklearn.base import BaseEstimator, RegressorMixin, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from . import _rng
from .estimators import (
    OPERATING_THETA, amplitude_steepness, bearing_amplitude, bearing_phase, phase_steepness,
    principal_amplitude, principal_phase,
)
from .geometry import AmbiguitySpec, phase_difference, unambiguity_zone, unambiguous_sector
from .receiver import NoiseSpec, add_noise, lps_outputs
from .validation import check_bearings, check_geometry, check_observables

OBSERVABLES = ("amplitudes", "phase")


class PolarizationReceiver(TransformerMixin, BaseEstimator):
    """Simulate the onboard receiver for a column of bearings.

    Parameters
    ----------
    d, wavelength : float
        Emitter spacing and carrier wavelength, meters.
    observable : {"amplitudes", "phase"}
        ``"amplitudes"`` yields columns ``(a1, a2)`` at theta = pi/4,
        ``"phase"`` yields the single column ``delta_psi`` at theta = 0.
    theta : float or None
        Separator angle override, radians. Defaults to the operating angle
        of the chosen observable.
    snr_db : float or None
        Per-channel SNR; None for a noise-free receiver.
    random_state : int
        Master seed; row ``i`` uses trial seed ``(random_state, i, 0)``.
    """

    def __init__(self, d=1.0, wavelength=1.0, observable="phase", theta=None, snr_db=None,
                 random_state=0):
        self.d = d
        self.wavelength = wavelength
        self.observable = observable
        self.theta = theta
        self.snr_db = snr_db
        self.random_state = random_state

    def fit(self, X=None, y=None):
        if self.observable not in OBSERVABLES:
            raise ValueError(f"observable must be one of {OBSERVABLES}, got {self.observable!r}")
        self.geometry_ = check_geometry(self.d, self.wavelength)
        default = OPERATING_THETA["amplitude" if self.observable == "amplitudes" else "phase"]
        self.theta_ = default if self.theta is None else float(self.theta)
        self.noise_ = None if self.snr_db is None else NoiseSpec(float(self.snr_db), self.random_state)
        if X is not None:
            self.n_features_in_ = check_bearings(X).shape[1]
        return self

    def transform(self, X):
        check_is_fitted(self, "geometry_")
        alpha = check_bearings(X)[:, 0]
        c = lps_outputs(phase_difference(self.geometry_, alpha), self.theta_)
        if self.noise_ is not None:
            seeds = np.array([_rng.trial_seeds(self.random_state, i, 1)[0] for i in range(alpha.size)],
                             dtype=np.uint64)
            c = add_noise(c, self.noise_, seeds=seeds)
        if self.observable == "amplitudes":
            return np.column_stack([c.a1, c.a2])
        return np.asarray(c.delta_psi, dtype=float).reshape(-1, 1)

    def get_feature_names_out(self, input_features=None):
        names = ["a1", "a2"] if self.observable == "amplitudes" else ["delta_psi"]
        return np.array(names, dtype=object)


class _BearingRegressor(RegressorMixin, BaseEstimator):
    _n_columns = None

    def _fit_common(self, X):
        self.geometry_ = check_geometry(self.d, self.wavelength)
        self.ambiguity_ = AmbiguitySpec(self.n_max, self.phi0)
        if X is not None:
            self.n_features_in_ = check_observables(X, self._n_columns).shape[1]

    def _check(self, X):
        check_is_fitted(self, "geometry_")
        return check_observables(X, self._n_columns)


class AmplitudeBearingEstimator(_BearingRegressor):
    """Bearing magnitude from arm amplitudes ``(a1, a2)`` measured at theta = pi/4.

    ``predict`` returns ``|alpha|``; the sign is not observable with this
    method, so targets passed to ``score`` are compared by magnitude.
    Rows with no zero-branch solution predict NaN.

    Attributes
    ----------
    unambiguity_zone_ : float
        Half-width of the single-valued zone, radians.
    steepness_ : float
        Slope of the amplitude-ratio characteristic at alpha = 0.
    """

    _n_columns = 2

    def __init__(self, d=1.0, wavelength=1.0, n_max=0, phi0=np.pi):
        self.d = d
        self.wavelength = wavelength
        self.n_max = n_max
        self.phi0 = phi0

    def fit(self, X=None, y=None):
        self._fit_common(X)
        self.unambiguity_zone_ = unambiguity_zone(self.geometry_).angle
        self.steepness_ = amplitude_steepness(self.geometry_)
        return self

    def predict(self, X):
        X = self._check(X)
        return principal_amplitude(self.geometry_, X[:, 0], X[:, 1])

    def estimate(self, X):
        """Full candidate sets, one :class:`BearingEstimate` per row."""
        X = self._check(X)
        return [bearing_amplitude(self.geometry_, a1, a2, self.ambiguity_) for a1, a2 in X]

    def score(self, X, y, sample_weight=None):
        return super().score(X, np.abs(np.ravel(y)), sample_weight)


class PhaseBearingEstimator(_BearingRegressor):
    """Signed bearing from the arm phase difference measured at theta = 0.

    Attributes
    ----------
    unambiguous_sector_ : float
        Half-width of the sector covered by a phase meter of range +-phi0.
    steepness_ : float
        Slope of the normalized detector characteristic at alpha = 0.
    """

    _n_columns = 1

    def __init__(self, d=1.0, wavelength=1.0, n_max=0, phi0=np.pi):
        self.d = d
        self.wavelength = wavelength
        self.n_max = n_max
        self.phi0 = phi0

    def fit(self, X=None, y=None):
        self._fit_common(X)
        self.unambiguous_sector_ = unambiguous_sector(self.geometry_, self.phi0).angle
        self.steepness_ = phase_steepness(self.geometry_)
        return self

    def predict(self, X):
        X = self._check(X)
        return principal_phase(self.geometry_, X[:, 0])

    def estimate(self, X):
        X = self._check(X)
        return [bearing_phase(self.geometry_, v, self.ambiguity_) for v in X[:, 0]]
