"""Bearing estimators for the two separator orientations.

Polarization-amplitude (theta = pi/4): the arm amplitude ratio equals
``|tan(dphi/2)|``, which fixes ``|dphi|`` but not its sign.

Polarization-phase (theta = 0): the arm phase difference equals ``dphi``
itself, so the bearing sign survives.

Scalar functions return full :class:`BearingEstimate` objects with every
branch; the ``*_principal`` functions are vectorized fast paths used by the
Monte Carlo harness and return NaN where no zero-branch solution exists.
"""
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import DegenerateInputError, ResolutionConflictError
from .geometry import AmbiguitySpec, bearing_from_phase, check_bearing

AMPLITUDE = "amplitude"
PHASE = "phase"
METHODS = (AMPLITUDE, PHASE)
# separator orientation each method is designed for
OPERATING_THETA = {AMPLITUDE: np.pi / 4, PHASE: 0.0}

_SINGULAR_TOL = 1e-12


@dataclass(frozen=True)
class PhaseDetector:
    """Normalized output scale ``u0`` and raw gain ``k`` (kept as metadata)."""

    u0: float = 1.0
    k: float = 1.0

    def __post_init__(self):
        if not self.u0 > 0:
            raise ValueError(f"phase detector u0 must be > 0, got {self.u0!r}")


class DFCharacteristic(NamedTuple):
    exact: float
    linear: float

    @property
    def discrepancy(self):
        """Linear minus exact; positive where linearization overestimates."""
        return self.linear - self.exact


def amplitude_phase_magnitude(a1, a2):
    """``|dphi| = 2*atan2(a1, a2)`` in [0, pi]."""
    return 2.0 * np.arctan2(a1, a2)


def bearing_amplitude(g, a1, a2, spec=AmbiguitySpec()):
    """Bearing from the arm amplitudes measured at theta = pi/4.

    The sign of the bearing is not observable, so candidates for both signs
    are returned and ``sign_resolved`` is False. The principal value is the
    non-negative zero-branch solution, i.e. ``|alpha|``.

    Raises
    ------
    DegenerateInputError
        If an amplitude is negative or both are zero.
    NoSolutionError
        If no branch maps into the front half-plane.
    """
    if a1 < 0 or a2 < 0 or not np.isfinite(a1 + a2):
        raise DegenerateInputError(f"amplitudes must be finite and >= 0, got ({a1!r}, {a2!r})")
    if a1 == 0 and a2 == 0:
        raise DegenerateInputError("both arm amplitudes are zero")
    dphi = amplitude_phase_magnitude(a1, a2)
    return bearing_from_phase(g, dphi, spec, method=AMPLITUDE, sign_resolved=False)


def amplitude_df_characteristic(g, alpha, signed=False):
    """Amplitude ratio A1/A2 versus bearing, ``|tan(pi*d/lambda*sin(alpha))|``.

    Returns ``inf`` at the tangent singularities (the zone edges). The ratio
    itself is even in alpha and has a kink at zero; ``signed=True`` drops the
    absolute value, giving the smooth branch whose slope at zero is the
    steepness.
    """
    x = np.pi * g.ratio * np.sin(check_bearing(alpha))
    out = np.tan(x) if signed else np.abs(np.tan(x))
    return np.where(np.abs(np.cos(x)) < _SINGULAR_TOL, np.copysign(np.inf, out), out)[()]


def amplitude_steepness(g):
    """Slope of the amplitude characteristic at alpha = 0, per radian."""
    return np.pi * g.ratio


def bearing_phase(g, delta_psi, spec=AmbiguitySpec()):
    """Bearing from the arm phase difference measured at theta = 0.

    The phase difference carries the sign, so the principal zero-branch
    solution is signed. Branch enumeration is shared with
    :func:`~polardf.geometry.bearing_from_phase`.
    """
    return bearing_from_phase(g, delta_psi, spec, method=PHASE, sign_resolved=True)


def phase_detector_voltage(pd, g, alpha):
    """Detector output ``u0 * sin(2*pi*d/lambda * sin(alpha))`` under ideal AGC."""
    return pd.u0 * np.sin(g.phase_scale * np.sin(check_bearing(alpha)))[()]


def phase_df_characteristic(g, alpha):
    """Normalized detector output: exact sine form and its small-angle line."""
    alpha = check_bearing(alpha)
    return DFCharacteristic(np.sin(g.phase_scale * np.sin(alpha))[()], (g.phase_scale * alpha)[()])


def phase_steepness(g):
    """Slope of the phase characteristic at alpha = 0, per radian."""
    return g.phase_scale


def principal_amplitude(g, a1, a2):
    """Vectorized ``|alpha|`` from amplitudes; NaN when out of the arcsin domain."""
    x = amplitude_phase_magnitude(np.asarray(a1, float), np.asarray(a2, float)) / g.phase_scale
    return _arcsin_nan(x)


def principal_phase(g, delta_psi):
    """Vectorized signed alpha from the phase difference; NaN when out of domain."""
    return _arcsin_nan(np.asarray(delta_psi, float) / g.phase_scale)


def _arcsin_nan(x):
    ok = np.abs(x) <= 1.0 + 1e-12
    return np.where(ok, np.arcsin(np.clip(x, -1.0, 1.0)), np.nan)[()]


def selection_window(g):
    """Largest accepted |sin(candidate) - sin(running estimate)| at a finer base.

    A quarter of the sign-resolved candidate spacing lambda/d, i.e. the coarse
    estimate must predict the fine phase to within pi/2.
    """
    return 0.25 / g.ratio


def _branch_sines(estimate):
    cands = estimate.candidates
    if estimate.sign_resolved:
        cands = [c for c in cands if c.sign == 1] or cands
    return np.sin([c.alpha for c in cands]), [c.alpha for c in cands]


def resolve_multibase(estimates):
    """Coarse-to-fine branch resolution across several baselines.

    Parameters
    ----------
    estimates : list of (BeaconGeometry, BearingEstimate)
        One estimate per base, each enumerated with enough branches
        (``n_max >= ceil(2*d/lambda)``) to cover the half-plane.

    Returns
    -------
    float
        Bearing selected at the finest base, radians.

    Raises
    ------
    ResolutionConflictError
        When at some finer base no candidate lies within
        :func:`selection_window` of the running estimate.
    """
    if not estimates:
        raise ValueError("resolve_multibase needs at least one estimate")
    ordered = sorted(estimates, key=lambda ge: ge[0].ratio)
    ratios = [g.ratio for g, _ in ordered]
    if len(set(ratios)) != len(ratios):
        raise ValueError(f"bases must have distinct d/lambda, got {ratios}")
    running = ordered[0][1].principal
    for g, est in ordered[1:]:
        sines, alphas = _branch_sines(est)
        dist = np.abs(sines - np.sin(running))
        best = int(np.argmin(dist))
        if dist[best] > selection_window(g):
            raise ResolutionConflictError(
                f"no candidate at d/lambda={g.ratio:g} within the selection window of "
                f"{np.degrees(running):.6g} deg",
                [list(e.alphas) for _, e in ordered])
        running = alphas[best]
    return float(running)


def resolve_multibase_principal(geometries, observations, method):
    """Vectorized multi-base resolution; NaN marks a resolution conflict.

    ``observations[i]`` holds the per-trial observable at ``geometries[i]``:
    ``delta_psi`` for the phase method, ``(a1, a2)`` for the amplitude method.
    """
    ordered = sorted(zip(geometries, observations), key=lambda go: go[0].ratio)

    def phase_of(obs):
        if method == AMPLITUDE:
            return amplitude_phase_magnitude(*obs)
        return np.asarray(obs, float)

    g0, obs0 = ordered[0]
    running = np.sin(_arcsin_nan(phase_of(obs0) / g0.phase_scale))
    signs = (1.0,) if method == PHASE else (1.0, -1.0)
    for g, obs in ordered[1:]:
        measured = phase_of(obs)
        predicted = g.phase_scale * running
        best = np.full(np.shape(running), np.nan)
        best_err = np.full(np.shape(running), np.inf)
        for sign in signs:
            n = np.round((predicted - sign * measured) / (2.0 * np.pi))
            s = (sign * measured + 2.0 * np.pi * n) / g.phase_scale
            err = np.abs(s - running)
            take = (err < best_err) & (np.abs(s) <= 1.0 + 1e-12)
            best = np.where(take, s, best)
            best_err = np.where(take, err, best_err)
        running = np.where(best_err <= selection_window(g), best, np.nan)
    return np.arcsin(np.clip(running, -1.0, 1.0))
