"""Beacon baseline geometry: bearing <-> inter-wave phase difference.

A bearing ``alpha`` is measured from the perpendicular at the baseline center,
positive toward the second emitter, and is confined to the front half-plane
[-pi/2, pi/2]. The received phase difference is only known modulo 2*pi, so
inversion returns every branch that maps back into the half-plane.
"""
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .errors import NoSolutionError

# slack for arcsin arguments that overshoot +-1 by rounding only
_DOMAIN_TOL = 1e-12


@dataclass(frozen=True)
class BeaconGeometry:
    """Emitter spacing ``d`` and carrier ``wavelength``, both in meters."""

    d: float
    wavelength: float

    def __post_init__(self):
        if not (np.isfinite(self.d) and self.d > 0):
            raise ValueError(f"geometry.d must be > 0, got {self.d!r}")
        if not (np.isfinite(self.wavelength) and self.wavelength > 0):
            raise ValueError(f"geometry.lambda must be > 0, got {self.wavelength!r}")

    @property
    def ratio(self):
        """Baseline in wavelengths, d/lambda."""
        return self.d / self.wavelength

    @property
    def phase_scale(self):
        """Phase difference per unit sin(alpha): 2*pi*d/lambda."""
        return 2.0 * np.pi * self.ratio

    @classmethod
    def from_ratio(cls, ratio, wavelength=1.0):
        return cls(ratio * wavelength, wavelength)


@dataclass(frozen=True)
class AmbiguitySpec:
    """Branch search limit ``n_max`` and phase-meter half-interval ``phi0``."""

    n_max: int = 0
    phi0: float = np.pi

    def __post_init__(self):
        if int(self.n_max) != self.n_max or self.n_max < 0:
            raise ValueError(f"ambiguity.n_max must be a non-negative integer, got {self.n_max!r}")
        if not 0 < self.phi0 <= np.pi:
            raise ValueError(f"ambiguity.phi0 must lie in (0, pi], got {self.phi0!r}")


class Candidate(NamedTuple):
    """One bearing solution: ``sin(alpha) = (sign*dphi + 2*pi*branch_n) / scale``."""

    alpha: float
    branch_n: int
    sign: int


@dataclass(frozen=True)
class BearingEstimate:
    principal: float
    candidates: list = field(default_factory=list)
    method: str = "phase"
    sign_resolved: bool = True

    @property
    def alphas(self):
        return np.array([c.alpha for c in self.candidates])


class AngularZone(NamedTuple):
    """Half-width of an unambiguous bearing interval.

    ``bounded`` is False when the baseline is short enough that the whole
    front half-plane is unambiguous and ``angle`` saturates at pi/2.
    """

    angle: float
    bounded: bool


def check_bearing(alpha):
    alpha = np.asarray(alpha, dtype=float)
    if np.any(np.abs(alpha) > np.pi / 2 + _DOMAIN_TOL):
        raise ValueError("bearing must lie in [-pi/2, pi/2]")
    return alpha


def phase_difference(g, alpha):
    """Phase of the vertical wave relative to the horizontal one at bearing ``alpha``."""
    return g.phase_scale * np.sin(check_bearing(alpha))[()]


def _arcsin_or_none(x):
    if abs(x) > 1.0 + _DOMAIN_TOL:
        return None
    return float(np.arcsin(np.clip(x, -1.0, 1.0)))


def enumerate_candidates(g, delta_phi, n_max, signs=(1, -1)):
    """All front half-plane bearings consistent with ``delta_phi`` modulo 2*pi.

    Duplicates (e.g. the two signs of a zero phase) are kept once, first
    occurrence wins; iteration order is by ``|n|``, then sign, then ``n``.
    """
    out = []
    for k in range(n_max + 1):
        for sign in signs:
            for n in ((0,) if k == 0 else (k, -k)):
                alpha = _arcsin_or_none((sign * delta_phi + 2.0 * np.pi * n) / g.phase_scale)
                if alpha is None:
                    continue
                if any(abs(alpha - c.alpha) <= _DOMAIN_TOL for c in out):
                    continue
                out.append(Candidate(alpha, n, sign))
    return out


def bearing_from_phase(g, delta_phi, spec=AmbiguitySpec(), method="phase", sign_resolved=True):
    """Invert a measured phase difference into bearing candidates.

    Parameters
    ----------
    g : BeaconGeometry
    delta_phi : float
        Measured phase difference, radians. Not required to be wrapped.
    spec : AmbiguitySpec
        ``n_max`` bounds the 2*pi branch offsets that are searched.

    Returns
    -------
    BearingEstimate
        Candidates for both signs of ``delta_phi`` and every branch up to
        ``n_max``. The principal value is the zero-branch, positive-sign
        solution; failing that, the candidate with the smallest branch.

    Raises
    ------
    NoSolutionError
        If no branch maps into the arcsin domain.
    """
    candidates = enumerate_candidates(g, float(delta_phi), int(spec.n_max))
    if not candidates:
        raise NoSolutionError(
            f"phase {delta_phi!r} rad has no bearing for d/lambda={g.ratio:g} with n_max={spec.n_max}")
    principal = min(candidates, key=lambda c: (abs(c.branch_n), c.sign != 1, c.branch_n < 0))
    return BearingEstimate(principal.alpha, candidates, method, sign_resolved)


def _zone(x):
    if x > 1.0:
        return AngularZone(np.pi / 2, False)
    return AngularZone(float(np.arcsin(x)), True)


def unambiguity_zone(g):
    """Half-width arcsin(lambda / 2d) of the zone where the amplitude ratio is single valued."""
    return _zone(1.0 / (2.0 * g.ratio))


def unambiguous_sector(g, phi0):
    """Half-width arcsin(phi0 * lambda / (2*pi*d)) covered by a phase meter of range +-phi0."""
    return _zone(phi0 / g.phase_scale)
