"""Jones calculus for the two-emitter beacon wave in a linear polarization basis.

Vectors are stored as a pair of complex components (horizontal, vertical).
Every function also accepts numpy arrays in place of scalar components, so a
whole batch of waves can be pushed through in one call.
"""
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateInputError

# below this fraction of the total intensity the linear part of the wave is
# treated as absent and the ellipse orientation as undefined
_ORIENTATION_TOL = 1e-12


@dataclass(frozen=True)
class JonesVector:
    """Complex field amplitudes along the horizontal and vertical orts."""

    ex: complex
    ey: complex

    def __add__(self, other):
        return JonesVector(self.ex + other.ex, self.ey + other.ey)

    def as_array(self):
        return np.array([self.ex, self.ey], dtype=complex)


@dataclass(frozen=True)
class PolarizationState:
    """Ellipse orientation ``beta`` in [0, pi) and ellipticity modulus ``r_mod``.

    ``degenerate_orientation`` is set for (near) circular waves, where the
    orientation is undefined and ``beta`` is reported as pi/4.
    """

    beta: float
    r_mod: float
    degenerate_orientation: bool = False


def normalize_angle(theta):
    """Map a basis angle onto [0, pi); the basis is unchanged by a half turn."""
    out = np.mod(theta, np.pi)
    # mod can round up to exactly pi for tiny negative inputs
    return np.where(out >= np.pi, 0.0, out)[()]


def resultant_wave(delta_phi):
    """Unit-intensity sum of the two orthogonally polarized beacon waves.

    Parameters
    ----------
    delta_phi : float or ndarray
        Phase of the vertical wave relative to the horizontal one, radians.

    Returns
    -------
    JonesVector
        ``(1, exp(j*delta_phi)) / sqrt(2)``.
    """
    amp = 1.0 / np.sqrt(2.0)
    ey = amp * np.exp(1j * np.asarray(delta_phi, dtype=float))
    ex = np.full_like(ey, amp)
    if ey.ndim == 0:
        return JonesVector(complex(ex), complex(ey))
    return JonesVector(ex, ey)


def rotation_matrix(theta):
    c, s = np.cos(theta), np.sin(theta)
    return np.array([[c, s], [-s, c]])


def rotate(v, theta):
    """Express ``v`` in a basis turned counterclockwise by ``theta``."""
    c, s = np.cos(theta), np.sin(theta)
    return JonesVector(c * v.ex + s * v.ey, -s * v.ex + c * v.ey)


def project_arm1(v):
    """First separator arm: passes the vertical component only."""
    return JonesVector(0 * v.ex, v.ey)


def project_arm2(v):
    """Second separator arm: passes the horizontal component only."""
    return JonesVector(v.ex, 0 * v.ey)


def intensity(v):
    return np.abs(v.ex) ** 2 + np.abs(v.ey) ** 2


def stokes(v):
    """Stokes parameters ``(S0, S1, S2, S3)`` of a fully polarized wave."""
    cross = v.ex * np.conj(v.ey)
    s0 = np.abs(v.ex) ** 2 + np.abs(v.ey) ** 2
    s1 = np.abs(v.ex) ** 2 - np.abs(v.ey) ** 2
    return s0, s1, 2.0 * np.real(cross), -2.0 * np.imag(cross)


def ellipse_params(v):
    """Orientation and ellipticity modulus of the polarization ellipse.

    Computed from the Stokes parameters, so it holds for any fully polarized
    wave. The minor/major axis ratio is formed as ``|S3| / (S0 + L)`` with
    ``L = hypot(S1, S2)``, which stays accurate at both the linear and the
    circular end.

    Raises
    ------
    DegenerateInputError
        If the wave has zero intensity.
    """
    s0, s1, s2, s3 = (float(x) for x in stokes(v))
    if not s0 > 0.0:
        raise DegenerateInputError("zero-intensity wave has no polarization ellipse")
    linear = np.hypot(s1, s2)
    r_mod = min(abs(s3) / (s0 + linear), 1.0)
    if linear <= _ORIENTATION_TOL * s0:
        return PolarizationState(np.pi / 4, r_mod, True)
    beta = float(normalize_angle(0.5 * np.arctan2(s2, s1)))
    return PolarizationState(beta, r_mod, False)
