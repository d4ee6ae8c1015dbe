"""Two-channel onboard receiver behind a linear polarization separator.

The separator orts are turned by ``theta`` from the measurement plane. Arm 1
passes the (rotated) vertical component, arm 2 the horizontal one; the
detectors are linear, so amplitudes are complex magnitudes.
"""
from dataclasses import dataclass

import numpy as np

from . import _rng
from .errors import DegeneratePhaseError
from .jones import project_arm1, project_arm2, resultant_wave, rotate

# arm amplitude (relative to the total) below which its phase is undefined
ZERO_ARM_TOL = 1e-12


@dataclass(frozen=True)
class ChannelOutputs:
    """Complex arm signals plus detected amplitudes and phases.

    Phases of arms whose amplitude vanishes are NaN. Fields may be numpy
    arrays for a batch of observations.
    """

    e1: complex
    e2: complex
    a1: float
    a2: float
    psi1: float
    psi2: float

    @classmethod
    def from_signals(cls, e1, e2):
        e1 = np.asarray(e1, dtype=complex)[()]
        e2 = np.asarray(e2, dtype=complex)[()]
        a1, a2 = np.abs(e1), np.abs(e2)
        floor = ZERO_ARM_TOL * np.hypot(a1, a2)
        psi1 = np.where(a1 > floor, np.angle(e1), np.nan)[()]
        psi2 = np.where(a2 > floor, np.angle(e2), np.nan)[()]
        return cls(e1, e2, a1, a2, psi1, psi2)

    @property
    def delta_psi(self):
        """Phase difference arm 1 minus arm 2 in (-pi, pi]; NaN where undefined."""
        dpsi = _wrap(np.angle(self.e1 * np.conj(self.e2)))
        return np.where(np.isnan(self.psi1) | np.isnan(self.psi2), np.nan, dpsi)[()]


@dataclass(frozen=True)
class NoiseSpec:
    """Per-channel SNR in dB and the seed of the noise stream."""

    snr_db: float
    seed: int = 0

    def __post_init__(self):
        if not np.isfinite(self.snr_db):
            raise ValueError(f"noise.snr_db must be finite, got {self.snr_db!r}")


def _wrap(x):
    """Wrap onto (-pi, pi]."""
    out = np.angle(np.exp(1j * np.asarray(x, dtype=float)))
    out = np.where(out <= -np.pi, np.pi, out)
    return np.where(np.isnan(x), np.nan, out)[()]


def arm_signals(delta_phi, theta):
    """Closed-form complex arm signals ``(e1, e2)``."""
    c, s = np.cos(theta), np.sin(theta)
    k = 1.0 / np.sqrt(2.0)
    cd, sd = np.cos(delta_phi), np.sin(delta_phi)
    e1 = k * ((-s + c * cd) + 1j * (c * sd))
    e2 = k * ((c + s * cd) + 1j * (s * sd))
    return e1, e2


def jones_arm_signals(delta_phi, theta):
    """Arm signals obtained by rotating and projecting the resultant Jones vector."""
    wave = rotate(resultant_wave(delta_phi), theta)
    return project_arm1(wave).ey, project_arm2(wave).ex


def lps_outputs(delta_phi, theta):
    """Noise-free receiver outputs for inter-wave phase ``delta_phi`` and basis angle ``theta``."""
    return ChannelOutputs.from_signals(*arm_signals(delta_phi, theta))


def amplitudes(delta_phi, theta):
    """Detected amplitudes ``(A1, A2)`` in closed form."""
    # 1 -+ s*cos(dphi) rewritten with half-angle squares so neither arm loses
    # precision to cancellation when it is nearly silent.
    s = np.sin(2.0 * theta)
    h = 0.5 * np.asarray(delta_phi, dtype=float)
    sin2, cos2 = np.sin(h) ** 2, np.cos(h) ** 2
    pos = s >= 0
    base = np.where(pos, 1.0 - s, 1.0 + s)
    scale = 2.0 * np.abs(s)
    q1 = base + scale * np.where(pos, sin2, cos2)
    q2 = base + scale * np.where(pos, cos2, sin2)
    k = 1.0 / np.sqrt(2.0)
    return (k * np.sqrt(q1))[()], (k * np.sqrt(q2))[()]


def phase_diff_output(delta_phi, theta):
    """Phase difference between the arms, ``arg(e1 * conj(e2))`` in (-pi, pi].

    Raises
    ------
    DegeneratePhaseError
        If either arm is silent; ``err.arm`` identifies which.
    """
    return delta_psi_of(lps_outputs(delta_phi, theta))


def delta_psi_of(c):
    """Phase difference of measured outputs; raises if an arm phase is undefined."""
    for arm, psi in ((1, c.psi1), (2, c.psi2)):
        if np.any(np.isnan(psi)):
            raise DegeneratePhaseError(arm)
    return c.delta_psi


def noise_sigma(c, snr_db):
    """Per-channel complex noise standard deviation for a given SNR."""
    per_channel = 0.5 * (np.abs(c.e1) ** 2 + np.abs(c.e2) ** 2)
    return np.sqrt(per_channel / 10.0 ** (snr_db / 10.0))


def add_noise(c, spec, seeds=None):
    """Add circular complex Gaussian noise to both arms and re-detect.

    Noise power per arm is half the total signal intensity divided by the
    linear SNR. ``spec.seed`` fixes the realization. For a batch of outputs,
    pass ``seeds`` (one per element) to give every element its own stream.
    """
    if seeds is None:
        seeds = np.full(np.size(c.e1), _rng._u64(spec.seed), dtype=np.uint64)
    z = _rng.standard_normals(seeds, 4)
    sigma = np.ravel(noise_sigma(c, spec.snr_db)) / np.sqrt(2.0)
    n1 = sigma * (z[:, 0] + 1j * z[:, 1])
    n2 = sigma * (z[:, 2] + 1j * z[:, 3])
    shape = np.shape(c.e1)
    return ChannelOutputs.from_signals(
        (np.ravel(c.e1) + n1).reshape(shape), (np.ravel(c.e2) + n2).reshape(shape))

