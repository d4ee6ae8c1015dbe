"""Polarization amplitude and phase direction finding for two-emitter radio beacons."""
from .errors import (
    DegenerateInputError, DegeneratePhaseError, NoSolutionError, PolarDFError,
    ResolutionConflictError, ScenarioError,
)
from .estimators import (
    PhaseDetector, amplitude_df_characteristic, amplitude_steepness, bearing_amplitude,
    bearing_phase, phase_detector_voltage, phase_df_characteristic, phase_steepness,
    resolve_multibase,
)
from .geometry import (
    AmbiguitySpec, BeaconGeometry, BearingEstimate, Candidate, bearing_from_phase,
    phase_difference, unambiguity_zone, unambiguous_sector,
)
from .harness import (
    MonteCarloReport, Scenario, SweepRow, load_scenario, run_monte_carlo, run_sweep, write_csv,
)
from .jones import (
    JonesVector, PolarizationState, ellipse_params, intensity, project_arm1, project_arm2,
    resultant_wave, rotate,
)
from .models import AmplitudeBearingEstimator, PhaseBearingEstimator, PolarizationReceiver
from .receiver import (
    ChannelOutputs, NoiseSpec, add_noise, amplitudes, lps_outputs, phase_diff_output,
)

__version__ = "0.1.0"
