"""Scenario files, characteristic sweeps, Monte Carlo runs and CSV output.

Scenario JSON (angles in degrees where the key ends in ``_deg``, radians
otherwise)::

    {
      "geometry": {"d": 1.0, "lambda": 1.0},      # or a list of such objects
      "theta_deg": 0,
      "method": "phase",                           # amplitude | phase | both
      "alpha_grid_deg": [-30, 30, 1],              # start, stop, step
      "noise": {"snr_db": 20, "seed": 7},          # optional
      "trials": 1000,
      "ambiguity": {"n_max": 0, "phi0_deg": 180}   # optional
    }
"""
import csv
import json
import math
from dataclasses import dataclass, field, fields

import numpy as np

from . import _rng
from .errors import PolarDFError, ScenarioError
from .estimators import (
    AMPLITUDE, METHODS, OPERATING_THETA, PHASE, PhaseDetector, bearing_amplitude, bearing_phase,
    phase_detector_voltage, principal_amplitude, principal_phase, resolve_multibase,
    resolve_multibase_principal,
)
from .geometry import (
    AmbiguitySpec, BeaconGeometry, phase_difference, unambiguity_zone, unambiguous_sector,
)
from .jones import ellipse_params, normalize_angle, resultant_wave
from .receiver import NoiseSpec, add_noise, lps_outputs

_KNOWN_KEYS = {
    "geometry", "theta", "theta_deg", "method", "alpha_grid", "alpha_grid_deg",
    "noise", "trials", "ambiguity",
}
MIN_MC_TRIALS = 100


@dataclass(frozen=True)
class Scenario:
    geometries: tuple
    theta: float
    method: str
    alpha_grid: tuple
    noise: NoiseSpec = None
    trials: int = 1
    ambiguity: AmbiguitySpec = AmbiguitySpec()

    @property
    def geometry(self):
        """Finest base; the only one for single-base scenarios."""
        return max(self.geometries, key=lambda g: g.ratio)

    @property
    def methods(self):
        return METHODS if self.method == "both" else (self.method,)

    @property
    def alphas(self):
        start, stop, step = self.alpha_grid
        count = int(math.floor((stop - start) / step + 1e-9)) + 1
        return start + step * np.arange(count)


@dataclass
class SweepRow:
    alpha_true: float
    delta_phi: float
    a1: float
    a2: float
    ratio: float
    psi1: float
    psi2: float
    delta_psi: float
    u_pd: float
    beta: float
    r_mod: float
    alpha_est_amplitude: float = math.nan
    alpha_est_phase: float = math.nan


@dataclass
class MonteCarloRow:
    method: str
    snr_db: float
    alpha_true: float
    trials: int
    mean_error: float
    std_error: float
    rmse: float
    outlier_rate: float


@dataclass
class MonteCarloReport:
    rows: list = field(default_factory=list)

    def for_method(self, method):
        return [r for r in self.rows if r.method == method]


def _require(cfg, key, where=""):
    if key not in cfg:
        raise ScenarioError(where + key, "missing required field")
    return cfg[key]


def _number(value, name):
    if isinstance(value, bool) or not isinstance(value, (int, float)) or not math.isfinite(value):
        raise ScenarioError(name, f"must be a finite number, got {value!r}")
    return float(value)


def _angle(cfg, key, name=None, default=None):
    """Read ``key`` in radians or ``key_deg`` in degrees; exactly one may be present."""
    name = name or key
    has_rad, has_deg = key in cfg, key + "_deg" in cfg
    if has_rad and has_deg:
        raise ScenarioError(name, f"give either {key} or {key}_deg, not both")
    if has_deg:
        return math.radians(_number(cfg[key + "_deg"], name + "_deg"))
    if has_rad:
        return _number(cfg[key], name)
    if default is None:
        raise ScenarioError(name, "missing required field")
    return default


def _geometry(obj, name):
    if not isinstance(obj, dict):
        raise ScenarioError(name, "must be an object with d and lambda")
    d = _number(_require(obj, "d", name + "."), name + ".d")
    lam = _number(_require(obj, "lambda", name + "."), name + ".lambda")
    if d <= 0:
        raise ScenarioError(name + ".d", "must be > 0")
    if lam <= 0:
        raise ScenarioError(name + ".lambda", "must be > 0")
    return BeaconGeometry(d, lam)


def scenario_from_dict(cfg):
    """Validate a decoded scenario object; see the module docstring for the schema."""
    if not isinstance(cfg, dict):
        raise ScenarioError("<root>", "scenario must be a JSON object")
    unknown = sorted(set(cfg) - _KNOWN_KEYS)
    if unknown:
        raise ScenarioError(unknown[0], "unknown field")

    geo = _require(cfg, "geometry")
    if isinstance(geo, list):
        if not geo:
            raise ScenarioError("geometry", "list must not be empty")
        geometries = tuple(_geometry(g, f"geometry[{i}]") for i, g in enumerate(geo))
        if len({g.ratio for g in geometries}) != len(geometries):
            raise ScenarioError("geometry", "bases must have distinct d/lambda")
    else:
        geometries = (_geometry(geo, "geometry"),)

    theta = float(normalize_angle(_angle(cfg, "theta")))
    method = _require(cfg, "method")
    if method not in (*METHODS, "both"):
        raise ScenarioError("method", f"must be one of amplitude, phase, both; got {method!r}")

    deg = "alpha_grid_deg" in cfg
    if deg and "alpha_grid" in cfg:
        raise ScenarioError("alpha_grid", "give either alpha_grid or alpha_grid_deg, not both")
    gname = "alpha_grid_deg" if deg else "alpha_grid"
    grid = _require(cfg, gname)
    if not isinstance(grid, list) or len(grid) != 3:
        raise ScenarioError(gname, "must be [start, stop, step]")
    grid = [_number(x, f"{gname}[{i}]") for i, x in enumerate(grid)]
    if deg:
        grid = [math.radians(x) for x in grid]
    start, stop, step = grid
    if step <= 0:
        raise ScenarioError(gname, "step must be > 0")
    if stop <= start:
        raise ScenarioError(gname, "stop must be > start")
    if max(abs(start), abs(stop)) > math.pi / 2 + 1e-12:
        raise ScenarioError(gname, "grid must lie within [-90, 90] deg")

    noise = None
    if cfg.get("noise") is not None:
        ncfg = cfg["noise"]
        if not isinstance(ncfg, dict):
            raise ScenarioError("noise", "must be an object with snr_db and seed")
        snr = _number(_require(ncfg, "snr_db", "noise."), "noise.snr_db")
        seed = ncfg.get("seed", 0)
        if isinstance(seed, bool) or not isinstance(seed, int):
            raise ScenarioError("noise.seed", f"must be an integer, got {seed!r}")
        noise = NoiseSpec(snr, seed)

    trials = cfg.get("trials", 1)
    if isinstance(trials, bool) or not isinstance(trials, int) or trials < 1:
        raise ScenarioError("trials", f"must be an integer >= 1, got {trials!r}")

    acfg = cfg.get("ambiguity", {})
    if not isinstance(acfg, dict):
        raise ScenarioError("ambiguity", "must be an object")
    n_max = acfg.get("n_max", 0)
    if isinstance(n_max, bool) or not isinstance(n_max, int) or n_max < 0:
        raise ScenarioError("ambiguity.n_max", f"must be an integer >= 0, got {n_max!r}")
    phi0 = _angle(acfg, "phi0", "ambiguity.phi0", default=math.pi)
    if not 0 < phi0 <= math.pi + 1e-12:
        raise ScenarioError("ambiguity.phi0", "must lie in (0, 180] deg")

    return Scenario(geometries, theta, method, (start, stop, step), noise, trials,
                    AmbiguitySpec(n_max, min(phi0, math.pi)))


def load_scenario(path):
    """Read and validate a scenario JSON file."""
    try:
        with open(path, encoding="utf-8") as fh:
            cfg = json.load(fh)
    except OSError as exc:
        raise ScenarioError("<file>", f"cannot read {path}: {exc.strerror or exc}") from exc
    except json.JSONDecodeError as exc:
        raise ScenarioError("<file>", f"{path} is not valid JSON: {exc}") from exc
    return scenario_from_dict(cfg)


def _branches_needed(g):
    return int(math.ceil(2.0 * g.ratio)) + 1


def _estimate(s, method, outputs):
    """Principal bearing from per-base outputs at the method's operating point; NaN on failure."""
    try:
        if len(s.geometries) == 1:
            c = outputs[0]
            if method == AMPLITUDE:
                return bearing_amplitude(s.geometries[0], c.a1, c.a2, s.ambiguity).principal
            return bearing_phase(s.geometries[0], c.delta_psi, s.ambiguity).principal
        ests = []
        for g, c in zip(s.geometries, outputs):
            spec = AmbiguitySpec(max(s.ambiguity.n_max, _branches_needed(g)), s.ambiguity.phi0)
            est = (bearing_amplitude(g, c.a1, c.a2, spec) if method == AMPLITUDE
                   else bearing_phase(g, c.delta_psi, spec))
            ests.append((g, est))
        return resolve_multibase(ests)
    except PolarDFError:
        return math.nan


def _base_seeds(seeds, base_index):
    # base 0 consumes the trial seeds directly, other bases a remixed stream
    return seeds if base_index == 0 else _rng.mix64(seeds ^ np.uint64(base_index))


def _observe(g, alpha, theta, noise, seeds):
    c = lps_outputs(phase_difference(g, alpha), theta)
    return c if noise is None else add_noise(c, noise, seeds=seeds)


def run_sweep(s):
    """Tabulate the receiver observables and both estimates over the bearing grid.

    Observable columns are evaluated at the scenario's separator angle; each
    estimate column is computed at its own method's operating angle. With a
    noise spec the sweep is a single noisy realization per grid point.
    """
    if s.noise is not None and s.trials != 1:
        raise ScenarioError("trials", "a noisy sweep needs trials = 1; use montecarlo instead")
    g = s.geometry
    detector = PhaseDetector()
    rows = []
    for i, alpha in enumerate(s.alphas):
        seeds = None if s.noise is None else _rng.trial_seeds(s.noise.seed, i, 1)
        dphi = float(phase_difference(g, alpha))
        c = _observe(g, alpha, s.theta, s.noise,
                     None if seeds is None else _base_seeds(seeds, s.geometries.index(g)))
        state = ellipse_params(resultant_wave(dphi))
        a1, a2 = float(c.a1), float(c.a2)
        row = SweepRow(
            alpha_true=float(alpha), delta_phi=dphi, a1=a1, a2=a2,
            ratio=a1 / a2 if a2 > 0 else math.inf,
            psi1=float(c.psi1), psi2=float(c.psi2), delta_psi=float(c.delta_psi),
            u_pd=float(phase_detector_voltage(detector, g, alpha)),
            beta=state.beta, r_mod=state.r_mod,
        )
        for method in s.methods:
            outs = []
            for j, gj in enumerate(s.geometries):
                cj = _observe(gj, alpha, OPERATING_THETA[method], s.noise,
                              None if seeds is None else _base_seeds(seeds, j))
                outs.append(cj)
            setattr(row, f"alpha_est_{method}", float(_estimate(s, method, outs)))
        rows.append(row)
    return rows


def _outlier_mask(s, method, est, truth):
    g = s.geometry
    coarse = min(s.geometries, key=lambda b: b.ratio)
    if method == AMPLITUDE:
        zone = unambiguity_zone(coarse).angle
    else:
        zone = unambiguous_sector(coarse, s.ambiguity.phi0).angle
    with np.errstate(invalid="ignore"):
        # wrong branch: off by more than half a 2*pi cycle at the finest base
        wrong_branch = np.abs(g.phase_scale * (np.sin(est) - np.sin(truth))) > math.pi
        return np.isnan(est) | (np.abs(est) > zone + 1e-12) | wrong_branch


def run_monte_carlo(s):
    """Bearing error statistics per grid point and method under additive noise.

    Trial ``t`` at grid point ``i`` draws its noise from
    ``trial_seeds(seed, i, trials)[t]`` (see :mod:`polardf._rng`), so results
    do not depend on evaluation order. Amplitude-method errors are measured
    against ``|alpha|``. Mean, std and RMS error are taken over every trial
    that produced an estimate; outliers are only counted, not removed.
    """
    if s.noise is None:
        raise ScenarioError("noise", "Monte Carlo needs a noise spec")
    if s.trials < MIN_MC_TRIALS:
        raise ScenarioError("trials", f"Monte Carlo needs at least {MIN_MC_TRIALS} trials")
    report = MonteCarloReport()
    for method in s.methods:
        theta = OPERATING_THETA[method]
        for i, alpha in enumerate(s.alphas):
            seeds = _rng.trial_seeds(s.noise.seed, i, s.trials)
            outs = []
            for j, g in enumerate(s.geometries):
                clean = lps_outputs(phase_difference(g, alpha), theta)
                batch = type(clean)(*(np.full(s.trials, getattr(clean, f.name)) for f in fields(clean)))
                outs.append(add_noise(batch, s.noise, seeds=_base_seeds(seeds, j)))
            est = _principal(s, method, outs)
            truth = abs(alpha) if method == AMPLITUDE else alpha
            outlier = _outlier_mask(s, method, est, truth)
            err = est[~np.isnan(est)] - truth
            if err.size:
                mean, std, rmse = float(err.mean()), float(err.std()), float(np.sqrt(np.mean(err ** 2)))
            else:
                mean = std = rmse = math.nan
            report.rows.append(MonteCarloRow(
                method, s.noise.snr_db, float(alpha), s.trials, mean, std, rmse,
                float(np.count_nonzero(outlier)) / s.trials))
    return report


def _principal(s, method, outs):
    if len(s.geometries) == 1:
        g, c = s.geometries[0], outs[0]
        if method == AMPLITUDE:
            return principal_amplitude(g, c.a1, c.a2)
        return principal_phase(g, c.delta_psi)
    if method == AMPLITUDE:
        obs = [(c.a1, c.a2) for c in outs]
    else:
        obs = [c.delta_psi for c in outs]
    return resolve_multibase_principal(s.geometries, obs, method)


def _fmt(value):
    if isinstance(value, (bool, np.bool_)):
        return str(bool(value)).lower()
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return "%.9g" % value
    return str(value)


def write_csv(rows, path, row_type=None):
    """Write sweep rows or a Monte Carlo report as CSV.

    Floats carry 9 significant digits; the header lists the row fields in
    declaration order. An empty row list yields a header-only file (sweep
    columns unless ``row_type`` says otherwise).
    """
    if isinstance(rows, MonteCarloReport):
        rows, row_type = rows.rows, MonteCarloRow
    row_type = row_type or (type(rows[0]) if rows else SweepRow)
    names = [f.name for f in fields(row_type)]
    try:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(names)
            for row in rows:
                writer.writerow([_fmt(getattr(row, n)) for n in names])
    except OSError as exc:
        raise OSError(exc.errno, f"cannot write CSV to {path}: {exc.strerror}") from exc
