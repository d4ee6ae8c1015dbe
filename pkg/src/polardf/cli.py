"""Command-line entry point.

Exit codes: 0 success, 1 usage or configuration error, 2 numerical error
(no bearing solution, degenerate input, resolution conflict).
"""
import argparse
import json
import math
import sys

from .errors import PolarDFError, ScenarioError
from .estimators import AMPLITUDE, OPERATING_THETA, PHASE, bearing_amplitude, bearing_phase
from .geometry import AmbiguitySpec, BeaconGeometry, unambiguity_zone, unambiguous_sector
from .harness import load_scenario, run_monte_carlo, run_sweep, write_csv

EXIT_OK, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _geometry(args):
    try:
        return BeaconGeometry(args.d, args.wavelength)
    except ValueError as exc:
        raise ScenarioError("geometry", str(exc)) from exc


def _ambiguity(args):
    try:
        return AmbiguitySpec(args.n_max, args.phi0_rad)
    except ValueError as exc:
        raise ScenarioError("ambiguity", str(exc)) from exc


def cmd_sweep(args):
    rows = run_sweep(load_scenario(args.scenario))
    write_csv(rows, args.out)
    print(f"wrote {len(rows)} rows to {args.out}", file=sys.stderr)


def cmd_montecarlo(args):
    report = run_monte_carlo(load_scenario(args.scenario))
    write_csv(report, args.out)
    print(f"wrote {len(report.rows)} rows to {args.out}", file=sys.stderr)


def cmd_estimate(args):
    g = _geometry(args)
    spec = _ambiguity(args)
    theta = math.radians(args.theta_deg)
    if args.method == AMPLITUDE:
        if args.a1 is None or args.a2 is None:
            raise ScenarioError("--a1/--a2", "required for the amplitude method")
        est = bearing_amplitude(g, args.a1, args.a2, spec)
    else:
        if args.delta_psi_rad is None:
            raise ScenarioError("--delta-psi-rad", "required for the phase method")
        est = bearing_phase(g, args.delta_psi_rad, spec)
    if abs(math.remainder(theta - OPERATING_THETA[args.method], math.pi)) > 1e-9:
        print(f"warning: the {args.method} method assumes theta = "
              f"{math.degrees(OPERATING_THETA[args.method]):g} deg", file=sys.stderr)
    out = {
        "method": est.method,
        "theta_rad": theta,
        "sign_resolved": est.sign_resolved,
        "principal_rad": est.principal,
        "principal_deg": math.degrees(est.principal),
        "candidates": [
            {"alpha_rad": c.alpha, "alpha_deg": math.degrees(c.alpha), "branch_n": c.branch_n, "sign": c.sign}
            for c in est.candidates
        ],
    }
    json.dump(out, sys.stdout, indent=2)
    sys.stdout.write("\n")


def cmd_zones(args):
    g = _geometry(args)
    zone = unambiguity_zone(g)
    out = {
        "d_over_lambda": g.ratio,
        "unambiguity_zone_rad": zone.angle,
        "unambiguity_zone_deg": math.degrees(zone.angle),
        "unambiguity_zone_bounded": zone.bounded,
    }
    if args.phi0_rad is not None:
        if not 0 < args.phi0_rad <= math.pi:
            raise ScenarioError("--phi0-rad", "must lie in (0, pi]")
        sector = unambiguous_sector(g, args.phi0_rad)
        out.update({
            "phi0_rad": args.phi0_rad,
            "unambiguous_sector_rad": sector.angle,
            "unambiguous_sector_deg": math.degrees(sector.angle),
            "unambiguous_sector_bounded": sector.bounded,
        })
    json.dump(out, sys.stdout, indent=2)
    sys.stdout.write("\n")


def build_parser():
    p = _Parser(prog="polardf", description="Polarization amplitude/phase beacon direction finding.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("sweep", help="tabulate characteristics over a bearing grid")
    s.add_argument("scenario", help="scenario JSON file")
    s.add_argument("--out", required=True, help="CSV output path")
    s.set_defaults(func=cmd_sweep)

    m = sub.add_parser("montecarlo", help="bearing error statistics under noise")
    m.add_argument("scenario", help="scenario JSON file")
    m.add_argument("--out", required=True, help="CSV output path")
    m.set_defaults(func=cmd_montecarlo)

    e = sub.add_parser("estimate", help="bearing candidates from one measurement")
    e.add_argument("--d", type=float, required=True, help="emitter spacing, m")
    e.add_argument("--lambda", dest="wavelength", type=float, required=True, help="wavelength, m")
    e.add_argument("--theta-deg", type=float, required=True, help="separator angle the data was taken at")
    e.add_argument("--method", choices=(AMPLITUDE, PHASE), required=True)
    e.add_argument("--a1", type=float, help="arm 1 amplitude (amplitude method)")
    e.add_argument("--a2", type=float, help="arm 2 amplitude (amplitude method)")
    e.add_argument("--delta-psi-rad", type=float, help="arm phase difference (phase method)")
    e.add_argument("--n-max", type=int, default=0, help="largest 2*pi branch index to enumerate")
    e.add_argument("--phi0-rad", type=float, default=math.pi, help="phase-meter range")
    e.set_defaults(func=cmd_estimate)

    z = sub.add_parser("zones", help="unambiguity zone and phase-meter sector")
    z.add_argument("--d", type=float, required=True, help="emitter spacing, m")
    z.add_argument("--lambda", dest="wavelength", type=float, required=True, help="wavelength, m")
    z.add_argument("--phi0-rad", type=float, help="phase-meter range (default pi)")
    z.set_defaults(func=cmd_zones)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except ScenarioError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PolarDFError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
