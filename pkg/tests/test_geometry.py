import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from polardf.errors import NoSolutionError
from polardf.geometry import (
    AmbiguitySpec, BeaconGeometry, bearing_from_phase, phase_difference, unambiguity_zone,
    unambiguous_sector,
)


def geo(ratio):
    return BeaconGeometry.from_ratio(ratio)


def wrap(x):
    return np.angle(np.exp(1j * x))


def brute_force_bearings(g, dphi, n_grid=2_000_001):
    """Bearings whose phase matches ``+-dphi`` modulo 2*pi, by dense scanning.

    Zero crossings of the wrapped residual are bracketed on the grid and the
    bracket midpoints returned; tolerance is the grid spacing.
    """
    alpha = np.linspace(-np.pi / 2, np.pi / 2, n_grid)
    hits = []
    for sign in (1, -1):
        res = np.abs(wrap(g.phase_scale * np.sin(alpha) - sign * dphi))
        # local minima of the residual that are (near) zero
        interior = (res[1:-1] <= res[:-2]) & (res[1:-1] <= res[2:])
        idx = np.flatnonzero(interior) + 1
        idx = np.concatenate([idx, [0, n_grid - 1]])
        step = alpha[1] - alpha[0]
        for i in idx:
            if res[i] < 2 * g.phase_scale * step:
                hits.append(alpha[i])
    hits = np.sort(hits)
    keep = [hits[0]]
    for h in hits[1:]:
        if h - keep[-1] > 1e-4:
            keep.append(h)
    return np.array(keep)


@pytest.mark.parametrize("ratio, alpha_deg, expected", [
    (0.5, 0, 0.0),
    (0.5, 30, np.pi / 2),
    (1.0, 90, 2 * np.pi),
])
def test_phase_difference_values(ratio, alpha_deg, expected):
    assert phase_difference(geo(ratio), np.radians(alpha_deg)) == pytest.approx(expected, abs=1e-12)


def test_phase_difference_rejects_rear_bearing():
    with pytest.raises(ValueError):
        phase_difference(geo(1), 2.0)


def test_geometry_validation():
    with pytest.raises(ValueError, match="geometry.d"):
        BeaconGeometry(0.0, 1.0)
    with pytest.raises(ValueError, match="geometry.lambda"):
        BeaconGeometry(1.0, -1.0)


def test_bearing_inverts_example_phase():
    est = bearing_from_phase(geo(0.5), np.pi / 2, AmbiguitySpec(0))
    assert est.principal == pytest.approx(np.radians(30), abs=1e-12)
    assert bearing_from_phase(geo(0.5), 0.0, AmbiguitySpec(0)).principal == 0.0


def test_candidates_match_brute_force_zero_phase():
    g = geo(2)
    est = bearing_from_phase(g, 0.0, AmbiguitySpec(2))
    oracle = brute_force_bearings(g, 0.0)
    np.testing.assert_allclose(np.sort(est.alphas), oracle, atol=1e-5)
    # frozen from the scan: sin(alpha) in {0, +-1/2, +-1}
    np.testing.assert_allclose(np.degrees(np.sort(est.alphas)), [-90, -30, 0, 30, 90], atol=1e-9)


@pytest.mark.parametrize("ratio, dphi", [(2.0, 1.0), (3.5, -2.2), (1.0, 3.0), (0.7, 0.4)])
def test_candidates_match_brute_force(ratio, dphi):
    g = geo(ratio)
    est = bearing_from_phase(g, dphi, AmbiguitySpec(int(np.ceil(2 * ratio)) + 1))
    np.testing.assert_allclose(np.sort(est.alphas), brute_force_bearings(g, dphi), atol=1e-5)
    for c in est.candidates:
        assert np.sin(c.alpha) * g.phase_scale == pytest.approx(c.sign * dphi + 2 * np.pi * c.branch_n)


def test_principal_is_zero_branch_positive_sign():
    est = bearing_from_phase(geo(2), 1.0, AmbiguitySpec(3))
    principal = [c for c in est.candidates if c.alpha == est.principal][0]
    assert (principal.branch_n, principal.sign) == (0, 1)


def test_principal_falls_back_to_nearest_branch():
    # 3*pi at d/lambda = 0.5 only maps back through the n = -1 branch
    est = bearing_from_phase(geo(0.5), 3 * np.pi, AmbiguitySpec(1))
    assert est.principal == pytest.approx(np.pi / 2)


def test_no_solution():
    with pytest.raises(NoSolutionError):
        bearing_from_phase(geo(0.25), 3.0, AmbiguitySpec(0))


@pytest.mark.parametrize("ratio, expected_deg, bounded", [
    (1.0, 30.0, True),
    (0.5, 90.0, True),
    (5.0, 5.739170477266787, True),
    (0.25, 90.0, False),
])
def test_unambiguity_zone(ratio, expected_deg, bounded):
    zone = unambiguity_zone(geo(ratio))
    assert np.degrees(zone.angle) == pytest.approx(expected_deg, abs=1e-9)
    assert zone.bounded is bounded


@pytest.mark.parametrize("ratio, phi0, expected_deg", [
    (0.5, np.pi, 90.0),
    (1.0, np.pi, 30.0),
    (1.0, np.pi / 2, 14.477512185929925),
])
def test_unambiguous_sector(ratio, phi0, expected_deg):
    assert np.degrees(unambiguous_sector(geo(ratio), phi0).angle) == pytest.approx(expected_deg, abs=1e-9)


def test_unambiguous_sector_flags_short_baseline():
    assert unambiguous_sector(geo(0.1), np.pi) == (np.pi / 2, False)


ratios = st.floats(0.05, 20.0)


@given(ratios, st.floats(-1.0, 1.0))
def test_round_trip_inside_zone(ratio, u):
    g = geo(ratio)
    zone = unambiguity_zone(g).angle
    alpha = u * zone * (1 - 1e-6)
    est = bearing_from_phase(g, phase_difference(g, alpha), AmbiguitySpec(0))
    assert est.principal == pytest.approx(alpha, abs=1e-9)


@given(ratios, st.floats(0.0, np.pi / 2))
def test_phase_difference_is_odd(ratio, alpha):
    g = geo(ratio)
    assert phase_difference(g, -alpha) == -phase_difference(g, alpha)


@pytest.mark.parametrize("ratio", [0.55, 1.0, 2.0, 5.0])
def test_long_baseline_is_ambiguous(ratio):
    g = geo(ratio)
    a1 = 0.95 * np.pi / 2
    target = wrap(phase_difference(g, a1))
    est = bearing_from_phase(g, target, AmbiguitySpec(int(np.ceil(2 * ratio))))
    same = np.array([c.alpha for c in est.candidates if c.sign == 1])
    assert same.size >= 2
    np.testing.assert_allclose(wrap(phase_difference(g, same) - target), 0, atol=1e-9)
    # the grid scan sees the wrapped phase fold back somewhere
    alpha = np.linspace(-np.pi / 2, np.pi / 2, 100_001)
    assert np.any(np.diff(wrap(phase_difference(g, alpha))) < 0)


@pytest.mark.parametrize("ratio", [0.1, 0.3, 0.5])
def test_short_baseline_is_injective(ratio):
    g = geo(ratio)
    alpha = np.linspace(-np.pi / 2, np.pi / 2, 100_001)[1:-1]
    wrapped = wrap(phase_difference(g, alpha))
    assert np.all(np.diff(wrapped) > 0)
