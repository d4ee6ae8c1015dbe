import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from polardf.errors import DegenerateInputError
from polardf.jones import (
    JonesVector, ellipse_params, intensity, normalize_angle, project_arm1, project_arm2,
    resultant_wave, rotate, rotation_matrix,
)

H = 1 / np.sqrt(2)

finite = st.floats(-1e3, 1e3, allow_nan=False)
angles = st.floats(-20.0, 20.0, allow_nan=False)
components = st.complex_numbers(max_magnitude=10.0, allow_nan=False, allow_infinity=False)


@st.composite
def vectors(draw):
    return JonesVector(draw(components), draw(components))


def close(u, v, tol=1e-12):
    return abs(u.ex - v.ex) <= tol and abs(u.ey - v.ey) <= tol


def trace_ellipse(v):
    """Axis ratio and orientation from the field trace Re(v * exp(jt)).

    |E(t)|^2 oscillates about S0/2 with amplitude |ex^2 + ey^2|/2; the major
    semi-axis is reached at t = -arg(ex^2 + ey^2)/2 and the traced area
    pi*a*b equals pi*|Im(conj(ex)*ey)|.
    """
    q = v.ex ** 2 + v.ey ** 2
    s0 = abs(v.ex) ** 2 + abs(v.ey) ** 2
    a = np.sqrt((s0 + abs(q)) / 2)
    b = abs((np.conj(v.ex) * v.ey).imag) / a
    t = -np.angle(q) / 2
    ex, ey = (v.ex * np.exp(1j * t)).real, (v.ey * np.exp(1j * t)).real
    return b / a, np.mod(np.arctan2(ey, ex), np.pi)


@pytest.mark.parametrize("dphi, expected", [
    (0.0, (H, H)),
    (np.pi, (H, -H)),
    (np.pi / 2, (H, 1j * H)),
])
def test_resultant_wave_values(dphi, expected):
    v = resultant_wave(dphi)
    assert v.ex == pytest.approx(expected[0], abs=1e-15)
    assert v.ey == pytest.approx(expected[1], abs=1e-15)


@pytest.mark.parametrize("v, theta, expected", [
    (JonesVector(1, 0), 0.0, (1, 0)),
    (JonesVector(1, 0), np.pi / 2, (0, -1)),
    (resultant_wave(0.0), np.pi / 4, (1, 0)),
])
def test_rotate_values(v, theta, expected):
    assert close(rotate(v, theta), JonesVector(*expected), 1e-15)


def test_rotate_matches_matrix_product():
    rng = np.random.default_rng(3)
    for _ in range(100):
        z = rng.normal(size=2) + 1j * rng.normal(size=2)
        theta = rng.uniform(-np.pi, np.pi)
        out = rotate(JonesVector(*z), theta)
        np.testing.assert_allclose(out.as_array(), rotation_matrix(theta) @ z, atol=1e-14)


def test_projectors():
    assert project_arm1(JonesVector(1, 1)) == JonesVector(0, 1)
    assert project_arm1(JonesVector(0, 0.5j)) == JonesVector(0, 0.5j)
    assert project_arm2(JonesVector(1, 1)) == JonesVector(1, 0)
    assert project_arm2(JonesVector(0.5j, 0)) == JonesVector(0.5j, 0)


def test_intensity_values():
    assert intensity(JonesVector(1, 0)) == 1
    assert intensity(JonesVector(0, 0)) == 0


def test_arm_projections_of_rotated_wave():
    # rotating then projecting must reproduce the separator arm closed forms
    rng = np.random.default_rng(11)
    for dphi, theta in rng.uniform(-np.pi, np.pi, size=(200, 2)):
        wave = rotate(resultant_wave(dphi), theta)
        arm1 = project_arm1(wave)
        arm2 = project_arm2(wave)
        assert arm1.ex == 0 and arm2.ey == 0
        e = np.exp(1j * dphi)
        assert abs(arm1.ey - H * (-np.sin(theta) + np.cos(theta) * e)) < 1e-12
        assert abs(arm2.ex - H * (np.cos(theta) + np.sin(theta) * e)) < 1e-12


@given(vectors(), angles)
def test_rotation_preserves_intensity(v, theta):
    assert abs(intensity(rotate(v, theta)) - intensity(v)) < 1e-12 * max(1.0, intensity(v))


@given(vectors(), angles, angles)
def test_rotation_composes(v, t1, t2):
    scale = max(1.0, abs(v.ex), abs(v.ey))
    assert close(rotate(rotate(v, t1), t2), rotate(v, t1 + t2), 1e-12 * scale * 40)


@given(vectors())
def test_projectors_complete_and_idempotent(v):
    assert project_arm1(v) + project_arm2(v) == v
    assert project_arm1(project_arm1(v)) == project_arm1(v)
    assert project_arm2(project_arm2(v)) == project_arm2(v)


@given(finite)
def test_resultant_wave_has_unit_intensity(dphi):
    assert abs(intensity(resultant_wave(dphi)) - 1.0) < 1e-12


def test_unit_intensity_for_many_phases():
    dphi = np.random.default_rng(0).uniform(-50, 50, 10_000)
    np.testing.assert_allclose(intensity(resultant_wave(dphi)), 1.0, atol=1e-12)


def test_ellipse_linear_at_zero_phase():
    s = ellipse_params(resultant_wave(0.0))
    assert s.beta == pytest.approx(np.pi / 4, abs=1e-12)
    assert s.r_mod == pytest.approx(0.0, abs=1e-12)
    assert not s.degenerate_orientation


def test_ellipse_circular_at_quarter_phase():
    s = ellipse_params(resultant_wave(np.pi / 2))
    assert s.r_mod == pytest.approx(1.0, abs=1e-12)
    assert s.degenerate_orientation
    assert s.beta == pytest.approx(np.pi / 4)


def test_ellipse_linear_at_half_phase():
    s = ellipse_params(resultant_wave(np.pi))
    assert s.beta == pytest.approx(3 * np.pi / 4, abs=1e-12)
    assert s.r_mod == pytest.approx(0.0, abs=1e-12)


def test_ellipse_zero_intensity_raises():
    with pytest.raises(DegenerateInputError):
        ellipse_params(JonesVector(0, 0))


def test_ellipse_matches_field_trace():
    rng = np.random.default_rng(5)
    for _ in range(500):
        v = JonesVector(*(rng.normal(size=2) + 1j * rng.normal(size=2)))
        s = ellipse_params(v)
        r, beta = trace_ellipse(v)
        assert s.r_mod == pytest.approx(r, abs=1e-12)
        # orientation is only defined modulo pi
        assert abs(np.angle(np.exp(2j * (s.beta - beta)))) < 1e-9


def test_ellipse_matches_dense_sampling():
    v = JonesVector(0.3 + 0.4j, -0.8 + 0.1j)
    t = np.linspace(0, 2 * np.pi, 2_000_001)
    ex, ey = (v.ex * np.exp(1j * t)).real, (v.ey * np.exp(1j * t)).real
    radius = np.hypot(ex, ey)
    k = np.argmax(radius)
    s = ellipse_params(v)
    assert s.r_mod == pytest.approx(radius.min() / radius.max(), abs=1e-6)
    assert abs(np.angle(np.exp(2j * (s.beta - np.arctan2(ey[k], ex[k]))))) < 1e-5


def test_ellipse_profile_over_phase():
    for dphi in np.linspace(0, np.pi, 2001):
        s = ellipse_params(resultant_wave(dphi))
        folded = min(dphi, np.pi - dphi)
        assert s.r_mod == pytest.approx(np.tan(folded / 2), abs=1e-9)
        if dphi < np.pi / 2 - 1e-9:
            assert s.beta == pytest.approx(np.pi / 4, abs=1e-9)
        elif dphi > np.pi / 2 + 1e-9:
            assert s.beta == pytest.approx(3 * np.pi / 4, abs=1e-9)


@pytest.mark.parametrize("theta, expected", [(0.0, 0.0), (np.pi, 0.0), (-np.pi / 4, 3 * np.pi / 4),
                                             (-1e-18, 0.0), (7.0, 7.0 - 2 * np.pi)])
def test_normalize_angle(theta, expected):
    assert normalize_angle(theta) == pytest.approx(expected, abs=1e-15)
