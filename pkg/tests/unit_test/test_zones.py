import numpy as np
import pytest

from quiet_zones.correlation import puretone_correlation, spatial_temporal_correlation
from quiet_zones.enums import ControlMode
from quiet_zones.error import SimulationError
from quiet_zones.schemas import CorrelationQuery, GridSpec, PureTone, Scenario, SpectralGrid
from quiet_zones.spectral import preset, synthesize_psd
from quiet_zones.zones import (
    attenuation_db,
    attenuation_field_2d,
    attenuation_profile,
    farfield_attenuation,
    field_axis_profile,
    first_order_zone_width,
    nearfield_attenuation,
    nearfield_attenuation_limit,
    sweep,
    zone_width,
)

C = 343.0
GRID = SpectralGrid()
SNAPPED_HZ = 614 * 2000 / 4096
K = 2 * np.pi * SNAPPED_HZ / C
WAVELENGTH = C / 300
NEAR = Scenario()
FAR = Scenario(mode=ControlMode.far_field)
SMALL_GRID = GridSpec(x_min=0.1, x_max=0.3, y_min=-0.1, y_max=0.1, spacing=0.01)


@pytest.fixture(scope="module")
def tone():
    return synthesize_psd(preset("tone300"), GRID)


@pytest.fixture(scope="module")
def bpf():
    return synthesize_psd(preset("bpf"), GRID)


def test_nearfield_is_zero_at_cancellation_point(tone, bpf):
    assert nearfield_attenuation(tone, NEAR, (0.2, 0.0)) == 0.0
    assert nearfield_attenuation(bpf, NEAR, (0.2, 0.0)) == 0.0


def test_nearfield_decorrelated_fields_add_in_power(tone):
    scenario = Scenario(cancellation_point=(0.5, 0.0))
    half_angle = np.arcsin(np.pi / K / 2 / 0.5)
    p1 = (0.5 * np.cos(2 * half_angle), 0.5 * np.sin(2 * half_angle))

    assert nearfield_attenuation(tone, scenario, p1) == pytest.approx(2.0, abs=1e-9)


def test_nearfield_errors(tone):
    with pytest.raises(SimulationError, match="POINT_AT_SOURCE"):
        nearfield_attenuation(tone, NEAR, (0.0, 0.0))
    with pytest.raises(SimulationError, match="POINT_IN_EXCLUSION"):
        nearfield_attenuation(tone, NEAR, (0.005, 0.0))
    with pytest.raises(SimulationError, match="WRONG_MODE"):
        nearfield_attenuation(tone, FAR, (0.3, 0.0))
    with pytest.raises(SimulationError, match="WRONG_MODE"):
        farfield_attenuation(tone, NEAR, 0.1)


def test_nearfield_is_never_negative(bpf):
    rng = np.random.default_rng(5)
    radius = rng.uniform(0.02, 0.6, 200)
    angle = rng.uniform(0, 2 * np.pi, 200)
    for r, a in zip(radius, angle):
        assert nearfield_attenuation(bpf, NEAR, (r * np.cos(a), r * np.sin(a))) >= 0


def test_nearfield_limit_tone_closed_form(tone):
    d = np.linspace(0, 0.5, 51)
    expected = 2 * (1 - np.sinc(K * d / np.pi) * np.cos(K * d))

    np.testing.assert_allclose(nearfield_attenuation_limit(tone, d, C), expected, atol=1e-12)
    assert nearfield_attenuation_limit(tone, 0.0, C) == 0.0
    assert nearfield_attenuation_limit(tone, np.pi / (2 * K), C) == pytest.approx(2.0, abs=1e-9)


def test_nearfield_limit_bounds(bpf):
    d = np.linspace(0, 5, 501)
    eps = nearfield_attenuation_limit(bpf, d, C)

    assert np.all(eps <= 4)
    assert np.all(eps >= 0)
    assert np.max(np.abs(eps[d >= 3] - 2)) < 0.1


def test_farfield_attenuation(tone):
    assert farfield_attenuation(tone, FAR, 0.0) == 0.0
    assert farfield_attenuation(tone, FAR, np.pi / K) == pytest.approx(4.0, abs=1e-9)

    d = np.arange(2 * WAVELENGTH, 5 * WAVELENGTH, 0.01)
    assert np.all(np.abs(farfield_attenuation(tone, FAR, d) - 4) < 0.2)

    no_gain = Scenario(mode=ControlMode.far_field, gain_ratio=0.0)
    assert np.all(farfield_attenuation(tone, no_gain, np.linspace(0, 1, 101)) <= 1)


def test_attenuation_db():
    assert attenuation_db(0.1) == pytest.approx(-10.0)
    assert attenuation_db(1.0) == 0.0
    assert attenuation_db(4.0) == pytest.approx(6.0206, abs=1e-4)
    assert attenuation_db(0.0) == -100.0
    assert attenuation_db(1e-12, floor_db=-60.0) == -60.0
    np.testing.assert_allclose(attenuation_db(np.array([0.01, 10.0])), [-20.0, 10.0])


def test_sweep():
    d = sweep(0.5, 0.001)
    assert d.size == 501
    assert d[0] == 0.0
    assert d[-1] == pytest.approx(0.5)
    assert sweep(0.5, 0.05).size == 11


def test_tone_nearfield_zone_width(tone):
    width = zone_width(tone, NEAR, 0.1)
    assert width / WAVELENGTH == pytest.approx(0.0878, abs=0.002)
    assert nearfield_attenuation_limit(tone, width / 2, C) == pytest.approx(0.1, abs=1e-9)


def test_tone_farfield_zone_width(tone):
    width = zone_width(tone, FAR, 0.1)
    assert width / WAVELENGTH == pytest.approx(0.0875, abs=0.002)
    assert farfield_attenuation(tone, FAR, width / 2) == pytest.approx(0.1, abs=1e-9)


def test_tone_zone_width_scales_with_wavelength():
    ratios = []
    for freq_hz in (150.0, 300.0, 600.0):
        spectrum = synthesize_psd(PureTone(freq_hz=freq_hz), GRID)
        ratios.append(zone_width(spectrum, NEAR, 0.1) / (C / freq_hz))

    assert max(ratios) - min(ratios) < 1e-3
    assert ratios[1] == pytest.approx(0.0878, abs=1e-3)


def test_zone_width_near_threshold_one_is_small_but_positive(tone):
    width = zone_width(tone, NEAR, 0.999999)
    assert 0 < width < WAVELENGTH


def test_zone_width_errors(tone):
    for threshold in (0.0, 1.0, 2.0):
        with pytest.raises(SimulationError, match="INVALID_THRESHOLD"):
            zone_width(tone, NEAR, threshold)
    with pytest.raises(SimulationError, match="NO_CROSSING"):
        zone_width(tone, NEAR, 0.1, max_delta_r=0.01, step=0.001)


def test_low_pass_600_matches_tone_300():
    lpf600 = synthesize_psd(preset("lpf600"), GRID)
    tone = synthesize_psd(preset("tone300"), GRID)
    d = np.linspace(0, 0.25, 51)
    target = np.array([puretone_correlation(300, CorrelationQuery(delta_r=x)) for x in d])
    deviation = np.abs(np.asarray(spatial_temporal_correlation(lpf600, d)) - target)

    assert np.max(deviation[d <= 0.2]) < 0.05
    assert np.max(deviation) < 0.06
    ratio = zone_width(lpf600, NEAR, 0.1) / zone_width(tone, NEAR, 0.1)
    assert abs(1 - ratio) < 0.15


def test_first_order_zone_width(tone):
    assert first_order_zone_width(tone, C) == pytest.approx(C / SNAPPED_HZ / 10)


def test_attenuation_profile_follows_mode(tone):
    d = np.linspace(0, 0.3, 7)
    np.testing.assert_array_equal(attenuation_profile(tone, NEAR, d), nearfield_attenuation_limit(tone, d, C))
    np.testing.assert_array_equal(attenuation_profile(tone, FAR, d), farfield_attenuation(tone, FAR, d))


def test_field_shape_and_cancellation_cell(bpf):
    field = attenuation_field_2d(bpf, NEAR, SMALL_GRID)

    assert (field.nx, field.ny) == (21, 21)
    assert field.origin == (0.1, -0.1)
    assert field.spacing == pytest.approx(0.01)
    assert field.value_at(0.2, 0.0) == 0.0
    assert field.db()[10, 10] == -100.0
    assert not field.mask.any()
    assert np.all(field.values >= 0)


def test_field_is_symmetric_about_axis(bpf):
    field = attenuation_field_2d(bpf, NEAR, SMALL_GRID)
    np.testing.assert_allclose(field.values, field.values[:, ::-1], atol=1e-12)


def test_field_matches_pointwise_attenuation(bpf):
    field = attenuation_field_2d(bpf, NEAR, SMALL_GRID)
    x, eps = field_axis_profile(field, 0.0)
    expected = [nearfield_attenuation(bpf, NEAR, (xi, 0.0)) for xi in x]

    np.testing.assert_allclose(eps, expected, atol=1e-12)


def test_unit_ratio_field_matches_limit_curve(bpf):
    field = attenuation_field_2d(bpf, NEAR, SMALL_GRID, unit_ratio=True)
    x, eps = field_axis_profile(field)

    np.testing.assert_allclose(eps, nearfield_attenuation_limit(bpf, np.abs(x - 0.2), C), atol=1e-12)


def test_field_masks_exclusion_radius(bpf):
    grid = GridSpec(x_min=-0.05, x_max=0.05, y_min=-0.05, y_max=0.05, spacing=0.01)
    field = attenuation_field_2d(bpf, NEAR, grid)

    assert field.mask.sum() == 1
    assert field.mask[5, 5]
    assert np.isnan(field.values[5, 5])
    assert np.isnan(field.db()[5, 5])
    assert field.rows().data.shape == (120, 3)


def test_farfield_field_depends_on_separation_only(tone):
    field = attenuation_field_2d(tone, FAR, SMALL_GRID)

    assert field.value_at(0.2, 0.0) == 0.0
    assert field.value_at(0.25, 0.0) == pytest.approx(field.value_at(0.2, 0.05), abs=1e-12)


def test_field_is_independent_of_workers(bpf):
    single = attenuation_field_2d(bpf, NEAR, SMALL_GRID)
    threaded = attenuation_field_2d(bpf, NEAR, SMALL_GRID, workers=3)

    np.testing.assert_allclose(threaded.values, single.values, rtol=0, atol=1e-14)


def test_field_rows_are_x_major(bpf):
    table = attenuation_field_2d(bpf, NEAR, SMALL_GRID).rows()

    assert table.columns == ("x_m", "y_m", "epsilon")
    assert table.data.shape == (441, 3)
    assert tuple(table.data[0, :2]) == (0.1, -0.1)
    assert tuple(table.data[1, :2]) == (0.1, -0.09)
