import numpy as np
import pytest

from quiet_zones.correlation import spatial_temporal_correlation
from quiet_zones.enums import OracleMethod
from quiet_zones.oracle import (
    estimate_convergence,
    filtered_noise_realization,
    lag_table,
    oracle_correlation,
    oracle_sweep,
    sample_autocorrelation,
    sample_directions,
    signal_autocorrelation,
)
from quiet_zones.schemas import OracleConfig, SpectralGrid
from quiet_zones.spectral import preset, synthesize_psd

C = 343.0
GRID = SpectralGrid()
SNAPPED_HZ = 614 * 2000 / 4096


@pytest.fixture(scope="module")
def tone():
    return synthesize_psd(preset("tone300"), GRID)


@pytest.fixture(scope="module")
def bpf():
    return synthesize_psd(preset("bpf"), GRID)


def test_signal_autocorrelation(tone, bpf):
    assert signal_autocorrelation(bpf, 0.0) == 1.0
    assert signal_autocorrelation(tone, 1 / (2 * SNAPPED_HZ)) == pytest.approx(-1.0, abs=1e-12)
    lags = np.linspace(-0.01, 0.01, 21)
    np.testing.assert_allclose(signal_autocorrelation(bpf, lags), signal_autocorrelation(bpf, -lags), atol=1e-15)


def test_signal_autocorrelation_matches_time_domain_realization():
    spectrum = synthesize_psd(preset("lpf300"), GRID)
    x = filtered_noise_realization(spectrum, 2**20, seed=1)
    estimate = sample_autocorrelation(x, max_lag=4)

    assert estimate[0] == pytest.approx(1.0)
    # 1 ms is two samples at 2 kHz.
    assert estimate[2] == pytest.approx(signal_autocorrelation(spectrum, 0.001), abs=0.02)


def test_filtered_noise_realization_is_seeded(tone):
    a = filtered_noise_realization(tone, 4096, seed=3)

    assert a.shape == (4096,)
    np.testing.assert_array_equal(a, filtered_noise_realization(tone, 4096, seed=3))
    assert not np.array_equal(a, filtered_noise_realization(tone, 4096, seed=4))


def test_sample_directions_are_unit_vectors():
    directions = sample_directions(10_000, seed=0)

    assert directions.shape == (10_000, 3)
    np.testing.assert_allclose(np.linalg.norm(directions, axis=1), 1.0)
    assert abs(directions[:, 2].mean()) < 0.05
    np.testing.assert_array_equal(directions, sample_directions(10_000, seed=0))


def test_lag_table_reproduces_autocorrelation(bpf):
    table = lag_table(bpf, 0.002)
    lags = np.random.default_rng(0).uniform(0, 0.002, 500)

    assert table(0.0) == 1.0
    np.testing.assert_allclose(table(lags), signal_autocorrelation(bpf, lags), atol=1e-9)


@pytest.mark.parametrize("method", list(OracleMethod))
def test_oracle_is_exact_at_zero_separation(bpf, method):
    config = OracleConfig(n_directions=1000, seed=9, method=method)
    assert oracle_correlation(bpf, 0.0, config=config) == 1.0


@pytest.mark.parametrize("method", list(OracleMethod))
def test_oracle_tone_at_half_wavelength(tone, method):
    n = 10_000
    half_wavelength = C / SNAPPED_HZ / 2
    estimate = oracle_correlation(tone, half_wavelength, 0.0, C, OracleConfig(n_directions=n, method=method))

    assert abs(estimate) < 3 / np.sqrt(n)


def test_table_and_direct_methods_agree(bpf):
    d = np.linspace(0, 0.5, 11)
    table = oracle_sweep(bpf, d, config=OracleConfig(n_directions=2000, method=OracleMethod.table))
    direct = oracle_sweep(bpf, d, config=OracleConfig(n_directions=2000, method=OracleMethod.direct))

    np.testing.assert_allclose(table, direct, atol=1e-8)


def test_oracle_with_time_lag(bpf):
    estimate = oracle_correlation(bpf, 0.1, 0.0005, C, OracleConfig(n_directions=100_000))
    assert estimate == pytest.approx(spatial_temporal_correlation(bpf, 0.1, 0.0005, C), abs=0.02)


def test_oracle_agrees_with_analytic_sweep():
    spectrum = synthesize_psd(preset("lpf600"), GRID)
    d = np.arange(1, 11) * 0.05
    estimate = oracle_sweep(spectrum, d, 0.0, C, OracleConfig(n_directions=100_000, seed=2))

    assert np.max(np.abs(estimate - spatial_temporal_correlation(spectrum, d, 0.0, C))) < 0.02


def test_oracle_is_deterministic(bpf):
    d = np.linspace(0, 0.5, 11)
    config = OracleConfig(n_directions=5000, seed=4, batch_size=700)
    first = oracle_sweep(bpf, d, config=config)

    np.testing.assert_array_equal(first, oracle_sweep(bpf, d, config=config))
    np.testing.assert_array_equal(first, oracle_sweep(bpf, d, config=config.model_copy(update={"workers": 4})))
    assert not np.array_equal(first, oracle_sweep(bpf, d, config=config.model_copy(update={"seed": 5})))


def test_convergence_errors_shrink(tone):
    errors, slope = estimate_convergence(tone, [0.1, 0.3, 0.5], [100, 10_000], seeds=range(6), c=C)

    assert errors.shape == (2,)
    assert errors[1] < errors[0]
    assert slope < 0


def test_sample_autocorrelation_of_alternating_signal():
    x = np.tile([1.0, -1.0], 500)
    acf = sample_autocorrelation(x, max_lag=2)

    assert acf[0] == 1.0
    assert acf[1] == pytest.approx(-1.0, abs=1e-2)
    assert acf[2] == pytest.approx(1.0, abs=1e-2)
