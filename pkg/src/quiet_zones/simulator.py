import logging
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Optional, Union

import numpy as np

from .contour import ContourExtent, ContourSet, contour_extent, extract_iso_contour
from .correlation import spatial_temporal_correlation
from .defaults import MONOPOLE_POWER_WARNING
from .enums import ControlMode, CorrelationKind, Preset
from .error import ErrorKey, SimulationError
from .geometry import monopole_frequency_limit
from .oracle import oracle_sweep
from .schemas import Scenario
from .settings import RunConfig
from .spectral import PowerSpectrum, power_fraction_above, psd_report, rms_frequency, synthesize_psd
from .utils import Table, header_lines, write_table
from .zones import (
    AttenuationField,
    attenuation_db,
    attenuation_field_2d,
    attenuation_profile,
    first_order_zone_width,
    sweep,
    zone_width,
)


@dataclass(frozen=True)
class ZoneSummary:
    """Zone width on the 1-D curve; ``width_m`` is ``None`` when the curve never reaches the threshold."""

    mode: ControlMode
    threshold_db: float
    width_m: Optional[float]
    wavelength_m: float
    first_order_width_m: float

    def line(self) -> str:
        if self.width_m is None:
            return f"zone_width_m = none (no crossing at {self.threshold_db:g} dB, mode {self.mode.value})"
        return (
            f"zone_width_m = {self.width_m:.6g} ({self.width_m / self.wavelength_m:.4f} lambda, "
            f"first-order {self.first_order_width_m:.6g} m, mode {self.mode.value})"
        )


@dataclass(frozen=True)
class ZoneMap:
    field: AttenuationField
    contours: ContourSet
    extent: Optional[ContourExtent]

    def line(self) -> str:
        if self.extent is None:
            return f"no closed contour at {self.contours.level_db:g} dB"
        e = self.extent
        return (
            f"max_diameter_m = {e.max_diameter:.6g}, axial_span_m = {e.axial_span:.6g}, "
            f"lateral_span_m = {e.lateral_span:.6g}, area_m2 = {e.area:.6g}"
        )


class ZoneSimulator:
    """
    Runs the reports of one configuration.

    The spectrum is synthesized on first use and shared by every report. All
    reports are deterministic functions of the settings.
    """

    def __init__(self, settings: RunConfig, *, logger: Optional[logging.Logger] = None):
        self._id = id(self)
        self._settings = settings
        self._logger = logger or logging.getLogger(f"quiet_zones.{self._id}")
        self._logger.setLevel(settings.log_level)
        self._logger.debug("ZoneSimulator initialized with id: %s.", self._id)

    @property
    def settings(self) -> RunConfig:
        return self._settings

    @cached_property
    def spectrum(self) -> PowerSpectrum:
        spectrum = synthesize_psd(self._settings.signal_spec(), self._settings.spectral_grid())
        self._check_monopole(spectrum)
        return spectrum

    def scenario(self, mode: Optional[ControlMode] = None) -> Scenario:
        return self._settings.scenario(mode)

    @property
    def wavelength(self) -> float:
        """Wavelength at the RMS frequency of the signal."""
        return self._settings.c_mps / rms_frequency(self.spectrum)

    def _check_monopole(self, spectrum: PowerSpectrum) -> None:
        radius = self._settings.source_radius
        if radius is None:
            return
        f_limit = monopole_frequency_limit(radius, self._settings.c_mps)
        fraction = power_fraction_above(spectrum, f_limit)
        if fraction > MONOPOLE_POWER_WARNING:
            self._logger.warning(
                "%.1f%% of the signal power lies above %.0f Hz, where a %.3g m source is no longer a monopole.",
                100 * fraction,
                f_limit,
                radius,
            )

    def header(self, *extra: tuple[str, str]) -> list[str]:
        return header_lines([*self._settings.echo(), *extra])

    def psd(self) -> Table:
        return psd_report(self.spectrum)

    def correlation(self, kind: CorrelationKind = CorrelationKind.auto) -> Table:
        """
        ``delta_r_m, rho`` over the sweep.

        ``auto`` is the primary field correlation at zero lag; ``cross`` is the
        primary-secondary correlation on axis with ``r0 / r1 = 1``.
        """
        c = self._settings.c_mps
        d = sweep(self._settings.max_delta_r, self._settings.step)
        if kind is CorrelationKind.auto:
            rho = spatial_temporal_correlation(self.spectrum, d, 0.0, c)
        else:
            rho = -np.asarray(spatial_temporal_correlation(self.spectrum, d, d / c, c))
        return Table(columns=("delta_r_m", "rho"), data=np.column_stack([d, rho]))

    def zone1d(self, mode: Optional[ControlMode] = None) -> tuple[Table, ZoneSummary]:
        scenario = self.scenario(mode)
        d = sweep(self._settings.max_delta_r, self._settings.step)
        eps = np.asarray(attenuation_profile(self.spectrum, scenario, d))
        table = Table(
            columns=("delta_r_m", "epsilon", "attenuation_db"),
            data=np.column_stack([d, eps, attenuation_db(eps)]),
        )
        try:
            width: Optional[float] = zone_width(
                self.spectrum,
                scenario,
                self._settings.threshold_epsilon,
                max_delta_r=self._settings.max_delta_r,
                step=self._settings.step,
            )
        except SimulationError as e:
            if e.error_key != ErrorKey.no_crossing.value:
                raise
            width = None
        summary = ZoneSummary(
            mode=scenario.mode,
            threshold_db=self._settings.threshold_db,
            width_m=width,
            wavelength_m=self.wavelength,
            first_order_width_m=first_order_zone_width(self.spectrum, scenario.c),
        )
        self._logger.info("%s", summary.line())
        return table, summary

    def zone2d(self) -> ZoneMap:
        scenario = self.scenario()
        grid = self._settings.grid_spec()
        field = attenuation_field_2d(self.spectrum, scenario, grid, workers=self._settings.workers)
        contours = extract_iso_contour(field, self._settings.threshold_db)
        extent = contour_extent(contours, axis=scenario.point()) if contours.closed() else None
        zone_map = ZoneMap(field=field, contours=contours, extent=extent)
        self._logger.info("%s", zone_map.line())
        return zone_map

    def oracle(self) -> tuple[Table, float]:
        """``delta_r_m, rho_analytic, rho_oracle, abs_err`` and the largest error."""
        c = self._settings.c_mps
        d = sweep(self._settings.max_delta_r, self._settings.oracle_step)
        analytic = np.asarray(spatial_temporal_correlation(self.spectrum, d, 0.0, c))
        estimate = oracle_sweep(self.spectrum, d, 0.0, c, self._settings.oracle_config())
        err = np.abs(estimate - analytic)
        table = Table(
            columns=("delta_r_m", "rho_analytic", "rho_oracle", "abs_err"),
            data=np.column_stack([d, analytic, estimate, err]),
        )
        return table, float(err.max())

    def geometry_lines(self) -> list[tuple[str, str]]:
        point = ",".join(repr(float(v)) for v in self._settings.r0)
        return [("source", "0.0,0.0"), ("cancellation_point", point)]

    def reproduce(self, out_dir: Union[str, Path]) -> Table:
        """
        Write every report for all presets into ``out_dir`` and return the summary table.

        Near-field and far-field 1-D curves, auto and cross correlation, the PSD
        and the 2-D map with its contour are written per preset.
        """
        out = Path(out_dir)
        rows = []
        for name in Preset:
            sim = ZoneSimulator(self._settings.model_copy(update={"signal": name}), logger=self._logger)
            write_table(out / f"{name.value}_psd.csv", sim.psd(), sim.header())
            for kind in CorrelationKind:
                path = out / f"{name.value}_corr_{kind.value}.csv"
                write_table(path, sim.correlation(kind), sim.header(("kind", kind.value)))
            widths = {}
            for mode in ControlMode:
                mode_sim = ZoneSimulator(sim.settings.model_copy(update={"mode": mode}), logger=self._logger)
                table, zone = mode_sim.zone1d()
                write_table(out / f"{name.value}_zone1d_{mode.value}.csv", table, mode_sim.header())
                widths[mode] = zone
            zone_map = sim.zone2d()
            stem = out / f"{name.value}_zone2d"
            sim.write_zone_map(zone_map, f"{stem}_field.csv", f"{stem}_contour.csv")
            extent = zone_map.extent
            rows.append(
                [
                    name.value,
                    _or_nan(widths[ControlMode.near_field].width_m),
                    _or_nan(widths[ControlMode.far_field].width_m),
                    widths[ControlMode.near_field].first_order_width_m,
                    _or_nan(extent and extent.max_diameter),
                    _or_nan(extent and extent.axial_span),
                    _or_nan(extent and extent.lateral_span),
                    _or_nan(extent and extent.area),
                ]
            )
            self._logger.info("Reproduced %s", name.value)
        summary = Table(
            columns=(
                "signal",
                "near_width_m",
                "far_width_m",
                "first_order_width_m",
                "max_diameter_m",
                "axial_span_m",
                "lateral_span_m",
                "area_m2",
            ),
            data=np.array(rows, dtype=object),
            formats=("%s",) + ("%.12g",) * 7,
        )
        write_table(out / "summary.csv", summary, self.header())
        return summary

    def write_zone_map(self, zone_map: ZoneMap, field_path: Union[str, Path], contour_path: Union[str, Path]) -> None:
        geometry = self.geometry_lines()
        write_table(field_path, zone_map.field.rows(), self.header(*geometry))
        closed = [(f"polyline_{k}_closed", str(p.closed).lower()) for k, p in enumerate(zone_map.contours.polylines)]
        write_table(
            contour_path,
            zone_map.contours.rows(),
            self.header(*geometry, ("level_db", repr(float(zone_map.contours.level_db))), *closed),
        )


def _or_nan(value: Optional[float]) -> float:
    return float("nan") if value is None else float(value)
