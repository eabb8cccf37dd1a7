"""Command-line interface: one subcommand per report, CSV data out."""

import functools
import logging
import sys
from pathlib import Path
from typing import Any, Callable, Optional

import click
from pydantic import ValidationError
from pydantic_settings import SettingsError

from .defaults import DEFAULT_LOG_LEVEL
from .enums import CorrelationKind, OracleMethod
from .error import ConfigError, ExitCode, SimulationError, ToleranceError
from .settings import RunConfig
from .simulator import ZoneSimulator
from .utils import write_table

logger = logging.getLogger(__name__)

# Command-line flag name -> RunConfig field.
FLAG_FIELDS = {
    "signal": "signal",
    "fs": "fs_hz",
    "dft_size": "m_points",
    "c": "c_mps",
    "mode": "mode",
    "r0": "r0",
    "gain_ratio": "gain_ratio",
    "threshold_db": "threshold_db",
    "grid": "grid",
    "seed": "seed",
    "max_delta_r": "max_delta_r",
    "step": "step",
    "workers": "workers",
    "exclusion_radius": "exclusion_radius",
    "source_radius": "source_radius",
    "directions": "n_directions",
    "tolerance": "tolerance",
    "method": "oracle_method",
}


def handle_errors(func: Callable[..., Any]) -> Callable[..., Any]:
    """Turn configuration and simulation errors into a message on stderr and an exit code."""

    @functools.wraps(func)
    def wrapper(*args: Any, **kwargs: Any) -> Any:
        try:
            return func(*args, **kwargs)
        except ValidationError as e:
            click.echo(f"error: invalid configuration\n{e}", err=True)
            sys.exit(ExitCode.CONFIG_ERROR.value)
        except SettingsError as e:
            click.echo(f"error: invalid configuration: {e}", err=True)
            sys.exit(ExitCode.CONFIG_ERROR.value)
        except ConfigError as e:
            click.echo(f"error: {e.exception_message}", err=True)
            sys.exit(ExitCode.CONFIG_ERROR.value)
        except SimulationError as e:
            click.echo(f"error: {e.error_key}: {e.detail}", err=True)
            sys.exit(int(e.exit_code))

    return wrapper


class QuietZonesGroup(click.Group):
    """Command group whose usage errors exit with the configuration error code."""

    def make_context(self, *args: Any, **kwargs: Any) -> click.Context:
        try:
            return super().make_context(*args, **kwargs)
        except click.UsageError as e:
            e.exit_code = ExitCode.CONFIG_ERROR.value
            raise

    def invoke(self, ctx: click.Context) -> Any:
        try:
            return super().invoke(ctx)
        except click.UsageError as e:
            e.exit_code = ExitCode.CONFIG_ERROR.value
            raise


def run_options(func: Callable[..., Any]) -> Callable[..., Any]:
    """Flags shared by every subcommand. Unset flags fall back to the config file, then the environment."""
    options = [
        click.option("--signal", default=None, help="Preset (tone300, lpf300, lpf600, bpf) or inline JSON spec."),
        click.option("--fs", type=float, default=None, help="Sampling rate in Hz."),
        click.option("--dft-size", type=int, default=None, help="DFT length M (even)."),
        click.option("--c", type=float, default=None, help="Speed of sound in m/s."),
        click.option("--mode", default=None, help="near-field or far-field."),
        click.option("--r0", default=None, help="Cancellation point, e.g. 0.2,0."),
        click.option("--gain-ratio", type=float, default=None, help="Far-field secondary to primary power ratio."),
        click.option("--threshold-db", type=float, default=None, help="Zone of quiet level in dB (negative)."),
        click.option("--grid", default=None, help="x_min,x_max,y_min,y_max,spacing in meters."),
        click.option("--seed", type=int, default=None, help="Oracle seed."),
        click.option("--max-delta-r", type=float, default=None, help="End of 1-D sweeps in meters."),
        click.option("--step", type=float, default=None, help="1-D sweep step in meters."),
        click.option("--workers", type=int, default=None, help="Worker threads for fields and the oracle."),
        click.option("--exclusion-radius", type=float, default=None, help="Masked radius around the source."),
        click.option("--source-radius", type=float, default=None, help="Loudspeaker radius in meters."),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def load_config(ctx: click.Context, flags: dict[str, Any]) -> RunConfig:
    overrides = {FLAG_FIELDS[name]: value for name, value in flags.items() if name in FLAG_FIELDS and value is not None}
    if ctx.obj.get("log_level"):
        overrides["log_level"] = ctx.obj["log_level"]
    config_file: Optional[str] = ctx.obj.get("config_file")
    if config_file:
        return RunConfig.from_file(config_file, **overrides)
    return RunConfig(**overrides)


def _simulator(ctx: click.Context, flags: dict[str, Any]) -> ZoneSimulator:
    config = load_config(ctx, flags)
    logging.getLogger(__package__).setLevel(config.log_level)
    logger.info("Resolved configuration: %s", dict(config.echo()))
    return ZoneSimulator(config)


@click.group(cls=QuietZonesGroup)
@click.option("--config", "config_file", type=click.Path(dir_okay=False), default=None, help="TOML run file.")
@click.option(
    "--log-level",
    type=click.Choice(["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"], case_sensitive=False),
    default=None,
    help=f"Logging level (default {DEFAULT_LOG_LEVEL}).",
)
@click.pass_context
def main(ctx: click.Context, config_file: Optional[str], log_level: Optional[str]) -> None:
    """Diffuse-field correlation and active noise control zones of quiet."""
    ctx.ensure_object(dict)
    ctx.obj["config_file"] = config_file
    ctx.obj["log_level"] = log_level
    logging.basicConfig(
        level=(log_level or DEFAULT_LOG_LEVEL).upper(),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )


@main.command()
@run_options
@click.option("--out", default="-", help="Output CSV ('-' for stdout).")
@click.pass_context
@handle_errors
def psd(ctx: click.Context, out: str, **flags: Any) -> None:
    """Power spectral density of the signal, bins 0 to M/2."""
    sim = _simulator(ctx, flags)
    write_table(out, sim.psd(), sim.header())


@main.command()
@run_options
@click.option("--kind", default=CorrelationKind.auto.value, help="auto (primary field) or cross (primary-secondary).")
@click.option("--out", default="-", help="Output CSV ('-' for stdout).")
@click.pass_context
@handle_errors
def corr(ctx: click.Context, kind: str, out: str, **flags: Any) -> None:
    """Spatial correlation over the distance sweep."""
    try:
        correlation_kind = CorrelationKind(kind)
    except ValueError:
        raise ConfigError("kind", kind) from None
    sim = _simulator(ctx, flags)
    write_table(out, sim.correlation(correlation_kind), sim.header(("kind", correlation_kind.value)))


@main.command()
@run_options
@click.option("--out", default="-", help="Output CSV ('-' for stdout).")
@click.pass_context
@handle_errors
def zone1d(ctx: click.Context, out: str, **flags: Any) -> None:
    """Attenuation along the sweep and the zone width at the threshold."""
    sim = _simulator(ctx, flags)
    table, summary = sim.zone1d()
    write_table(out, table, sim.header())
    click.echo(summary.line(), err=True)


@main.command()
@run_options
@click.option("--out", default="zone2d_field.csv", help="Field CSV.")
@click.option("--contour-out", default=None, help="Contour CSV (default: next to the field file).")
@click.pass_context
@handle_errors
def zone2d(ctx: click.Context, out: str, contour_out: Optional[str], **flags: Any) -> None:
    """Attenuation map and its iso-level contour."""
    sim = _simulator(ctx, flags)
    if contour_out is None:
        path = Path(out)
        contour_out = str(path.with_name(f"{path.stem}_contour.csv"))
    zone_map = sim.zone2d()
    sim.write_zone_map(zone_map, out, contour_out)
    if zone_map.contours.is_empty:
        click.echo(f"notice: no contour at {zone_map.contours.level_db:g} dB; {contour_out} has no rows", err=True)
    click.echo(zone_map.line(), err=True)


@main.command()
@run_options
@click.option("--directions", type=int, default=None, help="Number of sampled directions.")
@click.option("--tolerance", type=float, default=None, help="Largest accepted absolute error.")
@click.option(
    "--method",
    type=click.Choice([m.value for m in OracleMethod]),
    default=None,
    help="Autocorrelation per direction: spline lag table or direct sum.",
)
@click.option("--out", default="-", help="Output CSV ('-' for stdout).")
@click.pass_context
@handle_errors
def oracle(ctx: click.Context, out: str, **flags: Any) -> None:
    """Compare the analytic correlation with direction sampling."""
    sim = _simulator(ctx, flags)
    table, max_abs_err = sim.oracle()
    write_table(out, table, sim.header())
    tolerance = sim.settings.tolerance
    click.echo(f"max_abs_err = {max_abs_err:.3g} (tolerance {tolerance:.3g})", err=True)
    if max_abs_err > tolerance:
        raise ToleranceError(max_abs_err=max_abs_err, tolerance=tolerance)


@main.command()
@run_options
@click.option("--out-dir", default="results", help="Directory for all reports.")
@click.pass_context
@handle_errors
def reproduce(ctx: click.Context, out_dir: str, **flags: Any) -> None:
    """All reports for every preset, plus summary.csv."""
    sim = _simulator(ctx, flags)
    summary = sim.reproduce(out_dir)
    click.echo(f"wrote {len(summary)} presets to {out_dir}", err=True)
