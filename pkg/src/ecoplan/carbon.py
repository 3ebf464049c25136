"""Deployment-phase carbon model, lifetime/volume sweeps, and reduction stats.

The model charges only deployment emissions (the hardware is manufactured
once; embodied carbon is out of scope):

    deploy = n_vol * grid_intensity * (e_use_per_hour_kwh * lifetime_hours)
             + app_dev_carbon

where app_dev_carbon is the CPU energy spent on RTL/HLS synthesis and
bitstream generation, converted through the same grid intensity. The runtime
energy rate is usually not measured directly; :func:`calibrate_e_use` inverts
the model against a known deployment-cost anchor cell, after which the sweep
engine extrapolates linearly across lifetimes and volumes.

Note on units: grid intensity is stored exactly as configured. The bundled
demo uses 700 (following the reference parameter table) even though a
physically typical grid value is ~0.7 kg CO2/kWh; the anomaly is documented
rather than silently corrected, and every downstream figure scales with it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Mapping, NamedTuple, Sequence

from .model import ValidationError

HOURS_PER_YEAR = 8760.0


@dataclass(frozen=True)
class CarbonParams:
    """Deployment parameters for one design on one platform.

    Defaults follow the documented deployment parameter set (1M units,
    15-year runtime, grid intensity 700, 8 cores at 10 W, 2.5 h RTL + 1.0 h
    HLS synthesis); only the runtime energy rate has no default because it is
    derived, usually via :func:`calibrate_e_use`. Sweeps override the
    lifetime per scenario, so the 15-year default only matters when no sweep
    is involved.

    ``prototype`` permits n_vol == 0 (development-only scenarios where the
    runtime term vanishes and only app_dev_carbon remains).
    """

    e_use_per_hour_kwh: float
    n_vol: int = 1_000_000
    lifetime_hours: float = 131_400.0
    grid_intensity: float = 700.0
    cpu_power_per_core_w: float = 10.0
    cpu_cores: int = 8
    rtl_synth_hours: float = 2.5
    hls_synth_hours: float = 1.0
    config_hours: float = 0.0
    prototype: bool = False

    def __post_init__(self) -> None:
        if not isinstance(self.n_vol, int) or isinstance(self.n_vol, bool):
            raise ValidationError(f"n_vol must be an integer, got {self.n_vol!r}")
        if self.n_vol < 0 or (self.n_vol == 0 and not self.prototype):
            raise ValidationError(
                f"n_vol must be >= 1 (or 0 with prototype=True), got {self.n_vol}"
            )
        if not isinstance(self.cpu_cores, int) or isinstance(self.cpu_cores, bool):
            raise ValidationError(f"cpu_cores must be an integer, got {self.cpu_cores!r}")
        if self.cpu_cores < 1:
            raise ValidationError(f"cpu_cores must be >= 1, got {self.cpu_cores}")
        for fname in ("lifetime_hours", "grid_intensity", "e_use_per_hour_kwh",
                      "cpu_power_per_core_w"):
            value = getattr(self, fname)
            if not isinstance(value, (int, float)) or isinstance(value, bool):
                raise ValidationError(f"{fname} must be a number, got {value!r}")
            if not math.isfinite(float(value)) or value <= 0:
                raise ValidationError(f"{fname} must be > 0, got {value}")
        for fname in ("rtl_synth_hours", "hls_synth_hours", "config_hours"):
            value = getattr(self, fname)
            if not isinstance(value, (int, float)) or isinstance(value, bool):
                raise ValidationError(f"{fname} must be a number, got {value!r}")
            if not math.isfinite(float(value)) or value < 0:
                raise ValidationError(f"{fname} must be >= 0, got {value}")


class Scenario(NamedTuple):
    """One sweep cell coordinate: kind is 'lifetime_years' or 'volume'."""

    kind: str
    value: float


@dataclass(frozen=True)
class SweepSpec:
    """Grid for the sweep: lifetimes at the base volume, volumes at a fixed
    lifetime."""

    lifetimes_years: tuple[float, ...]
    volumes: tuple[int, ...]
    fixed_lifetime_for_volume_sweep_years: float

    def __post_init__(self) -> None:
        if not self.lifetimes_years or not self.volumes:
            raise ValidationError("sweep lists must be non-empty")
        if any(not math.isfinite(float(y)) or y <= 0 for y in self.lifetimes_years):
            raise ValidationError("sweep lifetimes must be > 0")
        if any((not isinstance(v, int)) or isinstance(v, bool) or v < 1 for v in self.volumes):
            raise ValidationError("sweep volumes must be positive integers")
        fixed = self.fixed_lifetime_for_volume_sweep_years
        if not math.isfinite(float(fixed)) or fixed <= 0:
            raise ValidationError("fixed lifetime for the volume sweep must be > 0")


@dataclass(frozen=True)
class CarbonReport:
    """Per design x platform sweep results, in kg CO2 per scenario cell."""

    design_id: str
    platform: str
    cells: Mapping[Scenario, float]
    reduction_vs_fpga: float | None = None


@dataclass(frozen=True)
class CarbonComparison:
    """Per-cell reductions 1 - ours/baseline for one design."""

    design_id: str
    cells: Mapping[Scenario, float]
    mean_reduction: float


def app_dev_carbon(params: CarbonParams) -> float:
    """Application-development carbon: CPU synthesis/configuration energy
    (W * cores * hours -> kWh) times the grid intensity."""
    hours = params.rtl_synth_hours + params.hls_synth_hours + params.config_hours
    kwh = params.cpu_power_per_core_w * params.cpu_cores * hours / 1000.0
    return kwh * params.grid_intensity


def deploy_carbon(params: CarbonParams) -> float:
    """Deployment carbon: runtime term plus the app-dev constant.

    Exactly linear in n_vol, lifetime_hours, and the energy rate, with
    app_dev_carbon as the fixed offset.
    """
    e_use = params.e_use_per_hour_kwh * params.lifetime_hours
    return params.n_vol * params.grid_intensity * e_use + app_dev_carbon(params)


def total_cfp(per_app: Sequence[tuple[float, CarbonParams]]) -> float:
    """Total footprint over applications: sum of per-application deployment
    carbon, with each entry's lifetime (hours) substituted into its params."""
    if not per_app:
        raise ValidationError("total_cfp needs at least one application entry")
    return math.fsum(
        deploy_carbon(replace(params, lifetime_hours=lifetime_hours))
        for lifetime_hours, params in per_app
    )


def calibrate_e_use(anchor_cfp: float, params: CarbonParams) -> float:
    """Invert the model: the energy rate for which deploy_carbon(params)
    reproduces ``anchor_cfp`` exactly.

    The rate field of ``params`` is ignored (that is the unknown). The anchor
    must exceed the fixed app-dev floor, and the runtime term needs a real
    deployment (n_vol >= 1).
    """
    if params.n_vol < 1:
        raise ValidationError("calibration requires n_vol >= 1")
    floor = app_dev_carbon(params)
    if not anchor_cfp > floor:
        raise ValidationError(
            f"infeasible anchor: {anchor_cfp} kg does not exceed the app-dev floor {floor} kg"
        )
    return (anchor_cfp - floor) / (params.n_vol * params.grid_intensity * params.lifetime_hours)


def calibrated_params(anchor_cfp: float, params: CarbonParams) -> CarbonParams:
    """Convenience: params with the energy rate set by calibrate_e_use."""
    return replace(params, e_use_per_hour_kwh=calibrate_e_use(anchor_cfp, params))


def sweep(spec: SweepSpec, base: CarbonParams, design_id: str, platform: str) -> CarbonReport:
    """Evaluate the sweep grid for one design on one platform.

    Lifetime cells run at the base volume; volume cells run at the spec's
    fixed lifetime. Cells scale exactly linearly along both axes.
    """
    cells: dict[Scenario, float] = {}
    for years in spec.lifetimes_years:
        cell_params = replace(base, lifetime_hours=years * HOURS_PER_YEAR)
        cells[Scenario("lifetime_years", float(years))] = deploy_carbon(cell_params)
    fixed_hours = spec.fixed_lifetime_for_volume_sweep_years * HOURS_PER_YEAR
    for volume in spec.volumes:
        cell_params = replace(base, n_vol=int(volume), lifetime_hours=fixed_hours)
        cells[Scenario("volume", float(volume))] = deploy_carbon(cell_params)
    return CarbonReport(design_id=design_id, platform=platform, cells=cells)


def compare(ours: CarbonReport, baseline: CarbonReport) -> CarbonComparison:
    """Per-cell reduction 1 - ours/baseline over matching scenario grids.

    Negative values mean our platform emits more than the baseline in that
    cell (inversions are reported, not suppressed).
    """
    if set(ours.cells) != set(baseline.cells):
        raise ValidationError(
            f"grid mismatch between {ours.design_id}/{ours.platform} "
            f"and {baseline.design_id}/{baseline.platform}"
        )
    reductions: dict[Scenario, float] = {}
    for scenario, base_value in baseline.cells.items():
        if base_value <= 0:
            raise ValidationError(f"baseline cell {scenario} must be > 0, got {base_value}")
        reductions[scenario] = 1.0 - ours.cells[scenario] / base_value
    mean = math.fsum(reductions.values()) / len(reductions)
    return CarbonComparison(design_id=ours.design_id, cells=reductions, mean_reduction=mean)


def mean_reduction_at(
    comparisons: Mapping[str, CarbonComparison], scenario: Scenario, design_ids: Sequence[str]
) -> float:
    """Mean reduction for one scenario cell over a declared design subset."""
    if not design_ids:
        raise ValidationError("design subset for the mean reduction must be non-empty")
    values = []
    for design_id in design_ids:
        if design_id not in comparisons:
            raise ValidationError(f"no comparison available for design {design_id!r}")
        cells = comparisons[design_id].cells
        if scenario not in cells:
            raise ValidationError(f"design {design_id!r} has no cell for {scenario}")
        values.append(cells[scenario])
    return math.fsum(values) / len(values)
