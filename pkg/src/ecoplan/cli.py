"""Command-line entry point.

One executable with subcommands ``score``, ``partition``, ``carbon``,
``compare``, and ``aging``. A single JSON run-configuration file names the
dataset and carries weights, the fabric budget, the carbon sweep and anchors,
and the aging inputs; a handful of flags override individual settings.

Exit codes: 0 success, 1 validation error, 2 I/O error, 3 internal error.
On any error the output directory is left without new files.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Any, Mapping, Sequence

from . import aging as aging_mod
from . import carbon as carbon_mod
from . import report as report_mod
from .model import (
    Dataset,
    DatasetError,
    ParseError,
    ScoreWeights,
    ValidationError,
    load_dataset,
    weights_from_dict,
)
from .partition import FabricBudget, plan_exact, plan_greedy, validate_plan
from .scoring import score_dataset

CONFIG_SCHEMA_VERSION = "1"

_TOP_KEYS = (
    "schema_version",
    "dataset",
    "weights",
    "normalize_piracy",
    "fabric_budget",
    "partition_method",
    "output_dir",
    "formats",
    "carbon",
    "compare",
    "aging",
)
_CARBON_KEYS = (
    "base",
    "anchor_lifetime_years",
    "anchors",
    "sweep",
    "reduction_designs",
    "reduction_scenario",
)
_CARBON_BASE_KEYS = (
    "n_vol",
    "grid_intensity",
    "cpu_power_per_core_w",
    "cpu_cores",
    "rtl_synth_hours",
    "hls_synth_hours",
    "config_hours",
)
_AGING_KEYS = ("curves", "temperature_c", "regions", "blocks")
_REGION_KEYS = ("id", "capacity", "health_factor")
_BLOCK_KEYS = ("id", "size", "region")
_PLATFORM_LABELS = ("asic", "fpga", "ecologic")


@dataclass(frozen=True)
class RunConfig:
    """Parsed run configuration; paths already resolved against the config
    file's directory."""

    dataset_path: Path
    weights: ScoreWeights
    normalize_piracy: bool
    output_dir: Path
    formats: tuple[str, ...]
    fabric_capacity: float | None
    partition_method: str
    carbon: Mapping[str, Any] | None
    compare: Mapping[str, Any]
    aging: Mapping[str, Any] | None


def _reject_unknown(raw: Mapping[str, Any], allowed: Sequence[str], where: str) -> None:
    if not isinstance(raw, Mapping):
        raise ValidationError(f"{where}: must be a JSON object")
    unknown = set(raw) - set(allowed)
    if unknown:
        raise ValidationError(f"{where}: unknown key(s): {', '.join(sorted(unknown))}")


def load_config(path: str | Path) -> RunConfig:
    config_path = Path(path)
    text = config_path.read_text(encoding="utf-8")
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ValidationError(f"{path}: config top level must be a JSON object")
    _reject_unknown(raw, _TOP_KEYS, str(path))
    version = raw.get("schema_version", CONFIG_SCHEMA_VERSION)
    if version != CONFIG_SCHEMA_VERSION:
        raise ValidationError(f"{path}: unknown config schema_version {version!r}")
    if "dataset" not in raw or "weights" not in raw:
        raise ValidationError(f"{path}: config requires 'dataset' and 'weights'")

    base_dir = config_path.parent

    def resolve(p: str) -> Path:
        candidate = Path(p)
        return candidate if candidate.is_absolute() else base_dir / candidate

    budget_raw = raw.get("fabric_budget")
    capacity = None
    if budget_raw is not None:
        _reject_unknown(budget_raw, ("capacity",), f"{path}: fabric_budget")
        capacity = budget_raw.get("capacity")
    carbon_raw = raw.get("carbon")
    if carbon_raw is not None:
        _reject_unknown(carbon_raw, _CARBON_KEYS, f"{path}: carbon")
    aging_raw = raw.get("aging")
    if aging_raw is not None:
        _reject_unknown(aging_raw, _AGING_KEYS, f"{path}: aging")
    compare_raw = raw.get("compare", {})
    _reject_unknown(compare_raw, ("ours", "baseline"), f"{path}: compare")

    formats = report_mod.check_formats(tuple(raw.get("formats", report_mod.FORMATS)))
    return RunConfig(
        dataset_path=resolve(raw["dataset"]),
        weights=weights_from_dict(raw["weights"]),
        normalize_piracy=bool(raw.get("normalize_piracy", False)),
        output_dir=resolve(raw.get("output_dir", "out")),
        formats=formats,
        fabric_capacity=capacity,
        partition_method=raw.get("partition_method", "greedy"),
        carbon=carbon_raw,
        compare=compare_raw,
        aging=aging_raw,
    )


def _load_inputs(config: RunConfig) -> Dataset:
    return load_dataset(config.dataset_path)


def cmd_score(config: RunConfig, formats: Sequence[str]) -> dict[str, str]:
    dataset = _load_inputs(config)
    cards = score_dataset(dataset, config.weights, normalize_piracy=config.normalize_piracy)
    return report_mod.score_report_files(cards, formats)


def cmd_partition(
    config: RunConfig, formats: Sequence[str], method: str | None, capacity: float | None
) -> dict[str, str]:
    dataset = _load_inputs(config)
    cards = score_dataset(dataset, config.weights, normalize_piracy=config.normalize_piracy)
    effective_capacity = capacity if capacity is not None else config.fabric_capacity
    if effective_capacity is None:
        raise ValidationError("no fabric capacity given (config fabric_budget or --capacity)")
    budget = FabricBudget(capacity=float(effective_capacity))
    effective_method = method or config.partition_method
    if effective_method == "greedy":
        plan = plan_greedy(cards, dataset, budget)
    elif effective_method == "exact":
        plan = plan_exact(cards, dataset, budget)
    else:
        raise ValidationError(f"unknown partition method {effective_method!r}")
    validate_plan(plan, dataset, budget)
    return report_mod.partition_report_files(plan, budget, formats)


def _carbon_pipeline(
    config: RunConfig,
) -> tuple[list[carbon_mod.CarbonReport], dict[str, carbon_mod.CarbonComparison], float | None, list[str]]:
    if config.carbon is None:
        raise ValidationError("config has no 'carbon' section")
    section = config.carbon
    for key in ("base", "anchors", "sweep"):
        if key not in section:
            raise ValidationError(f"carbon config requires '{key}'")
    base_raw = dict(section["base"])
    _reject_unknown(base_raw, _CARBON_BASE_KEYS, "carbon base")
    anchor_years = float(section.get("anchor_lifetime_years", 1.0))
    sweep_raw = dict(section["sweep"])
    spec = carbon_mod.SweepSpec(
        lifetimes_years=tuple(float(y) for y in sweep_raw.pop("lifetimes_years", ())),
        volumes=tuple(int(v) for v in sweep_raw.pop("volumes", ())),
        fixed_lifetime_for_volume_sweep_years=float(
            sweep_raw.pop("fixed_lifetime_for_volume_sweep_years", 0.0)
        ),
    )
    if sweep_raw:
        raise ValidationError(f"carbon sweep: unknown key(s): {', '.join(sorted(sweep_raw))}")

    anchors = section["anchors"]
    if not isinstance(anchors, dict) or not anchors:
        raise ValidationError("carbon anchors must map design -> platform -> kg")

    reports: list[carbon_mod.CarbonReport] = []
    by_design: dict[str, dict[str, carbon_mod.CarbonReport]] = {}
    for design_id in sorted(anchors):
        by_design[design_id] = {}
        platform_anchors = anchors[design_id]
        for platform in sorted(platform_anchors):
            if platform not in _PLATFORM_LABELS:
                raise ValidationError(
                    f"carbon anchors: unknown platform {platform!r} for design {design_id!r}"
                )
            anchor_kg = float(platform_anchors[platform])
            base = carbon_mod.CarbonParams(
                lifetime_hours=anchor_years * carbon_mod.HOURS_PER_YEAR,
                e_use_per_hour_kwh=1.0,  # placeholder; replaced by calibration
                **base_raw,
            )
            calibrated = carbon_mod.calibrated_params(anchor_kg, base)
            rpt = carbon_mod.sweep(spec, calibrated, design_id=design_id, platform=platform)
            by_design[design_id][platform] = rpt

    comparisons: dict[str, carbon_mod.CarbonComparison] = {}
    for design_id, platform_reports in by_design.items():
        if "ecologic" in platform_reports and "fpga" in platform_reports:
            cmp_result = carbon_mod.compare(
                platform_reports["ecologic"], platform_reports["fpga"]
            )
            comparisons[design_id] = cmp_result
            platform_reports["ecologic"] = replace(
                platform_reports["ecologic"], reduction_vs_fpga=cmp_result.mean_reduction
            )
        for platform in sorted(platform_reports):
            reports.append(platform_reports[platform])

    reduction_designs = list(section.get("reduction_designs", sorted(comparisons)))
    scenario_raw = section.get("reduction_scenario", {"kind": "lifetime_years", "value": 1.0})
    scenario = carbon_mod.Scenario(str(scenario_raw["kind"]), float(scenario_raw["value"]))
    mean_reduction = None
    if comparisons and reduction_designs:
        mean_reduction = carbon_mod.mean_reduction_at(comparisons, scenario, reduction_designs)
    return reports, comparisons, mean_reduction, reduction_designs


def cmd_carbon(config: RunConfig, formats: Sequence[str]) -> dict[str, str]:
    reports, comparisons, mean_reduction, reduction_designs = _carbon_pipeline(config)
    return report_mod.carbon_report_files(
        reports, comparisons, mean_reduction, reduction_designs, formats
    )


def cmd_compare(config: RunConfig, formats: Sequence[str]) -> dict[str, str]:
    dataset = _load_inputs(config)
    ours = config.compare.get("ours", "ecologic")
    baseline = config.compare.get("baseline", "fpga")
    comparison = report_mod.platform_comparison(dataset, ours=ours, baseline=baseline)
    return report_mod.compare_report_files(comparison, formats)


def cmd_aging(
    config: RunConfig, formats: Sequence[str], temperature: float | None
) -> dict[str, str]:
    if config.aging is None:
        raise ValidationError("config has no 'aging' section")
    section = config.aging
    curves_raw = section.get("curves")
    if not curves_raw:
        raise ValidationError("aging config requires 'curves'")
    curves = [
        aging_mod.SlackCurve(platform=platform, points=tuple(map(tuple, points)))
        for platform, points in sorted(curves_raw.items())
    ]
    temp = temperature if temperature is not None else section.get("temperature_c")
    if temp is None:
        raise ValidationError("no temperature given (config temperature_c or --temperature)")
    temp = float(temp)
    slacks = {curve.platform: aging_mod.slack_at(curve, temp) for curve in curves}

    plan = None
    regions_raw = section.get("regions")
    blocks_raw = section.get("blocks")
    if regions_raw and blocks_raw:
        for entry in regions_raw:
            _reject_unknown(entry, _REGION_KEYS, "aging region")
        for entry in blocks_raw:
            _reject_unknown(entry, _BLOCK_KEYS, "aging block")
        regions = [aging_mod.FabricRegion(**entry) for entry in regions_raw]
        blocks = [aging_mod.LogicBlock(**entry) for entry in blocks_raw]
        base_curve = next(
            (c for c in curves if c.platform == "ecologic"), curves[0]
        )
        plan = aging_mod.remap(blocks, regions, base_curve, temp)
    return report_mod.aging_report_files(curves, slacks, temp, plan, formats)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ecoplan",
        description=(
            "Score SoC IP blocks for eFPGA mapping, plan fabric partitions, and "
            "report deployment carbon, aging, and platform comparisons."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--config", required=True, help="run configuration JSON file")
        p.add_argument("--out", help="output directory (overrides config output_dir)")
        p.add_argument(
            "--formats",
            help="comma-separated subset of json,csv,markdown (overrides config)",
        )

    p_score = sub.add_parser("score", help="rank IPs by composite score")
    add_common(p_score)

    p_part = sub.add_parser("partition", help="plan the fabric placement")
    add_common(p_part)
    p_part.add_argument("--method", choices=("greedy", "exact"), help="planner to use")
    p_part.add_argument("--capacity", type=float, help="fabric capacity override")

    p_carbon = sub.add_parser("carbon", help="deployment-carbon sweep and reductions")
    add_common(p_carbon)

    p_compare = sub.add_parser("compare", help="cross-platform metric comparison")
    add_common(p_compare)

    p_aging = sub.add_parser("aging", help="slack-vs-temperature and remap report")
    add_common(p_aging)
    p_aging.add_argument("--temperature", type=float, help="evaluation temperature (degC)")

    return parser


def run(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    config = load_config(args.config)
    formats = config.formats
    if args.formats:
        formats = report_mod.check_formats(tuple(args.formats.split(",")))
    out_dir = Path(args.out) if args.out else config.output_dir

    if args.command == "score":
        files = cmd_score(config, formats)
    elif args.command == "partition":
        if args.capacity is not None and args.capacity <= 0:
            raise ValidationError(f"--capacity must be > 0, got {args.capacity}")
        files = cmd_partition(config, formats, args.method, args.capacity)
    elif args.command == "carbon":
        files = cmd_carbon(config, formats)
    elif args.command == "compare":
        files = cmd_compare(config, formats)
    elif args.command == "aging":
        files = cmd_aging(config, formats, args.temperature)
    else:  # pragma: no cover - argparse enforces the choices
        raise ValidationError(f"unknown command {args.command!r}")

    written = report_mod.write_outputs(out_dir, files)
    for path in written:
        print(path)
    return 0


def main(argv: Sequence[str] | None = None) -> int:
    try:
        return run(argv)
    except (DatasetError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001 - deliberate catch-all boundary
        print(f"internal error: {exc!r}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    raise SystemExit(main())
