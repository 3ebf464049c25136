"""Decision support for hybrid ASIC/eFPGA SoCs.

Scores IP blocks for fabric mapping (adaptability, piracy threat, performance
tolerance, resource fit), plans capacity-constrained partitions, and reports
deployment-phase carbon, aging resilience, and cross-platform comparisons.
"""

from .aging import FabricRegion, LogicBlock, RemapPlan, SlackCurve, min_slack, remap, slack_at
from .carbon import (
    CarbonComparison,
    CarbonParams,
    CarbonReport,
    Scenario,
    SweepSpec,
    app_dev_carbon,
    calibrate_e_use,
    calibrated_params,
    compare,
    deploy_carbon,
    mean_reduction_at,
    sweep,
    total_cfp,
)
from .model import (
    Dataset,
    DatasetError,
    IpProfile,
    ParseError,
    SchemaVersionError,
    ScoreWeights,
    ValidationError,
    load_dataset,
    save_dataset,
    validate_weights,
)
from .partition import FabricBudget, PartitionPlan, plan_exact, plan_greedy, validate_plan
from .report import PlatformComparison, platform_comparison
from .scoring import (
    ScoreCard,
    adaptability,
    composite,
    exposure,
    normalize_composites,
    performance_tolerance,
    piracy_threat,
    redaction_ratio,
    resource_fit,
    score_dataset,
    score_from_subscores,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # model
    "Dataset",
    "DatasetError",
    "IpProfile",
    "ParseError",
    "SchemaVersionError",
    "ScoreWeights",
    "ValidationError",
    "load_dataset",
    "save_dataset",
    "validate_weights",
    # scoring
    "ScoreCard",
    "adaptability",
    "composite",
    "exposure",
    "normalize_composites",
    "performance_tolerance",
    "piracy_threat",
    "redaction_ratio",
    "resource_fit",
    "score_dataset",
    "score_from_subscores",
    # partition
    "FabricBudget",
    "PartitionPlan",
    "plan_exact",
    "plan_greedy",
    "validate_plan",
    # carbon
    "CarbonComparison",
    "CarbonParams",
    "CarbonReport",
    "Scenario",
    "SweepSpec",
    "app_dev_carbon",
    "calibrate_e_use",
    "calibrated_params",
    "compare",
    "deploy_carbon",
    "mean_reduction_at",
    "sweep",
    "total_cfp",
    # aging
    "FabricRegion",
    "LogicBlock",
    "RemapPlan",
    "SlackCurve",
    "min_slack",
    "remap",
    "slack_at",
    # reporting
    "PlatformComparison",
    "platform_comparison",
]
