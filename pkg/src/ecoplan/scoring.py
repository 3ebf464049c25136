"""Sub-score computations, the composite score, and dataset-wide ranking.

The four sub-scores are dimensionless and live in [0, 1]:

* adaptability        ln(1 + loc) / ln(1 + max loc)        (RTL churn, log-tempered)
* piracy_threat       mu*C + nu*min(E, 1) + xi*R           (confidentiality, exposure, redaction)
* performance_tolerance  min(f_efpga / f_asic, 1)          (frequency retention)
* resource_fit        (a_max - area) / (a_max - a_min)     (relative footprint)

The composite is the convex combination alpha*A + beta*O + gamma*P + delta*R,
and the normalized column divides every composite by the set maximum so the
best candidate reads 1.0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .model import Dataset, ScoreWeights, validate_weights


@dataclass(frozen=True)
class ScoreCard:
    """Computed scores for one IP. ``exposure`` is the raw (unclamped) ratio
    and may exceed 1; it is None when cards are built from pre-computed
    sub-scores rather than raw inputs, as is ``redaction_ratio``."""

    ip_id: str
    adaptability: float
    piracy_threat: float
    performance_tolerance: float
    resource_fit: float
    composite: float
    normalized: float
    exposure: float | None = None
    redaction_ratio: float | None = None


def adaptability(loc_changed: int, max_loc_changed: int) -> float:
    """Log-normalized churn score: ln(1 + loc) / ln(1 + max).

    ``max_loc_changed`` is the dataset-wide maximum. When no IP in the set
    changed at all (max == 0) the score is defined as 0 for everyone: no
    churn anywhere means no adaptability pressure.
    """
    if loc_changed < 0 or max_loc_changed < 0:
        raise ValueError("loc counts must be >= 0")
    if loc_changed > max_loc_changed:
        raise ValueError(
            f"loc_changed ({loc_changed}) exceeds the dataset maximum ({max_loc_changed})"
        )
    if max_loc_changed == 0:
        return 0.0
    return math.log1p(loc_changed) / math.log1p(max_loc_changed)


def exposure(io_control_nets: int, internal_nets_and_state: int) -> float:
    """Attack-surface estimate: I/O-and-control nets over internal nets + state.

    The raw quotient is returned unclamped (it can exceed 1 for pathological
    IPs); the piracy-threat combination clamps it at 1.
    """
    if internal_nets_and_state <= 0:
        raise ValueError("internal_nets_and_state must be > 0")
    if io_control_nets < 0:
        raise ValueError("io_control_nets must be >= 0")
    return io_control_nets / internal_nets_and_state


def redaction_ratio(mapped: float, total: float) -> float:
    """Fraction of the IP's logic that can be moved into the fabric."""
    if total <= 0:
        raise ValueError("total logic must be > 0")
    if not 0 <= mapped <= total:
        raise ValueError(f"mapped logic must lie in [0, total], got {mapped} of {total}")
    return mapped / total


def piracy_threat(
    confidentiality: float, exposure_ratio: float, redaction: float, weights: ScoreWeights
) -> float:
    """Weighted threat score mu*C + nu*min(E, 1) + xi*R in [0, 1].

    The exposure ratio is clamped to 1 at this combination point only, so the
    raw ratio stays available for reporting.
    """
    validate_weights(weights)
    if not 0.0 <= confidentiality <= 1.0:
        raise ValueError(f"confidentiality must lie in [0, 1], got {confidentiality}")
    if not 0.0 <= redaction <= 1.0:
        raise ValueError(f"redaction must lie in [0, 1], got {redaction}")
    if exposure_ratio < 0.0:
        raise ValueError(f"exposure must be >= 0, got {exposure_ratio}")
    return (
        weights.mu * confidentiality
        + weights.nu * min(exposure_ratio, 1.0)
        + weights.xi * redaction
    )


def performance_tolerance(f_asic: float, f_efpga: float) -> float:
    """Frequency retention min(f_efpga / f_asic, 1) in (0, 1].

    The ratio is clamped at 1 when the fabric implementation outpaces the
    hardened one; otherwise the convex combination bound of the composite
    would not hold.
    """
    if f_asic <= 0 or f_efpga <= 0:
        raise ValueError("frequencies must be > 0")
    return min(f_efpga / f_asic, 1.0)


def resource_fit(area: float, a_min: float, a_max: float) -> float:
    """Relative-footprint score (a_max - area) / (a_max - a_min).

    The smallest IP in the set scores 1, the largest 0. When all areas are
    equal there is no differentiation and every IP scores 1.
    """
    if a_min > a_max:
        raise ValueError(f"a_min ({a_min}) exceeds a_max ({a_max})")
    if not a_min <= area <= a_max:
        raise ValueError(f"area {area} outside observed range [{a_min}, {a_max}]")
    if a_max == a_min:
        return 1.0
    return (a_max - area) / (a_max - a_min)


def composite(
    adaptability_score: float,
    piracy_score: float,
    performance_score: float,
    resource_score: float,
    weights: ScoreWeights,
) -> float:
    """Convex combination alpha*A + beta*O + gamma*P + delta*R."""
    validate_weights(weights)
    subs = (adaptability_score, piracy_score, performance_score, resource_score)
    for name, value in zip(("adaptability", "piracy", "performance", "resource"), subs):
        if not 0.0 <= value <= 1.0:
            raise ValueError(f"{name} sub-score must lie in [0, 1], got {value}")
    return (
        weights.alpha * adaptability_score
        + weights.beta * piracy_score
        + weights.gamma * performance_score
        + weights.delta * resource_score
    )


def normalize_composites(values: Sequence[float]) -> list[float]:
    """Divide every composite by the set maximum.

    All tied maxima map to exactly 1.0. If every composite is 0 there is
    nothing to differentiate and all entries are treated as tied maxima.
    """
    if not values:
        raise ValueError("cannot normalize an empty composite list")
    if any(v < 0 for v in values):
        raise ValueError("composites must be >= 0")
    top = max(values)
    if top == 0:
        return [1.0] * len(values)
    return [v / top for v in values]


def score_dataset(
    dataset: Dataset, weights: ScoreWeights, *, normalize_piracy: bool = False
) -> list[ScoreCard]:
    """Score every IP and return cards ranked best-first.

    Dataset-wide quantities (max churn, min/max area) are taken over the
    given dataset. Ranking sorts by composite descending, breaking ties by
    smaller area and then by id, so output order is deterministic.

    ``normalize_piracy`` additionally divides the piracy-threat column by its
    maximum before the composite step. This mirrors score tables that report
    the threat column post-normalized (best = 1.0); it is off by default
    because the weighted combination alone cannot reach 1.0 for typical
    in-range inputs.
    """
    weights = validate_weights(weights)
    max_loc = max(ip.loc_changed for ip in dataset.ips)
    a_min = min(ip.area for ip in dataset.ips)
    a_max = max(ip.area for ip in dataset.ips)

    rows = []
    for ip in dataset.ips:
        expo = exposure(ip.io_control_nets, ip.internal_nets_and_state)
        redact = redaction_ratio(ip.logic_mapped_to_efpga, ip.total_logic)
        rows.append(
            {
                "ip": ip,
                "adaptability": adaptability(ip.loc_changed, max_loc),
                "exposure": expo,
                "redaction": redact,
                "piracy": piracy_threat(ip.confidentiality_risk, expo, redact, weights),
                "performance": performance_tolerance(ip.f_max_asic, ip.f_max_efpga),
                "resource": resource_fit(ip.area, a_min, a_max),
            }
        )

    if normalize_piracy:
        top = max(row["piracy"] for row in rows)
        if top > 0:
            for row in rows:
                row["piracy"] = row["piracy"] / top

    composites = [
        composite(r["adaptability"], r["piracy"], r["performance"], r["resource"], weights)
        for r in rows
    ]
    normalized = normalize_composites(composites)

    cards = [
        ScoreCard(
            ip_id=row["ip"].id,
            adaptability=row["adaptability"],
            piracy_threat=row["piracy"],
            performance_tolerance=row["performance"],
            resource_fit=row["resource"],
            composite=comp,
            normalized=norm,
            exposure=row["exposure"],
            redaction_ratio=row["redaction"],
        )
        for row, comp, norm in zip(rows, composites, normalized)
    ]
    area_of = {ip.id: ip.area for ip in dataset.ips}
    cards.sort(key=lambda c: (-c.composite, area_of[c.ip_id], c.ip_id))
    return cards


def score_from_subscores(
    rows: Iterable[tuple[str, float, float, float, float]], weights: ScoreWeights
) -> list[ScoreCard]:
    """Build ranked cards from pre-computed (id, A, O, P, R) tuples.

    Useful for verifying published score tables without the raw inputs.
    Without areas, ranking ties are broken by id alone.
    """
    weights = validate_weights(weights)
    rows = list(rows)
    if not rows:
        raise ValueError("need at least one sub-score row")
    composites = [composite(a, o, p, r, weights) for (_, a, o, p, r) in rows]
    normalized = normalize_composites(composites)
    cards = [
        ScoreCard(
            ip_id=ip_id,
            adaptability=a,
            piracy_threat=o,
            performance_tolerance=p,
            resource_fit=r,
            composite=comp,
            normalized=norm,
        )
        for (ip_id, a, o, p, r), comp, norm in zip(rows, composites, normalized)
    ]
    cards.sort(key=lambda c: (-c.composite, c.ip_id))
    return cards
