"""Peer-group aggregation and credit-rating gap accounting.

A peer aggregate is the per-indicator arithmetic mean over included
countries. Exclusions are explicit and auditable: either a configured
per-indicator country mask, or an automatic single-outlier trim. Gap
classification uses a fixed polarity table; the investment roll-up and
years-to-close close the loop from indicator gaps to an EVA horizon.
"""
from __future__ import annotations

import json
import statistics
from dataclasses import dataclass, field
from enum import Enum
from typing import Mapping, Sequence

from .errors import InfeasibleError, ParseError, ValidationError
from .indicators import PEER_INDICATORS, PeerIndicatorRecord
from .projection import cumulative_pv

# Indicators where a larger value argues for a better rating. The rest
# (financing needs, debt loads, inflation) invert.
HIGHER_IS_BETTER = {
    "nominal_gdp": True,
    "gdp_per_capita": True,
    "real_gdp_growth": True,
    "current_account_balance_gdp": True,
    "gross_ext_financing_needs": False,
    "fiscal_balance_gdp": True,
    "debt_gdp": False,
    "net_debt_gdp": False,
    "cpi_growth": False,
}


class GapDirection(str, Enum):
    BETTER = "better"
    WORSE = "worse"


@dataclass(frozen=True)
class IndicatorAggregate:
    """Mean over included peers for one indicator, with the exclusion audit trail."""

    average: float
    included: frozenset[str]
    excluded: frozenset[str]


@dataclass(frozen=True)
class PeerAggregate:
    """Per-indicator averages over a peer group."""

    indicators: Mapping[str, IndicatorAggregate]

    def average(self, name: str) -> float:
        return self.indicators[name].average


def _auto_trim_candidate(
    values: Mapping[str, float], k: float
) -> str | None:
    """Country whose value is the single extreme outlier, if one qualifies.

    Extremeness is measured against the median of the other countries; the
    candidate is dropped when the magnitudes differ by more than a factor of
    k in either direction.
    """
    if len(values) < 3:
        return None
    candidate, distance, cand_med = None, -1.0, 0.0
    for country, value in values.items():
        rest = [v for c, v in values.items() if c != country]
        med = statistics.median(rest)
        if abs(value - med) > distance:
            candidate, distance, cand_med = country, abs(value - med), med
    value = values[candidate]
    if value == 0 or cand_med == 0:
        return None
    ratio = abs(value) / abs(cand_med)
    if ratio > k or ratio < 1.0 / k:
        return candidate
    return None


def peer_aggregate(
    peers: Sequence[PeerIndicatorRecord],
    exclusions: Mapping[str, Sequence[str]] | None = None,
    auto_trim_k: float | None = None,
) -> PeerAggregate:
    """Arithmetic mean per indicator over included peers.

    ``exclusions`` maps an indicator name to countries left out of that
    indicator's mean. When ``auto_trim_k`` is set, indicators without an
    explicit mask drop their single most extreme value if it differs from the
    median of the rest by more than a factor of k. At least one peer must
    survive per indicator.
    """
    if not peers:
        raise ValidationError("peer table is empty")
    exclusions = exclusions or {}
    for name in exclusions:
        if name not in PEER_INDICATORS:
            raise ValidationError(f"unknown indicator in exclusions: {name!r}")
    by_country = {p.country: p for p in peers}
    if len(by_country) != len(peers):
        raise ValidationError("duplicate country in peer table")

    aggregates: dict[str, IndicatorAggregate] = {}
    for name in PEER_INDICATORS:
        excluded = set(exclusions.get(name, ()))
        unknown = excluded - by_country.keys()
        if unknown:
            raise ValidationError(
                f"exclusion for {name!r} names unknown countries: {sorted(unknown)}"
            )
        if name not in exclusions and auto_trim_k is not None:
            values = {p.country: p.indicator(name) for p in peers}
            candidate = _auto_trim_candidate(values, auto_trim_k)
            if candidate is not None:
                excluded = {candidate}
        included = [p for p in peers if p.country not in excluded]
        if not included:
            raise InfeasibleError(f"every peer excluded for indicator {name!r}")
        average = sum(p.indicator(name) for p in included) / len(included)
        aggregates[name] = IndicatorAggregate(
            average=average,
            included=frozenset(p.country for p in included),
            excluded=frozenset(excluded),
        )
    return PeerAggregate(indicators=aggregates)


@dataclass(frozen=True)
class IndicatorGap:
    """Subject-vs-peer comparison for one indicator."""

    subject_value: float
    peer_average: float
    higher_is_better: bool
    direction: GapDirection


def indicator_gaps(
    subject: PeerIndicatorRecord, agg: PeerAggregate
) -> dict[str, IndicatorGap]:
    """Classify each indicator as better or worse than the peer average.

    Ties classify as better: meeting the peer average is treated as
    sufficient.
    """
    gaps: dict[str, IndicatorGap] = {}
    for name in PEER_INDICATORS:
        subject_value = subject.indicator(name)
        average = agg.average(name)
        hib = HIGHER_IS_BETTER[name]
        meets = subject_value >= average if hib else subject_value <= average
        gaps[name] = IndicatorGap(
            subject_value=subject_value,
            peer_average=average,
            higher_is_better=hib,
            direction=GapDirection.BETTER if meets else GapDirection.WORSE,
        )
    return gaps


def per_capita_investment(
    current_pc: float, target_pc: float, population_millions: float
) -> float:
    """Investment (billions USD) to lift GDP per capita from current to target.

    Per-capita values are in thousands of USD, population in millions, so the
    product lands directly in billions.
    """
    if population_millions <= 0:
        raise ValidationError(f"population must be > 0, got {population_millions}")
    if target_pc < current_pc:
        raise ValidationError(
            f"target {target_pc} below current {current_pc}: no investment defined"
        )
    return (target_pc - current_pc) * population_millions


def total_required_investment(components: Mapping[str, float]) -> float:
    """Exact sum of the named investment components."""
    if not components:
        raise ValidationError("no investment components supplied")
    for name, value in components.items():
        if value < 0:
            raise ValidationError(f"negative investment component {name!r}: {value}")
    return sum(components.values())


def years_to_close(
    eva_path: Sequence[float], discount_rate: float, required: float
) -> int | None:
    """Smallest horizon at which cumulative discounted EVA covers the requirement.

    Returns None when the requirement is unreachable within the path.
    """
    if required < 0:
        raise ValidationError(f"required investment must be >= 0, got {required}")
    for k, total in enumerate(cumulative_pv(eva_path, discount_rate), start=1):
        if total >= required:
            return k
    return None


@dataclass(frozen=True)
class GapConfig:
    """Analyst inputs for the gap report: exclusions, components, auxiliary figures."""

    exclusions: dict[str, tuple[str, ...]] = field(default_factory=dict)
    auto_trim_k: float | None = None
    investment_components: dict[str, float] = field(default_factory=dict)
    nominal_gdp_requirement: float | None = None
    population_millions: float | None = None


def load_gap_config(config_text: str) -> GapConfig:
    """Load a GapConfig from its JSON document."""
    try:
        doc = json.loads(config_text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise ParseError("gap config must be a JSON object")
    exclusions_doc = doc.get("exclusions", {})
    if not isinstance(exclusions_doc, dict):
        raise ParseError("'exclusions' must be an object")
    exclusions = {}
    for name, countries in exclusions_doc.items():
        if not isinstance(countries, list):
            raise ParseError(f"exclusions for {name!r} must be a list of countries")
        exclusions[str(name)] = tuple(str(c) for c in countries)
    components_doc = doc.get("investment_components", {})
    if not isinstance(components_doc, dict):
        raise ParseError("'investment_components' must be an object")
    components = {str(k): float(v) for k, v in components_doc.items()}
    auto_k = doc.get("auto_trim_k")
    nominal_req = doc.get("nominal_gdp_requirement")
    population = doc.get("population_millions")
    return GapConfig(
        exclusions=exclusions,
        auto_trim_k=None if auto_k is None else float(auto_k),
        investment_components=components,
        nominal_gdp_requirement=None if nominal_req is None else float(nominal_req),
        population_millions=None if population is None else float(population),
    )


@dataclass(frozen=True)
class RatingGapReport:
    """Full gap analysis: per-indicator gaps, investments, and years-to-close.

    years_to_close is None when no projection inputs were supplied, and the
    string "unreachable within horizon" is rendered by the CLI when the
    requirement exceeds the whole discounted path.
    """

    subject_country: str
    aggregate: PeerAggregate
    gaps: dict[str, IndicatorGap]
    investment_components: dict[str, float]
    total_required_investment: float
    nominal_gdp_requirement: float | None
    years_to_close: int | None
    years_evaluated: int | None


def rating_gap_report(
    subject: PeerIndicatorRecord,
    peers: Sequence[PeerIndicatorRecord],
    config: GapConfig,
    eva_path: Sequence[float] | None = None,
    discount_rate: float | None = None,
) -> RatingGapReport:
    """Assemble the complete gap report for a subject country.

    Supplying an EVA path and discount rate adds the years-to-close estimate;
    without them the report stops at the investment roll-up.
    """
    agg = peer_aggregate(peers, exclusions=config.exclusions,
                         auto_trim_k=config.auto_trim_k)
    gaps = indicator_gaps(subject, agg)
    if not config.investment_components:
        raise ValidationError("gap config has no investment components")
    total = total_required_investment(config.investment_components)
    years = None
    evaluated = None
    if eva_path is not None:
        if discount_rate is None:
            raise ValidationError("discount rate required alongside an EVA path")
        years = years_to_close(eva_path, discount_rate, total)
        evaluated = len(eva_path)
    return RatingGapReport(
        subject_country=subject.country,
        aggregate=agg,
        gaps=gaps,
        investment_components=dict(config.investment_components),
        total_required_investment=total,
        nominal_gdp_requirement=config.nominal_gdp_requirement,
        years_to_close=years,
        years_evaluated=evaluated,
    )
