"""Forward projection of GDP, R&D share, and EVA plus present-value discounting.

Projection periods are integer offsets 1..horizon from a declared base year,
so a horizon-long wealth path is a series whose "years" are those offsets.
Per-period GDP growth is elasticity * rd_growth, compounded.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

from .errors import ParseError, ValidationError
from .eva import EvaRecord, EvaSeries, eva_record
from .indicators import CountryEconomy, IndicatorSeries, Unit


@dataclass(frozen=True)
class ProjectionConfig:
    """Scenario inputs for a multi-year projection.

    discount_rate may be None, in which case the economy's central-bank rate
    is used. ai_share_target is carried as an annotation only; it enters no
    equation.
    """

    base_year: int
    horizon: int
    rd_growth: float
    elasticity: float
    base_rd_share: float
    total_wealth_path: IndicatorSeries
    discount_rate: float | None = None
    ai_share_target: float | None = None

    def __post_init__(self):
        if self.horizon < 1:
            raise ValidationError(f"horizon must be >= 1, got {self.horizon}")
        if self.rd_growth <= -1.0:
            raise ValidationError(f"rd_growth must exceed -1, got {self.rd_growth}")
        if self.discount_rate is not None and not 0.0 <= self.discount_rate < 1.0:
            raise ValidationError(f"discount_rate {self.discount_rate} outside [0, 1)")
        if not 0.0 <= self.base_rd_share < 1.0:
            raise ValidationError(f"base_rd_share {self.base_rd_share} outside [0, 1)")
        expected = tuple(range(1, self.horizon + 1))
        if self.total_wealth_path.years != expected:
            raise ValidationError(
                "total_wealth_path must cover exactly offsets "
                f"1..{self.horizon}, got {self.total_wealth_path.years}"
            )

    @property
    def growth_factor(self) -> float:
        """Per-period GDP growth multiplier, 1 + elasticity * rd_growth."""
        return 1.0 + self.elasticity * self.rd_growth


def load_projection_config(config_text: str) -> ProjectionConfig:
    """Load a ProjectionConfig from its JSON document."""
    try:
        doc = json.loads(config_text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise ParseError("projection config must be a JSON object")
    for key in ("base_year", "horizon", "rd_growth", "elasticity", "base_rd_share",
                "total_wealth_path"):
        if key not in doc:
            raise ParseError(f"projection config missing key {key!r}")
    path_doc = doc["total_wealth_path"]
    if not isinstance(path_doc, dict) or not path_doc:
        raise ParseError("total_wealth_path must be a non-empty offset->value mapping")
    try:
        points = sorted((int(k), float(v)) for k, v in path_doc.items())
    except (TypeError, ValueError) as exc:
        raise ParseError(f"total_wealth_path: malformed mapping ({exc})") from None
    wealth = IndicatorSeries(name="total_wealth_path", unit=Unit.BILLIONS_USD,
                             points=tuple(points))
    discount = doc.get("discount_rate")
    ai_target = doc.get("ai_share_target")
    return ProjectionConfig(
        base_year=int(doc["base_year"]),
        horizon=int(doc["horizon"]),
        rd_growth=float(doc["rd_growth"]),
        elasticity=float(doc["elasticity"]),
        base_rd_share=float(doc["base_rd_share"]),
        total_wealth_path=wealth,
        discount_rate=None if discount is None else float(discount),
        ai_share_target=None if ai_target is None else float(ai_target),
    )


def project_gdp(base_gdp: float, cfg: ProjectionConfig) -> IndicatorSeries:
    """GDP path gdp_t = base_gdp * (1 + elasticity*rd_growth)^t for t = 1..horizon."""
    if base_gdp <= 0:
        raise ValidationError(f"base_gdp must be > 0, got {base_gdp}")
    factor = cfg.growth_factor
    points = []
    level = base_gdp
    for t in range(1, cfg.horizon + 1):
        level *= factor
        points.append((t, level))
    return IndicatorSeries(name="gdp_projection", unit=Unit.BILLIONS_USD,
                           points=tuple(points))


def project_rd_share(cfg: ProjectionConfig, gdp_path: IndicatorSeries) -> IndicatorSeries:
    """R&D share path under the ratio convention.

    R&D spending compounds at rd_growth off a base level of base_rd_share
    times the base-year GDP, and each period's share divides that spending by
    the supplied GDP path: share_t = base_rd_share * base_gdp * (1+rd_growth)^t
    / gdp_t. The base-year GDP is recovered from the path's first step.
    """
    expected = tuple(range(1, cfg.horizon + 1))
    if gdp_path.years != expected:
        raise ValidationError(
            f"gdp_path must cover exactly offsets 1..{cfg.horizon}, got {gdp_path.years}"
        )
    for t, gdp_t in gdp_path.points:
        if gdp_t == 0:
            raise ValidationError(f"gdp is zero at offset {t}: share undefined")
    if cfg.growth_factor == 0:
        raise ValidationError("growth factor is zero: base GDP cannot be recovered")
    base_gdp = gdp_path.value_at(1) / cfg.growth_factor
    points = tuple(
        (t, cfg.base_rd_share * base_gdp * (1.0 + cfg.rd_growth) ** t / gdp_path.value_at(t))
        for t in range(1, cfg.horizon + 1)
    )
    return IndicatorSeries(name="rd_share_projection", unit=Unit.FRACTION, points=points)


def project_eva(econ: CountryEconomy, cfg: ProjectionConfig) -> EvaSeries:
    """Projected EVA records over the horizon.

    Base GDP is the last historical GDP of the economy; total wealth comes
    from the configured path; the capital charge uses the economy's
    central-bank rate. Record years are the offsets 1..horizon.
    """
    base_gdp = econ.gdp.values[-1]
    gdp_path = project_gdp(base_gdp, cfg)
    records: list[EvaRecord] = []
    for t in range(1, cfg.horizon + 1):
        records.append(
            eva_record(
                year=t,
                gdp=gdp_path.value_at(t),
                atr=econ.aggregate_tax_rate,
                tw=cfg.total_wealth_path.value_at(t),
                cbr=econ.central_bank_rate,
            )
        )
    return EvaSeries(records=tuple(records))


def _check_rate(rate: float) -> None:
    if not 0.0 <= rate < 1.0:
        raise ValidationError(f"discount rate {rate} outside [0, 1)")


def present_value(values: Sequence[float], rate: float) -> float:
    """End-of-period discounted sum: sum of values[t]/(1+rate)^t for t = 1..n."""
    _check_rate(rate)
    total = 0.0
    for t, value in enumerate(values, start=1):
        total += value / (1.0 + rate) ** t
    return total


def cumulative_pv(values: Sequence[float], rate: float) -> list[float]:
    """Running discounted sums; element k is the present value of the first k values."""
    _check_rate(rate)
    out: list[float] = []
    total = 0.0
    for t, value in enumerate(values, start=1):
        total += value / (1.0 + rate) ** t
        out.append(total)
    return out
