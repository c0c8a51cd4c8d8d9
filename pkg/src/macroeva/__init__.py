"""Deterministic country-level EVA analytics.

The toolkit covers the full pipeline: indicator ingestion, log-log elasticity
regression with significance testing, country EVA accounting, multi-year
projection with discounting, and credit-rating peer-gap analysis.
"""
from .errors import (
    CollinearInputError,
    InfeasibleError,
    MacroEvaError,
    ParseError,
    ValidationError,
)
from .eva import (
    EvaRecord,
    EvaSeries,
    eva_series,
    eva_value,
    implied_cbr,
    nopat,
    total_wealth,
)
from .indicators import (
    CountryEconomy,
    IndicatorSeries,
    PeerIndicatorRecord,
    Unit,
    load_economy,
    parse_peer_table,
    parse_series,
    serialize_series,
)
from .projection import (
    ProjectionConfig,
    cumulative_pv,
    load_projection_config,
    present_value,
    project_eva,
    project_gdp,
    project_rd_share,
)
from .ratinggap import (
    GapConfig,
    GapDirection,
    PeerAggregate,
    RatingGapReport,
    indicator_gaps,
    load_gap_config,
    peer_aggregate,
    per_capita_investment,
    rating_gap_report,
    total_required_investment,
    years_to_close,
)
from .regression import (
    RegressionResult,
    estimate_elasticity,
    fit_ols,
    log_transform,
    p_value,
    pearson_r,
    regularized_incomplete_beta,
    student_t_cdf,
    student_t_tail,
)

__version__ = "0.1.0"

__all__ = [
    "CollinearInputError",
    "CountryEconomy",
    "EvaRecord",
    "EvaSeries",
    "GapConfig",
    "GapDirection",
    "IndicatorSeries",
    "InfeasibleError",
    "MacroEvaError",
    "ParseError",
    "PeerAggregate",
    "PeerIndicatorRecord",
    "ProjectionConfig",
    "RatingGapReport",
    "RegressionResult",
    "Unit",
    "ValidationError",
    "cumulative_pv",
    "estimate_elasticity",
    "eva_series",
    "eva_value",
    "fit_ols",
    "implied_cbr",
    "indicator_gaps",
    "load_economy",
    "load_gap_config",
    "load_projection_config",
    "log_transform",
    "nopat",
    "p_value",
    "parse_peer_table",
    "parse_series",
    "pearson_r",
    "peer_aggregate",
    "per_capita_investment",
    "present_value",
    "project_eva",
    "project_gdp",
    "project_rd_share",
    "rating_gap_report",
    "regularized_incomplete_beta",
    "serialize_series",
    "student_t_cdf",
    "student_t_tail",
    "total_required_investment",
    "total_wealth",
    "years_to_close",
]
