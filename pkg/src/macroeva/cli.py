"""Command-line surface: regress | eva | project | rating-gap | report.

Every command builds one ReportDocument and renders it as aligned text or,
with --json, as the machine document. Exit codes: 0 success, 2 input or
config error, 3 analytical infeasibility.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .errors import InfeasibleError, MacroEvaError, ValidationError
from .eva import EvaSeries, eva_series
from .indicators import (
    PEER_INDICATORS,
    CountryEconomy,
    PeerIndicatorRecord,
    Unit,
    load_economy,
    parse_peer_table,
    parse_series,
)
from .projection import (
    ProjectionConfig,
    load_projection_config,
    present_value,
    project_gdp,
    project_rd_share,
)
from .projection import project_eva as _project_eva
from .ratinggap import (
    GapConfig,
    RatingGapReport,
    load_gap_config,
    per_capita_investment,
    rating_gap_report,
)
from .regression import estimate_elasticity
from .report import (
    EntriesSection,
    Num,
    ReportDocument,
    Section,
    TableSection,
    digest_inputs,
    render_json,
    render_text,
)

UNREACHABLE = "unreachable within horizon"


def _read(path: Path) -> str:
    try:
        return path.read_text(encoding="utf-8")
    except OSError as exc:
        raise MacroEvaError(f"cannot read {path}: {exc}") from None


def _load_economy(path: Path) -> CountryEconomy:
    return load_economy(_read(path), base_dir=path.parent)


def _regression_sections(rd_path: Path, gdp_path: Path) -> list[Section]:
    rd = parse_series(_read(rd_path), Unit.BILLIONS_USD, name="rd")
    gdp = parse_series(_read(gdp_path), Unit.BILLIONS_USD, name="gdp")
    result = estimate_elasticity(rd, gdp)
    entries = {
        "n": result.n,
        "slope": Num(result.slope, "rate"),
        "intercept": Num(result.intercept, "rate"),
        "pearson_r": Num(result.pearson_r, "rate"),
        "r_squared": Num(result.r_squared, "rate"),
        "t_statistic": Num(result.t_statistic, "rate"),
        "p_value": Num(result.p_value, "pvalue"),
        "x_mean": Num(result.x_mean, "rate"),
        "y_mean": Num(result.y_mean, "rate"),
    }
    return [EntriesSection("Elasticity regression", entries)]


def _eva_grid(series: EvaSeries, label_of) -> TableSection:
    columns = ["indicator"] + [label_of(r) for r in series.records]
    def row(name, getter):
        return [name] + [Num(getter(r), "billions") for r in series.records]
    rows = [
        row("gdp", lambda r: r.gdp),
        row("nopat", lambda r: r.nopat),
        row("total_wealth", lambda r: r.total_wealth),
        row("capital_charge", lambda r: r.capital_charge),
        row("eva", lambda r: r.eva),
    ]
    return TableSection("EVA by period", columns, rows)


def _eva_sections(econ: CountryEconomy) -> list[Section]:
    series = eva_series(econ)
    columns = ["indicator"] + [str(y) for y in econ.years]
    def series_row(s):
        return [s.name] + [Num(v, "billions") for v in s.values]
    grid = TableSection(
        "Economy indicators by year",
        columns,
        [
            series_row(econ.gdp),
            ["nopat"] + [Num(r.nopat, "billions") for r in series.records],
            series_row(econ.produced_capital),
            series_row(econ.human_capital),
            series_row(econ.natural_capital),
            series_row(econ.net_foreign_assets),
            ["total_wealth"] + [Num(r.total_wealth, "billions") for r in series.records],
            ["capital_charge"] + [Num(r.capital_charge, "billions") for r in series.records],
            ["eva"] + [Num(r.eva, "billions") for r in series.records],
        ],
    )
    summary = EntriesSection(
        "EVA summary",
        {
            "country": econ.country,
            "aggregate_tax_rate": Num(econ.aggregate_tax_rate, "rate"),
            "central_bank_rate": Num(econ.central_bank_rate, "rate"),
            "mean_eva": Num(series.mean_eva, "billions"),
            "min_eva": Num(series.min_eva, "billions"),
            "min_year": series.min_year,
            "max_eva": Num(series.max_eva, "billions"),
            "max_year": series.max_year,
        },
    )
    return [grid, summary]


def _projection_sections(
    econ: CountryEconomy, cfg: ProjectionConfig
) -> tuple[list[Section], list[float], float]:
    projected = _project_eva(econ, cfg)
    base_gdp = econ.gdp.values[-1]
    gdp_path = project_gdp(base_gdp, cfg)
    shares = project_rd_share(cfg, gdp_path)
    rate = cfg.discount_rate if cfg.discount_rate is not None else econ.central_bank_rate
    eva_path = list(projected.evas)
    pv = present_value(eva_path, rate)

    grid = _eva_grid(projected, lambda r: str(r.year))
    grid.title = "Projected EVA by offset"
    share_row = ["rd_share"] + [Num(v, "rate") for v in shares.values]
    share_table = TableSection(
        "Projected R&D share of GDP",
        ["indicator"] + [str(t) for t in shares.years],
        [share_row],
    )
    entries = {
        "base_year": cfg.base_year,
        "base_gdp": Num(base_gdp, "billions"),
        "horizon": cfg.horizon,
        "rd_growth": Num(cfg.rd_growth, "rate"),
        "elasticity": Num(cfg.elasticity, "rate"),
        "base_rd_share": Num(cfg.base_rd_share, "rate"),
        "discount_rate": Num(rate, "rate"),
        "mean_eva": Num(projected.mean_eva, "billions"),
        "min_eva": Num(projected.min_eva, "billions"),
        "min_offset": projected.min_year,
        "max_eva": Num(projected.max_eva, "billions"),
        "max_offset": projected.max_year,
        "pv_eva": Num(pv, "billions"),
    }
    if cfg.ai_share_target is not None:
        entries["ai_share_target"] = Num(cfg.ai_share_target, "rate")
    summary = EntriesSection("Projection summary", entries)
    return [grid, share_table, summary], eva_path, rate


def _load_subject(path: Path) -> PeerIndicatorRecord:
    rows = parse_peer_table(_read(path))
    if len(rows) != 1:
        raise ValidationError(f"subject file must contain exactly one row, got {len(rows)}")
    return rows[0]


def _gap_sections(
    subject: PeerIndicatorRecord,
    peers: tuple[PeerIndicatorRecord, ...],
    config: GapConfig,
    eva_path: list[float] | None,
    discount_rate: float | None,
) -> tuple[list[Section], list[str], RatingGapReport]:
    gap = rating_gap_report(subject, peers, config, eva_path=eva_path,
                            discount_rate=discount_rate)
    warnings = []
    rows = []
    for name in PEER_INDICATORS:
        agg = gap.aggregate.indicators[name]
        info = gap.gaps[name]
        kind = "billions" if name == "nominal_gdp" else "rate"
        excluded = ", ".join(sorted(agg.excluded)) if agg.excluded else "-"
        if agg.excluded:
            warnings.append(
                f"exclusion applied: {name} excludes {', '.join(sorted(agg.excluded))}"
            )
        rows.append(
            [
                name,
                Num(info.subject_value, kind),
                Num(info.peer_average, kind),
                info.direction.value,
                excluded,
            ]
        )
    comparison = TableSection(
        f"Peer comparison: {gap.subject_country} vs {len(peers)} peers",
        ["indicator", "subject", "peer_average", "direction", "excluded"],
        rows,
    )
    component_rows = [
        [name, Num(value, "billions")]
        for name, value in gap.investment_components.items()
    ]
    components = TableSection(
        "Investment components", ["component", "billions_usd"], component_rows
    )
    entries: dict = {
        "total_required_investment": Num(gap.total_required_investment, "billions"),
    }
    if gap.nominal_gdp_requirement is not None:
        entries["nominal_gdp_requirement"] = Num(gap.nominal_gdp_requirement, "billions")
        entries["nominal_gdp_requirement_note"] = "informational, excluded from total"
    if config.population_millions is not None:
        target = gap.aggregate.average("gdp_per_capita")
        if target >= subject.gdp_per_capita:
            entries["per_capita_investment_check"] = Num(
                per_capita_investment(subject.gdp_per_capita, target,
                                      config.population_millions),
                "billions",
            )
    summary = EntriesSection("Investment summary", entries)
    sections: list[Section] = [comparison, components, summary]
    if eva_path is not None and discount_rate is not None:
        close_entries: dict = {
            "discount_rate": Num(discount_rate, "rate"),
            "required": Num(gap.total_required_investment, "billions"),
            "pv_total": Num(present_value(eva_path, discount_rate), "billions"),
            "years_evaluated": gap.years_evaluated,
            "years_to_close": gap.years_to_close if gap.years_to_close is not None
            else UNREACHABLE,
        }
        sections.append(EntriesSection("Years to close", close_entries))
    return sections, warnings, gap


def cmd_regress(args) -> tuple[ReportDocument, int]:
    paths = [Path(args.rd), Path(args.gdp)]
    doc = ReportDocument(command="regress", inputs_digest=digest_inputs(paths))
    doc.sections = _regression_sections(*paths)
    return doc, 0


def cmd_eva(args) -> tuple[ReportDocument, int]:
    path = Path(args.economy)
    doc = ReportDocument(command="eva", inputs_digest=digest_inputs([path]))
    doc.sections = _eva_sections(_load_economy(path))
    return doc, 0


def cmd_project(args) -> tuple[ReportDocument, int]:
    economy_path, projection_path = Path(args.economy), Path(args.projection)
    doc = ReportDocument(
        command="project", inputs_digest=digest_inputs([economy_path, projection_path])
    )
    econ = _load_economy(economy_path)
    cfg = load_projection_config(_read(projection_path))
    sections, _, _ = _projection_sections(econ, cfg)
    doc.sections = sections
    return doc, 0


def cmd_rating_gap(args) -> tuple[ReportDocument, int]:
    paths = [Path(args.subject), Path(args.peers), Path(args.gap_config)]
    eva_path = None
    rate = None
    econ = cfg = None
    if args.economy or args.projection:
        if not (args.economy and args.projection):
            raise MacroEvaError("--economy and --projection must be supplied together")
        paths += [Path(args.economy), Path(args.projection)]
        econ = _load_economy(Path(args.economy))
        cfg = load_projection_config(_read(Path(args.projection)))
    doc = ReportDocument(command="rating-gap", inputs_digest=digest_inputs(paths))
    subject = _load_subject(Path(args.subject))
    peers = parse_peer_table(_read(Path(args.peers)))
    config = load_gap_config(_read(Path(args.gap_config)))
    if econ is not None and cfg is not None:
        projected = _project_eva(econ, cfg)
        eva_path = list(projected.evas)
        rate = cfg.discount_rate if cfg.discount_rate is not None else econ.central_bank_rate
    sections, warnings, gap = _gap_sections(subject, peers, config, eva_path, rate)
    doc.sections = sections
    doc.warnings = warnings
    code = 0
    if args.strict and eva_path is not None and gap.years_to_close is None:
        code = 3
    return doc, code


def cmd_report(args) -> tuple[ReportDocument, int]:
    paths = []
    if args.rd or args.gdp:
        if not (args.rd and args.gdp):
            raise MacroEvaError("--rd and --gdp must be supplied together")
        paths += [Path(args.rd), Path(args.gdp)]
    paths += [
        Path(args.economy),
        Path(args.projection),
        Path(args.subject),
        Path(args.peers),
        Path(args.gap_config),
    ]
    doc = ReportDocument(command="report", inputs_digest=digest_inputs(paths))
    sections: list[Section] = []
    warnings: list[str] = []
    if args.rd:
        sections += _regression_sections(Path(args.rd), Path(args.gdp))
    econ = _load_economy(Path(args.economy))
    cfg = load_projection_config(_read(Path(args.projection)))
    sections += _eva_sections(econ)
    proj_sections, eva_path, rate = _projection_sections(econ, cfg)
    sections += proj_sections
    subject = _load_subject(Path(args.subject))
    peers = parse_peer_table(_read(Path(args.peers)))
    config = load_gap_config(_read(Path(args.gap_config)))
    gap_sections, gap_warnings, gap = _gap_sections(subject, peers, config, eva_path, rate)
    sections += gap_sections
    warnings += gap_warnings
    doc.sections = sections
    doc.warnings = warnings
    code = 0
    if args.strict and gap.years_to_close is None:
        code = 3
    return doc, code


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="macroeva",
        description="Deterministic country-level EVA, elasticity, projection, "
        "and rating peer-gap reports.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit the JSON document")
    common.add_argument(
        "--precision", type=int, default=None,
        help="override the per-kind decimal precision in text output",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("regress", parents=[common],
                       help="log-log elasticity regression between two series")
    p.add_argument("--rd", required=True, help="year,value CSV of the explanatory series")
    p.add_argument("--gdp", required=True, help="year,value CSV of the response series")
    p.set_defaults(handler=cmd_regress)

    p = sub.add_parser("eva", parents=[common], help="per-year EVA grid for an economy")
    p.add_argument("--economy", required=True, help="economy config JSON")
    p.set_defaults(handler=cmd_eva)

    p = sub.add_parser("project", parents=[common],
                       help="project GDP, R&D share, and EVA over a horizon")
    p.add_argument("--economy", required=True, help="economy config JSON")
    p.add_argument("--projection", required=True, help="projection config JSON")
    p.set_defaults(handler=cmd_project)

    p = sub.add_parser("rating-gap", parents=[common],
                       help="peer-group gap analysis and investment roll-up")
    p.add_argument("--subject", required=True, help="single-row peer CSV for the subject")
    p.add_argument("--peers", required=True, help="peer-table CSV")
    p.add_argument("--gap-config", required=True, help="gap config JSON")
    p.add_argument("--economy", help="economy config JSON (enables years-to-close)")
    p.add_argument("--projection", help="projection config JSON (enables years-to-close)")
    p.add_argument("--strict", action="store_true",
                   help="exit 3 when the requirement is unreachable")
    p.set_defaults(handler=cmd_rating_gap)

    p = sub.add_parser("report", parents=[common],
                       help="full pipeline: EVA, projection, and rating gap")
    p.add_argument("--rd", help="year,value CSV (adds the regression section)")
    p.add_argument("--gdp", help="year,value CSV (adds the regression section)")
    p.add_argument("--economy", required=True, help="economy config JSON")
    p.add_argument("--projection", required=True, help="projection config JSON")
    p.add_argument("--subject", required=True, help="single-row peer CSV for the subject")
    p.add_argument("--peers", required=True, help="peer-table CSV")
    p.add_argument("--gap-config", required=True, help="gap config JSON")
    p.add_argument("--strict", action="store_true",
                   help="exit 3 when the requirement is unreachable")
    p.set_defaults(handler=cmd_report)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        doc, code = args.handler(args)
    except InfeasibleError as exc:
        print(f"macroeva {args.command}: infeasible: {exc}", file=sys.stderr)
        return 3
    except MacroEvaError as exc:
        print(f"macroeva {args.command}: error: {exc}", file=sys.stderr)
        return 2
    if args.json:
        sys.stdout.write(render_json(doc))
    else:
        sys.stdout.write(render_text(doc, precision=args.precision))
    if code == 3:
        print(f"macroeva {args.command}: requirement unreachable within horizon",
              file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
