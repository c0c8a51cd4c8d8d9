"""Indicator data model and CSV/JSON ingestion.

Everything here is immutable after construction and safe to share across
threads. Parsing is a pure function of the input text: the same bytes always
produce the same objects or the same classified error.
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from enum import Enum
from pathlib import Path

from .errors import ParseError, ValidationError

SERIES_HEADER = ["year", "value"]

PEER_COLUMNS = [
    "country",
    "rating",
    "nominal_gdp",
    "gdp_per_capita",
    "real_gdp_growth",
    "current_account_balance_gdp",
    "gross_ext_financing_needs",
    "fiscal_balance_gdp",
    "debt_gdp",
    "net_debt_gdp",
    "cpi_growth",
]

# The nine numeric peer indicators (PEER_COLUMNS minus identity columns).
PEER_INDICATORS = PEER_COLUMNS[2:]

ECONOMY_SERIES_KEYS = [
    "gdp",
    "produced_capital",
    "human_capital",
    "natural_capital",
    "net_foreign_assets",
]


class Unit(str, Enum):
    """Unit of an indicator series; always declared, never inferred."""

    BILLIONS_USD = "billions_usd"
    PERCENT = "percent"
    THOUSANDS_USD = "thousands_usd"
    FRACTION = "fraction"


def parse_number(text: str) -> float:
    """Parse a numeric cell, accepting accounting-style negatives like "(15.29)".

    Raises ValueError for empty or non-numeric text and for non-finite values.
    """
    cell = text.strip()
    if not cell:
        raise ValueError("empty cell")
    negative = cell.startswith("(") and cell.endswith(")")
    if negative:
        cell = cell[1:-1].strip()
    value = float(cell)
    if negative:
        value = -value
    if not math.isfinite(value):
        raise ValueError(f"non-finite value {text!r}")
    return value


@dataclass(frozen=True)
class IndicatorSeries:
    """A year-indexed sequence of one economic quantity with declared units.

    Years are strictly increasing and every value is finite; both are enforced
    at construction.
    """

    name: str
    unit: Unit
    points: tuple[tuple[int, float], ...]

    def __post_init__(self):
        object.__setattr__(self, "points", tuple((int(y), float(v)) for y, v in self.points))
        last_year = None
        for year, value in self.points:
            if last_year is not None and year <= last_year:
                raise ValidationError(
                    f"series {self.name!r}: years must be strictly increasing "
                    f"(saw {year} after {last_year})"
                )
            if not math.isfinite(value):
                raise ValidationError(f"series {self.name!r}: non-finite value at year {year}")
            last_year = year

    @property
    def years(self) -> tuple[int, ...]:
        return tuple(year for year, _ in self.points)

    @property
    def values(self) -> tuple[float, ...]:
        return tuple(value for _, value in self.points)

    def __len__(self) -> int:
        return len(self.points)

    def value_at(self, year: int) -> float:
        for y, v in self.points:
            if y == year:
                return v
        raise KeyError(f"series {self.name!r} has no year {year}")

    def is_contiguous(self) -> bool:
        years = self.years
        return all(b - a == 1 for a, b in zip(years, years[1:]))


def parse_series(csv_text: str, expected_unit: Unit | str, name: str = "series") -> IndicatorSeries:
    """Parse a ``year,value`` CSV into an IndicatorSeries.

    Rows are sorted by year; duplicate years, malformed rows (reported with
    their line number), non-finite values, and an empty body are errors.
    """
    unit = Unit(expected_unit)
    reader = csv.reader(io.StringIO(csv_text))
    try:
        header = next(reader)
    except StopIteration:
        raise ParseError("empty input: expected a 'year,value' header") from None
    if [h.strip().lower() for h in header] != SERIES_HEADER:
        raise ParseError(f"expected header 'year,value', got {','.join(header)!r}", line=1)

    points: list[tuple[int, float]] = []
    seen: set[int] = set()
    for lineno, row in enumerate(reader, start=2):
        if not row or (len(row) == 1 and not row[0].strip()):
            continue  # ignore blank lines
        if len(row) != 2:
            raise ParseError(f"expected 2 fields, got {len(row)}", line=lineno)
        try:
            year = int(row[0].strip())
        except ValueError:
            raise ParseError(f"malformed year {row[0]!r}", line=lineno) from None
        try:
            value = parse_number(row[1])
        except ValueError as exc:
            raise ParseError(f"malformed value {row[1]!r} ({exc})", line=lineno) from None
        if year in seen:
            raise ParseError(f"duplicate year {year}", line=lineno)
        seen.add(year)
        points.append((year, value))

    if not points:
        raise ParseError("empty body: no data rows after the header")
    points.sort()
    return IndicatorSeries(name=name, unit=unit, points=tuple(points))


def serialize_series(series: IndicatorSeries) -> str:
    """Render a series back to ``year,value`` CSV. Round-trips exactly via repr."""
    lines = ["year,value"]
    for year, value in series.points:
        lines.append(f"{year},{value!r}")
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class CountryEconomy:
    """GDP, tax and central-bank rates, and the four wealth components of one country.

    All five series must cover an identical contiguous year range; GDP must be
    strictly positive and only net foreign assets may be negative.
    """

    country: str
    gdp: IndicatorSeries
    aggregate_tax_rate: float
    central_bank_rate: float
    produced_capital: IndicatorSeries
    human_capital: IndicatorSeries
    natural_capital: IndicatorSeries
    net_foreign_assets: IndicatorSeries

    def __post_init__(self):
        if not 0.0 <= self.aggregate_tax_rate < 1.0:
            raise ValidationError(
                f"aggregate_tax_rate {self.aggregate_tax_rate} outside [0, 1)"
            )
        if not 0.0 <= self.central_bank_rate < 1.0:
            raise ValidationError(
                f"central_bank_rate {self.central_bank_rate} outside [0, 1)"
            )
        reference = self.gdp.years
        for series in self.all_series():
            if series.years != reference:
                raise ValidationError(
                    f"year-range mismatch: {series.name!r} covers "
                    f"{series.years[0]}-{series.years[-1]} but gdp covers "
                    f"{reference[0]}-{reference[-1]}"
                )
        if not self.gdp.is_contiguous():
            raise ValidationError("gdp years are not contiguous")
        for year, value in self.gdp.points:
            if value <= 0:
                raise ValidationError(f"gdp must be strictly positive, got {value} in {year}")
        for series in (self.produced_capital, self.human_capital, self.natural_capital):
            for year, value in series.points:
                if value < 0:
                    raise ValidationError(
                        f"{series.name!r} may not be negative, got {value} in {year}"
                    )

    def all_series(self) -> tuple[IndicatorSeries, ...]:
        return (
            self.gdp,
            self.produced_capital,
            self.human_capital,
            self.natural_capital,
            self.net_foreign_assets,
        )

    @property
    def years(self) -> tuple[int, ...]:
        return self.gdp.years


def _series_from_config(
    key: str, source, base_dir: Path | None, unit: Unit
) -> IndicatorSeries:
    if isinstance(source, dict):
        try:
            points = sorted((int(y), float(v)) for y, v in source.items())
        except (TypeError, ValueError) as exc:
            raise ParseError(f"series {key!r}: malformed inline mapping ({exc})") from None
        if not points:
            raise ParseError(f"series {key!r}: inline mapping is empty")
        return IndicatorSeries(name=key, unit=unit, points=tuple(points))
    if isinstance(source, str):
        path = Path(source)
        if not path.is_absolute():
            path = (base_dir or Path.cwd()) / path
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as exc:
            raise ParseError(f"series {key!r}: cannot read {path} ({exc})") from None
        return parse_series(text, unit, name=key)
    raise ParseError(f"series {key!r}: expected a year->value mapping or a file path")


def load_economy(config_text: str, base_dir: str | Path | None = None) -> CountryEconomy:
    """Load and validate a CountryEconomy from a JSON configuration document.

    Each series is either an inline year->value mapping or a path to a
    ``year,value`` CSV, resolved relative to ``base_dir`` (the config file's
    directory when loaded through the CLI).
    """
    try:
        doc = json.loads(config_text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise ParseError("economy config must be a JSON object")

    for key in ("country", "aggregate_tax_rate", "central_bank_rate", "series"):
        if key not in doc:
            raise ParseError(f"economy config missing key {key!r}")
    series_cfg = doc["series"]
    if not isinstance(series_cfg, dict):
        raise ParseError("'series' must be an object")
    missing = [k for k in ECONOMY_SERIES_KEYS if k not in series_cfg]
    if missing:
        raise ParseError(f"economy config missing series: {', '.join(missing)}")

    base = Path(base_dir) if base_dir is not None else None
    loaded = {
        key: _series_from_config(key, series_cfg[key], base, Unit.BILLIONS_USD)
        for key in ECONOMY_SERIES_KEYS
    }
    return CountryEconomy(
        country=str(doc["country"]),
        gdp=loaded["gdp"],
        aggregate_tax_rate=float(doc["aggregate_tax_rate"]),
        central_bank_rate=float(doc["central_bank_rate"]),
        produced_capital=loaded["produced_capital"],
        human_capital=loaded["human_capital"],
        natural_capital=loaded["natural_capital"],
        net_foreign_assets=loaded["net_foreign_assets"],
    )


@dataclass(frozen=True)
class PeerIndicatorRecord:
    """One country's row of the nine rating-relevant indicators."""

    country: str
    rating: str
    nominal_gdp: float  # billions USD
    gdp_per_capita: float  # thousands USD
    real_gdp_growth: float  # percent
    current_account_balance_gdp: float
    gross_ext_financing_needs: float
    fiscal_balance_gdp: float
    debt_gdp: float
    net_debt_gdp: float
    cpi_growth: float

    def __post_init__(self):
        if self.nominal_gdp <= 0:
            raise ValidationError(f"{self.country}: nominal_gdp must be > 0")
        if self.gdp_per_capita <= 0:
            raise ValidationError(f"{self.country}: gdp_per_capita must be > 0")
        for name in PEER_INDICATORS:
            if not math.isfinite(getattr(self, name)):
                raise ValidationError(f"{self.country}: non-finite {name}")

    def indicator(self, name: str) -> float:
        if name not in PEER_INDICATORS:
            raise KeyError(f"unknown indicator {name!r}")
        return getattr(self, name)


def parse_peer_table(csv_text: str) -> tuple[PeerIndicatorRecord, ...]:
    """Parse a peer-country indicator CSV into records, one per row.

    Columns are keyed by header name, not position. A missing column, a blank
    cell, or a non-numeric cell is an error.
    """
    reader = csv.DictReader(io.StringIO(csv_text))
    if reader.fieldnames is None:
        raise ParseError("empty input: expected a peer-table header")
    fields = [f.strip() for f in reader.fieldnames]
    missing = [c for c in PEER_COLUMNS if c not in fields]
    if missing:
        raise ParseError(f"missing column(s): {', '.join(missing)}", line=1)

    records: list[PeerIndicatorRecord] = []
    for lineno, row in enumerate(reader, start=2):
        cleaned = {(k.strip() if k else k): v for k, v in row.items()}
        country = (cleaned.get("country") or "").strip()
        if not country:
            raise ParseError("missing cell in column 'country'", line=lineno)
        values = {}
        for col in PEER_INDICATORS:
            cell = cleaned.get(col)
            if cell is None or not cell.strip():
                raise ParseError(f"missing cell in column {col!r}", line=lineno)
            try:
                values[col] = parse_number(cell)
            except ValueError:
                raise ParseError(f"non-numeric cell {cell!r} in column {col!r}", line=lineno) from None
        records.append(
            PeerIndicatorRecord(country=country, rating=(cleaned.get("rating") or "").strip(), **values)
        )
    if not records:
        raise ParseError("empty body: no peer rows after the header")
    return tuple(records)
