"""Country Economic Value Added accounting.

EVA treats a country like a firm: NOPAT is GDP after the aggregate tax take,
the capital charge is total national wealth times the central-bank rate, and
EVA is what is left. All arithmetic stays in double precision; monetary
rounding happens only at report rendering.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ValidationError
from .indicators import CountryEconomy


def nopat(gdp: float, atr: float) -> float:
    """Net operating profit after taxes: gdp * (1 - atr)."""
    if not 0.0 <= atr < 1.0:
        raise ValidationError(f"aggregate tax rate {atr} outside [0, 1)")
    if gdp < 0:
        raise ValidationError(f"gdp must be non-negative, got {gdp}")
    return gdp * (1.0 - atr)


def total_wealth(pc: float, hc: float, nc: float, nfa: float) -> float:
    """Total wealth: produced + human + natural capital + net foreign assets."""
    result = pc + hc + nc + nfa
    if not math.isfinite(result):
        raise ValidationError("total wealth is not finite")
    return result


def eva_value(nopat_value: float, tw: float, cbr: float) -> float:
    """Economic value added: NOPAT minus the capital charge tw * cbr."""
    if not 0.0 <= cbr < 1.0:
        raise ValidationError(f"central bank rate {cbr} outside [0, 1)")
    return nopat_value - tw * cbr


def implied_cbr(gdp: float, atr: float, tw: float, eva: float) -> float:
    """Back-solve the capital-charge rate that reconciles a published EVA.

    Useful for recovering the full-precision rate behind a rounded display
    value: (gdp*(1-atr) - eva) / tw.
    """
    if tw == 0:
        raise ValidationError("total wealth is zero: implied rate undefined")
    return (nopat(gdp, atr) - eva) / tw


@dataclass(frozen=True)
class EvaRecord:
    """One period's EVA decomposition. eva + capital_charge == nopat by construction."""

    year: int
    gdp: float
    nopat: float
    total_wealth: float
    capital_charge: float
    eva: float


@dataclass(frozen=True)
class EvaSeries:
    """An ordered run of EVA records with summary statistics.

    Summaries are recomputed from the records on access, never stored, so they
    cannot drift out of sync.
    """

    records: tuple[EvaRecord, ...]

    def __post_init__(self):
        if not self.records:
            raise ValidationError("EvaSeries requires at least one record")

    @property
    def evas(self) -> tuple[float, ...]:
        return tuple(r.eva for r in self.records)

    @property
    def mean_eva(self) -> float:
        return sum(self.evas) / len(self.records)

    @property
    def min_eva(self) -> float:
        return min(self.evas)

    @property
    def max_eva(self) -> float:
        return max(self.evas)

    @property
    def min_year(self) -> int:
        return min(self.records, key=lambda r: (r.eva, r.year)).year

    @property
    def max_year(self) -> int:
        return max(self.records, key=lambda r: (r.eva, -r.year)).year


def eva_record(year: int, gdp: float, atr: float, tw: float, cbr: float) -> EvaRecord:
    """Assemble one period's record from its raw inputs."""
    profit = nopat(gdp, atr)
    if not 0.0 <= cbr < 1.0:
        raise ValidationError(f"central bank rate {cbr} outside [0, 1)")
    charge = tw * cbr
    return EvaRecord(
        year=year,
        gdp=gdp,
        nopat=profit,
        total_wealth=tw,
        capital_charge=charge,
        eva=profit - charge,
    )


def eva_series(econ: CountryEconomy) -> EvaSeries:
    """Per-year EVA records for a validated economy."""
    records = []
    for year in econ.years:
        tw = total_wealth(
            econ.produced_capital.value_at(year),
            econ.human_capital.value_at(year),
            econ.natural_capital.value_at(year),
            econ.net_foreign_assets.value_at(year),
        )
        records.append(
            eva_record(
                year=year,
                gdp=econ.gdp.value_at(year),
                atr=econ.aggregate_tax_rate,
                tw=tw,
                cbr=econ.central_bank_rate,
            )
        )
    return EvaSeries(records=tuple(records))
