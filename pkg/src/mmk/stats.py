"""Evidence-comparison statistics: Likert tallies, two-sample t-tests,
Levene's variance test, and Pearson correlation.

p-values come from a self-contained regularized incomplete beta evaluation,
so the package needs no statistics library at runtime.
"""

from __future__ import annotations

import json
import math
import statistics
from dataclasses import dataclass
from enum import Enum
from typing import Mapping, Sequence

from .errors import ConvergenceError, DomainError, SchemaError

_IBETA_TOL = 1e-12
_IBETA_MAX_ITER = 500
_FPMIN = 1e-300


def _beta_cf(a: float, b: float, x: float) -> float:
    """Continued fraction for the incomplete beta (modified Lentz)."""
    qab, qap, qam = a + b, a + 1.0, a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _FPMIN:
        d = _FPMIN
    d = 1.0 / d
    h = d
    for m in range(1, _IBETA_MAX_ITER + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < _FPMIN:
            d = _FPMIN
        c = 1.0 + aa / c
        if abs(c) < _FPMIN:
            c = _FPMIN
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < _FPMIN:
            d = _FPMIN
        c = 1.0 + aa / c
        if abs(c) < _FPMIN:
            c = _FPMIN
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _IBETA_TOL:
            return h
    raise ConvergenceError(f"incomplete beta did not converge for a={a}, b={b}, x={x}")


def regularized_incomplete_beta(a: float, b: float, x: float) -> float:
    """I_x(a, b) for a, b > 0 and x in [0, 1]."""
    if a <= 0 or b <= 0:
        raise DomainError(f"shape parameters must be positive, got a={a}, b={b}")
    if not 0.0 <= x <= 1.0:
        raise DomainError(f"x must be in [0, 1], got {x}")
    if x == 0.0:
        return 0.0
    if x == 1.0:
        return 1.0
    ln_bt = (
        math.lgamma(a + b) - math.lgamma(a) - math.lgamma(b)
        + a * math.log(x) + b * math.log(1.0 - x)
    )
    bt = math.exp(ln_bt)
    # the continued fraction converges fast on one side of the mean; mirror otherwise
    if x < (a + 1.0) / (a + b + 2.0):
        return bt * _beta_cf(a, b, x) / a
    return 1.0 - bt * _beta_cf(b, a, 1.0 - x) / b


def t_sf_two_tailed(t: float, df: float) -> float:
    """Two-tailed P(|T| >= |t|) for Student's t with ``df`` degrees of freedom."""
    if df <= 0:
        raise DomainError(f"degrees of freedom must be positive, got {df}")
    if t == 0.0:
        return 1.0
    return regularized_incomplete_beta(df / 2.0, 0.5, df / (df + t * t))


def f_sf(f: float, df1: float, df2: float) -> float:
    """P(F >= f) for the F distribution."""
    if f <= 0.0:
        return 1.0
    return regularized_incomplete_beta(df2 / 2.0, df1 / 2.0, df2 / (df2 + df1 * f))


# --- Likert tallies -----------------------------------------------------------


@dataclass(frozen=True)
class LikertTally:
    """Five-category response counts out of ``n`` respondents."""

    ea: int  # extremely agree
    ma: int  # moderately agree
    nu: int  # neutral
    md: int  # moderately disagree
    ed: int  # extremely disagree
    n: int

    def __post_init__(self) -> None:
        for name in ("ea", "ma", "nu", "md", "ed", "n"):
            value = getattr(self, name)
            if not isinstance(value, int) or isinstance(value, bool) or value < 0:
                raise SchemaError(f"{name} must be a non-negative integer, got {value!r}")
        if self.ea + self.ma + self.nu + self.md + self.ed > self.n:
            raise DomainError(
                f"category counts sum to {self.ea + self.ma + self.nu + self.md + self.ed}, "
                f"more than {self.n} respondents",
                code="tally_overflow",
            )


@dataclass(frozen=True)
class TallyPercentages:
    positive_pct: int
    negative_pct: int
    neutral_pct: int


def _pct(count: int, n: int) -> int:
    # integer round-half-up of 100*count/n; exact, no float involved
    return (200 * count + n) // (2 * n)


def tally_percentages(t: LikertTally) -> TallyPercentages:
    """Percent agreeing / disagreeing / neutral, rounded half away from zero."""
    if t.n == 0:
        raise DomainError("tally has zero respondents", code="empty_tally")
    return TallyPercentages(
        positive_pct=_pct(t.ea + t.ma, t.n),
        negative_pct=_pct(t.ed + t.md, t.n),
        neutral_pct=_pct(t.nu, t.n),
    )


def parse_likert_document(document: str | bytes | Mapping) -> list[tuple[str, LikertTally]]:
    """Reads {"rows": [{"label", "ea", "ma", "nu", "md", "ed", "n"}]}."""
    if isinstance(document, (str, bytes)):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"not valid JSON: {exc}", "") from exc
    if not isinstance(document, dict) or set(document) != {"rows"} or not isinstance(document["rows"], list):
        raise SchemaError("likert document needs exactly a 'rows' list", "$")
    out = []
    for ri, raw in enumerate(document["rows"]):
        path = f"rows[{ri}]"
        if not isinstance(raw, dict) or set(raw) != {"label", "ea", "ma", "nu", "md", "ed", "n"}:
            raise SchemaError("each row needs exactly label, ea, ma, nu, md, ed, n", path)
        if not isinstance(raw["label"], str) or not raw["label"]:
            raise SchemaError("'label' must be a non-empty string", path)
        out.append((raw["label"], LikertTally(raw["ea"], raw["ma"], raw["nu"], raw["md"], raw["ed"], raw["n"])))
    return out


# --- t-tests ------------------------------------------------------------------


class TTestVariant(str, Enum):
    POOLED = "pooled"
    WELCH = "welch"


class LeveneCenter(str, Enum):
    MEAN = "mean"
    MEDIAN = "median"


@dataclass(frozen=True)
class SummaryStats:
    mean: float
    sd: float
    n: int

    def __post_init__(self) -> None:
        if self.sd < 0:
            raise DomainError(f"standard deviation must be non-negative, got {self.sd}")
        if not isinstance(self.n, int) or isinstance(self.n, bool) or self.n < 2:
            raise DomainError(f"group size must be an integer of at least 2, got {self.n!r}")

    @classmethod
    def from_samples(cls, values: Sequence[float]) -> "SummaryStats":
        if len(values) < 2:
            raise DomainError(f"need at least 2 observations, got {len(values)}")
        return cls(statistics.fmean(values), statistics.stdev(values), len(values))


@dataclass(frozen=True)
class TTestResult:
    t: float
    df: float
    p_two_tailed: float
    variant: TTestVariant


def t_test_from_summary(g1: SummaryStats, g2: SummaryStats, variant: TTestVariant = TTestVariant.POOLED) -> TTestResult:
    """Independent two-sample t-test from group summaries."""
    v1, v2 = g1.sd**2, g2.sd**2
    if variant == TTestVariant.POOLED:
        df = g1.n + g2.n - 2
        pooled_var = ((g1.n - 1) * v1 + (g2.n - 1) * v2) / df
        se = math.sqrt(pooled_var * (1.0 / g1.n + 1.0 / g2.n))
    elif variant == TTestVariant.WELCH:
        q1, q2 = v1 / g1.n, v2 / g2.n
        se = math.sqrt(q1 + q2)
        if se > 0:
            df = (q1 + q2) ** 2 / (q1**2 / (g1.n - 1) + q2**2 / (g2.n - 1))
        else:
            df = 0.0
    else:
        raise SchemaError(f"unknown t-test variant {variant!r}")
    if se == 0.0:
        raise DomainError("zero standard error: both groups have zero variance", code="zero_spread")
    t = (g1.mean - g2.mean) / se
    return TTestResult(t, float(df), t_sf_two_tailed(t, df), variant)


def t_test_from_samples(x: Sequence[float], y: Sequence[float], variant: TTestVariant = TTestVariant.POOLED) -> TTestResult:
    return t_test_from_summary(SummaryStats.from_samples(x), SummaryStats.from_samples(y), variant)


# --- correlation --------------------------------------------------------------


@dataclass(frozen=True)
class CorrelationResult:
    r: float
    n: int
    p_two_tailed: float


def pearson_r(pairs: Sequence[tuple[float, float]]) -> CorrelationResult:
    """Sample Pearson correlation with its two-tailed significance."""
    n = len(pairs)
    if n < 3:
        raise DomainError(f"need at least 3 pairs, got {n}")
    xs = [float(p[0]) for p in pairs]
    ys = [float(p[1]) for p in pairs]
    mx, my = statistics.fmean(xs), statistics.fmean(ys)
    sxx = sum((x - mx) ** 2 for x in xs)
    syy = sum((y - my) ** 2 for y in ys)
    if sxx == 0.0 or syy == 0.0:
        raise DomainError("correlation undefined: a coordinate is constant", code="constant_series")
    sxy = sum((x - mx) * (y - my) for x, y in zip(xs, ys))
    r = sxy / math.sqrt(sxx * syy)
    r = max(-1.0, min(1.0, r))
    df = n - 2
    if 1.0 - r * r <= 0.0:
        p = 0.0
    else:
        t = r * math.sqrt(df / (1.0 - r * r))
        p = t_sf_two_tailed(t, df)
    return CorrelationResult(r, n, p)


# --- Levene / Brown-Forsythe --------------------------------------------------


@dataclass(frozen=True)
class LeveneResult:
    f: float
    df1: int
    df2: int
    p: float
    center: LeveneCenter


def levene_test(x: Sequence[float], y: Sequence[float], center: LeveneCenter = LeveneCenter.MEAN) -> LeveneResult:
    """Equality-of-variances test: ANOVA F over absolute deviations.

    ``center=mean`` is the classic test; ``median`` is the Brown-Forsythe
    variant, more robust to skew.
    """
    if len(x) < 2 or len(y) < 2:
        raise DomainError("each group needs at least 2 observations")
    locate = statistics.fmean if center == LeveneCenter.MEAN else statistics.median
    zx = [abs(v - locate(x)) for v in x]
    zy = [abs(v - locate(y)) for v in y]
    n1, n2 = len(zx), len(zy)
    m1, m2 = statistics.fmean(zx), statistics.fmean(zy)
    grand = (sum(zx) + sum(zy)) / (n1 + n2)
    between = n1 * (m1 - grand) ** 2 + n2 * (m2 - grand) ** 2
    within = sum((z - m1) ** 2 for z in zx) + sum((z - m2) ** 2 for z in zy)
    df1, df2 = 1, n1 + n2 - 2
    if within == 0.0:
        raise DomainError("degenerate input: no spread in absolute deviations", code="zero_spread")
    f = (between / df1) / (within / df2)
    return LeveneResult(f, df1, df2, f_sf(f, df1, df2), center)


# --- rank-series wire format ----------------------------------------------------


def parse_rank_series(document: str | bytes | Mapping) -> tuple[list[str], list[float], list[float]]:
    """Reads {"labels": [...], "series_a": [...], "series_b": [...]}."""
    if isinstance(document, (str, bytes)):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"not valid JSON: {exc}", "") from exc
    if not isinstance(document, dict) or set(document) != {"labels", "series_a", "series_b"}:
        raise SchemaError("rank series needs exactly labels, series_a, series_b", "$")
    labels = document["labels"]
    a, b = document["series_a"], document["series_b"]
    if not isinstance(labels, list) or not all(isinstance(s, str) for s in labels):
        raise SchemaError("'labels' must be a list of strings", "labels")
    for name, series in (("series_a", a), ("series_b", b)):
        if (
            not isinstance(series, list)
            or len(series) != len(labels)
            or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in series)
        ):
            raise SchemaError(f"'{name}' must be a list of numbers, one per label", name)
    return list(labels), [float(v) for v in a], [float(v) for v in b]
