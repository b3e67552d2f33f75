"""Pair-wise response quality scoring and response-time statistics."""
from __future__ import annotations

import csv
import io
import math
import re
import statistics
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, Iterable, List, Optional, Sequence, Tuple


class EvaluationError(ValueError):
    pass


class MissingJudgmentError(EvaluationError):
    pass


_CATEGORY = re.compile(r"^(BQ|LQ|O[1-9][0-9]*)$")
VERDICTS = {"x", "y", "tie"}


@dataclass(frozen=True)
class Judgment:
    category: str  # BQ, LQ or Oj
    x: str
    y: str
    verdict: str  # x | y | tie

    def __post_init__(self) -> None:
        if not _CATEGORY.match(self.category):
            raise EvaluationError(f"bad category code '{self.category}'")
        if self.verdict not in VERDICTS:
            raise EvaluationError(f"bad verdict '{self.verdict}' (expected x, y or tie)")
        if self.x == self.y:
            raise EvaluationError(f"system '{self.x}' compared with itself")

    @property
    def pair(self) -> frozenset:
        return frozenset((self.x, self.y))

    def points(self) -> Dict[str, int]:
        """Points each side earns under this category."""
        return {self.x: int(self.verdict == "x"), self.y: int(self.verdict == "y")}


def pairs(systems: Sequence[str]) -> List[Tuple[str, str]]:
    return list(combinations(systems, 2))


def score(systems: Sequence[str], judgments: Iterable[Judgment]) -> Dict[str, int]:
    """Totals per system; every category must be judged for every pair."""
    if len(set(systems)) != len(systems):
        raise EvaluationError("duplicate system name")
    judgments = list(judgments)
    known = set(systems)
    table: Dict[Tuple[str, frozenset], Judgment] = {}
    for j in judgments:
        for s in (j.x, j.y):
            if s not in known:
                raise EvaluationError(f"judgment names unknown system '{s}'")
        key = (j.category, j.pair)
        if key in table:
            raise EvaluationError(f"two judgments for {j.category} {j.x} vs. {j.y}")
        table[key] = j
    categories = sorted({j.category for j in judgments} | ({"BQ", "LQ"} if len(systems) > 1 else set()))
    totals = {s: 0 for s in systems}
    for cat in categories:
        for x, y in pairs(systems):
            j = table.get((cat, frozenset((x, y))))
            if j is None:
                raise MissingJudgmentError(f"no {cat} judgment for {x} vs. {y}")
            for s, p in j.points().items():
                totals[s] += p
    return totals


def load_judgments(text: str) -> List[Judgment]:
    """Rows of `category  system_x  system_y  verdict`; a blank verdict counts as a tie."""
    out = []
    reader = csv.reader(io.StringIO(text), delimiter="\t", quoting=csv.QUOTE_NONE)
    for lineno, row in enumerate(reader, start=1):
        if not row or not "".join(row).strip() or row[0].startswith("#"):
            continue
        if row[0] == "category":
            continue
        if len(row) == 3:
            row.append("")
        if len(row) != 4:
            raise EvaluationError(f"line {lineno}: expected 4 tab-separated columns, got {len(row)}")
        cat, x, y, verdict = (c.strip() for c in row)
        try:
            out.append(Judgment(cat, x, y, verdict or "tie"))
        except EvaluationError as exc:
            raise EvaluationError(f"line {lineno}: {exc}") from None
    return out


def systems_of(judgments: Iterable[Judgment]) -> List[str]:
    seen: Dict[str, None] = {}
    for j in judgments:
        seen.setdefault(j.x)
        seen.setdefault(j.y)
    return list(seen)


@dataclass(frozen=True)
class TimeStats:
    max: float
    min: float
    mean: float
    stddev: float
    variance: float
    n: int


def time_stats(series: Sequence[float], estimator: str = "sample") -> TimeStats:
    """Max, min, mean and spread of response times (``estimator`` is sample or population)."""
    xs = [float(v) for v in series]
    if not xs:
        raise EvaluationError("empty response-time series")
    if any(math.isnan(v) or v < 0 for v in xs):
        raise EvaluationError("response times must be non-negative numbers")
    if estimator == "sample":
        var = statistics.variance(xs) if len(xs) > 1 else 0.0
    elif estimator == "population":
        var = statistics.pvariance(xs)
    else:
        raise EvaluationError(f"unknown estimator '{estimator}'")
    return TimeStats(max(xs), min(xs), statistics.fmean(xs), math.sqrt(var), var, len(xs))


def load_times(text: str) -> List[float]:
    out = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            out.append(float(line))
        except ValueError:
            raise EvaluationError(f"line {lineno}: not a number: {line!r}") from None
    return out


def format_totals(totals: Dict[str, int]) -> str:
    return "".join(f"{s}\t{t}\n" for s, t in totals.items())


def format_stats(st: TimeStats, label: Optional[str] = None) -> str:
    head = f"{label}\t" if label else ""
    return (f"{head}max={st.max:.4f}\tmin={st.min:.4f}\tmean={st.mean:.4f}\t"
            f"stddev={st.stddev:.4f}\tvariance={st.variance:.4f}\tn={st.n}\n")
