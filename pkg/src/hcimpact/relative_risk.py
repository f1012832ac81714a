"""Relative-risk types and unemployment-dilution arithmetic.

Epidemiological studies report death / service-utilization relative
risks either for the unemployed subpopulation only ("undiluted") or
already spread over the whole working-age population ("diluted",
population-level). Undiluted risks are made comparable by diluting them
with the unemployment rate:

    effective_rr = 1 + unemployment_rate * (rr - 1)

A per-cohort lower/upper envelope of mortality risks is assembled from
heterogeneous study records; where source intervals are disjoint, a
named policy decides which source wins.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .errors import ValidationError
from .grid import CohortGrid
from .population import MortalityTable

__all__ = [
    "LaborMarketState",
    "RelativeRisk",
    "MortalityRRTable",
    "UtilizationRRSet",
    "StudyRecord",
    "dilute_relative_risk",
    "apply_mortality_shock",
    "build_rr_envelope",
    "SERVICES",
    "ENVELOPE_POLICIES",
]

#: Service codes of the expenditure typology, in canonical order.
SERVICES = ("H", "P", "S", "GP", "R", "m")

_SERVICE_FIELDS = {
    "H": "hospital",
    "P": "pharmaceutical",
    "S": "specialist",
    "GP": "general_practice",
    "R": "rehabilitation",
    "m": "minor",
}

ENVELOPE_POLICIES = ("population_level", "hull")


@dataclass(frozen=True)
class LaborMarketState:
    """Labor-market snapshot; only the unemployment rate enters the model."""

    unemployment_rate: float

    def __post_init__(self) -> None:
        w = self.unemployment_rate
        if not np.isfinite(w) or not (0.0 <= w <= 1.0):
            raise ValidationError(f"unemployment rate must be in [0, 1], got {w}")


@dataclass(frozen=True)
class RelativeRisk:
    """A dimensionless risk ratio.

    ``diluted`` is True once the value has been spread over the whole
    working-age population and can be applied to aggregate rates.
    """

    value: float
    diluted: bool = False

    def __post_init__(self) -> None:
        if not np.isfinite(self.value) or self.value < 0.0:
            raise ValidationError(f"relative risk must be finite and >= 0, got {self.value}")


def dilute_relative_risk(rr: RelativeRisk, labor: LaborMarketState) -> RelativeRisk:
    """Spread an unemployed-only relative risk over the working-age population.

    Returns ``1 + w * (rr - 1)`` flagged as diluted, where ``w`` is the
    unemployment rate. No presentation rounding is applied here.
    """
    if rr.diluted:
        raise ValidationError("relative risk is already diluted")
    if labor.unemployment_rate == 1.0:
        # everyone unemployed: the population-level risk IS the study risk;
        # the formula below would lose tiny rr to cancellation in (rr - 1)
        return RelativeRisk(rr.value, diluted=True)
    return RelativeRisk(1.0 + labor.unemployment_rate * (rr.value - 1.0), diluted=True)


@dataclass(frozen=True, eq=False)
class MortalityRRTable:
    """Per-cohort lower and upper diluted mortality relative risks."""

    grid: CohortGrid
    lower: np.ndarray
    upper: np.ndarray

    def __post_init__(self) -> None:
        lo = np.array(self.lower, dtype=float)
        hi = np.array(self.upper, dtype=float)
        for name, a in (("lower", lo), ("upper", hi)):
            if a.shape != (self.grid.n_cohorts,):
                raise ValidationError(f"{name} bounds do not cover every cohort")
            if np.any(~np.isfinite(a)) or np.any(a < 0.0):
                raise ValidationError(f"{name} bounds must be finite and >= 0")
        if np.any(lo > hi):
            raise ValidationError("lower bound exceeds upper bound for some cohort")
        lo.setflags(write=False)
        hi.setflags(write=False)
        object.__setattr__(self, "lower", lo)
        object.__setattr__(self, "upper", hi)

    @classmethod
    def uniform(cls, grid: CohortGrid, value: float) -> "MortalityRRTable":
        """A table with the same risk for every cohort (sensitivity-grid use)."""
        v = np.full(grid.n_cohorts, float(value))
        return cls(grid=grid, lower=v, upper=v)

    def select(self, bound: str) -> np.ndarray:
        if bound == "lower":
            return self.lower
        if bound == "upper":
            return self.upper
        raise ValidationError(f"unknown bound selection {bound!r}; use 'lower' or 'upper'")


@dataclass(frozen=True)
class UtilizationRRSet:
    """Diluted utilization relative risks per service type.

    Pharmaceutical, rehabilitation and minor services default to 1.00
    (no epidemiological signal available for them).
    """

    hospital: float
    specialist: float
    general_practice: float
    pharmaceutical: float = 1.0
    rehabilitation: float = 1.0
    minor: float = 1.0

    def __post_init__(self) -> None:
        for code in SERVICES:
            v = self.for_service(code)
            if not np.isfinite(v) or v < 0.0:
                raise ValidationError(f"utilization RR for {code} must be finite and >= 0")

    def for_service(self, code: str) -> float:
        try:
            return float(getattr(self, _SERVICE_FIELDS[code]))
        except KeyError:
            raise ValidationError(f"unknown service code {code!r}") from None


def apply_mortality_shock(
    table: MortalityTable, rr: np.ndarray, window: int
) -> MortalityTable:
    """Rescale death probabilities by per-cohort risks at one grid date.

    PD'(a, t) = PD(a, t) * rr[a] for t == window and is untouched
    elsewhere; results are clamped to [0, 1] since PD is a probability.
    """
    rr = np.asarray(rr, dtype=float)
    if rr.shape != (table.grid.n_cohorts,):
        raise ValidationError(
            f"risk vector has {rr.shape} entries, grid has {table.grid.n_cohorts} cohorts"
        )
    if np.any(~np.isfinite(rr)) or np.any(rr < 0.0):
        raise ValidationError("risk vector must be finite and >= 0")
    j = table.grid.date_index(window)
    shocked = table.death_prob.copy()
    shocked[:, j] = np.clip(shocked[:, j] * rr, 0.0, 1.0)
    return MortalityTable(
        grid=table.grid, death_prob=shocked, life_expectancy=table.life_expectancy
    )


@dataclass(frozen=True)
class StudyRecord:
    """One source interval for the mortality-risk envelope.

    ``age_lo``/``age_hi`` delimit the ages the study covers; a cohort is
    covered when its start age falls inside. ``diluted`` marks values
    already expressed at population level.
    """

    age_lo: int
    age_hi: int
    rr_lower: float
    rr_upper: float
    diluted: bool
    source: str = ""

    def __post_init__(self) -> None:
        if self.age_lo > self.age_hi:
            raise ValidationError("record age range is inverted")
        if not (0.0 <= self.rr_lower <= self.rr_upper) or not np.isfinite(self.rr_upper):
            raise ValidationError(
                f"record bounds must satisfy 0 <= lower <= upper, got "
                f"[{self.rr_lower}, {self.rr_upper}]"
            )


def _normalize(rec: StudyRecord, labor: LaborMarketState) -> StudyRecord:
    if rec.diluted:
        return rec
    lo = dilute_relative_risk(RelativeRisk(rec.rr_lower), labor).value
    hi = dilute_relative_risk(RelativeRisk(rec.rr_upper), labor).value
    return replace(rec, rr_lower=lo, rr_upper=hi)


def build_rr_envelope(
    records: list[StudyRecord],
    labor: LaborMarketState,
    grid: CohortGrid,
    policy: str = "population_level",
) -> MortalityRRTable:
    """Assemble the per-cohort mortality-risk envelope from study records.

    All records are first normalized to diluted form. Per cohort, the
    envelope is the intersection of the covering intervals
    (max of lowers, min of uppers). Where the intervals are disjoint the
    ``policy`` decides:

    * ``"population_level"`` (default): the interval of the records that
      arrived already diluted wins;
    * ``"hull"``: the convex hull (min of lowers, max of uppers).
    """
    if policy not in ENVELOPE_POLICIES:
        raise ValidationError(
            f"unknown envelope policy {policy!r}; valid: {', '.join(ENVELOPE_POLICIES)}"
        )
    if not records:
        raise ValidationError("empty record set")
    normalized = [(_normalize(r, labor), r.diluted) for r in records]

    lower = np.empty(grid.n_cohorts)
    upper = np.empty(grid.n_cohorts)
    for i, start in enumerate(grid.cohort_starts):
        covering = [(r, pop) for r, pop in normalized if r.age_lo <= start <= r.age_hi]
        if not covering:
            raise ValidationError(f"no study record covers cohort {grid.cohort_label(i)}")
        lo = max(r.rr_lower for r, _ in covering)
        hi = min(r.rr_upper for r, _ in covering)
        if lo > hi:  # disjoint source intervals
            if policy == "hull":
                lo = min(r.rr_lower for r, _ in covering)
                hi = max(r.rr_upper for r, _ in covering)
            else:
                pop_level = [r for r, pop in covering if pop]
                if not pop_level:
                    raise ValidationError(
                        f"disjoint intervals for cohort {grid.cohort_label(i)} and no "
                        "population-level record to fall back on"
                    )
                lo = max(r.rr_lower for r in pop_level)
                hi = min(r.rr_upper for r in pop_level)
                if lo > hi:
                    raise ValidationError(
                        f"population-level records disagree for cohort {grid.cohort_label(i)}"
                    )
        lower[i] = lo
        upper[i] = hi
    return MortalityRRTable(grid=grid, lower=lower, upper=upper)
