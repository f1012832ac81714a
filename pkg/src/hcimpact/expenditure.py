"""Econometric expenditure models and the cost machinery behind them.

Three variants of the expenditure functional are implemented, all linear
in the cost profile and in the population:

* PD (pure demographic): expenditure = sum over cohorts of
  head-count x utilization x per-capita cost;
* CH (constant health): as PD, but each cohort is priced at an effective
  age shifted younger as general health improves over time;
* DC (death-related costs): per-capita cost split once into survivor and
  decedent components, then re-weighted by the annualized death
  probability of the evaluation date.

Units are fixed package-wide: populations in thousands of persons,
per-capita costs in EUR/person/year, expenditure in EUR millions.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .errors import NumericalError, ValidationError
from .grid import CohortGrid
from .population import MortalityTable, PopulationPath
from .relative_risk import SERVICES, UtilizationRRSet

__all__ = [
    "CostProfile",
    "DSRatioProfile",
    "ExpenditureShares",
    "ExpenditurePath",
    "ModelParameters",
    "MODELS",
    "expenditure_pd",
    "expenditure_ch",
    "expenditure_dc",
    "decompose_costs",
    "rescaling_factor",
    "evaluate_model",
    "PUBLISHED_RF_RANGE",
]

MODELS = ("PD", "CH", "DC")

# thousands of persons x EUR/person -> EUR millions
_TO_EUR_MILLIONS = 1e-3

#: Reference range published alongside the source data for the rescaling
#: factor. The weighted-sum arithmetic over the default shares and diluted
#: risk bounds gives (1.02715, 1.07694) instead; the constant is kept for
#: comparison only and never enters any computation.
PUBLISHED_RF_RANGE = (1.045, 1.095)


def _cohort_vector(name: str, values, grid: CohortGrid, minimum: float = 0.0) -> np.ndarray:
    v = np.array(values, dtype=float)
    if v.shape != (grid.n_cohorts,):
        raise ValidationError(f"{name} does not cover every cohort of the grid")
    if np.any(~np.isfinite(v)) or np.any(v < minimum):
        raise ValidationError(f"{name} entries must be finite and >= {minimum}")
    v.setflags(write=False)
    return v


@dataclass(frozen=True, eq=False)
class CostProfile:
    """Age-related per-capita public healthcare cost, EUR/person/year."""

    profile_id: str
    grid: CohortGrid
    values: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "values", _cohort_vector("cost profile", self.values, self.grid)
        )

    def scaled(self, factor: float) -> "CostProfile":
        """Uniformly rescaled copy (utilization-impact route)."""
        if not np.isfinite(factor) or factor < 0.0:
            raise ValidationError(f"cost scale factor must be >= 0, got {factor}")
        return CostProfile(self.profile_id, self.grid, self.values * factor)


@dataclass(frozen=True, eq=False)
class DSRatioProfile:
    """Last-year-of-life vs same-age-survivor cost ratio, per cohort."""

    scenario: str
    grid: CohortGrid
    values: np.ndarray

    def __post_init__(self) -> None:
        v = _cohort_vector("D/S ratio profile", self.values, self.grid)
        if np.any(v <= 0.0):
            raise ValidationError("D/S ratios must be > 0")
        object.__setattr__(self, "values", v)


@dataclass(frozen=True)
class ExpenditureShares:
    """Fractions of total public healthcare expenditure by service type."""

    hospital: float
    pharmaceutical: float
    specialist: float
    general_practice: float
    rehabilitation: float
    minor: float

    _FIELDS = {
        "H": "hospital",
        "P": "pharmaceutical",
        "S": "specialist",
        "GP": "general_practice",
        "R": "rehabilitation",
        "m": "minor",
    }

    def __post_init__(self) -> None:
        total = 0.0
        for code in SERVICES:
            v = self.for_service(code)
            if not np.isfinite(v) or not (0.0 <= v <= 1.0):
                raise ValidationError(f"share for {code} must be in [0, 1]")
            total += v
        if abs(total - 1.0) > 1e-9:
            raise ValidationError(f"shares must sum to 1 within 1e-9, got {total!r}")

    def for_service(self, code: str) -> float:
        try:
            return float(getattr(self, self._FIELDS[code]))
        except KeyError:
            raise ValidationError(f"unknown service code {code!r}") from None


@dataclass(frozen=True, eq=False)
class ExpenditurePath:
    """Total public healthcare expenditure per projection date, EUR millions."""

    model: str
    scenario: str
    dates: tuple[int, ...]
    values: np.ndarray
    gdp: np.ndarray | None = None  # companion path for GDP-share reporting

    def __post_init__(self) -> None:
        v = np.array(self.values, dtype=float)
        if v.shape != (len(self.dates),):
            raise ValidationError("expenditure path does not cover its dates")
        if np.any(~np.isfinite(v)) or np.any(v < 0.0):
            raise ValidationError("expenditure must be finite and >= 0 at every date")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)
        if self.gdp is not None:
            g = np.array(self.gdp, dtype=float)
            if g.shape != v.shape or np.any(g <= 0.0):
                raise ValidationError("GDP companion path must be positive over the dates")
            g.setflags(write=False)
            object.__setattr__(self, "gdp", g)

    def value_at(self, date: int) -> float:
        try:
            return float(self.values[self.dates.index(date)])
        except ValueError:
            raise ValidationError(f"date {date} not on the expenditure path") from None


@dataclass(frozen=True, eq=False)
class ModelParameters:
    """Residual parameter bundle shared by all expenditure models.

    ``utilization`` is a dimensionless per-cohort multiplier (scalar or
    vector; default 1 everywhere). ``health_improvement_rate`` is the
    effective-age drift in years of age per calendar year (default 0.25,
    i.e. three months over year). ``gdp`` maps projection dates to GDP in
    EUR millions and is only used for share reporting.
    """

    utilization: float | np.ndarray | None = None
    health_improvement_rate: float = 0.25
    gdp: Mapping[int, float] | None = None

    def __post_init__(self) -> None:
        r = self.health_improvement_rate
        if not np.isfinite(r) or r < 0.0:
            raise ValidationError(f"health-improvement rate must be >= 0, got {r}")
        if self.gdp is not None:
            for date, v in self.gdp.items():
                if not np.isfinite(v) or v <= 0.0:
                    raise ValidationError(f"GDP must be positive, got {v} at {date}")

    def utilization_vector(self, grid: CohortGrid) -> np.ndarray:
        if self.utilization is None:
            return np.ones(grid.n_cohorts)
        u = np.asarray(self.utilization, dtype=float)
        if u.ndim == 0:
            u = np.full(grid.n_cohorts, float(u))
        return _cohort_vector("utilization scaling", u, grid)

    def gdp_for(self, dates: tuple[int, ...]) -> np.ndarray | None:
        if self.gdp is None or any(d not in self.gdp for d in dates):
            return None
        return np.array([self.gdp[d] for d in dates], dtype=float)


def _require_same_grid(*objs) -> CohortGrid:
    grids = [o.grid for o in objs]
    for g in grids[1:]:
        if g != grids[0]:
            raise ValidationError("inputs do not share the same cohort grid")
    return grids[0]


def expenditure_pd(
    pop: PopulationPath, costs: CostProfile, params: ModelParameters
) -> ExpenditurePath:
    """Pure-demographic expenditure: head-counts times per-capita costs."""
    grid = _require_same_grid(pop, costs)
    u = params.utilization_vector(grid)
    weights = u * costs.values
    # same per-date contraction as the CH/DC variants, so the degenerate
    # cases (zero improvement rate, unit D/S ratio) reproduce PD bit-exactly
    values = np.array(
        [float(pop.counts[:, i] @ weights) for i in range(grid.n_dates)]
    ) * _TO_EUR_MILLIONS
    return ExpenditurePath(
        model="PD",
        scenario=pop.scenario,
        dates=grid.dates,
        values=values,
        gdp=params.gdp_for(grid.dates),
    )


def expenditure_ch(
    pop: PopulationPath,
    costs: CostProfile,
    mortality: MortalityTable,
    params: ModelParameters,
) -> ExpenditurePath:
    """Constant-health expenditure: costs priced at a drifting effective age.

    At date t every cohort is priced at effective age
    ``midpoint - rate * (t - base_date)``; costs at non-cohort ages come
    from linear interpolation over cohort midpoints with flat
    extrapolation at both ends. The mortality table is validated for
    grid consistency; the drift rate itself is a parameter, so general
    health improvement enters through ``params``, not the table.
    """
    grid = _require_same_grid(pop, costs, mortality)
    u = params.utilization_vector(grid)
    mids = np.array(grid.cohort_midpoints())
    values = np.empty(grid.n_dates)
    for i, date in enumerate(grid.dates):
        shift = params.health_improvement_rate * (date - grid.base_date)
        eff_costs = np.interp(mids - shift, mids, costs.values)
        values[i] = float(pop.counts[:, i] @ (u * eff_costs)) * _TO_EUR_MILLIONS
    return ExpenditurePath(
        model="CH",
        scenario=pop.scenario,
        dates=grid.dates,
        values=values,
        gdp=params.gdp_for(grid.dates),
    )


def decompose_costs(
    costs: CostProfile,
    ds: DSRatioProfile,
    mortality: MortalityTable,
    date: int | None = None,
) -> tuple[np.ndarray, np.ndarray]:
    """Split per-capita costs into survivor and decedent components.

    With pd1 the annualized death probability at the base ``date``
    (default: first grid date), solve

        c(a) = s(a) * (1 - pd1(a)) + ds(a) * s(a) * pd1(a)

    for the survivor cost s(a); the decedent cost is d(a) = ds(a) * s(a).
    """
    grid = _require_same_grid(costs, ds, mortality)
    if date is None:
        date = grid.base_date
    pd1 = mortality.annualized_at(date)
    denom = 1.0 + pd1 * (ds.values - 1.0)
    if np.any(denom <= 0.0):
        raise NumericalError("degenerate denominator in survivor/decedent cost split")
    s = costs.values / denom
    d = ds.values * s
    return s, d


def expenditure_dc(
    pop: PopulationPath,
    costs: CostProfile,
    ds: DSRatioProfile,
    mortality: MortalityTable,
    params: ModelParameters,
) -> ExpenditurePath:
    """Death-related-costs expenditure.

    Survivor/decedent costs are solved once at the base date and held
    fixed; only the annualized death probability varies with the
    evaluation date, so a mortality shock moves expenditure through the
    expected number of decedents alone.
    """
    grid = _require_same_grid(pop, costs, ds, mortality)
    u = params.utilization_vector(grid)
    s, d = decompose_costs(costs, ds, mortality)
    values = np.empty(grid.n_dates)
    for i, date in enumerate(grid.dates):
        pd1 = mortality.annualized_at(date)
        per_capita = s * (1.0 - pd1) + d * pd1
        values[i] = float(pop.counts[:, i] @ (u * per_capita)) * _TO_EUR_MILLIONS
    return ExpenditurePath(
        model="DC",
        scenario=pop.scenario,
        dates=grid.dates,
        values=values,
        gdp=params.gdp_for(grid.dates),
    )


def rescaling_factor(shares: ExpenditureShares, rrs: UtilizationRRSet) -> float:
    """Service-mix rescaling factor: share-weighted sum of utilization risks."""
    return float(sum(rrs.for_service(code) * shares.for_service(code) for code in SERVICES))


def evaluate_model(
    model: str,
    pop: PopulationPath,
    costs: CostProfile,
    ds: DSRatioProfile,
    mortality: MortalityTable,
    params: ModelParameters,
) -> ExpenditurePath:
    """Dispatch to one of the expenditure models by tag (PD, CH or DC)."""
    if model == "PD":
        return expenditure_pd(pop, costs, params)
    if model == "CH":
        return expenditure_ch(pop, costs, mortality, params)
    if model == "DC":
        return expenditure_dc(pop, costs, ds, mortality, params)
    raise ValidationError(f"unknown model {model!r}; valid ids: {', '.join(MODELS)}")
