"""Population scenarios: mortality tables and cohort-component projection.

Exogenous scenario paths (PopMV, PopHV, PopLV, PopCFV) are loaded from
delimited files (see :mod:`hcimpact.io`); the two birth-rate scenarios
(PopSV variants) are simulated here with a cohort-component step:
survivors age one cohort per 5-year step, the open-ended top cohort
accumulates, and new entrants come from a crude birth rate applied to
the start-of-step total. No migration.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ValidationError
from .grid import CohortGrid

__all__ = [
    "MortalityTable",
    "PopulationPath",
    "BirthRateScenario",
    "project_population",
]


def _readonly(a: np.ndarray) -> np.ndarray:
    out = np.array(a, dtype=float, copy=True)
    out.setflags(write=False)
    return out


@dataclass(frozen=True, eq=False)
class MortalityTable:
    """5-year death probabilities per cohort per projection date.

    ``death_prob[a, i]`` is the probability that a member of cohort ``a``
    at date ``dates[i]`` dies before ``dates[i] + 5``. The optional
    ``life_expectancy`` companion is informational only and never enters
    any computation.
    """

    grid: CohortGrid
    death_prob: np.ndarray
    life_expectancy: np.ndarray | None = None

    def __post_init__(self) -> None:
        dp = _readonly(self.death_prob)
        object.__setattr__(self, "death_prob", dp)
        expected = (self.grid.n_cohorts, self.grid.n_dates)
        if dp.shape != expected:
            raise ValidationError(
                f"mortality table shape {dp.shape} does not cover grid {expected}"
            )
        if np.any(~np.isfinite(dp)) or np.any(dp < 0.0) or np.any(dp > 1.0):
            raise ValidationError("death probabilities must lie in [0, 1]")
        if self.life_expectancy is not None:
            le = _readonly(self.life_expectancy)
            if le.shape != expected:
                raise ValidationError("life expectancy column does not cover the grid")
            object.__setattr__(self, "life_expectancy", le)

    def at(self, date: int) -> np.ndarray:
        """Death-probability column for one projection date."""
        return self.death_prob[:, self.grid.date_index(date)]

    def annualized_at(self, date: int) -> np.ndarray:
        """One-year death probabilities at ``date``.

        Constant hazard within the 5-year step: pd1 = 1 - (1 - PD)^(1/5).
        """
        return 1.0 - (1.0 - self.at(date)) ** 0.2


@dataclass(frozen=True, eq=False)
class PopulationPath:
    """Head-counts per cohort per projection date for one scenario.

    Unit: thousands of persons.
    """

    scenario: str
    grid: CohortGrid
    counts: np.ndarray

    def __post_init__(self) -> None:
        c = _readonly(self.counts)
        object.__setattr__(self, "counts", c)
        expected = (self.grid.n_cohorts, self.grid.n_dates)
        if c.shape != expected:
            raise ValidationError(
                f"population path shape {c.shape} does not cover grid {expected}"
            )
        if np.any(~np.isfinite(c)) or np.any(c < 0.0):
            raise ValidationError("head-counts must be finite and non-negative")

    def at(self, date: int) -> np.ndarray:
        return self.counts[:, self.grid.date_index(date)]

    def total(self, date: int) -> float:
        return float(self.at(date).sum())

    def totals(self) -> np.ndarray:
        return self.counts.sum(axis=0)


@dataclass(frozen=True)
class BirthRateScenario:
    """Crude birth rate: annual births as a fraction of total population."""

    name: str
    annual_rate: float

    def __post_init__(self) -> None:
        if not np.isfinite(self.annual_rate) or self.annual_rate < 0.0:
            raise ValidationError("crude birth rate must be finite and >= 0")


def project_population(
    initial: np.ndarray,
    mortality: MortalityTable,
    births: BirthRateScenario,
    horizon: int | None = None,
    scenario: str | None = None,
) -> PopulationPath:
    """Project a single-date population forward with the cohort-component step.

    ``initial`` is the head-count vector (thousands) at the grid's first
    date. Per 5-year step from t to t+5:

    * cohort a+1 at t+5 = cohort a at t times (1 - PD(a, t));
    * the open-ended top cohort keeps its own survivors plus the
      survivors entering from the cohort below;
    * the new first cohort = crude birth rate x total(t) x 5, with no
      mortality applied to newborns inside their birth step.

    Deterministic: identical inputs give bit-identical paths.
    """
    grid = mortality.grid
    if grid.n_cohorts < 2:
        raise ValidationError("projection needs at least two cohorts to age into")
    if horizon is None:
        horizon = grid.dates[-1]
    last = grid.date_index(horizon)

    initial = np.asarray(initial, dtype=float)
    if initial.shape != (grid.n_cohorts,):
        raise ValidationError(
            f"initial population has {initial.shape} entries, grid has {grid.n_cohorts} cohorts"
        )
    if np.any(~np.isfinite(initial)) or np.any(initial < 0.0):
        raise ValidationError("initial head-counts must be finite and non-negative")

    n = grid.n_cohorts
    counts = np.zeros((n, last + 1))
    counts[:, 0] = initial
    for i in range(last):
        cur = counts[:, i]
        surv = cur * (1.0 - mortality.death_prob[:, i])
        nxt = np.zeros(n)
        nxt[1:] = surv[:-1]
        nxt[-1] += surv[-1]  # open-ended cohort accumulates its own survivors
        nxt[0] = births.annual_rate * cur.sum() * 5.0
        counts[:, i + 1] = nxt

    path_grid = CohortGrid(grid.cohort_starts, grid.dates[: last + 1])
    name = scenario if scenario is not None else births.name
    return PopulationPath(scenario=name, grid=path_grid, counts=counts)
