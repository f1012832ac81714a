"""Shared age-cohort / projection-date axis.

Every table in the engine (populations, mortality, costs, relative risks)
is indexed by the same grid: contiguous 5-year age cohorts starting at 0
with an open-ended last cohort, and projection dates at 5-year spacing.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ValidationError

COHORT_WIDTH = 5
DATE_STEP = 5


@dataclass(frozen=True)
class CohortGrid:
    """Fixed cohort and date axis shared by all engine tables.

    ``cohort_starts`` are the lower bounds of the 5-year cohorts,
    e.g. ``(0, 5, ..., 95)``; the last cohort is open-ended (95+).
    ``dates`` are calendar years at 5-year spacing, e.g. ``(2010, ..., 2060)``.
    """

    cohort_starts: tuple[int, ...]
    dates: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.cohort_starts) < 1:
            raise ValidationError("grid needs at least one cohort")
        if self.cohort_starts[0] != 0:
            raise ValidationError("first cohort must start at age 0")
        for a, b in zip(self.cohort_starts, self.cohort_starts[1:]):
            if b - a != COHORT_WIDTH:
                raise ValidationError(
                    f"cohorts must be contiguous {COHORT_WIDTH}-year bins, got {a} then {b}"
                )
        if len(self.dates) < 1:
            raise ValidationError("grid needs at least one projection date")
        for a, b in zip(self.dates, self.dates[1:]):
            if b - a != DATE_STEP:
                raise ValidationError(
                    f"projection dates must step by {DATE_STEP} years, got {a} then {b}"
                )

    @classmethod
    def standard(cls, first_date: int = 2010, last_date: int = 2060) -> "CohortGrid":
        """The production grid: 20 cohorts 0-4 ... 95+, dates every 5 years."""
        return cls(
            cohort_starts=tuple(range(0, 100, COHORT_WIDTH)),
            dates=tuple(range(first_date, last_date + 1, DATE_STEP)),
        )

    @property
    def n_cohorts(self) -> int:
        return len(self.cohort_starts)

    @property
    def n_dates(self) -> int:
        return len(self.dates)

    @property
    def base_date(self) -> int:
        return self.dates[0]

    def date_index(self, date: int) -> int:
        try:
            return self.dates.index(date)
        except ValueError:
            raise ValidationError(f"date {date} is not on the projection grid") from None

    def cohort_label(self, i: int) -> str:
        lo = self.cohort_starts[i]
        if i == self.n_cohorts - 1:
            return f"{lo}+"
        return f"{lo}-{lo + COHORT_WIDTH - 1}"

    def cohort_bounds(self, i: int) -> tuple[int, int]:
        """(lo, hi) ages of cohort ``i``; the open-ended cohort reports lo+4."""
        lo = self.cohort_starts[i]
        return lo, lo + COHORT_WIDTH - 1

    def cohort_midpoints(self) -> tuple[float, ...]:
        """Cohort midpoint ages, used for age interpolation of cost profiles."""
        return tuple(lo + COHORT_WIDTH / 2.0 for lo in self.cohort_starts)
