#!/usr/bin/env python3
"""Population paths: exogenous scenarios and simulated birth-rate variants.

The four exogenous scenarios come straight from the bundled file; the
two birth-rate variants are simulated with the cohort-component step
(age survivors one cohort per 5-year step, add newborns from the crude
birth rate, no migration) starting from the PopMV 2010 structure.
"""

from pathlib import Path

from hcimpact import BirthRateScenario, project_population
from hcimpact.io import read_mortality_csv, read_population_csv

DATA = Path(__file__).resolve().parents[1] / "data"


def main() -> None:
    exogenous = read_population_csv(DATA / "population.csv")
    mortality = read_mortality_csv(DATA / "mortality.csv")
    grid = mortality.grid

    initial = exogenous["PopMV"].at(2010)
    simulated = [
        project_population(initial, mortality, BirthRateScenario("PopSV br 1.7%", 0.017)),
        project_population(initial, mortality, BirthRateScenario("PopSV br 1.3%", 0.013)),
    ]

    print("total population (thousands) by scenario:\n")
    header = "scenario        " + "".join(f"{d:>9d}" for d in grid.dates[::2])
    print(header)
    print("-" * len(header))
    for path in [*exogenous.values(), *simulated]:
        cells = "".join(f"{path.total(d):>9.0f}" for d in grid.dates[::2])
        print(f"{path.scenario:<16s}{cells}")

    print("\nold-age share (65+) under the high birth-rate variant:")
    path = simulated[0]
    old = [i for i, lo in enumerate(grid.cohort_starts) if lo >= 65]
    for date in grid.dates[::2]:
        share = path.at(date)[old].sum() / path.total(date)
        print(f"  {date}: {share:.1%}")


if __name__ == "__main__":
    main()
