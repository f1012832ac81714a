#!/usr/bin/env python3
"""Relative-risk dilution and the per-cohort mortality envelope.

Cohort studies report death risks for unemployed people only; spreading
such a risk over the whole working-age population at a 10% unemployment
rate shrinks it toward 1. The second half assembles the per-cohort
lower/upper envelope from the bundled study records.
"""

from pathlib import Path

from hcimpact import LaborMarketState, RelativeRisk, build_rr_envelope, dilute_relative_risk
from hcimpact.io import read_mortality_csv, read_rr_mortality_csv

DATA = Path(__file__).resolve().parents[1] / "data"


def main() -> None:
    labor = LaborMarketState(unemployment_rate=0.10)

    print("== diluting study risks over the working-age population ==")
    print(f"unemployment rate: {labor.unemployment_rate:.0%}\n")
    for service, rr in [
        ("GP visits, low", 1.20),
        ("GP visits, high", 1.57),
        ("hospital admissions, low", 1.33),
        ("hospital admissions, high", 2.00),
        ("outpatient visits", 1.63),
    ]:
        diluted = dilute_relative_risk(RelativeRisk(rr), labor)
        print(f"  {service:28s} {rr:.2f}  ->  {diluted.value:.3f}")

    print("\n== per-cohort mortality-risk envelope from study records ==")
    grid = read_mortality_csv(DATA / "mortality.csv").grid
    records = read_rr_mortality_csv(DATA / "rr_mortality.csv")
    print(f"{len(records)} records; disjoint intervals resolved by the "
          "population-level policy\n")
    envelope = build_rr_envelope(records, labor, grid)
    print("  cohort   lower   upper")
    for i in range(grid.n_cohorts):
        print(f"  {grid.cohort_label(i):>6s}   {envelope.lower[i]:.3f}   "
              f"{envelope.upper[i]:.3f}")


if __name__ == "__main__":
    main()
