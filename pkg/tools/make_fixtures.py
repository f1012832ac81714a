#!/usr/bin/env python3
"""Regenerate the bundled fixture dataset under data/.

The dataset is Italy-shaped but synthetic: a 2010 age pyramid around 60
million people, 5-year death probabilities with a slow secular decline,
J-shaped age-cost profiles calibrated so total 2010 public expenditure
lands on 109,700 EUR millions, and relative-risk study records whose
working-age envelope is assembled by the engine at load time.

Deliberately independent of the hcimpact package: fixtures are input
data, not engine output. Deterministic, no RNG.
"""

from __future__ import annotations

from pathlib import Path

DATA = Path(__file__).resolve().parents[1] / "data"

COHORTS = list(range(0, 100, 5))  # 0-4 ... 95+ (hi written as lo+4)
DATES = list(range(2010, 2061, 5))

# 5-year death probabilities, 2010 (both sexes, all-cause)
PD_2010 = [
    0.0040, 0.0005, 0.0006, 0.0012, 0.0016, 0.0018, 0.0022, 0.0030,
    0.0046, 0.0072, 0.0115, 0.0180, 0.0280, 0.0460, 0.0760, 0.1280,
    0.2200, 0.3700, 0.5600, 0.7500,
]

# 2010 head-counts, thousands
POP_2010 = [
    2850, 2800, 2850, 2950, 3050, 3350, 3800, 4450, 4850, 4650,
    4100, 3750, 3700, 3250, 3000, 2550, 1900, 1150, 450, 100,
]

# raw per-capita cost shape, EUR/person/year (rescaled below)
COST_SHAPE = [
    1400, 800, 750, 850, 950, 1050, 1150, 1250, 1350, 1500,
    1700, 1950, 2300, 2800, 3400, 4100, 4900, 5600, 6100, 6400,
]

NHS_TOTAL_2010 = 109_700.0  # EUR millions
GDP_2010 = 1_520_346  # EUR millions


def survivors_step(counts: list[float], pd5: list[float], birth_rate: float,
                   migration: float) -> list[float]:
    """One 5-year cohort-component step with working-age net migration."""
    n = len(counts)
    surv = [c * (1.0 - q) for c, q in zip(counts, pd5)]
    nxt = [0.0] * n
    for i in range(n - 1):
        nxt[i + 1] = surv[i]
    nxt[-1] += surv[-1]
    nxt[0] = birth_rate * sum(counts) * 5.0
    # spread migration over cohorts 20-44 (indices 4..8)
    for i in range(4, 9):
        nxt[i] += migration / 5.0
    return nxt


def exogenous_scenario(mort_factor: float, rates: dict[int, float],
                       migration: float) -> dict[int, list[float]]:
    out = {DATES[0]: list(map(float, POP_2010))}
    for prev, cur in zip(DATES, DATES[1:]):
        pd5 = [min(1.0, q * mort_factor ** (prev - 2010)) for q in PD_2010]
        out[cur] = survivors_step(out[prev], pd5, rates[prev], migration)
    return out


def main() -> None:
    DATA.mkdir(parents=True, exist_ok=True)

    # ------------------------------------------------------------- mortality
    lines = ["date,cohort_lo,cohort_hi,pd_5yr,life_expectancy"]
    for lo, q0 in zip(COHORTS, PD_2010):
        mid = lo + 2.5
        le0 = max(2.5, (82.0 - mid) * 0.97 + 2.8)
        for date in DATES:
            q = min(1.0, q0 * 0.985 ** (date - 2010))
            le = le0 + 0.25 * (date - 2010)
            lines.append(f"{date},{lo},{lo + 4},{q:.6f},{le:.2f}")
    (DATA / "mortality.csv").write_text("\n".join(lines) + "\n")

    # ------------------------------------------------------------ population
    declining = {d: 0.0092 - 0.001 * (d - 2010) / 50.0 for d in DATES}
    scenarios = {
        "PopMV": exogenous_scenario(0.985, declining, migration=300.0),
        "PopHV": exogenous_scenario(0.980, {d: 0.0105 for d in DATES}, migration=400.0),
        "PopLV": exogenous_scenario(0.990, {d: 0.0075 for d in DATES}, migration=150.0),
        "PopCFV": exogenous_scenario(0.985, {d: 0.0092 for d in DATES}, migration=300.0),
    }
    lines = ["scenario,date,cohort_lo,cohort_hi,count_thousands"]
    for name, path in scenarios.items():
        for i, lo in enumerate(COHORTS):
            for date in DATES:
                lines.append(f"{name},{date},{lo},{lo + 4},{path[date][i]:.3f}")
    (DATA / "population.csv").write_text("\n".join(lines) + "\n")

    # ----------------------------------------------------------------- costs
    base_total = sum(n * c for n, c in zip(POP_2010, COST_SHAPE)) / 1000.0
    scale = NHS_TOTAL_2010 / base_total
    arc1 = [round(c * scale, 2) for c in COST_SHAPE]
    lines = ["profile_id,cohort_lo,cohort_hi,eur_per_capita"]
    for pid, transform in (
        ("ARC1", lambda c, mid: c),
        ("ARC2", lambda c, mid: c * (1.0 - 0.15 * mid / 100.0)),  # flatter old-age slope
        ("ARC3", lambda c, mid: c * (1.0 + 0.15 * mid / 100.0)),  # steeper old-age slope
        ("ARC4", lambda c, mid: c * 1.10),  # uniformly more expensive
    ):
        for lo, c in zip(COHORTS, arc1):
            lines.append(f"{pid},{lo},{lo + 4},{transform(c, lo + 2.5):.2f}")
    (DATA / "cost_profile.csv").write_text("\n".join(lines) + "\n")

    # ------------------------------------------------------------- D/S ratio
    lines = ["scenario,cohort_lo,cohort_hi,ratio"]
    for scen, stretch in (("central", 1.0), ("low", 0.75), ("high", 1.25)):
        for lo in COHORTS:
            mid = lo + 2.5
            central = min(16.0, max(2.2, 16.0 - 0.14 * mid))
            ratio = 1.0 + (central - 1.0) * stretch
            lines.append(f"{scen},{lo},{lo + 4},{ratio:.3f}")
    (DATA / "ds_ratio.csv").write_text("\n".join(lines) + "\n")

    # -------------------------------------------------------- relative risks
    lines = [
        "cohort_lo,cohort_hi,rr_lower,rr_upper,diluted,source_tag",
        "0,14,1.00,1.00,1,no_effect_children",
        "15,24,2.30,3.20,0,youth_cohort",
        "25,59,1.47,2.03,0,cohort_pool",
        "15,64,1.035,1.085,1,downturn_a",
        "15,64,1.02,1.06,1,downturn_b",
        "65,99,1.00,1.02,1,weak_elderly_signal",
    ]
    (DATA / "rr_mortality.csv").write_text("\n".join(lines) + "\n")

    (DATA / "rr_utilization_lower.csv").write_text(
        "service,rr,diluted\n"
        "H,1.33,0\nS,1.63,0\nGP,1.20,0\nP,1.00,1\nR,1.00,1\nm,1.00,1\n"
    )
    (DATA / "rr_utilization_upper.csv").write_text(
        "service,rr,diluted\n"
        "H,2.00,0\nS,1.63,0\nGP,1.57,0\nP,1.00,1\nR,1.00,1\nm,1.00,1\n"
    )

    (DATA / "shares.csv").write_text(
        "service,fraction\nH,0.71\nP,0.10\nS,0.04\nGP,0.06\nR,0.02\nm,0.07\n"
    )

    # -------------------------------------------------------------------- GDP
    lines = ["date,eur_millions"]
    for date in DATES:
        if date <= 2015:
            gdp = GDP_2010  # crisis-flat nominal GDP
        else:
            gdp = round(GDP_2010 * 1.02 ** ((date - 2015) / 5))
        lines.append(f"{date},{gdp}")
    (DATA / "gdp.csv").write_text("\n".join(lines) + "\n")

    # --------------------------------------------------------------- manifest
    (DATA / "manifest.txt").write_text(
        "\n".join(
            [
                "# run manifest for the bundled fixture dataset",
                "data.population = population.csv",
                "data.mortality = mortality.csv",
                "data.rr_mortality = rr_mortality.csv",
                "data.rr_utilization_lower = rr_utilization_lower.csv",
                "data.rr_utilization_upper = rr_utilization_upper.csv",
                "data.cost_profiles = cost_profile.csv",
                "data.ds_ratios = ds_ratio.csv",
                "data.shares = shares.csv",
                "data.gdp = gdp.csv",
                "",
                "scenario.population = PopMV",
                "scenario.model = DC",
                "scenario.cost_profile = ARC1",
                "scenario.ds_scenario = central",
                "scenario.rr_selection = upper",
                "scenario.rf_selection = upper",
                "scenario.shock_date = 2015",
                "scenario.unemployment_rate = 0.10",
                "scenario.envelope_policy = population_level",
                "",
                "params.health_improvement_rate = 0.25",
                "params.utilization = 1.0",
                "",
                "project.scenarios = PopSV-1.7,PopSV-1.3",
                "project.birth_rates = 0.017,0.013",
                "project.initial = PopMV",
                "project.horizon = 2060",
                "",
                "sensitivity.models = CH,DC",
                "sensitivity.populations = PopMV,PopLV",
                "sensitivity.rr_values = lower,upper",
                "sensitivity.rf_values = lower,upper",
            ]
        )
        + "\n"
    )

    total_2010 = sum(POP_2010)
    exp_2010 = sum(n * c for n, c in zip(POP_2010, arc1)) / 1000.0
    print(f"2010 population: {total_2010} thousand")
    print(f"2010 ARC1 expenditure: {exp_2010:.1f} EUR millions")


if __name__ == "__main__":
    main()
