#!/usr/bin/env python3
"""A sensitivity sweep over models, populations and both risk axes.

The grid is the Cartesian product of its axes; each cell is an
independent pure evaluation, so the row order is exactly the coordinate
order and reruns are bit-identical. Mortality-risk entries may be the
envelope bounds or uniform-across-cohorts values.
"""

from pathlib import Path

from hcimpact import sensitivity_grid
from hcimpact.manifest import parse_manifest

DATA = Path(__file__).resolve().parents[1] / "data"


def main() -> None:
    manifest = parse_manifest(DATA / "manifest.txt")
    inputs = manifest.load_inputs()
    base = manifest.scenario_config()

    rows = sensitivity_grid(
        base,
        inputs,
        rr_values=["lower", "upper", 1.5],  # envelope bounds plus a uniform stress
        rf_values=["lower", "upper"],
        models=["CH", "DC"],
        pop_scenarios=["PopMV", "PopLV"],
    )

    print(f"{len(rows)} grid cells (2 models x 2 populations x 3 RR x 2 RF)\n")
    print("model  pop     rr      rf       crimi      criui     cri %GDP")
    print("-" * 62)
    for r in rows:
        rr = r.rr_selector if isinstance(r.rr_selector, str) else f"{r.rr_selector:g}"
        print(
            f"{r.model:<5s}  {r.pop_scenario:<6s}  {rr:<6s} {r.rf:.5f} "
            f"{r.result.crimi:>10.1f} {r.result.criui:>10.1f}     {r.result.cri_gdp_pct:.3f}"
        )

    cris = [r.result.cri for r in rows]
    lo, hi = min(cris), max(cris)
    print(f"\nCRI range: {lo:,.0f} .. {hi:,.0f} EUR millions")


if __name__ == "__main__":
    main()
