"""Differential crisis-impact estimators and the sensitivity sweep.

The two estimators difference the same expenditure functional at the
shock date under a perturbed versus a base input, everything else held
identical:

* mortality impact: base mortality table versus the table rescaled by
  per-cohort relative risks at the shock date only;
* utilization impact: base cost profile versus the profile uniformly
  rescaled by the service-mix factor.

Because both evaluations share model, population and parameters, any
systematic error nets out and the difference is exactly zero when the
perturbation is trivial.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Mapping, Sequence

import numpy as np

from .errors import NumericalError, ValidationError
from .expenditure import (
    MODELS,
    CostProfile,
    DSRatioProfile,
    ExpenditureShares,
    ModelParameters,
    evaluate_model,
    rescaling_factor,
)
from .grid import CohortGrid
from .population import MortalityTable, PopulationPath
from .relative_risk import (
    LaborMarketState,
    MortalityRRTable,
    UtilizationRRSet,
    apply_mortality_shock,
)

__all__ = [
    "ScenarioConfig",
    "ScenarioInputs",
    "ImpactResult",
    "GridRow",
    "crimi",
    "criui",
    "cri",
    "sensitivity_grid",
    "parse_selector",
    "gdp_share_pct",
]

BOUND_SELECTORS = ("lower", "upper")


def parse_selector(text: str) -> str | float:
    """Parse a bound selector: ``lower``, ``upper`` or a uniform numeric value."""
    t = text.strip()
    if t in BOUND_SELECTORS:
        return t
    try:
        return float(t)
    except ValueError:
        raise ValidationError(
            f"selector {text!r} is neither 'lower', 'upper' nor a number"
        ) from None


def gdp_share_pct(value_eur_m: float, gdp_eur_m: float) -> float:
    """Express an EUR-millions value as a percentage of GDP."""
    if not np.isfinite(gdp_eur_m) or gdp_eur_m <= 0.0:
        raise ValidationError(f"GDP must be positive, got {gdp_eur_m}")
    return value_eur_m / gdp_eur_m * 100.0


@dataclass(frozen=True)
class ScenarioConfig:
    """Everything needed to evaluate one crisis scenario against its base."""

    population: str
    model: str
    cost_profile: str
    ds_scenario: str
    rr_selection: str | float = "upper"
    rf_selection: str | float = "upper"
    shock_date: int = 2015
    labor: LaborMarketState = LaborMarketState(0.10)
    envelope_policy: str = "population_level"


@dataclass(frozen=True, eq=False)
class ScenarioInputs:
    """Resolved data bundle the estimators draw from."""

    grid: CohortGrid
    populations: Mapping[str, PopulationPath]
    mortality: MortalityTable
    rr_mortality: MortalityRRTable
    rr_utilization: Mapping[str, UtilizationRRSet]  # keyed "lower" / "upper"
    cost_profiles: Mapping[str, CostProfile]
    ds_profiles: Mapping[str, DSRatioProfile]
    shares: ExpenditureShares
    params: ModelParameters = ModelParameters()


def _resolve(mapping: Mapping[str, object], key: str, what: str):
    try:
        return mapping[key]
    except KeyError:
        valid = ", ".join(sorted(map(str, mapping))) or "(none)"
        raise ValidationError(f"unknown {what} {key!r}; valid ids: {valid}") from None


def _resolve_model(model: str) -> str:
    if model not in MODELS:
        raise ValidationError(f"unknown model {model!r}; valid ids: {', '.join(MODELS)}")
    return model


def _rr_vector(config: ScenarioConfig, inputs: ScenarioInputs) -> np.ndarray:
    sel = config.rr_selection
    if isinstance(sel, str):
        return inputs.rr_mortality.select(sel)
    return MortalityRRTable.uniform(inputs.grid, sel).select("lower")


def resolve_rf(config: ScenarioConfig, inputs: ScenarioInputs) -> float:
    """The rescaling factor for the configured utilization selection."""
    sel = config.rf_selection
    if isinstance(sel, str):
        if sel not in inputs.rr_utilization:
            raise ValidationError(
                f"no utilization risk set {sel!r}; valid ids: "
                f"{', '.join(sorted(inputs.rr_utilization))}"
            )
        return rescaling_factor(inputs.shares, inputs.rr_utilization[sel])
    rf = float(sel)
    if not np.isfinite(rf) or rf < 0.0:
        raise ValidationError(f"uniform rescaling factor must be >= 0, got {rf}")
    return rf


@dataclass(frozen=True)
class ImpactResult:
    """Differential impact at the evaluation date, EUR millions."""

    date: int
    crimi: float
    criui: float
    gdp: float | None = None  # GDP at the evaluation date, EUR millions

    def __post_init__(self) -> None:
        if not np.isfinite(self.crimi) or not np.isfinite(self.criui):
            raise NumericalError("impact components must be finite")

    @property
    def cri(self) -> float:
        return self.crimi + self.criui

    def _share(self, value: float) -> float:
        if self.gdp is None:
            raise ValidationError("no GDP available at the evaluation date")
        return gdp_share_pct(value, self.gdp)

    @property
    def crimi_gdp_pct(self) -> float:
        return self._share(self.crimi)

    @property
    def criui_gdp_pct(self) -> float:
        return self._share(self.criui)

    @property
    def cri_gdp_pct(self) -> float:
        return self._share(self.cri)


def _evaluations(config: ScenarioConfig, inputs: ScenarioInputs):
    """Resolve a config and return (base value, shocked value, rescaled value, rf)."""
    model = _resolve_model(config.model)
    pop: PopulationPath = _resolve(inputs.populations, config.population, "population scenario")
    costs: CostProfile = _resolve(inputs.cost_profiles, config.cost_profile, "cost profile")
    ds: DSRatioProfile = _resolve(inputs.ds_profiles, config.ds_scenario, "D/S scenario")
    params = inputs.params
    t = config.shock_date

    base = evaluate_model(model, pop, costs, ds, inputs.mortality, params).value_at(t)

    shocked_mortality = apply_mortality_shock(inputs.mortality, _rr_vector(config, inputs), t)
    shocked = evaluate_model(model, pop, costs, ds, shocked_mortality, params).value_at(t)

    rf = resolve_rf(config, inputs)
    rescaled = evaluate_model(model, pop, costs.scaled(rf), ds, inputs.mortality, params).value_at(t)
    return base, shocked, rescaled, rf


def crimi(config: ScenarioConfig, inputs: ScenarioInputs) -> float:
    """Mortality-impact differential at the shock date, EUR millions.

    The perturbed evaluation uses a mortality table rescaled at the
    shock date only; all other inputs are the base ones. Note the model
    asymmetry: mortality reaches PD and CH only through the population
    path, which at the shock date predates the shock's survival effect,
    so their mortality impact is exactly zero there and the DC model
    carries the whole effect.
    """
    base, shocked, _, _ = _evaluations(config, inputs)
    return shocked - base


def criui(config: ScenarioConfig, inputs: ScenarioInputs) -> float:
    """Utilization-impact differential at the shock date, EUR millions.

    Equals (RF - 1) times base expenditure since every model is linear
    in the cost profile; computed here by the double evaluation to keep
    the identity assertable rather than assumed.
    """
    base, _, rescaled, _ = _evaluations(config, inputs)
    return rescaled - base


def cri(config: ScenarioConfig, inputs: ScenarioInputs) -> ImpactResult:
    """Both impact components from one shared base evaluation."""
    base, shocked, rescaled, _ = _evaluations(config, inputs)
    gdp = None
    if inputs.params.gdp is not None:
        gdp = inputs.params.gdp.get(config.shock_date)
    return ImpactResult(
        date=config.shock_date,
        crimi=shocked - base,
        criui=rescaled - base,
        gdp=gdp,
    )


@dataclass(frozen=True)
class GridRow:
    """One sensitivity-grid cell: its coordinates plus the impact result."""

    model: str
    pop_scenario: str
    rr_selector: str | float
    rf: float  # resolved numeric rescaling factor
    result: ImpactResult


def sensitivity_grid(
    base: ScenarioConfig,
    inputs: ScenarioInputs,
    rr_values: Sequence[str | float],
    rf_values: Sequence[str | float],
    models: Sequence[str],
    pop_scenarios: Sequence[str],
) -> list[GridRow]:
    """Evaluate the full Cartesian product of scenario overrides.

    Axis entries for the risk selections are either the bound names of
    the input tables or uniform-across-cohorts numeric values. Rows come
    out in deterministic axis-coordinate order
    (model, population, mortality RR, RF).
    """
    for name, axis in (
        ("models", models),
        ("population scenarios", pop_scenarios),
        ("mortality RR values", rr_values),
        ("RF values", rf_values),
    ):
        if len(axis) == 0:
            raise ValidationError(f"empty sensitivity axis: {name}")

    rows = []
    for model in models:
        for pop in pop_scenarios:
            for rr_sel in rr_values:
                for rf_sel in rf_values:
                    config = replace(
                        base,
                        model=model,
                        population=pop,
                        rr_selection=rr_sel,
                        rf_selection=rf_sel,
                    )
                    rows.append(
                        GridRow(
                            model=model,
                            pop_scenario=pop,
                            rr_selector=rr_sel,
                            rf=resolve_rf(config, inputs),
                            result=cri(config, inputs),
                        )
                    )
    return rows
