"""Run manifests: flat key-value files that wire data files to scenarios.

Format: one ``key = value`` pair per line, ``#`` comments, nested
structure expressed with dotted keys. Relative paths resolve against the
manifest's directory. All referenced input files are located and parsed
before any computation starts; nothing is written if any of them fails
validation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from . import io
from .errors import ValidationError
from .expenditure import ModelParameters
from .impact import ScenarioConfig, ScenarioInputs, parse_selector
from .relative_risk import LaborMarketState, build_rr_envelope

__all__ = ["RunManifest", "parse_manifest"]

#: data.* keys a full impact evaluation needs.
IMPACT_DATA_KEYS = (
    "data.population",
    "data.mortality",
    "data.rr_mortality",
    "data.rr_utilization_lower",
    "data.rr_utilization_upper",
    "data.cost_profiles",
    "data.ds_ratios",
    "data.shares",
    "data.gdp",
)


@dataclass
class RunManifest:
    """Parsed manifest: raw keys plus the directory they resolve against."""

    source: Path
    values: dict[str, str] = field(default_factory=dict)

    # -------------------------------------------------------------- accessors

    def get(self, key: str, default: str | None = None) -> str | None:
        return self.values.get(key, default)

    def require(self, key: str) -> str:
        if key not in self.values:
            raise ValidationError(f"{self.source}: manifest is missing key {key!r}")
        return self.values[key]

    def get_float(self, key: str, default: float) -> float:
        raw = self.values.get(key)
        if raw is None:
            return default
        try:
            return float(raw)
        except ValueError:
            raise ValidationError(f"{self.source}: key {key!r}: {raw!r} is not a number") from None

    def get_int(self, key: str, default: int) -> int:
        raw = self.values.get(key)
        if raw is None:
            return default
        try:
            return int(raw)
        except ValueError:
            raise ValidationError(
                f"{self.source}: key {key!r}: {raw!r} is not an integer"
            ) from None

    def get_list(self, key: str) -> list[str]:
        raw = self.require(key)
        items = [item.strip() for item in raw.split(",") if item.strip()]
        if not items:
            raise ValidationError(f"{self.source}: key {key!r} lists no items")
        return items

    def path(self, key: str) -> Path:
        p = Path(self.require(key))
        if not p.is_absolute():
            p = self.source.parent / p
        return p

    def paths(self, key: str) -> list[Path]:
        out = []
        for item in self.get_list(key):
            p = Path(item)
            if not p.is_absolute():
                p = self.source.parent / p
            out.append(p)
        return out

    # ---------------------------------------------------------- scenario glue

    def labor(self) -> LaborMarketState:
        return LaborMarketState(self.get_float("scenario.unemployment_rate", 0.10))

    def scenario_config(self) -> ScenarioConfig:
        return ScenarioConfig(
            population=self.require("scenario.population"),
            model=self.require("scenario.model"),
            cost_profile=self.require("scenario.cost_profile"),
            ds_scenario=self.require("scenario.ds_scenario"),
            rr_selection=parse_selector(self.get("scenario.rr_selection", "upper")),
            rf_selection=parse_selector(self.get("scenario.rf_selection", "upper")),
            shock_date=self.get_int("scenario.shock_date", 2015),
            labor=self.labor(),
            envelope_policy=self.get("scenario.envelope_policy", "population_level"),
        )

    def model_parameters(self, gdp: dict[int, float] | None) -> ModelParameters:
        return ModelParameters(
            utilization=self.get_float("params.utilization", 1.0),
            health_improvement_rate=self.get_float("params.health_improvement_rate", 0.25),
            gdp=gdp,
        )

    def load_inputs(self) -> ScenarioInputs:
        """Parse every data input and assemble the scenario bundle.

        Fail-fast: any missing file or schema violation raises before the
        caller computes or writes anything.
        """
        for key in IMPACT_DATA_KEYS:
            self.require(key)

        populations = {}
        grid = None
        for p in self.paths("data.population"):
            for name, path_obj in io.read_population_csv(p).items():
                if name in populations:
                    raise ValidationError(f"{p}: duplicate population scenario {name!r}")
                populations[name] = path_obj
                if grid is None:
                    grid = path_obj.grid
                elif path_obj.grid != grid:
                    raise ValidationError(f"{p}: population grids differ across files")

        mortality = io.read_mortality_csv(self.path("data.mortality"))
        if mortality.grid != grid:
            raise ValidationError("mortality table grid differs from the population grid")

        labor = self.labor()
        records = io.read_rr_mortality_csv(self.path("data.rr_mortality"))
        rr_mortality = build_rr_envelope(
            records, labor, grid, policy=self.get("scenario.envelope_policy", "population_level")
        )
        rr_utilization = {
            "lower": io.read_rr_utilization_csv(self.path("data.rr_utilization_lower"), labor),
            "upper": io.read_rr_utilization_csv(self.path("data.rr_utilization_upper"), labor),
        }
        cost_profiles = io.read_cost_profiles_csv(self.path("data.cost_profiles"), grid)
        ds_profiles = io.read_ds_ratios_csv(self.path("data.ds_ratios"), grid)
        shares = io.read_shares_csv(self.path("data.shares"))
        gdp = io.read_gdp_csv(self.path("data.gdp"))

        return ScenarioInputs(
            grid=grid,
            populations=populations,
            mortality=mortality,
            rr_mortality=rr_mortality,
            rr_utilization=rr_utilization,
            cost_profiles=cost_profiles,
            ds_profiles=ds_profiles,
            shares=shares,
            params=self.model_parameters(gdp),
        )


def parse_manifest(path) -> RunManifest:
    source = Path(path)
    if not source.exists():
        raise ValidationError(f"{source}: manifest file does not exist")
    values: dict[str, str] = {}
    for lineno, raw in enumerate(source.read_text().splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValidationError(f"{source}:{lineno}: expected 'key = value', got {raw!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if not key:
            raise ValidationError(f"{source}:{lineno}: empty key")
        if key in values:
            raise ValidationError(f"{source}:{lineno}: duplicate key {key!r}")
        values[key] = value
    return RunManifest(source=source, values=values)
