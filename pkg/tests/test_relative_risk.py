import numpy as np
import pytest
from hypothesis import given, strategies as st

from hcimpact import (
    LaborMarketState,
    MortalityTable,
    RelativeRisk,
    StudyRecord,
    ValidationError,
    apply_mortality_shock,
    build_rr_envelope,
    dilute_relative_risk,
)

from conftest import grid_of


class TestDilution:
    @pytest.mark.parametrize(
        "rr, expected",
        [(1.20, 1.02), (1.57, 1.057), (1.33, 1.033), (2.00, 1.10), (1.63, 1.063)],
    )
    def test_reference_values_at_ten_percent_unemployment(self, rr, expected):
        out = dilute_relative_risk(RelativeRisk(rr), LaborMarketState(0.10))
        assert out.diluted
        assert out.value == pytest.approx(expected, abs=1e-12)

    def test_unit_risk_is_fixed_point(self):
        out = dilute_relative_risk(RelativeRisk(1.0), LaborMarketState(0.37))
        assert out.value == 1.0

    def test_rejects_negative_risk(self):
        with pytest.raises(ValidationError):
            RelativeRisk(-0.1)

    def test_rejects_unemployment_outside_unit_interval(self):
        with pytest.raises(ValidationError):
            LaborMarketState(1.5)
        with pytest.raises(ValidationError):
            LaborMarketState(-0.01)

    def test_rejects_already_diluted_input(self):
        with pytest.raises(ValidationError):
            dilute_relative_risk(RelativeRisk(1.2, diluted=True), LaborMarketState(0.1))

    @given(lo=st.floats(0.0, 50.0), hi=st.floats(0.0, 50.0), w=st.floats(0.0, 1.0))
    def test_monotone_in_risk(self, lo, hi, w):
        a, b = sorted((lo, hi))
        labor = LaborMarketState(w)
        da = dilute_relative_risk(RelativeRisk(a), labor).value
        db = dilute_relative_risk(RelativeRisk(b), labor).value
        assert da <= db
        if w > 1e-9 and b - a > 1e-9:  # strict once the gap is representable
            assert da < db

    @given(rr=st.floats(1.0, 50.0), w1=st.floats(0.0, 1.0), w2=st.floats(0.0, 1.0))
    def test_monotone_in_unemployment_above_one(self, rr, w1, w2):
        a, b = sorted((w1, w2))
        da = dilute_relative_risk(RelativeRisk(rr), LaborMarketState(a)).value
        db = dilute_relative_risk(RelativeRisk(rr), LaborMarketState(b)).value
        assert da <= db
        if (b - a) * (rr - 1.0) > 1e-9:
            assert da < db

    @given(rr=st.floats(0.0, 50.0), w=st.floats(0.0, 1.0))
    def test_dilution_bounds(self, rr, w):
        d = dilute_relative_risk(RelativeRisk(rr), LaborMarketState(w)).value
        if rr >= 1.0:
            assert 1.0 <= d <= rr
        else:
            assert rr <= d <= 1.0

    @given(rr=st.floats(0.0, 50.0))
    def test_endpoints_exact(self, rr):
        assert dilute_relative_risk(RelativeRisk(rr), LaborMarketState(0.0)).value == 1.0
        assert dilute_relative_risk(RelativeRisk(rr), LaborMarketState(1.0)).value == rr


class TestMortalityShock:
    def _table(self, grid, fill):
        return MortalityTable(grid, np.full((grid.n_cohorts, grid.n_dates), fill))

    def test_unit_risks_leave_table_unchanged(self):
        grid = grid_of(4, 3)
        table = self._table(grid, 0.12)
        out = apply_mortality_shock(table, np.ones(4), 2015)
        assert np.array_equal(out.death_prob, table.death_prob)

    def test_rescales_only_the_window_column(self):
        grid = grid_of(3, 3)
        table = self._table(grid, 0.04)
        out = apply_mortality_shock(table, np.full(3, 1.25), 2015)
        # element-wise recomputation oracle
        for a in range(grid.n_cohorts):
            for j, date in enumerate(grid.dates):
                expected = 0.04 * 1.25 if date == 2015 else 0.04
                assert out.death_prob[a, j] == pytest.approx(expected, abs=1e-15)
        assert out.death_prob[0, grid.date_index(2015)] == pytest.approx(0.05)
        assert out.death_prob[0, grid.date_index(2020)] == 0.04

    def test_clamps_to_probability_range(self):
        grid = grid_of(2, 2)
        table = self._table(grid, 0.90)
        out = apply_mortality_shock(table, np.full(2, 1.30), 2010)
        assert np.all(out.death_prob[:, 0] == 1.0)

    def test_rejects_window_off_grid(self):
        grid = grid_of(2, 2)
        with pytest.raises(ValidationError):
            apply_mortality_shock(self._table(grid, 0.1), np.ones(2), 2013)

    def test_rejects_incomplete_risk_vector(self):
        grid = grid_of(3, 2)
        with pytest.raises(ValidationError):
            apply_mortality_shock(self._table(grid, 0.1), np.ones(2), 2010)

    @given(
        n=st.integers(2, 8),
        d=st.integers(1, 5),
        j=st.integers(0, 4),
        seed=st.integers(0, 2**31),
    )
    def test_difference_vanishes_outside_window(self, n, d, j, seed):
        j = j % d
        rng = np.random.default_rng(seed)
        grid = grid_of(n, d)
        table = MortalityTable(grid, rng.uniform(0, 1, (n, d)))
        rr = rng.uniform(0, 3, n)
        out = apply_mortality_shock(table, rr, grid.dates[j])
        diff = out.death_prob - table.death_prob
        mask = np.ones(d, bool)
        mask[j] = False
        assert np.all(diff[:, mask] == 0.0)
        assert np.all(out.death_prob >= 0.0) and np.all(out.death_prob <= 1.0)


class TestEnvelope:
    def test_singleton_record(self):
        grid = grid_of(3, 1)
        labor = LaborMarketState(0.10)
        records = [
            StudyRecord(0, 9, 1.0, 1.0, diluted=True),
            StudyRecord(10, 14, 1.05, 1.05, diluted=True, source="single"),
        ]
        table = build_rr_envelope(records, labor, grid)
        assert table.lower[2] == table.upper[2] == 1.05

    def test_overlapping_intervals_intersect(self):
        # interval-intersection oracle: [1.02,1.08] ^ [1.05,1.12] = [1.05,1.08]
        grid = grid_of(2, 1)
        records = [
            StudyRecord(0, 9, 1.02, 1.08, diluted=True, source="a"),
            StudyRecord(0, 9, 1.05, 1.12, diluted=True, source="b"),
        ]
        table = build_rr_envelope(records, LaborMarketState(0.1), grid)
        assert np.allclose(table.lower, 1.05)
        assert np.allclose(table.upper, 1.08)

    def test_disjoint_policy_table(self):
        # enumerate both policies over the same disjoint pair
        grid = grid_of(2, 1)
        records = [
            StudyRecord(0, 9, 1.30, 1.40, diluted=False, source="unemployed_only"),
            StudyRecord(0, 9, 1.01, 1.02, diluted=True, source="population_wide"),
        ]
        labor = LaborMarketState(0.10)  # dilutes the first to [1.03, 1.04]: disjoint
        pop = build_rr_envelope(records, labor, grid, policy="population_level")
        assert np.allclose(pop.lower, 1.01) and np.allclose(pop.upper, 1.02)
        hull = build_rr_envelope(records, labor, grid, policy="hull")
        assert np.allclose(hull.lower, 1.01) and np.allclose(hull.upper, 1.04)

    def test_undiluted_records_are_normalized_first(self):
        grid = grid_of(1, 1)
        records = [StudyRecord(0, 4, 2.0, 3.0, diluted=False)]
        table = build_rr_envelope(records, LaborMarketState(0.10), grid)
        assert table.lower[0] == pytest.approx(1.10, abs=1e-12)
        assert table.upper[0] == pytest.approx(1.20, abs=1e-12)

    def test_empty_record_set_rejected(self):
        with pytest.raises(ValidationError):
            build_rr_envelope([], LaborMarketState(0.1), grid_of(2, 1))

    def test_uncovered_cohort_rejected(self):
        records = [StudyRecord(0, 4, 1.0, 1.1, diluted=True)]
        with pytest.raises(ValidationError, match="no study record covers"):
            build_rr_envelope(records, LaborMarketState(0.1), grid_of(3, 1))

    def test_disjoint_without_population_level_record_rejected(self):
        records = [
            StudyRecord(0, 4, 1.01, 1.02, diluted=False),
            StudyRecord(0, 4, 3.00, 4.00, diluted=False),
        ]
        with pytest.raises(ValidationError, match="no population-level record"):
            build_rr_envelope(records, LaborMarketState(1.0), grid_of(1, 1))

    def test_unknown_policy_rejected(self):
        records = [StudyRecord(0, 4, 1.0, 1.1, diluted=True)]
        with pytest.raises(ValidationError, match="envelope policy"):
            build_rr_envelope(records, LaborMarketState(0.1), grid_of(1, 1), policy="newest")
