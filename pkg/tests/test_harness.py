import json
from pathlib import Path

import pytest

from rmga.core import ConfigurationError, GridTooLargeError
from rmga.harness import (
    DE_GENERATIONS,
    REFERENCE_PNG,
    REFERENCE_TRM,
    RunReport,
    aggregate,
    format_decimal,
    grid_oracle,
    png_table,
    reachability_oracle,
    render,
    run_replicates,
    run_suite,
)
from rmga.objectives import get
from rmga.optimizer import RmConfig, Termination

GOLDEN = Path(__file__).parent / "golden"


def report(function="f1", bp=0.0, trm=1, seed=0):
    return RunReport(
        function=function,
        rms=0.1,
        trm=trm,
        best_point=(0.0, 0.0, 0.0),
        bp=bp,
        seed=seed,
        wall_time=0.0,
        terminated_by=Termination.STALLED,
    )


class TestRunReplicates:
    def test_noise_free_replicates_are_identical(self, config):
        reports = run_replicates(get("f1"), config, 3, base_seed=0)
        assert [r.seed for r in reports] == [0, 1, 2]
        assert len({(r.best_point, r.bp, r.trm) for r in reports}) == 1

    def test_noisy_replicates_differ(self, config):
        reports = run_replicates(get("f4"), config, 3, base_seed=0)
        assert len({r.bp for r in reports}) > 1

    def test_singleton(self, config):
        reports = run_replicates(get("quad"), config, 1)
        assert len(reports) == 1
        assert reports[0].bp == 0.0
        assert reports[0].wall_time >= 0.0

    def test_replicates_must_be_positive(self, config):
        with pytest.raises(ValueError):
            run_replicates(get("quad"), config, 0)

    def test_bp_is_noise_free_rescore_of_best_point(self, config):
        from rmga.objectives import evaluate_noise_free

        for r in run_replicates(get("f4"), config, 2):
            assert r.bp == evaluate_noise_free(get("f4"), r.best_point)


class TestAggregate:
    def test_identical_bps_have_zero_sd(self):
        s = aggregate([report(bp=0.0, seed=i) for i in range(3)])
        assert s.mean_bp == 0.0 and s.sd_bp == 0.0

    def test_population_sd(self):
        s = aggregate([report(bp=1.0, seed=0), report(bp=3.0, seed=1)])
        assert s.mean_bp == 2.0
        assert s.sd_bp == 1.0

    def test_single_report(self):
        s = aggregate([report(bp=5.0, trm=7)])
        assert s.mean_bp == 5.0 and s.sd_bp == 0.0
        assert s.mean_trm == 7.0 and s.min_trm == s.max_trm == 7

    def test_permutation_invariant(self):
        reports = [report(bp=float(b), seed=i) for i, b in enumerate((1, 4, 2, 8))]
        a = aggregate(reports)
        b = aggregate(list(reversed(reports)))
        assert (a.mean_bp, a.sd_bp, a.mean_trm) == (b.mean_bp, b.sd_bp, b.mean_trm)

    def test_empty_is_usage_error(self):
        with pytest.raises(ValueError):
            aggregate([])


class TestPngTable:
    def test_ratio_against_de_baseline(self):
        summaries = [aggregate([report(function="f1", trm=52)])]
        table = png_table(summaries)
        assert table.entries[0].baseline_generations == 260.0
        assert table.entries[0].ratio == 5.0

    def test_zero_trm_is_undefined_not_infinite(self):
        summaries = [aggregate([report(function="f3", trm=0)])]
        entry = png_table(summaries).entries[0]
        assert entry.ratio is None

    def test_functions_without_baseline_are_skipped(self):
        summaries = [aggregate([report(function="quad", trm=5)])]
        assert png_table(summaries).entries == ()

    def test_reference_constants(self):
        assert DE_GENERATIONS == {"f1": 260.0, "f2": 670.0, "f3": 125.0, "f4": 2300.0, "f5": 1200.0}
        assert REFERENCE_TRM == {"f1": 78, "f2": 16, "f3": 7, "f4": 195, "f5": 340}
        assert REFERENCE_PNG == {"f1": 3.333, "f2": 41.875, "f3": 17.857, "f4": 11.794, "f5": 3.529}


class TestGridOracle:
    def test_quad_grid_hits_the_optimum_exactly(self):
        assert grid_oracle(get("quad"), 0.1) == ((0.0, 0.4), 0.0)
        assert grid_oracle(get("quad"), 0.05) == ((0.0, 0.4), 0.0)

    def test_beale_coarse_grid(self):
        # (3, 0.5) sits on the 0.5 grid from -4.5
        assert grid_oracle(get("beale"), 0.5) == ((3.0, 0.5), 0.0)

    def test_f3_floor_region(self):
        point, value = grid_oracle(get("f3"), 0.64)
        assert value == 0.0
        assert point == (-5.12,) * 5
        assert all(c <= -5.0 for c in point)

    def test_f1_coarse_grid(self):
        assert grid_oracle(get("f1"), 0.32) == ((0.0, 0.0, 0.0), 0.0)

    def test_f2_fine_grid(self):
        point, value = grid_oracle(get("f2"), 0.05)
        assert point == (1.002, 1.002)
        assert value == pytest.approx(4.056016e-4, rel=1e-9)

    def test_too_many_points_rejected(self):
        with pytest.raises(GridTooLargeError):
            grid_oracle(get("f5"), 1e-4)
        with pytest.raises(GridTooLargeError):
            grid_oracle(get("f4"), 0.64)  # 30 axes overflow any budget

    def test_resolution_must_be_positive(self):
        with pytest.raises(ValueError):
            grid_oracle(get("quad"), 0.0)


class TestReachabilityOracle:
    def test_quad_optimum_is_reachable_exactly(self, config):
        rep = reachability_oracle(get("quad"), config)
        assert rep.optimum_reachable is True
        assert rep.best_point == (0.0, 0.4)
        assert rep.best_value == 0.0
        assert rep.visited == 3281  # both parity classes of the 0.05 lattice
        assert not rep.truncated

    def test_f2_best_reachable_point(self, config):
        # (1, 1) itself is off-lattice from the (2.048, 2.048) corner, but
        # (0.998, 0.998) is on it and scores ~4e-4
        rep = reachability_oracle(get("f2"), config)
        assert rep.optimum_reachable is False
        assert rep.best_point == (0.998, 0.998)
        assert rep.best_value == pytest.approx(4.024016e-4, rel=1e-9)
        assert not rep.truncated

    def test_beale_optimum_reachable(self, config):
        rep = reachability_oracle(get("beale"), config)
        assert rep.optimum_reachable is True
        assert rep.best_value == 0.0

    def test_budget_truncation(self, config):
        rep = reachability_oracle(get("beale"), config, budget=500)
        assert rep.truncated
        assert rep.visited >= 500
        assert rep.optimum_reachable is None  # not seen before the cut-off

    def test_dimension_cap(self, config):
        with pytest.raises(ConfigurationError):
            reachability_oracle(get("f3"), config)


class TestFormatDecimal:
    def test_plain_decimals(self):
        assert format_decimal(0.1) == "0.1"
        assert format_decimal(-32.036) == "-32.036"
        assert format_decimal(0.0) == "0"

    def test_twelve_significant_digits(self):
        assert format_decimal(0.24571356160000007) == "0.2457135616"
        assert format_decimal(169680.83203125) == "169680.832031"

    def test_no_scientific_notation_below_1e6(self):
        s = format_decimal(8.512610354191582e-31)
        assert "e" not in s and "E" not in s
        assert s.startswith("0.000000000000000000")

    def test_scientific_allowed_at_large_magnitudes(self):
        assert "e" in format_decimal(1.5e12)


class TestRender:
    def suite(self, replicates=2):
        return run_suite(RmConfig(), replicates=replicates)

    def test_csv_header_and_shape(self):
        report = self.suite(replicates=3)
        lines = render(report, "csv").decode().splitlines()
        assert lines[0] == "function,rms,trm,best_point,bp,sd,seed,terminated_by"
        assert len(lines) == 1 + 7 * 3

    def test_csv_f2_line_prefix(self):
        report = self.suite(replicates=1)
        lines = render(report, "csv").decode().splitlines()
        f2 = [ln for ln in lines if ln.startswith("f2,")]
        assert f2 and f2[0].startswith("f2,0.1,")

    def test_render_is_pure(self):
        report = self.suite(replicates=1)
        for fmt in ("text", "csv", "json"):
            assert render(report, fmt) == render(report, fmt)

    def test_unknown_format(self):
        with pytest.raises(ConfigurationError):
            render(self.suite(1), "yaml")

    def test_json_mirrors_field_names(self):
        doc = json.loads(render(self.suite(replicates=1), "json"))
        assert set(doc) == {"summaries", "png", "seeds", "config", "timestamp"}
        assert doc["timestamp"] is None
        f1 = doc["summaries"][0]
        assert f1["function"] == "f1"
        assert f1["reports"][0]["terminated_by"] == "Stalled"
        assert "wall_time" not in f1["reports"][0]  # volatile, never rendered

    def test_text_contains_png_row_and_noise_footnote(self):
        text = render(self.suite(replicates=1), "text").decode()
        assert "png" in text and "undef" in text  # f3 has trm 0
        assert "noisy objective" in text
        assert "published_png" in text

    @pytest.mark.parametrize("fmt", ["csv", "json", "text"])
    def test_golden_files(self, fmt):
        report = self.suite(replicates=2)
        golden = (GOLDEN / f"suite.{fmt}").read_bytes()
        assert render(report, fmt) == golden
