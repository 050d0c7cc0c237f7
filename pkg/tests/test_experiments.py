"""Tests for experiment drivers and reports."""

import numpy as np
import pytest

from repulse_quad.common.exceptions import ValidationError
from repulse_quad.core.config import EmbeddingSettings, GibbsRunConfig, InitKind
from repulse_quad.embedding import QuadraticPotential
from repulse_quad.experiments import (
    ExperimentReport,
    ReportCell,
    ReportMetadata,
    build_grid,
    empirical_tail,
    loglog_slope,
    nearest_neighbour_statistics,
    run_concentration_tail,
    run_crystallization,
    run_energy_decay,
    run_multimodal,
    run_variance_comparison,
)
from repulse_quad.experiments.multimodal import VARIANTS, _variant_config
from repulse_quad.kernels import KernelFamily, KernelSpec, build_kernel
from repulse_quad.measures import UniformBall, mixture_on_circle


@pytest.fixture
def small_settings():
    return EmbeddingSettings(size=40)


@pytest.fixture
def quick_template():
    """Short untuned runs so grids finish quickly"""
    return GibbsRunConfig(n=4, d=3, iterations=15, tune=False, alpha0=0.05, seed=5)


class TestReport:
    """Test the report model"""

    def test_append_only(self):
        """Test a cell key can only be written once"""
        report = ExperimentReport(metadata=ReportMetadata(experiment="x", seed=0))
        report.append(ReportCell(n=4, method="gibbs", replicate=0, sub_seed=1))
        with pytest.raises(ValidationError):
            report.append(ReportCell(n=4, method="gibbs", replicate=0, sub_seed=2))

    def test_runtime_not_persisted(self):
        """Test runtimes stay out of the serialised report"""
        report = ExperimentReport(metadata=ReportMetadata(experiment="x", seed=0))
        report.append(ReportCell(n=4, method="mh", replicate=0, sub_seed=1, runtime_s=2.5))
        dumped = report.model_dump()
        assert "runtime_s" not in dumped["cells"][0]
        assert report.total_runtime_s == 2.5
        assert dumped["metadata"]["version"].startswith("v")

    def test_grid_sub_seeds(self):
        """Test every cell gets its own sub-seed unless replicates are forced equal"""
        cells = build_grid("demo", 1, [4, 8], ["gibbs", "mh"], 3)
        assert len(cells) == 12
        assert len({cell.sub_seed for cell in cells}) == 12
        forced = build_grid("demo", 1, [4], ["mh"], 3, identical_replicates=True)
        assert len({cell.sub_seed for cell in forced}) == 1


class TestStatistics:
    """Test summary helpers"""

    def test_loglog_slope(self):
        """Test the slope of 1/n is -1"""
        n = [64, 128, 256, 512]
        assert loglog_slope(n, [1.0 / k for k in n]) == pytest.approx(-1.0)
        assert np.isnan(loglog_slope(n, [1.0, 0.0, 1.0, 1.0]))

    def test_regular_grid_has_zero_spread(self):
        """Test a square lattice has nearest-neighbour CV 0"""
        xs, ys = np.meshgrid(np.arange(4.0), np.arange(4.0))
        stats = nearest_neighbour_statistics(np.column_stack([xs.ravel(), ys.ravel()]))
        assert stats["nn_mean"] == pytest.approx(1.0)
        assert stats["nn_cv"] == pytest.approx(0.0, abs=1e-12)

    def test_empirical_tail(self):
        """Test tail fractions"""
        assert empirical_tail([0.1, 0.2, 0.3, 0.4], 0.0) == 1.0
        assert empirical_tail([0.1, 0.2, 0.3, 0.4], 0.5) == 0.5


class TestEnergyDecay:
    """Test the energy decay driver"""

    def test_grid_and_summary(self, riesz_kernel_3d, quick_template, small_settings):
        """Test every (n, method) cell is filled and summarised"""
        report = run_energy_decay(
            [4, 8], UniformBall(3), riesz_kernel_3d, quick_template,
            settings=small_settings, reference_length=60,
        )
        assert len(report.cells) == 4
        assert all(cell.statistics["mmd2"] >= -1e-10 for cell in report.cells)
        assert set(report.summary) >= {"gibbs_slope", "mh_slope", "mh_over_gibbs_geometric_mean"}
        assert report.metadata.seed == 5

    def test_threads_do_not_change_results(self, riesz_kernel_3d, quick_template, small_settings):
        """Test the report is identical with one or several workers"""
        kwargs = dict(settings=small_settings, reference_length=60, replicates=2)
        serial = run_energy_decay([4, 8], UniformBall(3), riesz_kernel_3d, quick_template, **kwargs)
        parallel = run_energy_decay(
            [4, 8], UniformBall(3), riesz_kernel_3d, quick_template, threads=3, **kwargs
        )
        assert serial.model_dump()["cells"] == parallel.model_dump()["cells"]

    @pytest.mark.slow
    def test_decay_rate_and_ratio(self, riesz_kernel_3d):
        """Test Gibbs MMD^2 decays like 1/n and beats MH"""
        template = GibbsRunConfig(n=64, d=3, schedule="n^2", iterations=5000, seed=0)
        report = run_energy_decay(
            [64, 128, 256, 512], UniformBall(3), riesz_kernel_3d, template, replicates=2
        )
        assert -1.4 <= report.summary["gibbs_slope"] <= -0.6
        assert 1.5 <= report.summary["mh_over_gibbs_geometric_mean"] <= 6.0


class TestVariance:
    """Test the variance comparison driver"""

    def test_identical_replicates_have_zero_variance(
        self, riesz_kernel_3d, quick_template, small_settings
    ):
        """Test two replicates with the same seed give variance 0"""
        report = run_variance_comparison(
            [6], UniformBall(3), riesz_kernel_3d, quick_template,
            replicates=2, settings=small_settings, identical_replicates=True,
        )
        assert report.summary["variance"]["gibbs"]["6"] == 0.0
        assert report.summary["variance"]["mh"]["6"] == 0.0

    def test_unknown_integrand(self, riesz_kernel_3d, quick_template):
        """Test unknown integrand tags are rejected"""
        with pytest.raises(ValidationError):
            run_variance_comparison(
                [4], UniformBall(3), riesz_kernel_3d, quick_template, integrand="nope"
            )

    def test_schedules(self, riesz_kernel_3d, quick_template, small_settings):
        """Test each schedule gets its own Gibbs cells and the MH cells run once"""
        report = run_variance_comparison(
            [4, 6], UniformBall(3), riesz_kernel_3d, quick_template,
            replicates=2, settings=small_settings, schedules=["n^2", "n^3"],
        )
        methods = {cell.method for cell in report.cells}
        assert methods == {"gibbs@n^2", "gibbs@n^3", "mh"}
        assert len(report.cells) == 3 * 2 * 2
        assert report.summary["schedules"] == ["n^2", "n^3"]
        assert sorted(report.summary["by_schedule"]) == ["n^2", "n^3"]
        assert report.summary["gibbs_over_mh"] == (
            report.summary["by_schedule"]["n^2"]["gibbs_over_mh"]
        )
        betas = {
            cell.method: cell.statistics["beta"]
            for cell in report.cells
            if cell.n == 4 and cell.method != "mh"
        }
        assert betas["gibbs@n^2"] == pytest.approx(16.0)
        assert betas["gibbs@n^3"] == pytest.approx(64.0)

    def test_single_schedule_keeps_names(self, riesz_kernel_3d, quick_template, small_settings):
        """Test one schedule gives the plain gibbs and mh cell names"""
        report = run_variance_comparison(
            [4], UniformBall(3), riesz_kernel_3d, quick_template,
            replicates=2, settings=small_settings, schedules=["n^3"],
        )
        assert {cell.method for cell in report.cells} == {"gibbs", "mh"}
        assert all(
            cell.statistics["beta"] == pytest.approx(64.0)
            for cell in report.cells
            if cell.method == "gibbs"
        )

    @pytest.mark.slow
    def test_gibbs_variance_smaller(self, riesz_kernel_3d):
        """Test Gibbs nodes beat MH nodes on f = K(., 0)"""
        template = GibbsRunConfig(n=256, d=3, schedule="n^2", iterations=5000, seed=0)
        report = run_variance_comparison(
            [256], UniformBall(3), riesz_kernel_3d, template, replicates=50, threads=4
        )
        assert report.summary["gibbs_over_mh"]["256"] < 1.0


class TestCrystallization:
    """Test the crystallization driver"""

    def test_three_point_clouds(self, log_kernel_2d):
        """Test one cloud per schedule with n rows each"""
        template = GibbsRunConfig(n=12, d=2, iterations=20, tune=False, alpha0=0.01, seed=2)
        report, clouds = run_crystallization(template, log_kernel_2d, QuadraticPotential(2))
        assert sorted(clouds) == sorted(["n^3/2", "n^2", "n^3"])
        assert all(points.shape == (12, 2) for points in clouds.values())
        assert len(report.cells) == 3
        assert "cv_strictly_decreasing" in report.summary

    @pytest.mark.slow
    def test_spacing_regularises(self, log_kernel_2d):
        """Test NN coefficient of variation falls as beta grows"""
        votes = 0
        for seed in range(5):
            template = GibbsRunConfig(n=1000, d=2, iterations=5000, seed=seed)
            report, _ = run_crystallization(template, log_kernel_2d)
            votes += report.summary["cv_strictly_decreasing"]
            assert report.summary["max_radius"] <= 1.2
        assert votes >= 3


class TestConcentration:
    """Test the concentration driver"""

    def test_trivial_radii(self, quick_template, small_settings):
        """Test r = 0 gives tail 1 and r^2 above the kernel bound gives tail 0"""
        kernel = build_kernel(KernelSpec(KernelFamily.GAUSSIAN, dimension=3))
        big = np.sqrt(4 * kernel.diag_bound() + 1)
        report = run_concentration_tail(
            6, UniformBall(3), kernel, quick_template, r_grid=[0.0, big],
            replicates=3, settings=small_settings, reference_length=60,
        )
        for tails in report.summary["tails"].values():
            assert tails == [1.0, 0.0]

    def test_calibrated_radius(self, riesz_kernel_3d, quick_template, small_settings):
        """Test r is calibrated from the first schedule when no grid is given"""
        report = run_concentration_tail(
            6, UniformBall(3), riesz_kernel_3d, quick_template,
            replicates=4, settings=small_settings, reference_length=60,
        )
        assert report.summary["r_calibrated"]
        assert len(report.summary["r_grid"]) == 1

    @pytest.mark.slow
    def test_tails_shrink_with_beta(self, riesz_kernel_3d):
        """Test the MMD tail does not grow from n^3/2 through n^2 to n^3"""
        template = GibbsRunConfig(n=128, d=3, iterations=2000, seed=7)
        report = run_concentration_tail(
            128, UniformBall(3), riesz_kernel_3d, template, replicates=100, threads=4
        )
        assert report.summary["schedules"] == ["n^3/2", "n^2", "n^3"]
        assert report.summary["tails"]["n^3/2"][0] == pytest.approx(0.5, abs=0.05)
        assert report.summary["all_non_increasing"]


class TestMultimodal:
    """Test the multimodal driver"""

    def test_variants_and_snapshots(self, log_kernel_2d, small_settings):
        """Test every variant runs and snapshots are recorded"""
        target = mixture_on_circle(6, trunc_radius=0.5, variance=0.1)
        template = GibbsRunConfig(
            n=12, d=2, iterations=20, tune=False, alpha0=0.01, anneal_levels=2, seed=3
        )
        report, point_sets = run_multimodal(
            target, log_kernel_2d, template, settings=small_settings, snapshots=(10, 20, 30)
        )
        assert report.summary["snapshots"] == [10, 20]
        assert report.summary["anneal_ladder"] == [0.5, 1.0]
        assert {"cold_T10", "warm_T20", "annealed_T10", "annealed_T20"} <= set(point_sets)
        assert {"warm_annealed_T10", "warm_annealed_T20"} <= set(point_sets)
        assert sorted(report.summary["variants"]) == sorted(VARIANTS)
        for counts in report.summary["occupancy"].values():
            assert sum(counts) == 12

    def test_warm_annealed_variant(self):
        """Test warm_annealed starts from the modes and walks the annealing ladder"""
        template = GibbsRunConfig(n=12, d=2, iterations=20, anneal_levels=3, seed=3)
        warm = _variant_config(template, "warm_annealed", (10,))
        cold = _variant_config(template, "annealed", (10,))
        assert warm.init.kind == InitKind.WARM_MODES
        assert cold.init.kind == InitKind.COLD_GAUSSIAN
        assert warm.anneal_levels == cold.anneal_levels == 3
        assert _variant_config(template, "warm", (10,)).anneal_levels is None

    def test_unknown_variant(self, log_kernel_2d, small_settings):
        """Test variants outside the known set are rejected"""
        target = mixture_on_circle(6, trunc_radius=0.5, variance=0.1)
        template = GibbsRunConfig(n=12, d=2, iterations=20, tune=False, alpha0=0.01, seed=3)
        with pytest.raises(ValidationError):
            run_multimodal(
                target, log_kernel_2d, template, settings=small_settings, variants=["lukewarm"]
            )

    @pytest.mark.slow
    def test_annealed_cold_start_fills_every_mode(self, log_kernel_2d):
        """Test annealing from a cold start puts at least n/12 points in all six modes"""
        target = mixture_on_circle(6, trunc_radius=0.5, variance=0.1)
        template = GibbsRunConfig(n=120, d=2, iterations=3000, anneal_levels=10, seed=11)
        report, _ = run_multimodal(
            target, log_kernel_2d, template, variants=["annealed"],
            snapshots=(3000,), replicates=5, threads=5,
        )
        assert len(report.cells) == 5
        assert report.summary["anneal_ladder"] == pytest.approx(
            [k / 10 for k in range(1, 11)]
        )
        assert report.summary["all_modes_populated"]["annealed"] >= 0.6
