"""End-to-end tests for the repulse-quad command line"""

import json

import numpy as np
import pytest

from repulse_quad.cli import OUTPUT_ENV, main
from repulse_quad.io import config_hash, parse_config, read_json, read_points


@pytest.fixture
def quick_config(tmp_path, fig1_config, monkeypatch):
    """Untuned crystallization config writing under tmp_path"""
    monkeypatch.chdir(tmp_path)
    monkeypatch.delenv(OUTPUT_ENV, raising=False)
    fig1_config["gibbs"].update({"n": 12, "iterations": 20, "tune": False, "alpha0": 0.05})
    fig1_config["output_dir"] = str(tmp_path / "results")
    path = tmp_path / "run.json"
    path.write_text(json.dumps(fig1_config), encoding="utf-8")
    return path


def run_dir(config_path):
    config = parse_config(config_path)
    return (config_path.parent / "results") / config_hash(config)


class TestUsage:
    """Test exit codes for bad invocations"""

    def test_unknown_command(self):
        """Test an unknown subcommand exits with 2"""
        assert main(["transmogrify", "--config", "x.json"]) == 2

    def test_missing_config_flag(self):
        """Test --config is required"""
        assert main(["sample"]) == 2

    def test_missing_config_file(self, tmp_path):
        """Test an absent config file is a configuration error"""
        assert main(["sample", "--config", str(tmp_path / "absent.json")]) == 2

    def test_invalid_epsilon(self, quick_config, capsys):
        """Test a negative epsilon is reported with its pointer"""
        document = json.loads(quick_config.read_text())
        document["kernel"]["epsilon"] = -1.0
        quick_config.write_text(json.dumps(document))
        assert main(["crystallize", "--config", str(quick_config)]) == 2
        assert "/kernel/epsilon" in capsys.readouterr().err

    def test_multimodal_needs_mixture(self, quick_config):
        """Test multimodal rejects a non-mixture target"""
        assert main(["multimodal", "--config", str(quick_config)]) == 2


class TestSample:
    """Test the sample command"""

    def test_nodes_csv(self, quick_config, tmp_path):
        """Test --out receives n rows under a header"""
        out = tmp_path / "nodes.csv"
        assert main(["sample", "--config", str(quick_config), "--out", str(out)]) == 0
        lines = out.read_text().strip().split("\n")
        assert lines[0] == "x1,x2"
        assert len(lines) == 13
        assert read_points(out).shape == (12, 2)

        directory = run_dir(quick_config)
        diagnostics = read_json(directory / "diagnostics.json")
        assert diagnostics["steps"] == 20
        assert (directory / diagnostics["energy_trace_path"]).exists()
        assert read_json(directory / "config.json")["hash"] == directory.name

    def test_seed_override(self, quick_config, tmp_path):
        """Test --seed changes both the hash and the draw"""
        first, second = tmp_path / "a.csv", tmp_path / "b.csv"
        assert main(["sample", "--config", str(quick_config), "--out", str(first)]) == 0
        assert (
            main(["sample", "--config", str(quick_config), "--seed", "8", "--out", str(second)])
            == 0
        )
        assert not np.array_equal(read_points(first), read_points(second))
        assert len(list((tmp_path / "results").iterdir())) == 2

    def test_estimated_embedding_written(self, quick_config, tmp_path):
        """Test an equilibrated run stores the embedding it estimated"""
        document = json.loads(quick_config.read_text())
        document["gibbs"].update({"potential": "equilibrated", "embedding_size": 25})
        quick_config.write_text(json.dumps(document))
        out = tmp_path / "n.csv"
        assert main(["sample", "--config", str(quick_config), "--out", str(out)]) == 0
        assert read_points(run_dir(quick_config) / "embedding.csv").shape == (25, 2)

    def test_quadratic_run_writes_no_embedding(self, quick_config):
        """Test no embedding file appears when none is estimated"""
        assert main(["sample", "--config", str(quick_config)]) == 0
        assert not (run_dir(quick_config) / "embedding.csv").exists()


class TestCrystallize:
    """Test the crystallize command"""

    def test_outputs(self, quick_config):
        """Test one CSV and SVG per schedule plus the report"""
        assert main(["crystallize", "--config", str(quick_config)]) == 0
        directory = run_dir(quick_config)
        for slug in ("n_3_2", "n_2", "n_3"):
            cloud = read_points(directory / f"pointcloud_{slug}.csv")
            assert cloud.shape == (12, 2)
            svg = (directory / f"pointcloud_{slug}.svg").read_text()
            assert svg.count("<circle") == 12
        report = read_json(directory / "report.json")
        assert report["metadata"]["experiment"] == "crystallization"
        assert report["metadata"]["config_hash"] == directory.name
        assert len(report["cells"]) == 3
        diagnostics = read_json(directory / "diagnostics.json")
        assert sorted(diagnostics) == ["n^2", "n^3", "n^3/2"]
        assert diagnostics["n^3"]["beta"] == pytest.approx(12.0**3)

    def test_equilibrated_potential_rejected(self, quick_config, capsys):
        """Test crystallize refuses an equilibrated potential with its pointer"""
        document = json.loads(quick_config.read_text())
        document["gibbs"]["potential"] = "equilibrated"
        quick_config.write_text(json.dumps(document))
        assert main(["crystallize", "--config", str(quick_config)]) == 2
        assert "/gibbs/potential" in capsys.readouterr().err
        assert not list(run_dir(quick_config).glob("pointcloud_*"))

    def test_rerun_is_identical(self, quick_config):
        """Test a rerun reproduces every artefact byte for byte"""
        assert main(["crystallize", "--config", str(quick_config)]) == 0
        directory = run_dir(quick_config)
        first = {p.name: p.read_bytes() for p in directory.iterdir()}
        assert main(["crystallize", "--config", str(quick_config)]) == 0
        second = {p.name: p.read_bytes() for p in directory.iterdir()}
        assert first == second

    def test_output_env_override(self, quick_config, tmp_path, monkeypatch):
        """Test REPULSE_QUAD_OUT replaces output_dir"""
        elsewhere = tmp_path / "elsewhere"
        monkeypatch.setenv(OUTPUT_ENV, str(elsewhere))
        assert main(["crystallize", "--config", str(quick_config)]) == 0
        config = parse_config(quick_config)
        assert (elsewhere / config_hash(config) / "report.json").exists()
        assert not (tmp_path / "results").exists()


class TestEmbed:
    """Test the embed command"""

    def test_embedding_csv(self, quick_config, tmp_path):
        """Test the embedding reference points are written"""
        document = json.loads(quick_config.read_text())
        document["gibbs"]["embedding_size"] = 30
        quick_config.write_text(json.dumps(document))
        assert main(["embed", "--config", str(quick_config)]) == 0
        directory = run_dir(quick_config)
        assert read_points(directory / "embedding.csv").shape == (30, 2)
        assert read_json(directory / "diagnostics.json")["size"] == 30
