"""Command-line contract: subcommands, exit codes, manifests, determinism."""

import hashlib
import json

import pytest

import stockswarm as ss
from stockswarm.cli import main
from stockswarm.config import (
    DEFAULT_SETTINGS,
    build_pso_config,
    build_topology,
    parse_settings,
)
from stockswarm.errors import ConfigError


class TestSettings:
    def test_defaults_without_file(self):
        settings = parse_settings(None)
        assert settings == DEFAULT_SETTINGS
        assert settings["swarm_size"] == "30"
        assert settings["agents_per_dc"] == "2,2"

    def test_file_overrides_and_comments(self, tmp_path):
        path = tmp_path / "run.conf"
        path.write_text(
            "# tuning\nswarm_size = 12\nmatch_radius=0\n\nlog_base = base10\n"
        )
        settings = parse_settings(path)
        assert settings["swarm_size"] == "12"
        assert settings["match_radius"] == "0"
        assert settings["log_base"] == "base10"
        assert settings["c1"] == "2.0"

    def test_last_assignment_wins(self, tmp_path):
        path = tmp_path / "run.conf"
        path.write_text("seed_like = 1\n".replace("seed_like", "r1") + "r1 = 7\n")
        assert parse_settings(path)["r1"] == "7"

    def test_unknown_key_rejected(self, tmp_path):
        path = tmp_path / "run.conf"
        path.write_text("swarm = 12\n")
        with pytest.raises(ConfigError, match="unknown key"):
            parse_settings(path)

    def test_malformed_line_rejected(self, tmp_path):
        path = tmp_path / "run.conf"
        path.write_text("swarm_size 12\n")
        with pytest.raises(ConfigError, match="key = value"):
            parse_settings(path)

    def test_build_topology_consistency_check(self):
        settings = dict(DEFAULT_SETTINGS, member_count="9")
        with pytest.raises(ConfigError, match="member_count"):
            build_topology(settings)

    def test_build_pso_config_round_trip(self):
        settings = dict(DEFAULT_SETTINGS, swarm_size="14", per_dimension_r="true")
        cfg = build_pso_config(settings, seed=99)
        assert cfg.swarm_size == 14
        assert cfg.seed == 99
        assert cfg.per_dimension_r is True
        assert cfg.priorities == ss.PriorityConfig(10.0, 5.0, 1.0)
        assert cfg.bounds == ss.Bounds()

    def test_empty_agents_for_factory_only(self):
        settings = dict(
            DEFAULT_SETTINGS, dc_count="0", agents_per_dc="", member_count="1"
        )
        assert build_topology(settings).member_count == 1


class TestValidateCommand:
    def test_bundled_fixtures_summary(self, capsys):
        assert main(["validate"]) == 0
        out = capsys.readouterr().out
        assert "20 periods, 5 products, l=7" in out

    def test_missing_lead_row_exits_2_and_names_tid(self, tmp_path, paths, capsys):
        bad = tmp_path / "stock_lead_times.csv"
        lines = paths[1].read_text().splitlines()
        bad.write_text("\n".join(line for line in lines if not line.startswith("7,")) + "\n")
        code = main(["validate", "--stock-lead", str(bad)])
        assert code == 2
        assert "7" in capsys.readouterr().err

    def test_unreadable_path_exits_2(self, tmp_path, capsys):
        code = main(["validate", "--history", str(tmp_path / "nope.csv")])
        assert code == 2
        assert "error" in capsys.readouterr().err


class TestOptimizeCommand:
    def test_reports_and_manifest_written(self, tmp_path, capsys):
        out = tmp_path / "run"
        code = main(["optimize", "--seed", "42", "--out", str(out), "--format", "json"])
        assert code == 0
        assert (out / "report.txt").exists()
        assert (out / "report.json").exists()
        assert (out / "manifest.json").exists()
        stdout = capsys.readouterr().out
        assert "trace: first" in stdout
        assert '"product_id"' in stdout
        body = json.loads((out / "report.json").read_text())
        assert set(body) == {"product_id", "fitness", "weights", "iterations", "actions"}
        assert len(body["actions"]) == 7

    def test_same_seed_byte_identical(self, tmp_path):
        a, b = tmp_path / "a", tmp_path / "b"
        assert main(["optimize", "--seed", "42", "--out", str(a)]) == 0
        assert main(["optimize", "--seed", "42", "--out", str(b)]) == 0
        for name in ("report.txt", "report.json", "manifest.json"):
            assert (a / name).read_bytes() == (b / name).read_bytes()

    def test_different_seed_changes_manifest(self, tmp_path):
        a, b = tmp_path / "a", tmp_path / "b"
        assert main(["optimize", "--seed", "1", "--out", str(a)]) == 0
        assert main(["optimize", "--seed", "2", "--out", str(b)]) == 0
        ma = json.loads((a / "manifest.json").read_text())
        mb = json.loads((b / "manifest.json").read_text())
        assert ma["seed"] == 1 and mb["seed"] == 2
        assert ma["inputs"] == mb["inputs"]

    def test_manifest_digests_inputs(self, tmp_path, paths):
        out = tmp_path / "run"
        assert main(["optimize", "--out", str(out)]) == 0
        manifest = json.loads((out / "manifest.json").read_text())
        expected = hashlib.sha256(paths[0].read_bytes()).hexdigest()[:16]
        assert manifest["inputs"]["history"] == expected
        assert manifest["artifact_version"] == ss.__version__
        assert list(manifest["config"]) == list(DEFAULT_SETTINGS)

    def test_degenerate_priorities_exit_3(self, tmp_path, capsys):
        conf = tmp_path / "bad.conf"
        conf.write_text("r2 = 0\nr3 = 0\n")
        code = main(["optimize", "--config", str(conf), "--out", str(tmp_path / "o")])
        assert code == 3
        assert "lead-time priorities" in capsys.readouterr().err

    def test_unknown_config_key_exit_3(self, tmp_path, capsys):
        conf = tmp_path / "bad.conf"
        conf.write_text("swarms = 10\n")
        code = main(["optimize", "--config", str(conf), "--out", str(tmp_path / "o")])
        assert code == 3
        assert "unknown key" in capsys.readouterr().err

    def test_trace_bounded_by_max_iterations(self, tmp_path, capsys):
        conf = tmp_path / "short.conf"
        conf.write_text("max_iterations = 8\nmatch_radius = 0\n")
        out = tmp_path / "run"
        assert main(["optimize", "--config", str(conf), "--out", str(out)]) == 0
        body = json.loads((out / "report.json").read_text())
        assert 0 < body["iterations"] <= 8


class TestOracleCommand:
    def test_fixture_enumeration(self, tmp_path, capsys):
        out = tmp_path / "orc"
        conf = tmp_path / "zero.conf"
        conf.write_text("match_radius = 0\n")
        code = main(["oracle", "--config", str(conf), "--out", str(out)])
        assert code == 0
        stdout = capsys.readouterr().out
        assert "evaluations: 25" in stdout
        body = json.loads((out / "oracle.json").read_text())
        assert body["evaluations"] == 25
        assert body["skipped_products"] == []
        assert (out / "manifest.json").exists()

    def test_json_format_stdout(self, tmp_path, capsys):
        out = tmp_path / "orc"
        code = main(["oracle", "--out", str(out), "--format", "json"])
        assert code == 0
        body = json.loads(capsys.readouterr().out)
        assert "best_fitness" in body and "best_position" in body


class TestSynthCommand:
    def test_generated_files_validate(self, tmp_path, capsys):
        out = tmp_path / "gen"
        code = main(["synth", "--seed", "7", "--periods", "30", "--out", str(out)])
        assert code == 0
        code = main(
            [
                "validate",
                "--history", str(out / "stock_history.csv"),
                "--stock-lead", str(out / "stock_lead_times.csv"),
                "--raw-lead", str(out / "raw_material_lead_times.csv"),
            ]
        )
        assert code == 0
        assert "30 periods" in capsys.readouterr().out

    def test_byte_identical_per_seed(self, tmp_path):
        a, b = tmp_path / "a", tmp_path / "b"
        assert main(["synth", "--seed", "3", "--out", str(a)]) == 0
        assert main(["synth", "--seed", "3", "--out", str(b)]) == 0
        for name in (
            "stock_history.csv",
            "stock_lead_times.csv",
            "raw_material_lead_times.csv",
            "manifest.json",
        ):
            assert (a / name).read_bytes() == (b / name).read_bytes()

    def test_unwritable_out_dir_exits_2(self, tmp_path, capsys):
        blocker = tmp_path / "blocker"
        blocker.write_text("a file, not a directory")
        code = main(["synth", "--out", str(blocker / "sub")])
        assert code == 2
        assert "error" in capsys.readouterr().err

    def test_synthetic_optimize_round_trip(self, tmp_path):
        gen = tmp_path / "gen"
        assert main(["synth", "--seed", "5", "--periods", "25", "--out", str(gen)]) == 0
        run = tmp_path / "run"
        code = main(
            [
                "optimize",
                "--history", str(gen / "stock_history.csv"),
                "--stock-lead", str(gen / "stock_lead_times.csv"),
                "--raw-lead", str(gen / "raw_material_lead_times.csv"),
                "--seed", "1",
                "--out", str(run),
            ]
        )
        assert code == 0
        body = json.loads((run / "report.json").read_text())
        assert 1 <= body["product_id"] <= 5
