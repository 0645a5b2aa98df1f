"""End-to-end tests for the command-line interface."""

import json
import subprocess
import sys

import pytest

from normsim.cli import main


def run_cli(*argv):
    return main(list(argv))


class TestRunCommand:
    def test_preset_run_writes_artifacts(self, tmp_path, capsys):
        out = tmp_path / "fig6"
        assert run_cli("run", "fig6", "--seed", "7", "--out", str(out)) == 0
        assert (out / "trajectory.csv").exists()
        assert (out / "summary.json").exists()
        assert not (out / "graph.edges").exists()
        digest = capsys.readouterr().out
        assert "opinion_clusters=1" in digest
        summary = json.loads((out / "summary.json").read_text())
        assert summary["seed"] == 7
        assert summary["config"]["n"] == 300
        assert summary["opinion_cluster_count"] == 1

    def test_trajectory_schema(self, tmp_path):
        out = tmp_path / "run"
        run_cli("run", "fig3", "--seed", "1", "--out", str(out))
        lines = (out / "trajectory.csv").read_text().splitlines()
        assert lines[0] == "step,agent,opinion,action,discrepancy"
        assert len(lines) == 1 + 51 * 300
        first = lines[1].split(",")
        assert first[0] == "0" and first[1] == "0"
        assert first[2] == first[3]  # actions start at opinions

    def test_reruns_are_byte_identical(self, tmp_path):
        a, b = tmp_path / "a", tmp_path / "b"
        run_cli("run", "fig3", "--seed", "7", "--out", str(a))
        run_cli("run", "fig3", "--seed", "7", "--out", str(b))
        assert (a / "trajectory.csv").read_bytes() == (b / "trajectory.csv").read_bytes()

    def test_network_run_writes_graph(self, tmp_path):
        out = tmp_path / "fig8"
        run_cli("run", "fig8", "--seed", "2", "--out", str(out))
        header = (out / "graph.edges").read_text().splitlines()
        assert header[0] == "300"
        assert len(header) == 1 + 900
        summary = json.loads((out / "summary.json").read_text())
        assert "graph_component_count" in summary

    def test_config_file_run(self, tmp_path, capsys):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"n": 30, "openness": 0.25, "commitment": 0.7, "horizon": 10}))
        out = tmp_path / "out"
        assert run_cli("run", "--config", str(cfg), "--seed", "3", "--out", str(out)) == 0
        summary = json.loads((out / "summary.json").read_text())
        assert summary["seed"] == 3 and summary["config"]["horizon"] == 10

    def test_tol_flag_enables_early_stop(self, tmp_path):
        out = tmp_path / "out"
        run_cli("run", "fig6", "--seed", "1", "--tol", "1e-8", "--out", str(out))
        summary = json.loads((out / "summary.json").read_text())
        assert summary["stop_reason"] == "converged"
        assert summary["steps_recorded"] < 50

    def test_bad_config_names_field_and_exits_1(self, tmp_path, capsys):
        cfg = tmp_path / "bad.json"
        cfg.write_text(json.dumps({"n": 30, "commitment": 0.7}))
        assert run_cli("run", "--config", str(cfg)) == 1
        assert "openness" in capsys.readouterr().err

    def test_missing_config_file_is_io_error(self, tmp_path):
        assert run_cli("run", "--config", str(tmp_path / "nope.json")) == 2

    def test_unknown_preset_exits_1(self, capsys):
        assert run_cli("run", "fig99") == 1
        assert "unknown preset" in capsys.readouterr().err

    def test_needs_exactly_one_target(self, tmp_path, capsys):
        assert run_cli("run") == 1
        cfg = tmp_path / "c.json"
        cfg.write_text("{}")
        assert run_cli("run", "fig6", "--config", str(cfg)) == 1

    def test_sweep_preset_rejected_by_run(self, capsys):
        assert run_cli("run", "sweep-desk") == 1
        assert "sweep" in capsys.readouterr().err


class TestSweepCommand:
    def sweep_doc(self):
        return {
            "kind": "sweep",
            "epsilon": {"values": [0.1, 0.4]},
            "phi": {"values": [0.3, 1.0]},
            "runs_per_cell": 2,
            "base": {"n": 25, "horizon": 10},
        }

    def test_writes_csv_and_report(self, tmp_path, capsys):
        cfg = tmp_path / "sweep.json"
        cfg.write_text(json.dumps(self.sweep_doc()))
        out = tmp_path / "out"
        assert run_cli("sweep", "--config", str(cfg), "--seed", "4", "--out", str(out)) == 0
        lines = (out / "sweep.csv").read_text().splitlines()
        assert lines[0] == "epsilon,phi,mean_D,std_D,runs"
        assert len(lines) == 1 + 4
        report = json.loads((out / "boundary_report.json").read_text())
        assert report["rule"].startswith("10*epsilon")
        assert "cells=4" in capsys.readouterr().out

    def test_full_commitment_rows_are_zero(self, tmp_path):
        cfg = tmp_path / "sweep.json"
        cfg.write_text(json.dumps(self.sweep_doc()))
        out = tmp_path / "out"
        run_cli("sweep", "--config", str(cfg), "--seed", "4", "--out", str(out))
        for line in (out / "sweep.csv").read_text().splitlines()[1:]:
            eps, phi, mean_d, std_d, runs = line.split(",")
            if phi == "1":
                assert float(mean_d) == 0.0 and float(std_d) == 0.0

    def test_parallelism_does_not_change_bytes(self, tmp_path):
        cfg = tmp_path / "sweep.json"
        cfg.write_text(json.dumps(self.sweep_doc()))
        a, b = tmp_path / "a", tmp_path / "b"
        run_cli("sweep", "--config", str(cfg), "--seed", "4", "--out", str(a), "-j", "1")
        run_cli("sweep", "--config", str(cfg), "--seed", "4", "--out", str(b), "-j", "2")
        assert (a / "sweep.csv").read_bytes() == (b / "sweep.csv").read_bytes()
        assert (a / "boundary_report.json").read_bytes() == (b / "boundary_report.json").read_bytes()

    def test_scenario_target_rejected_by_sweep(self, capsys):
        assert run_cli("sweep", "fig6") == 1
        assert "run" in capsys.readouterr().err


class TestNetgenCommand:
    def test_small_world_generation(self, tmp_path, capsys):
        out = tmp_path / "net"
        assert run_cli("netgen", "sw", "300", "6", "0.8", "--seed", "3", "--out", str(out)) == 0
        printed = capsys.readouterr().out
        assert "nodes=300" in printed and "edges=900" in printed
        assert (out / "graph.edges").read_text().splitlines()[0] == "300"

    def test_scale_free_generation(self, tmp_path, capsys):
        out = tmp_path / "net"
        assert run_cli("netgen", "sf", "300", "9", "6", "--seed", "3", "--out", str(out)) == 0
        assert "edges=1782" in capsys.readouterr().out

    def test_complete_generation(self, tmp_path, capsys):
        out = tmp_path / "net"
        assert run_cli("netgen", "complete", "10", "--out", str(out)) == 0
        assert "edges=45" in capsys.readouterr().out

    def test_odd_degree_rejected(self, tmp_path, capsys):
        assert run_cli("netgen", "sw", "300", "5", "0.8", "--out", str(tmp_path)) == 1
        assert "even" in capsys.readouterr().err

    def test_generated_file_loads_as_topology(self, tmp_path):
        out = tmp_path / "net"
        run_cli("netgen", "sw", "30", "4", "0.2", "--seed", "1", "--out", str(out))
        cfg = tmp_path / "cfg.json"
        cfg.write_text(
            json.dumps(
                {
                    "n": 30,
                    "openness": 0.25,
                    "commitment": 0.7,
                    "horizon": 5,
                    "topology": {"kind": "edge_list", "path": str(out / "graph.edges")},
                }
            )
        )
        run_dir = tmp_path / "run"
        assert run_cli("run", "--config", str(cfg), "--out", str(run_dir)) == 0
        assert (run_dir / "graph.edges").read_bytes() == (out / "graph.edges").read_bytes()


class TestUsage:
    def test_usage_error_exits_1(self):
        assert run_cli("frobnicate") == 1
        assert run_cli() == 1

    def test_console_script_installed(self, tmp_path):
        proc = subprocess.run(
            [sys.executable, "-m", "normsim.cli", "netgen", "complete", "4", "--out", str(tmp_path)],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0
        assert "edges=6" in proc.stdout
