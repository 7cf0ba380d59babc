import json

import numpy as np
import pytest

from hrgsim.cli import main
from hrgsim.serialization import read_graph_file


def run_cli(*argv):
    return main(list(argv))


class TestGenerate:
    def test_generate_kpkvb_header(self, tmp_path, capsys):
        out = tmp_path / "g.txt"
        code = run_cli(
            "generate", "--model", "kpkvb", "--n", "200", "--alpha", "0.8",
            "--nu", "1.3", "--seed", "7", "--out", str(out),
        )
        assert code == 0
        text = out.read_text()
        assert "# R 10.0719062042" in text
        err = capsys.readouterr().err
        resolved = json.loads(err.strip().splitlines()[-1])
        assert resolved["seed"] == 7 and "lambda" in resolved and "R" in resolved

    def test_generate_single_vertex(self, tmp_path):
        out = tmp_path / "one.txt"
        assert run_cli(
            "generate", "--model", "kpkvb", "--n", "1", "--alpha", "0.8",
            "--nu", "0.5", "--seed", "0", "--out", str(out),
        ) == 0
        g = read_graph_file(out)
        assert g.n == 1 and g.edge_count == 0

    def test_generate_rejects_nu_above_n(self, tmp_path):
        code = run_cli(
            "generate", "--model", "kpkvb", "--n", "200", "--alpha", "0.8",
            "--nu", "300", "--seed", "1", "--out", str(tmp_path / "x.txt"),
        )
        assert code == 2

    @pytest.mark.parametrize("model", ["kpkvb", "poisson", "idealized"])
    def test_generate_deterministic_bytes(self, tmp_path, model):
        a, b = tmp_path / "a.txt", tmp_path / "b.txt"
        for out in (a, b):
            assert run_cli(
                "generate", "--model", model, "--n", "300", "--alpha", "0.8",
                "--nu", "1.3", "--seed", "11", "--out", str(out),
            ) == 0
        assert a.read_bytes() == b.read_bytes()

    def test_poisson_force_z(self, tmp_path):
        out = tmp_path / "p.txt"
        assert run_cli(
            "generate", "--model", "poisson", "--n", "100", "--alpha", "0.8",
            "--nu", "1.3", "--seed", "3", "--force-z", "0", "--out", str(out),
        ) == 0
        assert read_graph_file(out).n == 0


class TestAnalyze:
    @pytest.fixture
    def graph_file(self, tmp_path):
        out = tmp_path / "g.txt"
        run_cli(
            "generate", "--model", "kpkvb", "--n", "200", "--alpha", "0.8",
            "--nu", "1.3", "--seed", "7", "--out", str(out),
        )
        return out

    @pytest.mark.parametrize("report", ["diameter", "degrees", "clustering", "components"])
    def test_reports(self, graph_file, tmp_path, report):
        out = tmp_path / f"{report}.json"
        assert run_cli("analyze", "--in", str(graph_file), "--report", report, "--out", str(out)) == 0
        payload = json.loads(out.read_text())
        assert payload["report"] == report
        assert payload["n_vertices"] == 200

    def test_single_vertex_diameter(self, tmp_path):
        g = tmp_path / "one.txt"
        run_cli("generate", "--model", "kpkvb", "--n", "1", "--alpha", "0.8",
                "--nu", "0.5", "--seed", "0", "--out", str(g))
        out = tmp_path / "d.json"
        assert run_cli("analyze", "--in", str(g), "--report", "diameter", "--out", str(out)) == 0
        assert json.loads(out.read_text())["result"]["max_diameter"] == 0

    def test_triangle_clustering(self, tmp_path):
        fixture = tmp_path / "tri.txt"
        fixture.write_text(
            "# model fixture\n# alpha 1\n# R 5\n"
            "0 1 0 0 4\n1 1 0.1 0.5 4\n2 1 0.2 1 4\n"
            "0 1\n0 2\n1 2\n"
        )
        out = tmp_path / "c.json"
        assert run_cli("analyze", "--in", str(fixture), "--report", "clustering", "--out", str(out)) == 0
        assert json.loads(out.read_text())["result"]["clustering_coefficient"] == 1.0

    def test_analyze_deterministic(self, graph_file, tmp_path):
        outs = [tmp_path / "r1.json", tmp_path / "r2.json"]
        for out in outs:
            run_cli("analyze", "--in", str(graph_file), "--report", "degrees", "--out", str(out))
        assert outs[0].read_bytes() == outs[1].read_bytes()

    def test_analyze_parse_failure_is_exit_3(self, tmp_path):
        bad = tmp_path / "bad.txt"
        bad.write_text("0 1 2\n")
        assert run_cli("analyze", "--in", str(bad), "--report", "diameter", "--out", str(tmp_path / "o.json")) == 3

    def test_analyze_missing_file_is_exit_3(self, tmp_path):
        assert run_cli("analyze", "--in", str(tmp_path / "nope.txt"), "--report", "diameter",
                       "--out", str(tmp_path / "o.json")) == 3


class TestExperimentCommand:
    def test_minimal_config_runs(self, tmp_path, capsys):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({
            "base_seed": 3,
            "experiments": [
                {"kind": "diameter-scaling", "n": [256], "alpha": [0.8], "nu": [1.3], "replicates": 1}
            ],
        }))
        out_dir = tmp_path / "results"
        assert run_cli("experiment", "--config", str(cfg), "--out-dir", str(out_dir)) == 0
        assert (out_dir / "diameter_scaling.csv").exists()
        assert (out_dir / "diameter_scaling_summary.json").exists()

    def test_unknown_kind_is_exit_2(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"experiments": [{"kind": "bogus", "n": [16], "alpha": [1], "nu": [0.5]}]}))
        assert run_cli("experiment", "--config", str(cfg), "--out-dir", str(tmp_path)) == 2

    def test_invalid_json_is_exit_2(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text("{not json")
        assert run_cli("experiment", "--config", str(cfg), "--out-dir", str(tmp_path)) == 2

    def test_out_dir_env_default(self, tmp_path, monkeypatch):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({
            "base_seed": 3,
            "experiments": [
                {"kind": "L0-to-K", "n": [256], "alpha": [0.8], "nu": [1.3], "replicates": 1}
            ],
        }))
        monkeypatch.delenv("HRGSIM_OUT_DIR", raising=False)
        assert run_cli("experiment", "--config", str(cfg)) == 2
        out_dir = tmp_path / "env_results"
        monkeypatch.setenv("HRGSIM_OUT_DIR", str(out_dir))
        assert run_cli("experiment", "--config", str(cfg)) == 0
        assert (out_dir / "l0_to_k.csv").exists()

    def test_rerun_identical_csv(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({
            "base_seed": 5,
            "experiments": [
                {"kind": "L0-to-K", "n": [256], "alpha": [0.8], "nu": [1.3], "replicates": 2}
            ],
        }))
        d1, d2 = tmp_path / "r1", tmp_path / "r2"
        run_cli("experiment", "--config", str(cfg), "--out-dir", str(d1))
        run_cli("experiment", "--config", str(cfg), "--out-dir", str(d2))
        assert (d1 / "l0_to_k.csv").read_bytes() == (d2 / "l0_to_k.csv").read_bytes()
        assert (d1 / "l0_to_k_summary.json").read_bytes() == (d2 / "l0_to_k_summary.json").read_bytes()


class TestVerifyCommand:
    def test_zero_seeds_is_exit_2(self):
        assert run_cli("verify", "--suite", "all", "--seeds", "0") == 2

    def test_small_boxes_suite_passes(self, capsys):
        assert run_cli("verify", "--suite", "boxes", "--n", "500", "--seeds", "1") == 0
        out = capsys.readouterr().out
        assert "[ok]" in out and "FAIL" not in out

    def test_corrupted_adjacency_detected(self):
        # negative control at the suite level: drop edges from a valid
        # instance and the box-edge property must produce counterexamples
        from hrgsim.boxes import build_dissection
        from hrgsim.generators import Graph, generate_idealized, csr_from_edges
        from hrgsim.verify import check_box_edge_property
        from hrgsim.geometry import ModelParams

        radius = ModelParams(2000, 0.8, 1.3).radius
        g = generate_idealized(0.8, 0.331, radius, seed=17)
        edges = g.edge_array()
        corrupt = edges[: max(1, edges.shape[0] // 2)]
        indptr, indices = csr_from_edges(g.n, corrupt)
        broken = Graph(n=g.n, indptr=indptr, indices=indices, polar=g.polar.copy(),
                       strip=g.strip.copy(), meta=dict(g.meta))
        d = build_dissection(radius)
        checked, violations = check_box_edge_property(broken, d)
        assert violations, "corrupted adjacency must yield counterexamples"
        assert violations[0]["seed"] == 17
