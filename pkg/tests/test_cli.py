import json

import pytest

from circlayout.cli import main


def run(args):
    return main([str(a) for a in args])


class TestGenerate:
    def test_writes_model_and_edges(self, tmp_path, capsys):
        out = tmp_path / "model"
        assert run(["generate", "--n", 10, "--offsets", "1,2,3", "--out", out]) == 0
        doc = json.loads((out / "model.json").read_text())
        assert doc["model"]["n"] == 10
        assert doc["model"]["offsets"] == [1, 2, 3]
        assert doc["version"]
        edge_lines = [
            l for l in (out / "edges.txt").read_text().splitlines() if not l.startswith("#")
        ]
        assert len(edge_lines) == 30

    def test_density_parameters(self, tmp_path):
        out = tmp_path / "dense"
        assert run(["generate", "--n", 10, "--gamma", 1.0, "--c", 0.3, "--out", out]) == 0
        doc = json.loads((out / "model.json").read_text())
        assert doc["model"]["offsets"] == [1, 2, 3]

    def test_small_n_rejected(self, tmp_path, capsys):
        code = run(["generate", "--n", 4, "--offsets", "1", "--out", tmp_path / "x"])
        assert code == 1
        assert "error" in capsys.readouterr().err

    def test_requires_offsets_or_density(self, tmp_path):
        assert run(["generate", "--n", 10, "--out", tmp_path / "x"]) == 1
        assert run(["generate", "--n", 10, "--offsets", "1", "--gamma", 1.0, "--c", 0.1,
                    "--out", tmp_path / "x"]) == 1


class TestLayout:
    @pytest.fixture
    def edges(self, tmp_path):
        out = tmp_path / "model"
        run(["generate", "--n", 12, "--offsets", "1,2", "--out", out])
        return out / "edges.txt"

    def test_exact_recovery_reported(self, edges, tmp_path):
        out = tmp_path / "result.json"
        assert run(["layout", edges, "--out", out]) == 0
        doc = json.loads(out.read_text())
        assert doc["metrics"]["D_aligned"] == 0
        assert doc["n"] == 12
        assert sorted(doc["permutation"]) == list(range(1, 13))
        points = out.with_suffix(".points.csv").read_text().splitlines()
        assert points[0] == "vertex,x,y,angle,rank"
        assert len(points) == 13

    def test_shuffled_recovery(self, edges, tmp_path):
        out = tmp_path / "shuffled.json"
        assert run(["layout", edges, "--shuffle", "--seed", 9, "--out", out]) == 0
        doc = json.loads(out.read_text())
        assert doc["shuffled"] is True
        assert doc["metrics"]["D_aligned"] == 0
        assert sorted(doc["shuffle_permutation"]) == list(range(1, 13))

    def test_shuffle_requires_seed(self, edges, tmp_path):
        assert run(["layout", edges, "--shuffle", "--out", tmp_path / "x.json"]) == 1

    def test_byte_identical_reruns(self, edges, tmp_path):
        out_a, out_b = tmp_path / "a.json", tmp_path / "b.json"
        run(["layout", edges, "--seed", 3, "--shuffle", "--out", out_a])
        run(["layout", edges, "--seed", 3, "--shuffle", "--out", out_b])
        assert out_a.read_bytes() == out_b.read_bytes()
        assert (
            out_a.with_suffix(".points.csv").read_bytes()
            == out_b.with_suffix(".points.csv").read_bytes()
        )

    def test_vertex_gap_rejected(self, tmp_path, capsys):
        bad = tmp_path / "bad.txt"
        bad.write_text("1 2\n2 3\n3 4\n4 5\n5 6\n6 8\n")
        assert run(["layout", bad, "--out", tmp_path / "x.json"]) == 1
        assert "contiguous" in capsys.readouterr().err

    def test_missing_file(self, tmp_path):
        assert run(["layout", tmp_path / "nope.txt", "--out", tmp_path / "x.json"]) == 1


class TestExperiment:
    def config(self, tmp_path, **overrides):
        doc = {
            "master_seed": 7,
            "n": [20, 30],
            "p": [0.5],
            "offsets": [1, 2, 3],
            "k": [2],
            "trials": 3,
        }
        doc.update(overrides)
        path = tmp_path / "config.json"
        path.write_text(json.dumps(doc))
        return path

    def test_row_count(self, tmp_path):
        out = tmp_path / "out.csv"
        assert run(["experiment", "--config", self.config(tmp_path), "--out", out]) == 0
        rows = [l for l in out.read_text().splitlines() if l and not l.startswith("#")]
        assert len(rows) == 1 + 2 * 3  # header + points * trials

    def test_rerun_identical(self, tmp_path):
        cfg = self.config(tmp_path)
        out_a, out_b = tmp_path / "a.csv", tmp_path / "b.csv"
        run(["experiment", "--config", cfg, "--out", out_a])
        run(["experiment", "--config", cfg, "--out", out_b])
        assert out_a.read_bytes() == out_b.read_bytes()

    def test_bad_config(self, tmp_path, capsys):
        path = tmp_path / "bad.json"
        path.write_text(json.dumps({"master_seed": 1, "n": 10, "trials": 1}))
        assert run(["experiment", "--config", path, "--out", tmp_path / "x.csv"]) == 1
        path.write_text("{not json")
        assert run(["experiment", "--config", path, "--out", tmp_path / "x.csv"]) == 1

    def test_unknown_key_rejected(self, tmp_path):
        assert (
            run(["experiment", "--config", self.config(tmp_path, bogus=1), "--out", tmp_path / "x.csv"])
            == 1
        )


class TestVerify:
    def test_default_config_passes(self, capsys):
        assert run(["verify"]) == 0
        out = capsys.readouterr().out
        assert "verification PASSED" in out
        assert "sin_theta_within_bound" in out

    def test_corrupted_eigenvector_flagged(self, tmp_path, capsys):
        # tight-bound sweep so a corrupted basis must violate the bound
        cfg = tmp_path / "corrupt.json"
        cfg.write_text(
            json.dumps(
                {
                    "master_seed": 11,
                    "trials": 3,
                    "points": [
                        {"n": 120, "p": 0.95, "offsets": list(range(1, 31)), "k": [18]}
                    ],
                    "corrupt_eigenvector": True,
                }
            )
        )
        assert run(["verify", "--config", cfg]) == 2
        assert "sin_theta_within_bound" in capsys.readouterr().out

    def test_p_one_sweep_vacuous(self, tmp_path, capsys):
        cfg = tmp_path / "exact.json"
        cfg.write_text(
            json.dumps(
                {
                    "master_seed": 5,
                    "trials": 3,
                    "n": 30,
                    "p": 1.0,
                    "offsets": [1, 2, 4],
                    "k": [3, 1],
                }
            )
        )
        assert run(["verify", "--config", cfg]) == 0
        assert "verification PASSED" in capsys.readouterr().out


class TestSpectrum:
    def test_prints_table(self, capsys):
        assert run(["spectrum", "--n", 10, "--offsets", "1,2,3"]) == 0
        out = capsys.readouterr().out
        assert "closed-form" in out and "numeric" in out

    def test_json_output(self, tmp_path):
        out = tmp_path / "spectrum.json"
        assert run(["spectrum", "--n", 16, "--gamma", 1.0, "--c", 0.25, "--out", out]) == 0
        doc = json.loads(out.read_text())
        assert doc["closed_form"][0] == 8.0  # 2 * |S| with |S| = 4


class TestParser:
    def test_unknown_command_exits_one(self, capsys):
        assert run(["frobnicate"]) == 1

    def test_missing_required_flag(self, capsys):
        assert run(["generate", "--offsets", "1"]) == 1


class TestExperimentOverrides:
    def test_flag_overrides_change_sweep(self, tmp_path):
        doc = {
            "master_seed": 7,
            "n": [20],
            "p": [0.5],
            "offsets": [1, 2],
            "k": [2],
            "trials": 2,
        }
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps(doc))
        out = tmp_path / "a.csv"
        run(["experiment", "--config", cfg, "--out", out, "--trials", 4, "--seed", 8, "--beta", 0.5])
        rows = [l for l in out.read_text().splitlines() if l and not l.startswith("#")]
        assert len(rows) == 1 + 4
        header = rows[0].split(",")
        k_col = header.index("k_list")
        assert rows[1].split(",")[k_col] == "5"  # ceil(20**0.5)

    def test_k_flag_override(self, tmp_path):
        doc = {"master_seed": 1, "n": [20], "p": [1.0], "offsets": [1], "beta": [0.5], "trials": 1}
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps(doc))
        out = tmp_path / "b.csv"
        run(["experiment", "--config", cfg, "--out", out, "--k", 3, "--k", 7])
        rows = [l for l in out.read_text().splitlines() if l and not l.startswith("#")]
        k_col = rows[0].split(",").index("k_list")
        assert rows[1].split(",")[k_col] == "3;7"


class TestLayoutShuffledFrame:
    def test_metrics_invariant_under_shuffle(self, tmp_path):
        # the same graph, shuffled or not, must report identical model-frame
        # metrics; a p=1 model graph recovers exactly either way
        out = tmp_path / "m"
        run(["generate", "--n", 20, "--offsets", "1,2,3", "--out", out])
        plain, shuffled = tmp_path / "plain.json", tmp_path / "shuf.json"
        run(["layout", out / "edges.txt", "--k", 2, "--k", 5, "--out", plain])
        run(["layout", out / "edges.txt", "--shuffle", "--seed", 4, "--k", 2, "--k", 5,
             "--out", shuffled])
        a = json.loads(plain.read_text())["metrics"]
        b = json.loads(shuffled.read_text())["metrics"]
        assert a["D_aligned"] == b["D_aligned"] == 0
        assert a["d_k_aligned"] == b["d_k_aligned"] == {"2": 0, "5": 0}
