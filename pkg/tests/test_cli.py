import contextlib
import io
import json

import pytest

import rankregret as rr
from rankregret.cli import main
from rankregret.datagen import save_csv

from conftest import DEMO7_VALUES


def run(argv):
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = main(argv)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture()
def demo_csv(tmp_path):
    p = tmp_path / "demo7.csv"
    save_csv(rr.Dataset(DEMO7_VALUES), p)
    return str(p)


@pytest.fixture()
def d3_csv(tmp_path):
    from rankregret.datagen import GenSpec, generate
    p = tmp_path / "d3.csv"
    save_csv(generate(GenSpec("independent", 40, 3, seed=2)), p)
    return str(p)


class TestNetbound:
    def test_prints_known_value(self):
        code, out, _ = run(["netbound", "--c", "1", "--d", "3", "--eps", "0.1"])
        assert code == 0
        assert out.strip() == "215577"

    def test_second_value(self):
        code, out, _ = run(["netbound", "--c", "1", "--d", "4", "--eps", "0.1"])
        assert code == 0 and out.strip() == "172186147"


class TestSolve:
    def test_2d_demo(self, demo_csv):
        code, out, _ = run(["solve", "--algo", "2d", "--r", "1",
                            "--input", demo_csv])
        assert code == 0
        data = json.loads(out)
        assert data["indices"] == [3]
        assert data["rank_regret"] == 3
        assert data["size"] == 1
        assert data["params"]["config"]["algo"] == "2d"

    def test_2d_refused_for_d3(self, d3_csv):
        code, _, err = run(["solve", "--algo", "2d", "--r", "2", "--input", d3_csv])
        assert code == 2
        assert "2-attribute" in err

    def test_hd_runs_and_embeds_config(self, d3_csv):
        code, out, _ = run(["solve", "--algo", "hd", "--r", "4", "--input", d3_csv,
                            "--m", "60", "--seed", "5"])
        assert code == 0
        data = json.loads(out)
        assert data["size"] <= 4
        assert data["params"]["m"] == 60
        assert data["params"]["config"]["seed"] == 5

    def test_restrict_file(self, demo_csv, tmp_path):
        spath = tmp_path / "space.json"
        spath.write_text(json.dumps({"halfspaces": [[1.0, -1.0]]}), encoding="utf-8")
        code, out, _ = run(["solve", "--algo", "2d", "--r", "1",
                            "--input", demo_csv, "--restrict", str(spath)])
        assert code == 0
        data = json.loads(out)
        assert data["params"]["interval"] == [0.5, 1.0]

    def test_reproducible_bytes(self, d3_csv):
        args = ["solve", "--algo", "hd", "--r", "3", "--input", d3_csv,
                "--m", "80", "--seed", "9"]
        _, a, _ = run(args)
        _, b, _ = run(args)
        assert a == b

    def test_out_file(self, demo_csv, tmp_path):
        target = tmp_path / "res.json"
        code, out, _ = run(["solve", "--algo", "2d", "--r", "2",
                            "--input", demo_csv, "--out", str(target)])
        assert code == 0 and out == ""
        assert json.loads(target.read_text())["rank_regret"] == 2

    def test_linear_scan_flag(self, d3_csv):
        code, out, _ = run(["solve", "--algo", "hd", "--r", "4", "--input", d3_csv,
                            "--m", "40", "--seed", "1", "--linear-scan"])
        assert code == 0
        data = json.loads(out)
        assert "linear_scan" in data
        assert data["linear_scan"]["search_k"] == data["rank_regret"]

    def test_missing_required_flag_is_usage_error(self, demo_csv):
        code, _, err = run(["solve", "--algo", "2d", "--input", demo_csv])
        assert code == 1
        assert "usage error" in err


class TestRrr:
    def test_2d_demo_k3(self, demo_csv):
        code, out, _ = run(["rrr", "--algo", "2d", "--k", "3", "--input", demo_csv])
        assert code == 0
        data = json.loads(out)
        assert data["indices"] == [3] and data["size"] == 1

    def test_hd(self, d3_csv):
        code, out, _ = run(["rrr", "--algo", "hd", "--k", "6", "--input", d3_csv,
                            "--m", "50", "--seed", "3"])
        assert code == 0
        data = json.loads(out)
        assert data["rank_regret"] <= 6


class TestEval:
    def test_full_range_set(self, demo_csv):
        code, out, _ = run(["eval", "--input", demo_csv, "--set", "1..7",
                            "--samples", "1000", "--seed", "2",
                            "--metrics", "rank,ratk", "--ks", "1"])
        assert code == 0
        data = json.loads(out)
        assert data["estimated_rank_regret"] == 1
        assert data["rat_k"]["1"] == 1.0

    def test_regret_ratio_metric(self, demo_csv):
        code, out, _ = run(["eval", "--input", demo_csv, "--set", "4",
                            "--samples", "50000", "--seed", "2",
                            "--metrics", "regret-ratio"])
        assert code == 0
        assert abs(json.loads(out)["max_regret_ratio"] - 0.40) < 0.01

    def test_bad_metric_usage_error(self, demo_csv):
        code, _, err = run(["eval", "--input", demo_csv, "--set", "1",
                            "--metrics", "nope"])
        assert code == 1 and "usage error" in err

    def test_bad_set_usage_error(self, demo_csv):
        code, _, _ = run(["eval", "--input", demo_csv, "--set", "0,9"])
        assert code == 1


class TestGen:
    def test_writes_csv(self, tmp_path):
        target = tmp_path / "gen.csv"
        code, _, _ = run(["gen", "--family", "anti-correlated", "--n", "50",
                          "--d", "3", "--seed", "4", "--out", str(target)])
        assert code == 0
        D = rr.load_csv(target, normalize=False)
        assert (D.n, D.d) == (50, 3)

    def test_seed_reproducible(self):
        args = ["gen", "--family", "independent", "--n", "10", "--d", "2",
                "--seed", "6"]
        _, a, _ = run(args)
        _, b, _ = run(args)
        assert a == b

    def test_env_seed_fallback(self, monkeypatch):
        monkeypatch.setenv("RRK_SEED", "123")
        _, a, _ = run(["gen", "--family", "independent", "--n", "5", "--d", "2"])
        monkeypatch.setenv("RRK_SEED", "124")
        _, b, _ = run(["gen", "--family", "independent", "--n", "5", "--d", "2"])
        assert a != b


class TestOracle:
    def test_arc_mode(self):
        code, out, _ = run(["oracle", "--mode", "arc", "--n", "30", "--r", "2"])
        assert code == 0
        data = json.loads(out)
        assert data["optimal_value"] >= 1
        assert data["method"] == "exhaustive-2d-exact"

    def test_exhaustive_mode(self, demo_csv):
        code, out, _ = run(["oracle", "--mode", "exhaustive", "--input", demo_csv,
                            "--r", "1"])
        assert code == 0
        data = json.loads(out)
        assert data["optimal_value"] == 3
        assert data["optimal_sets"] == [[3]]

    def test_guard_exits_2(self):
        code, _, err = run(["oracle", "--mode", "arc", "--n", "400", "--r", "5"])
        assert code == 2
        assert "guard" in err

    def test_arc_requires_n(self):
        code, _, _ = run(["oracle", "--mode", "arc", "--r", "2"])
        assert code == 1


class TestSolveEvalPipeline:
    def test_hd_solve_then_eval_reaches_confidence(self, tmp_path):
        # solving and then evaluating the output set on fresh vectors
        # reproduces the high-probability coverage contract end to end
        from rankregret.datagen import GenSpec, generate
        data = tmp_path / "d3.csv"
        save_csv(generate(GenSpec("independent", 200, 3, seed=6)), data)
        code, out, _ = run(["solve", "--algo", "hd", "--r", "6",
                            "--input", str(data), "--seed", "6"])
        assert code == 0
        solved = json.loads(out)
        index_list = ",".join(str(i) for i in solved["indices"])
        code, out, _ = run(["eval", "--input", str(data), "--set", index_list,
                            "--samples", "20000", "--seed", "99",
                            "--metrics", "rank,ratk", "--ks",
                            str(solved["rank_regret"])])
        assert code == 0
        evaluated = json.loads(out)
        assert evaluated["rat_k"][str(solved["rank_regret"])] >= 0.97


class TestBench:
    def test_csv_shape(self, tmp_path):
        target = tmp_path / "bench.csv"
        code, _, _ = run(["bench", "--algos", "2d,hd", "--ns", "40", "--ds", "2,3",
                          "--rs", "3", "--samples", "400", "--seed", "1",
                          "--out", str(target)])
        assert code == 0
        lines = target.read_text().strip().splitlines()
        header = lines[0].split(",")
        assert header[:5] == ["algo", "family", "n", "d", "r"]
        assert header[-3:] == ["time_ms", "rank_regret", "estimated_rank_regret"]
        # 2d for d=2 only, hd for both dimensions
        assert len(lines) == 4
        for line in lines[1:]:
            cells = dict(zip(header, line.split(",")))
            assert int(cells["rank_regret"]) >= 1
            assert int(cells["estimated_rank_regret"]) >= 1


class TestHelp:
    def test_unknown_command_usage_error(self):
        code, _, _ = run(["frobnicate"])
        assert code == 1
