import json

import pytest

from thermocat.cli import (
    EXIT_DOMAIN,
    EXIT_FORBIDDEN,
    EXIT_OK,
    EXIT_USAGE,
    main,
)


def run(argv, capsys):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestParsing:
    def test_unknown_command(self, capsys):
        code, _, _ = run(["frobnicate"], capsys)
        assert code == EXIT_USAGE

    def test_unknown_flag(self, capsys):
        code, _, _ = run(["curve", "--p", "0.5,0.5", "--bogus", "1"], capsys)
        assert code == EXIT_USAGE

    def test_unparsable_number(self, capsys):
        code, _, _ = run(["curve", "--p", "0.5,spam"], capsys)
        assert code == EXIT_USAGE


class TestDivergenceCommand:
    def test_basic(self, capsys):
        code, out, _ = run(
            ["divergence", "--p", "0.75,0.25", "--q", "0.5,0.5", "--alphas", "1,2"],
            capsys,
        )
        assert code == EXIT_OK
        body = json.loads(out)
        assert body["alphas"] == ["1", "2"]
        assert body["tsallis"][1] == pytest.approx(0.25, abs=1e-13)


class TestScanCommand:
    ARGS = ["scan", "--p", "0.6,0.4", "--pp", "0.88,0.12",
            "--energies", "0,2", "--beta", "2"]

    def test_allowed(self, capsys):
        code, out, _ = run(self.ARGS, capsys)
        assert code == EXIT_OK
        assert json.loads(out)["allowed"] is True

    def test_fail_on_forbidden(self, capsys):
        argv = ["scan", "--p", "0.88,0.12", "--pp", "0.6,0.4",
                "--energies", "0,2", "--beta", "2", "--fail-on-forbidden"]
        code, out, _ = run(argv, capsys)
        assert code == EXIT_FORBIDDEN
        assert json.loads(out)["allowed"] is False


class TestCurveCommand:
    def test_identity(self, capsys):
        code, out, _ = run(["curve", "--p", "0.5,0.5", "--g", "0.5,0.5"], capsys)
        assert code == EXIT_OK
        assert out == "x,y\n0,0\n1,1\n"

    def test_domain_error_exit(self, capsys):
        code, _, err = run(["curve", "--p", "0.5,0.5", "--g", "1,0"], capsys)
        assert code == EXIT_DOMAIN
        assert "FullRankRequired" in err


class TestSweepCommand:
    def test_epsilon_cap(self, capsys):
        code, _, err = run(
            ["catalysis-sweep", "--kind", "concentrated", "--d", "4", "--eps", "0.3"],
            capsys,
        )
        assert code == EXIT_DOMAIN
        assert "EpsilonTooLarge" in err

    def test_csv_output(self, capsys):
        code, out, _ = run(
            ["catalysis-sweep", "--kind", "distributed", "--d", "4",
             "--eps", "0.001", "--alphas", "2"],
            capsys,
        )
        assert code == EXIT_OK
        assert out.startswith("kind,d_M,epsilon,alpha")


class TestCorrelatedDemo:
    def test_default_verdicts(self, capsys):
        code, out, _ = run(["correlated-demo"], capsys)
        assert code == EXIT_OK
        rep = json.loads(out)
        assert [s["verdict"] for s in rep["states"]] == [
            "allowed", "forbidden", "forbidden",
        ]

    def test_fail_on_forbidden(self, capsys):
        code, _, _ = run(["correlated-demo", "--fail-on-forbidden"], capsys)
        assert code == EXIT_FORBIDDEN

    def test_flag_overrides(self, capsys):
        code, out, _ = run(
            ["correlated-demo", "--chi", "0.05", "--lam", ""], capsys
        )
        assert code == EXIT_OK
        rep = json.loads(out)
        assert len(rep["states"]) == 1

    def test_config_file_with_flag_override(self, tmp_path, capsys):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"beta3": 1.0, "chi_list": [0.05, 0.065]}))
        code, out, _ = run(
            ["correlated-demo", "--config", str(cfg), "--chi", "0.05", "--lam", ""],
            capsys,
        )
        assert code == EXIT_OK
        rep = json.loads(out)
        assert len(rep["states"]) == 1
        assert rep["states"][0]["verdict"] == "allowed"

    def test_csv_dir(self, tmp_path, capsys):
        code, _, _ = run(
            ["correlated-demo", "--csv-dir", str(tmp_path)], capsys
        )
        assert code == EXIT_OK
        names = sorted(f.name for f in tmp_path.iterdir())
        assert "initial.csv" in names and "reference.csv" in names
        assert sum(1 for n in names if n.startswith("state_")) == 3
        assert (tmp_path / "reference.csv").read_text() == "x,y\n0,0\n1,1\n"


class TestDeterminism:
    def test_byte_identical_output(self, capsys):
        _, out1, _ = run(["correlated-demo"], capsys)
        _, out2, _ = run(["correlated-demo"], capsys)
        assert out1 == out2

    def test_json_round_trip(self, capsys):
        _, out, _ = run(["correlated-demo"], capsys)
        rep = json.loads(out)
        assert json.loads(json.dumps(rep)) == rep
