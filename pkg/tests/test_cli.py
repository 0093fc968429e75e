"""Tests for the degsdp command line (degsdp.cli.main)."""

import json

import pytest

from degsdp.cli import (
    EXIT_EMPTY,
    EXIT_OK,
    EXIT_ORACLE,
    EXIT_TIMEOUT,
    EXIT_UNBOUNDED,
    EXIT_USAGE,
    load_point,
    main,
)
from degsdp.elimination.realroots import AlgebraicPoint
from degsdp.errors import InstanceError
from degsdp.trace_logger import TraceLogger


def run(capsys, *argv):
    code = main(["--workers", "0", *argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def write_json(tmp_path, name, payload):
    path = tmp_path / name
    path.write_text(json.dumps(payload))
    return str(path)


class TestSolve:
    def test_unbounded(self, capsys, fixture_path):
        code, out, _ = run(capsys, "solve", fixture_path("half_line.json"))
        assert code == EXIT_UNBOUNDED
        assert json.loads(out)["status"] == "unbounded_below"

    def test_infeasible(self, capsys, fixture_path):
        code, out, _ = run(capsys, "solve", fixture_path("infeasible.json"))
        assert code == EXIT_EMPTY
        assert json.loads(out)["minimizer"] is None

    def test_malformed(self, capsys, fixture_path):
        code, _, err = run(capsys, "solve", fixture_path("malformed.json"))
        assert code == EXIT_USAGE
        assert "matrices[0]" in err

    def test_missing_file(self, capsys, tmp_path):
        code, _, err = run(capsys, "solve", str(tmp_path / "nope.json"))
        assert code == EXIT_USAGE
        assert "cannot read" in err

    def test_bad_perturbation(self, capsys, tmp_path, fixture_path):
        B = write_json(tmp_path, "B.json", {"B": [["1", "0"], ["0", "-1"]]})
        code, _, err = run(capsys, "solve", fixture_path("interval.json"), "--perturbation-file", B)
        assert code == EXIT_USAGE
        assert "positive definite" in err

    def test_trace_db_from_env(self, capsys, monkeypatch, tmp_db, fixture_path):
        monkeypatch.setenv("DSDP_TRACE_DB", tmp_db)
        code, out, _ = run(capsys, "solve", fixture_path("half_line.json"))
        assert code == EXIT_UNBOUNDED
        trace = TraceLogger(tmp_db)
        rows = trace.by_run(json.loads(out)["run_id"])
        trace.close()
        assert [r["stage"] for r in rows] == ["zero_point"]

    def test_timeout(self, fixture_path):
        code = main([
            "--workers", "1", "--budget", "0.001",
            "solve", fixture_path("worked.json"),
            "--perturbation-file", fixture_path("worked_B.json"),
            "--no-short-circuit",
        ])
        assert code == EXIT_TIMEOUT

    @pytest.mark.slow
    def test_example_homotopy_path_text(self, capsys, fixture_path):
        code, out, _ = run(
            capsys, "--text", "solve", fixture_path("worked.json"),
            "--perturbation-file", fixture_path("worked_B.json"), "--no-short-circuit",
        )
        assert code == EXIT_OK
        assert "status: solved" in out
        assert "minimizer: (1, 1)" in out

    @pytest.mark.slow
    def test_output_file_feeds_verify(self, capsys, tmp_path, fixture_path):
        report = tmp_path / "report.json"
        code, _, _ = run(capsys, "solve", fixture_path("interval.json"), "--output", str(report))
        assert code == EXIT_OK
        doc = json.loads(report.read_text())
        assert doc["status"] == "solved"
        assert doc["minimizer"]["exact_coordinates"] == ["0"]

        code, out, _ = run(capsys, "verify", fixture_path("interval.json"), str(report))
        assert code == EXIT_OK
        assert json.loads(out)["psd"]["verdict"] == "PSD_rank_1"


class TestVerify:
    def test_vertex(self, capsys, tmp_path, fixture_path):
        point = write_json(tmp_path, "p.json", ["1", "1"])
        code, out, _ = run(capsys, "verify", fixture_path("worked.json"), point)
        payload = json.loads(out)
        assert code == EXIT_OK
        assert payload["feasible"] is True
        assert payload["psd"]["verdict"] == "PSD_rank_0"
        assert payload["objective"] == "-6"

    def test_infeasible_point(self, capsys, tmp_path, fixture_path):
        point = write_json(tmp_path, "p.json", [0, 0])
        code, out, _ = run(capsys, "verify", fixture_path("worked.json"), point)
        assert code == EXIT_EMPTY
        assert json.loads(out)["psd"]["verdict"] == "NOT_PSD"

    def test_algebraic_coordinate(self, capsys, tmp_path, fixture_path):
        point = write_json(tmp_path, "p.json", [{"polynomial": "2*v^2 - 1", "interval": ["0", "1"]}])
        code, out, _ = run(capsys, "verify", fixture_path("interval.json"), point)
        payload = json.loads(out)
        assert code == EXIT_OK
        assert payload["psd"]["verdict"] == "PD"
        assert payload["objective"]["approx"] == pytest.approx(2 ** -0.5)

    def test_wrong_length(self, capsys, tmp_path, fixture_path):
        point = write_json(tmp_path, "p.json", ["1"])
        code, _, err = run(capsys, "verify", fixture_path("worked.json"), point)
        assert code == EXIT_USAGE
        assert "point" in err

    def test_load_point_root_must_isolate(self, interval):
        with pytest.raises(InstanceError):
            load_point([{"polynomial": "2*v^2 - 1", "interval": ["-1", "1"]}], interval[0])

    def test_load_point_parametrization(self, interval):
        doc = {
            "parametrization": {
                "q": "t^2 - 2", "q0": "2*t", "coordinates": ["2"], "separating_form": ["1"],
            },
            "root": {"polynomial": "t^2 - 2", "interval": ["1", "2"]},
        }
        point = load_point({"minimizer": doc}, interval[0])
        assert isinstance(point, AlgebraicPoint)
        # x1 = 2 / (2t) at t = sqrt(2)
        assert point.approx()[0] == pytest.approx(2 ** -0.5)


class TestOtherCommands:
    def test_bounds(self, capsys):
        code, out, _ = run(capsys, "bounds", "--m", "2", "--n", "2")
        payload = json.loads(out)
        assert code == EXIT_OK
        (row,) = payload["strata"]
        assert (row["theta1"], row["theta_hns"], row["N"]) == (4, 216, 5)
        assert "m=2,n=2" in payload["complexity_estimate"]

    def test_bounds_text(self, capsys):
        code, out, _ = run(capsys, "--text", "bounds", "--m", "3", "--n", "1")
        assert code == EXIT_OK
        assert len(out.strip().split("\n")) == 3

    def test_oracle(self, capsys, fixture_path):
        code, out, _ = run(capsys, "oracle", fixture_path("worked.json"))
        assert code == EXIT_OK
        assert json.loads(out)["value"] == pytest.approx(-6, abs=1e-4)

    def test_oracle_unbounded(self, capsys, fixture_path):
        code, out, _ = run(capsys, "oracle", fixture_path("half_line.json"), "--box", "1")
        assert code == EXIT_ORACLE
        assert json.loads(out)["possibly_unbounded"] is True

    def test_oracle_free_direction(self, capsys, fixture_path):
        code, out, _ = run(capsys, "oracle", fixture_path("identity.json"), "--box", "2")
        assert code == EXIT_ORACLE
        assert json.loads(out)["possibly_unbounded"] is True

    def test_example_identity(self, capsys):
        code, out, _ = run(capsys, "example", "--identity")
        assert code == EXIT_OK
        assert "eps = 0: singular" in out
        assert "eps = 1/7: regular" in out
        assert "singular iff eps = 0" in out

    def test_version(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["--version"])
        assert exc.value.code == 0
        assert "degsdp" in capsys.readouterr().out

    def test_missing_command(self):
        with pytest.raises(SystemExit) as exc:
            main([])
        assert exc.value.code == 2


class TestTrace:
    @pytest.fixture
    def filled(self, tmp_db):
        trace = TraceLogger(tmp_db)
        trace.log("run-a", "stratum", "ok", rank=1, iota=(1,), degree=2, seconds=0.5)
        trace.log("run-a", "select", "solved")
        trace.log("run-b", "zero_point", "unbounded_below", detail={"verdict": "unbounded_below"})
        trace.close()
        return tmp_db

    def test_recent(self, capsys, filled):
        code, out, _ = run(capsys, "--trace-db", filled, "trace", "--limit", "2")
        assert code == EXIT_OK
        assert [r["run_id"] for r in json.loads(out)] == ["run-b", "run-a"]

    def test_one_run_in_order(self, capsys, filled):
        code, out, _ = run(capsys, "--trace-db", filled, "trace", "--run", "run-a")
        assert code == EXIT_OK
        assert [r["stage"] for r in json.loads(out)] == ["stratum", "select"]

    def test_by_stage_text(self, capsys, filled):
        code, out, _ = run(capsys, "--trace-db", filled, "--text", "trace", "--stage", "stratum")
        assert code == EXIT_OK
        assert "run-a" in out and "r=1 iota=[1]" in out
        assert "run-b" not in out

    def test_date_range(self, capsys, filled):
        _, out, _ = run(capsys, "--trace-db", filled, "trace", "--since", "2000-01-01")
        assert len(json.loads(out)) == 3
        _, out, _ = run(capsys, "--trace-db", filled, "trace", "--until", "2000-01-01")
        assert json.loads(out) == []

    def test_solve_then_query(self, capsys, monkeypatch, tmp_db, fixture_path):
        monkeypatch.setenv("DSDP_TRACE_DB", tmp_db)
        _, out, _ = run(capsys, "solve", fixture_path("half_line.json"))
        run_id = json.loads(out)["run_id"]
        code, out, _ = run(capsys, "trace", "--run", run_id)
        assert code == EXIT_OK
        assert json.loads(out)[0]["detail"]["verdict"] == "unbounded_below"

    def test_missing_database(self, capsys, tmp_path):
        code, _, err = run(capsys, "trace")
        assert code == EXIT_USAGE
        assert "no trace database" in err
        code, _, err = run(capsys, "--trace-db", str(tmp_path / "none.db"), "trace")
        assert code == EXIT_USAGE
        assert "does not exist" in err
