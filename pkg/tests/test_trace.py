"""Tests for degsdp.trace_logger.TraceLogger."""

import json

import pytest

from degsdp.trace_logger import TraceLogger, new_run_id


@pytest.fixture
def logger(tmp_db):
    """Create a TraceLogger backed by a temporary DB."""
    trace = TraceLogger(db_path=tmp_db)
    yield trace
    trace.close()


def _insert_sample(logger, run_id="run-1", stage="stratum", status="ok", rank=1, iota=(1,)):
    logger.log(
        run_id,
        stage,
        status,
        rank=rank,
        iota=iota,
        degree=2,
        seconds=0.25,
        detail={"eps_bar": "1/2"},
    )


class TestLogInsertion:
    def test_insert_and_retrieve(self, logger):
        _insert_sample(logger)
        rows = logger.get_recent(limit=10)
        assert len(rows) == 1
        assert rows[0]["run_id"] == "run-1"
        assert rows[0]["stage"] == "stratum"
        assert rows[0]["status"] == "ok"
        assert rows[0]["rank"] == 1
        assert rows[0]["degree"] == 2

    def test_iota_and_detail_decoded(self, logger):
        _insert_sample(logger, iota=(1, 3))
        row = logger.get_recent(limit=1)[0]
        assert row["iota"] == [1, 3]
        assert row["detail"] == {"eps_bar": "1/2"}

    def test_optional_fields_null(self, logger):
        logger.log("run-1", "select", "solved")
        row = logger.get_recent(limit=1)[0]
        assert row["rank"] is None
        assert row["iota"] is None
        assert row["detail"] is None

    def test_timestamp_populated(self, logger):
        _insert_sample(logger)
        rows = logger.get_recent(limit=1)
        assert "T" in rows[0]["timestamp"]  # ISO format

    def test_creates_parent_directory(self, tmp_path):
        path = tmp_path / "nested" / "dir" / "trace.db"
        trace = TraceLogger(str(path))
        trace.log("r", "zero_point", "unbounded_below")
        trace.close()
        assert path.exists()


class TestByRun:
    def test_filter_by_run_in_order(self, logger):
        _insert_sample(logger, run_id="A", stage="stratum")
        _insert_sample(logger, run_id="B", stage="stratum")
        _insert_sample(logger, run_id="A", stage="select")

        results = logger.by_run("A")
        assert [r["stage"] for r in results] == ["stratum", "select"]

    def test_unknown_run(self, logger):
        _insert_sample(logger)
        assert logger.by_run("missing") == []

    def test_run_ids_are_unique(self):
        assert new_run_id() != new_run_id()


class TestByStage:
    def test_filter_by_stage(self, logger):
        _insert_sample(logger, stage="stratum")
        _insert_sample(logger, stage="stratum")
        _insert_sample(logger, stage="reseed", status="genericity_failure")

        results = logger.by_stage("stratum")
        assert len(results) == 2
        assert all(r["stage"] == "stratum" for r in results)


class TestByDateRange:
    def test_range_query(self, logger):
        _insert_sample(logger)
        _insert_sample(logger)
        assert len(logger.by_date_range("2020-01-01", "2099-12-31")) == 2

    def test_empty_range(self, logger):
        _insert_sample(logger)
        assert logger.by_date_range("2000-01-01", "2000-01-02") == []


class TestExportJson:
    def test_export_all(self, logger):
        _insert_sample(logger, run_id="r1")
        _insert_sample(logger, run_id="r2")
        data = json.loads(logger.export_json())
        assert len(data) == 2

    def test_export_by_run(self, logger):
        _insert_sample(logger, run_id="r1")
        _insert_sample(logger, run_id="r2")
        data = json.loads(logger.export_json(run_id="r1"))
        assert len(data) == 1
        assert data[0]["run_id"] == "r1"

    def test_export_empty(self, logger):
        assert json.loads(logger.export_json()) == []


class TestGetRecent:
    def test_most_recent_first(self, logger):
        for stage in ("zero_point", "stratum", "select"):
            _insert_sample(logger, stage=stage)
        results = logger.get_recent(limit=2)
        assert [r["stage"] for r in results] == ["select", "stratum"]
