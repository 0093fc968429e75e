"""
DegSDP Trace Logger: SQLite audit trail of solver runs, one row per stage.
"""

import json
import os
import sqlite3
import uuid
from datetime import datetime, timezone
from typing import Any, Dict, List, Optional, Sequence


def new_run_id() -> str:
    return uuid.uuid4().hex[:12]


class TraceLogger:
    """Records every solver stage (zero-point test, stratum, selection) to SQLite."""

    def __init__(self, db_path: str):
        directory = os.path.dirname(db_path)
        if directory:
            os.makedirs(directory, exist_ok=True)

        self.db_path = db_path
        self.conn = sqlite3.connect(db_path, check_same_thread=False)
        self.conn.row_factory = sqlite3.Row
        self._create_table()

    def _create_table(self):
        self.conn.execute("""
            CREATE TABLE IF NOT EXISTS traces (
                id INTEGER PRIMARY KEY AUTOINCREMENT,
                run_id TEXT,
                timestamp TEXT,
                stage TEXT,
                rank INTEGER,
                iota TEXT,
                status TEXT,
                degree INTEGER,
                seconds REAL,
                detail TEXT
            )
        """)
        self.conn.commit()

    def _row_to_dict(self, row: sqlite3.Row) -> Dict:
        out = dict(row)
        for key in ("iota", "detail"):
            if out.get(key):
                out[key] = json.loads(out[key])
        return out

    def log(
        self,
        run_id: str,
        stage: str,
        status: str,
        rank: Optional[int] = None,
        iota: Optional[Sequence[int]] = None,
        degree: Optional[int] = None,
        seconds: Optional[float] = None,
        detail: Optional[Dict[str, Any]] = None,
    ):
        """Insert a trace record."""
        self.conn.execute(
            """INSERT INTO traces (run_id, timestamp, stage, rank, iota, status, degree, seconds, detail)
               VALUES (?, ?, ?, ?, ?, ?, ?, ?, ?)""",
            (
                run_id,
                datetime.now(timezone.utc).isoformat(),
                stage,
                rank,
                json.dumps(list(iota), ensure_ascii=False) if iota is not None else None,
                status,
                degree,
                seconds,
                json.dumps(detail, ensure_ascii=False) if detail is not None else None,
            ),
        )
        self.conn.commit()

    def by_run(self, run_id: str) -> List[Dict]:
        """Return the records of one run in insertion order."""
        cursor = self.conn.execute(
            "SELECT * FROM traces WHERE run_id = ? ORDER BY id ASC",
            (run_id,),
        )
        return [self._row_to_dict(r) for r in cursor.fetchall()]

    def by_stage(self, stage: str, limit: int = 50) -> List[Dict]:
        cursor = self.conn.execute(
            "SELECT * FROM traces WHERE stage = ? ORDER BY id DESC LIMIT ?",
            (stage, limit),
        )
        return [self._row_to_dict(r) for r in cursor.fetchall()]

    def by_date_range(self, start_date: str, end_date: str) -> List[Dict]:
        """Return trace records within a date range (ISO format strings)."""
        cursor = self.conn.execute(
            "SELECT * FROM traces WHERE timestamp BETWEEN ? AND ? ORDER BY id ASC",
            (start_date, end_date),
        )
        return [self._row_to_dict(r) for r in cursor.fetchall()]

    def export_json(self, run_id: Optional[str] = None) -> str:
        """Export records as a JSON string, optionally for one run."""
        rows = self.by_run(run_id) if run_id else [
            self._row_to_dict(r) for r in self.conn.execute("SELECT * FROM traces ORDER BY id ASC").fetchall()
        ]
        return json.dumps(rows, ensure_ascii=False, indent=2)

    def get_recent(self, limit: int = 10) -> List[Dict]:
        cursor = self.conn.execute(
            "SELECT * FROM traces ORDER BY id DESC LIMIT ?", (limit,)
        )
        return [self._row_to_dict(r) for r in cursor.fetchall()]

    def close(self):
        self.conn.close()
