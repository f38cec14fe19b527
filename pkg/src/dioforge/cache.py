"""Append-only JSON-lines run cache keyed by a digest of the run's inputs."""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from pathlib import Path

CACHE_ENV = "DIOFORGE_CACHE"
CACHE_FILE = "runs.jsonl"


def config_digest(inputs: dict) -> str:
    blob = json.dumps(inputs, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


@dataclass
class RunRecord:
    command: str
    params: dict
    config_digest: str
    results: list = field(default_factory=list)
    status: str = "complete"  # or "partial"
    completed_through_x: int | None = None
    timestamp: str = ""

    def __post_init__(self):
        if not self.timestamp:
            self.timestamp = datetime.now(timezone.utc).isoformat(timespec="seconds")


class RunCache:
    def __init__(self, directory: str | os.PathLike):
        self.directory = Path(directory)
        self.path = self.directory / CACHE_FILE

    @classmethod
    def from_env(cls, explicit: str | None) -> "RunCache | None":
        where = explicit or os.environ.get(CACHE_ENV)
        return cls(where) if where else None

    def records(self, digest: str) -> list[RunRecord]:
        if not self.path.exists():
            return []
        out = []
        with self.path.open() as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                try:
                    rec = json.loads(line)
                except json.JSONDecodeError:
                    continue  # torn trailing write from an interrupted run
                if rec.get("config_digest") == digest:
                    out.append(RunRecord(**rec))
        return out

    def append(self, record: RunRecord) -> None:
        self.directory.mkdir(parents=True, exist_ok=True)
        with self.path.open("a") as fh:
            fh.write(json.dumps(asdict(record)) + "\n")
            fh.flush()

    def lookup(self, digest: str) -> tuple[RunRecord | None, list[RunRecord]]:
        """(complete record if any, partial records in file order)."""
        recs = self.records(digest)
        done = next((r for r in reversed(recs) if r.status == "complete"), None)
        return done, [r for r in recs if r.status == "partial"]
