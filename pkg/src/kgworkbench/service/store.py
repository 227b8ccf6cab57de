"""On-disk layout for workbench artifacts.

Everything is plain JSON in a run directory: an append-only event log plus
materialized documents per artifact, so a session is inspectable with a
text editor and replayable from the log. Writes are atomic
(temp-file-and-rename) and serialized through a single lock; serialization
is deterministic (sorted keys) so identical state means identical bytes.
"""

from __future__ import annotations

import json
import os
import threading
import time
from pathlib import Path
from typing import Any, Callable


def dumps(payload: Any) -> str:
    return json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False)


class WorkbenchStore:
    def __init__(self, workdir: Path | str, clock: Callable[[], float] = time.time):
        self.workdir = Path(workdir)
        self._lock = threading.RLock()
        self._clock = clock
        for sub in ("corpus", "runs"):
            (self.workdir / sub).mkdir(parents=True, exist_ok=True)

    # --- paths -------------------------------------------------------------

    @property
    def events_path(self) -> Path:
        return self.workdir / "events.jsonl"

    def chapter_path(self, chapter: str) -> Path:
        return self.workdir / "corpus" / f"{chapter}.json"

    @property
    def bfs_path(self) -> Path:
        return self.workdir / "bfs.json"

    @property
    def states_path(self) -> Path:
        return self.workdir / "states.json"

    @property
    def graph_path(self) -> Path:
        return self.workdir / "graph.json"

    @property
    def runs_index_path(self) -> Path:
        return self.workdir / "runs_index.json"

    def run_path(self, run_id: str) -> Path:
        return self.workdir / "runs" / f"{run_id}.json"

    # --- io ----------------------------------------------------------------

    def write_json(self, path: Path, payload: Any) -> None:
        with self._lock:
            tmp = path.with_suffix(path.suffix + ".tmp")
            tmp.write_text(dumps(payload) + "\n", encoding="utf-8")
            os.replace(tmp, path)

    def read_json(self, path: Path, default: Any = None) -> Any:
        if not path.exists():
            return default
        return json.loads(path.read_text(encoding="utf-8"))

    def append_event(self, kind: str, payload: dict) -> None:
        record = {"ts": self._clock(), "event": kind, **payload}
        with self._lock:
            with self.events_path.open("a", encoding="utf-8") as fh:
                fh.write(json.dumps(record, sort_keys=True, ensure_ascii=False) + "\n")

    def events(self) -> list[dict]:
        if not self.events_path.exists():
            return []
        return [
            json.loads(line)
            for line in self.events_path.read_text(encoding="utf-8").splitlines()
            if line.strip()
        ]
