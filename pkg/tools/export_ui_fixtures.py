#!/usr/bin/env python3
"""Export payloads from the replayed sample session for the UI tests.

The frontend's snapshot tests assert that displayed numbers equal the
server-computed values verbatim; these fixtures are those values, captured
through the real HTTP API running against the bundled replay session.
"""

from __future__ import annotations

import json
import sys
import tempfile
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from fastapi.testclient import TestClient

from kgworkbench.sampledata import run_sample_session
from kgworkbench.service import create_app

OUT = Path(__file__).resolve().parents[1] / "frontend" / "test" / "fixtures"


def main() -> None:
    OUT.mkdir(parents=True, exist_ok=True)
    with tempfile.TemporaryDirectory() as tmp:
        result = run_sample_session(Path(tmp) / "wb")
        wb = result["workbench"]
        client = TestClient(create_app(wb))

        items = client.get("/items").json()
        p4 = result["items"][3]
        p6 = result["items"][5]
        run_p4 = client.get(f"/runs/{result['runs'][f'{p4}@0']}").json()
        run_p6_plain = client.get(f"/runs/{result['runs'][f'{p6}@0']}").json()
        compare_p6 = client.get(
            "/metrics/compare",
            params={
                "item": p6,
                "run_a": result["runs"][f"{p6}@0"],
                "run_b": result["runs"][f"{p6}@1"],
            },
        ).json()
        bipartite = client.get(
            "/graph/bipartite", params={"scenario": "bfa", "min": 1}
        ).json()

        for name, payload in (
            ("items.json", items),
            ("run_with_bypass.json", run_p4),
            ("run_with_failure.json", run_p6_plain),
            ("compare.json", compare_p6),
            ("bipartite.json", bipartite),
        ):
            (OUT / name).write_text(
                json.dumps(payload, indent=2, sort_keys=True) + "\n",
                encoding="utf-8",
            )
            print(f"wrote {name}")


if __name__ == "__main__":
    main()
