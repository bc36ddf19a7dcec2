#!/usr/bin/env python3
"""Regenerate the golden JSON reports used by the CLI determinism tests.

Run from the repository root:

    python scripts/make_goldens.py
"""

import io
import sys
from contextlib import redirect_stdout
from pathlib import Path

REPO = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(REPO / "src"))

from polyk.cli import main  # noqa: E402

CASES = ["segment", "triangle", "square", "cube"]
FLAGS = ["--faces", "--boundary", "--homology", "--ktheory", "--json"]


def regenerate() -> None:
    golden_dir = REPO / "tests" / "data" / "golden"
    golden_dir.mkdir(parents=True, exist_ok=True)
    for name in CASES:
        buf = io.StringIO()
        with redirect_stdout(buf):
            rc = main(["report", str(REPO / "polytopes" / f"{name}.json")] + FLAGS)
        if rc != 0:
            raise SystemExit(f"report for {name} failed with exit code {rc}")
        (golden_dir / f"{name}.json").write_text(buf.getvalue(), encoding="utf-8")
        print(f"wrote {golden_dir / (name + '.json')}")


if __name__ == "__main__":
    regenerate()
