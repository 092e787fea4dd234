import json
import time

import pytest

from farhi import cli


@pytest.fixture(scope="session")
def full_runs(tmp_path_factory):
    """Two default `verify --json` runs of the whole registry."""
    out = []
    for i in range(2):
        path = tmp_path_factory.mktemp("verify") / f"run{i}.json"
        start = time.perf_counter()
        code = cli.main(["--json", str(path)])
        elapsed = time.perf_counter() - start
        text = path.read_text(encoding="utf-8")
        out.append({"code": code, "elapsed": elapsed, "doc": json.loads(text), "text": text})
    return out
