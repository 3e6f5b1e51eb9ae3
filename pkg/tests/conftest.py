from pathlib import Path

import pytest

from lemni.subordination import DiskGrid

ROOT = Path(__file__).resolve().parents[1]
DOCS = ROOT / "docs"

# filled by test_acceptance; printed once at the end of the session
ACCEPTANCE_LINES = {}


@pytest.fixture(scope="session")
def coarse_grid():
    return DiskGrid((0.2, 0.5, 0.8, 0.9, 0.99), 128)


@pytest.fixture(scope="session")
def schema():
    import json

    def load(name):
        return json.loads((DOCS / f"{name}.schema.json").read_text())

    return load


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES, key=lambda k: (int(k.split(".")[0]), k)):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])
