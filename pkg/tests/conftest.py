import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from twoslit import Context, ModelParams, run  # noqa: E402

GOLDEN = Path(__file__).parent / "golden"


@pytest.fixture(scope="session")
def params():
    return ModelParams()


@pytest.fixture(scope="session")
def seed42_runs(params):
    return {ctx: run(params, ctx, 200_000, 42) for ctx in Context}


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not getattr(mod, "RESULTS", None):
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.RESULTS:
        terminalreporter.write_line(line)
