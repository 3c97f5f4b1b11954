from importlib import resources

import pytest

from relaygraph.io import load_graph


def fixture_path(name: str):
    return resources.files("relaygraph") / "fixtures" / name


@pytest.fixture
def load():
    def _load(name: str, check: bool = True):
        return load_graph(fixture_path(name if name.endswith(".json") else name + ".json"), check=check)
    return _load


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
