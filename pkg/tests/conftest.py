import pytest

from robustmatroid.graph import BipartiteGraph


def pytest_configure(config):
    config._acceptance_lines = []


@pytest.fixture(scope="session")
def acceptance_log(request):
    return request.config._acceptance_lines


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = getattr(config, "_acceptance_lines", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)


@pytest.fixture
def star():
    """U = {0, 1, 2}, V = {0}, complete."""
    return BipartiteGraph.complete(3, 1)


@pytest.fixture
def chain():
    """Edges 0-0, 1-0, 1-1, 2-1: the exchange digraph gets a two-vertex walk."""
    return BipartiteGraph(3, 2, ((0, 0), (1, 0), (1, 1), (2, 1)))
