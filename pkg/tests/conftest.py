import pytest

from annulab.geometry import AnnulusGeometry


@pytest.fixture(scope="session")
def geo():
    return AnnulusGeometry()


@pytest.fixture(scope="session")
def small_geo():
    # big enough for bandwidth-10 symbols, cheap enough for per-test loops
    return AnnulusGeometry(m_circle=256)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    # verdict lines recorded by the acceptance tests; emitted here so they
    # survive output capture in a plain `pytest -v` run
    lines = getattr(config, "_acceptance_lines", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
