import numpy as np
import pytest

from nsfourier.grid import GridFunction, make_grid


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)


def random_gf(rng, n):
    grid = make_grid(n)
    return GridFunction(grid, rng.standard_normal(grid.size) + 1j * rng.standard_normal(grid.size))


CRITERIA_LINES: list[str] = []


def record_criterion(k, ok, detail):
    CRITERIA_LINES.append(f"CRITERION {k} {'PASS' if ok else 'FAIL'}: {detail}")
    return ok


def pytest_terminal_summary(terminalreporter):
    if CRITERIA_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(CRITERIA_LINES):
            terminalreporter.write_line(line)
