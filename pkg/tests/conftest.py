import numpy as np
import pytest

from dioforge.diophantine import make_params

_ACCEPTANCE_LINES = []


def naive_solutions(params, x_range, y_range, z_range):
    """Every (x, y, z) in the box with zero residual, by direct evaluation."""
    ys = np.arange(y_range[0], y_range[1] + 1, dtype=np.int64)[:, None]
    zs = np.arange(z_range[0], z_range[1] + 1, dtype=np.int64)[None, :]
    out = []
    for x in range(x_range[0], x_range[1] + 1):
        const = params.a * x**params.d - params.b
        assert abs(const) < 2**62
        res = const - ys * ys - zs * zs + x * ys * zs
        for iy, iz in zip(*np.nonzero(res == 0)):
            out.append((x, int(ys[iy, 0]), int(zs[0, iz])))
    return sorted(out, key=lambda t: (t[0], t[2], t[1]))


@pytest.fixture
def theorem_params():
    return make_params(1, 3, 1)


def pytest_runtest_logreport(report):
    if report.when != "call" or "test_acceptance" not in report.nodeid:
        return
    label = report.nodeid.split("::")[-1]
    _ACCEPTANCE_LINES.append(f"{'PASS' if report.passed else 'FAIL'}  {label}")


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
