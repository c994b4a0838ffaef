import pytest

from spinlab import ModelParams

ACCEPTANCE = {}


@pytest.fixture
def fig4():
    """Fixed couplings of the published J-J_couple phase diagram."""
    return ModelParams(omega=1.0, omega_t=0.2, delta=0.5, delta_t=0.0)


@pytest.fixture
def strong():
    return ModelParams(omega=1.0, delta=0.5, omega_t=0.2, delta_t=0.05, j_chain=1.0, j_couple=3.0, spin=10)


def record(key, passed, detail):
    ACCEPTANCE[key] = (passed, detail)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE):
        passed, detail = ACCEPTANCE[key]
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {key}: {detail}")
