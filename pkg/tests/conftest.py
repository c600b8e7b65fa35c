import numpy as np
import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default", max_examples=30, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


def maxabs(a) -> float:
    return float(np.max(np.abs(a), initial=0.0))


@pytest.fixture
def ln2():
    return float(np.log(2.0))


ACCEPTANCE_LINES: list[str] = []


def record(criterion: str, error: float, tol: float, passed: bool | None = None) -> bool:
    ok = bool(error <= tol) if passed is None else passed
    ACCEPTANCE_LINES.append(f"{'PASS' if ok else 'FAIL'} criterion {criterion}: measured={error:.3e} tol={tol:.1e}")
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
