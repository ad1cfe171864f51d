from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings

from amwp import catalog
from amwp.exactalg import MPoly

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(scope="session")
def stu():
    return catalog.STU


@pytest.fixture(scope="session")
def y3():
    return MPoly.variables(3)


def pytest_terminal_summary(terminalreporter):
    # one line per acceptance criterion, in criterion order
    reports = []
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            if getattr(rep, "when", "call") != "call" and outcome != "error":
                continue
            if "test_acceptance.py::test_criterion_" in rep.nodeid:
                reports.append((rep.nodeid.split("::")[-1], outcome))
    if not reports:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in sorted(reports):
        terminalreporter.write_line(f"{name}: {'PASS' if outcome == 'passed' else 'FAIL'}")


def frac_point(*vals):
    return [Fraction(v) for v in vals]
