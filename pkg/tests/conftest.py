from __future__ import annotations

import os

import pytest
from hypothesis import HealthCheck, settings

from dedekind.fieldspec import catalog_field

settings.register_profile(
    "default", deadline=None, suppress_health_check=[HealthCheck.too_slow], max_examples=60
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture(scope="session")
def gauss():
    return catalog_field("gauss")


@pytest.fixture(scope="session")
def sqrt2():
    return catalog_field("sqrt2")


@pytest.fixture(scope="session")
def sqrt_m5():
    return catalog_field("sqrt-5")


@pytest.fixture(scope="session")
def zeta5():
    return catalog_field("zeta5")


@pytest.fixture(scope="session")
def biquad():
    return catalog_field("biquad")


_ACCEPTANCE: list[str] = []


@pytest.fixture(scope="session")
def acceptance_log():
    """Collects one pass/fail line per acceptance criterion."""

    def log(number: int, ok: bool, detail: str):
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'} - {detail}"
        _ACCEPTANCE.append(line)
        print(line)

    return log


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_ACCEPTANCE, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
