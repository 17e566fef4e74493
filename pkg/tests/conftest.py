from __future__ import annotations

import os
import sys

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

_ACCEPTANCE: dict[int, tuple[bool, str]] = {}


@pytest.fixture
def criterion():
    """Record one pass/fail line for an acceptance criterion."""

    def record(n: int, ok: bool, detail: str = ""):
        _ACCEPTANCE[n] = (ok, detail)

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in sorted(_ACCEPTANCE):
        ok, detail = _ACCEPTANCE[n]
        tr.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
