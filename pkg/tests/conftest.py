import math

import pytest

from quasibound import LatticeParams

# criterion id -> (passed, detail); filled by test_acceptance.py
ACCEPTANCE: dict[str, tuple[bool, str]] = {}


@pytest.fixture
def ref_params():
    return LatticeParams(e0=0.0, a=1.0, g=0.5, b=1.0, j=3, n_imp=22, m=1)


@pytest.fixture
def k_res():
    return math.pi / 3


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE, key=lambda s: int(s.split()[0])):
        ok, detail = ACCEPTANCE[key]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {key}: {detail}")
