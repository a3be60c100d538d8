import time

import numpy as np
import pytest

from entangle_tensor.qcore import PureState

ACCEPTANCE_LINES = []
SUITE_BUDGET_SECONDS = 180
_session = {}


def lambda_grid(step=0.05):
    return [round(k * step, 10) for k in range(int(round(1 / step)) + 1)]


def random_state(rng, dim=4):
    z = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return PureState(z / np.linalg.norm(z))


def random_hermitian(rng, dim=4):
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return (a + a.conj().T) / 2


@pytest.fixture
def rng():
    return np.random.default_rng(20240519)


@pytest.fixture
def acceptance():
    """Record one pass/fail line per acceptance criterion."""

    def record(label, passed, detail=""):
        ACCEPTANCE_LINES.append(f"[{'PASS' if passed else 'FAIL'}] {label}" + (f"  ({detail})" if detail else ""))
        return passed

    return record


def pytest_sessionstart(session):
    _session["start"] = time.perf_counter()


def pytest_sessionfinish(session, exitstatus):
    if not ACCEPTANCE_LINES:
        return
    elapsed = time.perf_counter() - _session["start"]
    passed = elapsed < SUITE_BUDGET_SECONDS
    ACCEPTANCE_LINES.append(
        f"[{'PASS' if passed else 'FAIL'}] 10 suite runtime  ({elapsed:.1f} s, budget {SUITE_BUDGET_SECONDS} s)")
    if not passed and session.exitstatus == 0:
        session.exitstatus = 1


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
