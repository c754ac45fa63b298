import numpy as np
import pytest

from steinlab.states import DensityOperator, StatePair


def random_unitary(rng, dim):
    z = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def generic_qubit_pair(seed):
    """Faithful qubit pair whose sigma has spectrum (p, 1-p), p in [0.6, 0.8]."""
    rng = np.random.default_rng(seed)
    p = rng.uniform(0.6, 0.8)
    u = random_unitary(rng, 2)
    sigma = u @ np.diag([p, 1 - p]) @ u.conj().T
    z = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
    rho = z @ z.conj().T + 0.05 * np.eye(2)
    return StatePair.from_arrays(rho / np.trace(rho).real, sigma, name=f"generic:{seed}")


def classical_pair(p, q):
    return StatePair(DensityOperator(np.diag(p)), DensityOperator(np.diag(q)))


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


# criterion number -> (passed, detail); filled by test_acceptance.py
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_sessionstart(session):
    import time

    session.config._t0 = time.perf_counter()


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    import time

    if not ACCEPTANCE:
        return
    elapsed = time.perf_counter() - config._t0
    if 13 in ACCEPTANCE:
        ok, detail = ACCEPTANCE[13]
        ACCEPTANCE[13] = (ok and elapsed < 900, f"{detail}; session wall time {elapsed:.1f}s (< 900s)")
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
