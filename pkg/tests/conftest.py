import numpy as np
import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


def autocorrelation(a, b, n):
    """Coefficients k = -n..n of a(z) * conj(b(z)) on |z| = 1, by brute force."""
    out = np.zeros(2 * n + 1, dtype=np.clongdouble)
    for k in range(-n, n + 1):
        for j in range(len(b)):
            if 0 <= j + k < len(a):
                out[k + n] += a[j + k] * np.conj(b[j])
    return out


@pytest.fixture
def rng():
    return np.random.default_rng(20240615)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
