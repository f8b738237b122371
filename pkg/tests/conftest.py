import random

import numpy as np
import pytest

from concord.seifert import SeifertMatrix

TREFOIL = SeifertMatrix(((-1, 1), (0, -1)), "trefoil")
FIGURE_EIGHT = SeifertMatrix(((1, 1), (0, -1)), "figure-eight")
R1 = SeifertMatrix(((0, 2), (1, 0)), "R1")


@pytest.fixture
def rng():
    return random.Random(20240611)


def hermitian_signature_numeric(V, theta: float) -> int:
    """Signature of (1 - w) V + (1 - conj w) V^T by floating-point eigenvalues."""
    A = np.array(V.entries if isinstance(V, SeifertMatrix) else V, dtype=float)
    if A.size == 0:
        return 0
    w = np.exp(1j * theta)
    H = (1 - w) * A + (1 - np.conj(w)) * A.T
    ev = np.linalg.eigvalsh(H)
    return int(np.sum(ev > 1e-9) - np.sum(ev < -1e-9))


def riemann_rho0(V, samples: int = 10 ** 6, chunk: int = 200_000) -> float:
    """Midpoint Riemann sum of (1/pi) * integral_0^pi sigma(theta) by batched eigenvalues."""
    A = np.array(V.entries if isinstance(V, SeifertMatrix) else V, dtype=float)
    if A.size == 0:
        return 0.0
    theta = (np.arange(samples) + 0.5) * np.pi / samples
    total = 0.0
    for start in range(0, samples, chunk):
        w = np.exp(1j * theta[start:start + chunk])[:, None, None]
        H = (1 - w) * A + (1 - np.conj(w)) * A.T
        ev = np.linalg.eigvalsh(H)
        total += float(np.sum(ev > 1e-9) - np.sum(ev < -1e-9))
    return total / samples


ACCEPTANCE_RESULTS: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_RESULTS):
        terminalreporter.write_line(ACCEPTANCE_RESULTS[n])
