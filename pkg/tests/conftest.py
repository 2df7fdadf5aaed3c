import numpy as np
import pytest

from arrow3 import EPS, ArrowMat3, ReducedArrow, SymMat3, bg_start, bisect_root, spectral_f
from arrow3.secular import spectral_f_accurate

# lines collected by test_acceptance.py, echoed after the run
ACCEPTANCE_REPORT: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_REPORT:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_REPORT:
            terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


def random_symmat(rng, n):
    return [SymMat3(*rng.standard_normal(6).tolist()) for _ in range(n)]


def random_reduced_arrow(rng) -> ReducedArrow:
    abar, b1, b2, g = rng.standard_normal(4).tolist()
    return ReducedArrow(abs(abar) + 1e-3, b1, b2, g)


def random_reduced_arrows(rng, n):
    return [random_reduced_arrow(rng) for _ in range(n)]


def random_arrow(rng) -> ArrowMat3:
    a1, a2, b1, b2, g = rng.standard_normal(5).tolist()
    if a1 < a2:
        a1, a2 = a2, a1
    return ArrowMat3(a1, a2, b1, b2, g)


def residual(M, lam, V):
    M = np.asarray(M, dtype=float)
    V = np.asarray(V, dtype=float)
    return np.linalg.norm(M @ V - V * np.asarray(lam))


def orth(V):
    V = np.asarray(V, dtype=float)
    return np.linalg.norm(np.eye(V.shape[1]) - V.T @ V)


def oracle_root(A, tol=1e-16):
    """Rightmost zero of f by bisection between 0 and the upper start."""
    hi = bg_start(A) * (1 + 4 * EPS) + 1e-300
    lo = hi
    while spectral_f(lo, A) > 0:
        lo *= 0.5
    return bisect_root(lambda x: spectral_f_accurate(x, A), lo, hi, tol * hi)


def _toward(f, pole, start, sign):
    """Walk from ``start`` toward ``pole`` until f has the given sign."""
    x = start
    while (f(x) > 0) != (sign > 0):
        x = pole + (x - pole) / 16
    return x


def oracle_roots(A):
    """All three zeros of f, one per interval cut out by the poles at 0 and -abar."""
    f = lambda x: spectral_f_accurate(x, A)
    w = A.abar
    # on (-abar, 0) f climbs from -inf to +inf; on (-inf, -abar) from -inf to +inf
    lo = _toward(f, -w, -w / 2, -1)
    hi = _toward(f, 0.0, -w / 2, +1)
    # lo == hi only when f(-abar/2) is exactly zero
    lam2 = bisect_root(f, lo, hi, 4 * EPS * w) if lo < hi else lo
    near = far = -w - 1.0
    if f(near) < 0:
        near = _toward(f, -w, near, +1)
    else:
        while f(far) >= 0:
            far = -w + 2 * (far + w)
    lam3 = bisect_root(f, far, near, 4 * EPS * abs(far))
    return oracle_root(A), lam2, lam3
