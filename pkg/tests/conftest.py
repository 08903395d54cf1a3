import numpy as np
import pytest

from wocr.components import OrthoBasis, decompose


def orthonormal(rng, n, m):
    q, _ = np.linalg.qr(rng.standard_normal((n, m)))
    return q


def random_basis(rng, n, m, p=None, y_scale=1.0):
    """Basis with random orthonormal U, V, decreasing d, and a random response."""
    p = m if p is None else p
    U = orthonormal(rng, n, m)
    V = orthonormal(rng, p, m)
    d = np.sort(rng.uniform(0.5, 10.0, m))[::-1]
    y = y_scale * rng.standard_normal(n)
    return OrthoBasis(U, d, V, U.T @ y, float(y @ y)), y


def correlated_design(rng, n, p, rho=0.5):
    idx = np.arange(p)
    L = np.linalg.cholesky(rho ** np.abs(idx[:, None] - idx[None, :]))
    return rng.standard_normal((n, p)) @ L.T


def linear_data(rng, n, p, noise=1.0, rho=0.5):
    X = correlated_design(rng, n, p, rho)
    beta = rng.normal(size=p)
    return X, X @ beta + noise * rng.standard_normal(n)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def small_problem(rng):
    X, y = linear_data(rng, 40, 6)
    return X, y, decompose(X, y)


ACCEPTANCE_LINES = {}


def record_criterion(number, passed, detail):
    """Store the pass/fail line of one acceptance criterion for the summary."""
    ACCEPTANCE_LINES[number] = f"criterion {number:>2}: {'PASS' if passed else 'FAIL'}  {detail}"
    print(ACCEPTANCE_LINES[number])


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[k])
