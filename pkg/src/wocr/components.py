"""Standardization and thin-SVD orthogonal components."""

from dataclasses import dataclass

import numpy as np

from .exceptions import ConstantColumn, DimensionMismatch, ZeroMatrix

DEFAULT_RANK_TOL = 1e-8


@dataclass(frozen=True)
class Standardizer:
    """Column centering/scaling of X and centering of y.

    Scales are sample standard deviations (divisor n - 1).
    """

    column_means: np.ndarray
    column_scales: np.ndarray
    response_mean: float

    def __post_init__(self):
        if np.any(self.column_scales <= 0):
            j = int(np.flatnonzero(self.column_scales <= 0)[0])
            raise ConstantColumn(j)

    @property
    def p(self):
        return self.column_means.shape[0]

    def transform(self, X):
        X = np.asarray(X, dtype=float)
        if X.ndim != 2 or X.shape[1] != self.p:
            raise DimensionMismatch(f"expected {self.p} columns, got shape {X.shape}")
        return (X - self.column_means) / self.column_scales

    def inverse_transform(self, Xs):
        return np.asarray(Xs, dtype=float) * self.column_scales + self.column_means

    def center_response(self, y):
        return np.asarray(y, dtype=float) - self.response_mean

    def uncenter_response(self, yc):
        return np.asarray(yc, dtype=float) + self.response_mean


@dataclass(frozen=True)
class OrthoBasis:
    """Thin SVD ``Xs = U diag(d) V^T`` truncated to rank m, plus ``gamma = U^T yc``."""

    U: np.ndarray
    d: np.ndarray
    V: np.ndarray
    gamma: np.ndarray
    y_norm2: float

    @property
    def n(self):
        return self.U.shape[0]

    @property
    def p(self):
        return self.V.shape[0]

    @property
    def m(self):
        return self.d.shape[0]

    @property
    def gamma_sq(self):
        return self.gamma**2

    def permuted(self, order):
        """Same basis with components re-indexed by ``order`` (used in invariance checks)."""
        order = np.asarray(order)
        return OrthoBasis(self.U[:, order], self.d[order], self.V[:, order],
                          self.gamma[order], self.y_norm2)


def _check_xy(X, y):
    X = np.ascontiguousarray(X, dtype=float)
    y = np.ascontiguousarray(y, dtype=float)
    if X.ndim != 2:
        raise DimensionMismatch(f"X must be 2-D, got shape {X.shape}")
    if y.ndim != 1 or y.shape[0] != X.shape[0]:
        raise DimensionMismatch(f"y has shape {y.shape}, X has {X.shape[0]} rows")
    return X, y


def standardize(X, y):
    """Center and scale the columns of X, center y.

    Returns ``(Xs, yc, standardizer)``. Raises ConstantColumn for a
    zero-variance column.
    """
    X, y = _check_xy(X, y)
    n = X.shape[0]
    if n < 2:
        raise DimensionMismatch("need at least 2 rows")
    means = X.mean(axis=0)
    scales = X.std(axis=0, ddof=1)
    tiny = 1e-13 * np.maximum(np.abs(means), 1.0)
    for j in np.flatnonzero(scales <= tiny):
        raise ConstantColumn(int(j))
    st = Standardizer(means, scales, float(y.mean()))
    return st.transform(X), st.center_response(y), st


def extract_components(Xs, yc, rank_tol=DEFAULT_RANK_TOL):
    """Thin SVD of the standardized design, keeping ``d_j > rank_tol * d_1``.

    Singular values within ``rank_tol * d_1`` of each other are kept or
    dropped as one cluster; a cluster survives if any member clears the
    threshold.
    """
    Xs, yc = _check_xy(Xs, yc)
    U, d, Vt = np.linalg.svd(Xs, full_matrices=False)
    if d.size == 0 or d[0] == 0.0:
        raise ZeroMatrix("design matrix is identically zero")
    thresh = rank_tol * d[0]
    m = int(np.count_nonzero(d > thresh))
    # extend across a cluster straddling the threshold
    while m < d.size and d[m - 1] - d[m] <= thresh and d[m] > 0.0:
        m += 1
    U = U[:, :m]
    V = Vt[:m].T
    return OrthoBasis(U, d[:m].copy(), V, U.T @ yc, float(yc @ yc))


def decompose(X, y, rank_tol=DEFAULT_RANK_TOL):
    """standardize + extract_components in one call."""
    Xs, yc, st = standardize(X, y)
    return Xs, yc, st, extract_components(Xs, yc, rank_tol)
