"""SSE, degrees of freedom and GCV/AIC/BIC computed from component weights.

Nothing here forms an n x n matrix: every quantity is a sum over the m
components of the basis.
"""

import enum
from dataclasses import dataclass

import numpy as np

from .exceptions import DegenerateDF, DimensionMismatch, NonpositiveSSE
from .weights import Ordering, weight_derivs_wrt_gamma_sq, weights

SSE_FLOOR = 1e-300


class Criterion(enum.Enum):
    GCV = "gcv"
    AIC = "aic"
    BIC = "bic"


@dataclass(frozen=True)
class CriterionValue:
    sse: float
    df: float
    value: float
    criterion: Criterion


def sse_from_gamma(y_norm2, gamma_sq, w):
    """||y||^2 - sum (2 w - w^2) gamma^2, clipped at 0 against round-off."""
    return max(y_norm2 - float(np.dot(w * (2.0 - w), gamma_sq)), 0.0)


def sse_idempotent(y_norm2, gamma_sq, w):
    """||y||^2 - sum w gamma^2: the residual form valid for 0/1 weights."""
    return max(y_norm2 - float(np.dot(w, gamma_sq)), 0.0)


def sse_closed_form(basis, w, yc):
    w = np.asarray(w, dtype=float)
    yc = np.asarray(yc, dtype=float)
    if w.shape != (basis.m,) or yc.shape != (basis.n,):
        raise DimensionMismatch(
            f"w has shape {w.shape}, yc {yc.shape}; basis is n={basis.n}, m={basis.m}")
    gamma = basis.U.T @ yc
    return sse_from_gamma(float(yc @ yc), gamma**2, w)


def df_from_weights(w, wdot=None, gamma_sq=None):
    """sum w_j, plus the 2 gamma_j^2 wdot_j divergence term when weights depend on y."""
    if wdot is None:
        return float(np.sum(w))
    return float(np.sum(2.0 * gamma_sq * wdot + w))


def degrees_of_freedom(spec, basis):
    w = weights(spec, basis)
    if spec.ordering is Ordering.SINGULAR_VALUE:
        return df_from_weights(w)
    return df_from_weights(w, weight_derivs_wrt_gamma_sq(spec, basis), basis.gamma_sq)


def gcv_margin(n):
    return max(1.0, 0.01 * n)


def gcv(sse, df, n, strict=False):
    """SSE / (n - df)^2.

    Returns +inf when ``n - df`` falls below ``max(1, 0.01 n)`` so that
    minimizers steer away from the pole; ``strict=True`` raises instead.
    """
    if n - df < gcv_margin(n):
        if strict:
            raise DegenerateDF(f"n - df = {n - df:.4g} too small for n = {n}")
        return np.inf
    return sse / (n - df) ** 2


def _log_sse(sse):
    if not sse >= 0:
        raise NonpositiveSSE(f"sse = {sse}")
    return np.log(max(sse, SSE_FLOOR))


def aic(sse, df, n):
    return n * _log_sse(sse) + 2.0 * df


def bic(sse, df, n):
    return n * _log_sse(sse) + np.log(n) * df


_FUNCS = {Criterion.GCV: gcv, Criterion.AIC: aic, Criterion.BIC: bic}


def evaluate(criterion, sse, df, n):
    return CriterionValue(sse, df, float(_FUNCS[criterion](sse, df, n)), criterion)


def criterion_function(criterion):
    return _FUNCS[Criterion(criterion)]
