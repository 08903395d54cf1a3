"""The six weighted-component regression variants and two grid/CV baselines.

``fit`` standardizes the data, extracts components, tunes the variant's
parameters against its criterion and returns an immutable ``FitResult``.
"""

import enum
import json
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy.linalg import cho_factor, cho_solve

from .components import DEFAULT_RANK_TOL, OrthoBasis, Standardizer, decompose
from .criteria import (Criterion, criterion_function, df_from_weights,
                       sse_from_gamma, sse_idempotent)
from .exceptions import DimensionMismatch, SingularFit
from .tuner import (DEFAULT_BUDGET, DEFAULT_SUBDIVISIONS, SearchRange, TuneResult,
                    default_range, minimize_1d, minimize_2d)
from .weights import (DEFAULT_FIXED_A, Family, Ordering, TuningParams, WeightSpec,
                      expit_weight, ordering_statistic, ridge_shrink,
                      weight_derivs_wrt_gamma_sq, weights)

SCHEMA_VERSION = 1


class Variant(enum.Enum):
    RR_D_LAMBDA = "rr-d"
    RR_GAMMA_LAMBDA = "rr-gamma"
    PCR_D_C = "pcr-d-c"
    PCR_GAMMA_C = "pcr-gamma-c"
    PCR_D_AC = "pcr-d-ac"
    PCR_GAMMA_AC = "pcr-gamma-ac"
    RIDGE_GRID = "ridge-grid"
    PCR_CV = "pcr-cv"


MODEL_NAMES = tuple(v.value for v in Variant)

# variant -> (family, ordering, a is free, default criterion)
_TABLE = {
    Variant.RR_D_LAMBDA: (Family.RIDGE_SHRINK, Ordering.SINGULAR_VALUE, False, Criterion.GCV),
    Variant.RR_GAMMA_LAMBDA: (Family.RIDGE_SHRINK, Ordering.GAMMA_SQUARED, False, Criterion.GCV),
    Variant.PCR_D_C: (Family.EXPIT, Ordering.SINGULAR_VALUE, False, Criterion.BIC),
    Variant.PCR_GAMMA_C: (Family.EXPIT, Ordering.GAMMA_SQUARED, False, Criterion.BIC),
    Variant.PCR_D_AC: (Family.EXPIT, Ordering.SINGULAR_VALUE, True, Criterion.GCV),
    Variant.PCR_GAMMA_AC: (Family.EXPIT, Ordering.GAMMA_SQUARED, True, Criterion.GCV),
    Variant.RIDGE_GRID: (Family.RIDGE_SHRINK, Ordering.SINGULAR_VALUE, False, Criterion.GCV),
}
_HARD_REFIT = (Variant.PCR_D_C, Variant.PCR_GAMMA_C)


def default_lambda_grid():
    """0.01, 0.02, ..., 200."""
    return np.arange(1, 20001) * 0.01


@dataclass(frozen=True)
class ModelSpec:
    variant: Variant
    criterion: Optional[Criterion] = None
    fixed_a: float = DEFAULT_FIXED_A
    subdivisions: int = DEFAULT_SUBDIVISIONS
    tol: Optional[float] = None
    budget: int = DEFAULT_BUDGET
    seed: int = 0
    lambda_grid: Optional[tuple] = None
    cv_folds: int = 10
    rank_tol: float = DEFAULT_RANK_TOL

    def __post_init__(self):
        object.__setattr__(self, "variant", Variant(self.variant))
        if self.criterion is not None:
            object.__setattr__(self, "criterion", Criterion(self.criterion))

    @property
    def name(self):
        return self.variant.value

    @property
    def resolved_criterion(self):
        """Explicit criterion if given, else the variant's suggested one (None for CV)."""
        if self.criterion is not None:
            return self.criterion
        if self.variant is Variant.PCR_CV:
            return None
        return _TABLE[self.variant][3]


@dataclass(frozen=True)
class FitResult:
    spec: ModelSpec
    params: TuningParams
    weights: np.ndarray
    beta_tilde: np.ndarray
    beta_original: np.ndarray
    intercept: float
    sse: float
    df: float
    criterion_value: float
    standardizer: Standardizer
    basis: OrthoBasis
    fitted: np.ndarray
    tune: Optional[TuneResult] = field(default=None, repr=False)
    cv_mse: Optional[np.ndarray] = field(default=None, repr=False)

    @property
    def effective_components(self):
        return float(np.sum(self.weights))

    @property
    def hard_components(self):
        return int(np.count_nonzero(self.weights >= 0.5))

    @property
    def selected(self):
        """Indices (0-based, singular-value order) of components with weight >= 0.5."""
        return np.flatnonzero(self.weights >= 0.5)

    def predict_original(self, Xnew):
        """Prediction through the original-unit coefficients and intercept."""
        Xnew = np.asarray(Xnew, dtype=float)
        if Xnew.ndim != 2 or Xnew.shape[1] != self.beta_original.shape[0]:
            raise DimensionMismatch(f"expected {self.beta_original.shape[0]} columns")
        return Xnew @ self.beta_original + self.intercept


def weight_spec_for(variant, params):
    family, ordering, _, _ = _TABLE[Variant(variant)]
    return WeightSpec(family, ordering, params)


def _uses_prop2_df(ordering):
    return ordering is Ordering.GAMMA_SQUARED


def make_objective(spec, basis):
    """Criterion as a function of the free tuning parameters.

    Returns ``(f, names)`` where ``names`` lists the parameters f takes, in order.
    """
    family, ordering, free_a, _ = _TABLE[spec.variant]
    crit = criterion_function(spec.resolved_criterion)
    n, y2, gsq = basis.n, basis.y_norm2, basis.gamma_sq
    s = ordering_statistic(ordering, basis)
    sse_of = sse_idempotent if spec.variant in _HARD_REFIT else sse_from_gamma
    prop2 = _uses_prop2_df(ordering)

    def score(w, wdot):
        df = df_from_weights(w, wdot, gsq) if prop2 else df_from_weights(w)
        return crit(sse_of(y2, gsq, w), df, n)

    if family is Family.RIDGE_SHRINK:
        s2 = s**2 if ordering is Ordering.SINGULAR_VALUE else s

        def f(lam):
            w = ridge_shrink(s2, lam)
            wdot = lam / (s2 + lam) ** 2 if prop2 and lam > 0 else np.zeros_like(w)
            return score(w, wdot)
        return f, ("lam",)

    def f_ac(a, c):
        w = expit_weight(s, a, c)
        return score(w, a * w * (1.0 - w))

    if free_a:
        return f_ac, ("a", "c")
    a_fixed = spec.fixed_a
    return (lambda c: f_ac(a_fixed, c)), ("c",)


def tune(spec, basis, keep_trace=False):
    """Find the variant's tuning parameters by minimizing its criterion."""
    family, ordering, free_a, _ = _TABLE[spec.variant]
    f, names = make_objective(spec, basis)
    ranges = default_range(family, ordering, basis, free_a=free_a)
    if free_a:
        res = minimize_2d(f, ranges["a"], ranges["c"], budget=spec.budget,
                          seed=spec.seed, keep_trace=keep_trace)
        params = TuningParams(a=res.x[0], c=res.x[1])
    else:
        r = ranges[names[0]]
        r = SearchRange(r.lo, r.hi, spec.subdivisions, r.knots)
        tol = spec.tol * (r.hi - r.lo) if spec.tol is not None else None
        res = minimize_1d(f, r, tol=tol, keep_trace=keep_trace)
        if names[0] == "lam":
            params = TuningParams(lam=res.x[0])
        else:
            params = TuningParams(a=spec.fixed_a, c=res.x[0])
    return params, res


def _finish(spec, params, w, Xs_st, basis, df, crit_value, tune_res=None, cv_mse=None,
            sse=None):
    st = Xs_st
    if sse is None:
        sse = sse_from_gamma(basis.y_norm2, basis.gamma_sq, w)
    beta_tilde = basis.V @ (w * basis.gamma / basis.d)
    beta_original = beta_tilde / st.column_scales
    intercept = st.response_mean - float(st.column_means @ beta_original)
    fitted = st.response_mean + basis.U @ (w * basis.gamma)
    return FitResult(spec, params, w, beta_tilde, beta_original, intercept, sse, df,
                     crit_value, st, basis, fitted, tune_res, cv_mse)


def fit(spec, X, y, params=None):
    """Fit one model variant.

    ``params`` bypasses tuning with fixed tuning parameters (not for the
    baselines). It may be a ``TuningParams`` or a mapping with keys among
    ``lam``/``lambda``, ``a`` and ``c``.
    """
    if not isinstance(spec, ModelSpec):
        spec = ModelSpec(spec)
    X = np.ascontiguousarray(X, dtype=float)
    y = np.ascontiguousarray(y, dtype=float)
    if X.ndim != 2 or X.shape[0] < 3:
        raise DimensionMismatch(f"need a 2-D X with at least 3 rows, got {X.shape}")
    Xs, yc, st, basis = decompose(X, y, spec.rank_tol)
    if basis.m == 0:
        raise SingularFit("design has rank 0")
    if spec.variant is Variant.RIDGE_GRID:
        return _fit_ridge_grid(spec, Xs, yc, st, basis)
    if spec.variant is Variant.PCR_CV:
        return _fit_pcr_cv(spec, X, y, st, basis)

    family, ordering, _, _ = _TABLE[spec.variant]
    tune_res = None
    if params is None:
        params, tune_res = tune(spec, basis)
    elif not isinstance(params, TuningParams):
        d = dict(params)
        params = TuningParams(lam=d.get("lam", d.get("lambda")), a=d.get("a"), c=d.get("c"))
    wspec = WeightSpec(family, ordering, params)
    crit = criterion_function(spec.resolved_criterion)
    n = basis.n

    if spec.variant in _HARD_REFIT:
        s = ordering_statistic(ordering, basis)
        w = (s >= params.c).astype(float)
        sse = sse_idempotent(basis.y_norm2, basis.gamma_sq, w)
        df = float(w.sum())
    else:
        w = weights(wspec, basis)
        sse = sse_from_gamma(basis.y_norm2, basis.gamma_sq, w)
        if _uses_prop2_df(ordering):
            df = df_from_weights(w, weight_derivs_wrt_gamma_sq(wspec, basis), basis.gamma_sq)
        else:
            df = df_from_weights(w)
    return _finish(spec, params, w, st, basis, df, float(crit(sse, df, n)), tune_res,
                   sse=sse)


def _fit_ridge_grid(spec, Xs, yc, st, basis):
    """Conventional ridge: refit at every grid lambda and keep the GCV minimizer.

    Each lambda gets its own Cholesky solve of the regularized Gram system
    (primal p x p when p <= n, dual n x n otherwise), so the cost grows with
    the grid size. The basis is only used to express the chosen fit.
    """
    grid = np.asarray(spec.lambda_grid if spec.lambda_grid is not None
                      else default_lambda_grid(), dtype=float)
    n, p = Xs.shape
    primal = p <= n
    G = Xs.T @ Xs if primal else Xs @ Xs.T
    rhs = Xs.T @ yc if primal else yc
    eye = np.eye(G.shape[0])
    floor = max(1.0, 0.01 * n)
    best = (np.inf, None)
    for lam in grid:
        try:
            cf = cho_factor(G + lam * eye)
        except np.linalg.LinAlgError:
            continue
        sol = cho_solve(cf, rhs)
        fitted = Xs @ sol if primal else G @ sol
        resid = yc - fitted
        edf = float(np.trace(cho_solve(cf, G)))
        if n - edf < floor:
            continue
        g = float(resid @ resid) / (n - edf) ** 2
        if g < best[0]:
            best = (g, float(lam))
    if best[1] is None:
        raise SingularFit("GCV infinite over the whole lambda grid")
    params = TuningParams(lam=best[1])
    w = ridge_shrink(basis.d**2, best[1])
    return _finish(spec, params, w, st, basis, float(w.sum()), best[0])


def pcr_cv_errors(X, y, k_max, folds, rank_tol=DEFAULT_RANK_TOL):
    """V-fold cross-validated MSE of hard PCR with k = 0..k_max leading components."""
    n = len(y)
    err = np.zeros(k_max + 1)
    limit = k_max
    for test in folds:
        train = np.setdiff1d(np.arange(n), test)
        _, _, st, b = decompose(X[train], y[train], rank_tol)
        Z = st.transform(X[test]) @ (b.V / b.d)
        contrib = Z * b.gamma
        pred = st.response_mean + np.concatenate(
            [np.zeros((len(test), 1)), np.cumsum(contrib, axis=1)], axis=1)
        kk = min(k_max, b.m)
        limit = min(limit, kk)
        err[:kk + 1] += ((y[test, None] - pred[:, :kk + 1]) ** 2).sum(axis=0)
    return err[:limit + 1] / n


def _fit_pcr_cv(spec, X, y, st, basis):
    n = len(y)
    v = min(spec.cv_folds, n)
    perm = np.random.default_rng(spec.seed).permutation(n)
    folds = np.array_split(perm, v)
    cv = pcr_cv_errors(X, y, basis.m, folds, spec.rank_tol)
    k = int(np.argmin(cv))  # first minimum, i.e. smallest k on ties
    w = (np.arange(basis.m) < k).astype(float)
    return _finish(spec, TuningParams(), w, st, basis, float(k), float(cv[k]), cv_mse=cv)


def predict(fit_result, Xnew):
    """Predict through the training standardizer: Xs' beta_tilde + mean(y)."""
    Xs_new = fit_result.standardizer.transform(Xnew)
    return Xs_new @ fit_result.beta_tilde + fit_result.standardizer.response_mean


def component_report(fit_result):
    """Rows (j, d_j, gamma_j, w_j) with j counted from 1 in singular-value order."""
    b = fit_result.basis
    return [{"j": j + 1, "d": float(b.d[j]), "gamma": float(b.gamma[j]),
             "w": float(fit_result.weights[j])} for j in range(b.m)]


def report_to_json(rows):
    return json.dumps(rows)


def report_from_json(text):
    return json.loads(text)


def fit_to_dict(fit_result, column_names=None):
    """FitResult as the versioned JSON-ready schema."""
    st = fit_result.standardizer
    p = st.p
    if column_names is None:
        column_names = [f"x{j + 1}" for j in range(p)]
    crit = fit_result.spec.resolved_criterion
    return {
        "schema": SCHEMA_VERSION,
        "variant": fit_result.spec.name,
        "criterion": crit.value if crit is not None else "cv",
        "params": fit_result.params.as_dict(),
        "sse": fit_result.sse,
        "df": fit_result.df,
        "criterion_value": fit_result.criterion_value,
        "effective_components": fit_result.effective_components,
        "hard_components": fit_result.hard_components,
        "beta_original": fit_result.beta_original.tolist(),
        "intercept": fit_result.intercept,
        "column_names": list(column_names),
        "standardizer": {"means": st.column_means.tolist(),
                         "scales": st.column_scales.tolist(),
                         "response_mean": st.response_mean},
        "weights": fit_result.weights.tolist(),
        "singular_values": fit_result.basis.d.tolist(),
        "gamma": fit_result.basis.gamma.tolist(),
    }


def predict_from_dict(record, Xnew):
    """Predict from a serialized fit using its original-unit coefficients."""
    beta = np.asarray(record["beta_original"], dtype=float)
    Xnew = np.asarray(Xnew, dtype=float)
    if Xnew.ndim != 2 or Xnew.shape[1] != beta.shape[0]:
        raise DimensionMismatch(f"expected {beta.shape[0]} columns, got {Xnew.shape}")
    return Xnew @ beta + record["intercept"]
