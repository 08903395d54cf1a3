"""Simulation benchmarks (Models A, B, C) and the repeated train/test split protocol."""

import functools
import math
import time
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Optional

import numpy as np
from scipy.special import expit

from .components import extract_components, standardize
from .exceptions import TooFewRows
from .models import ModelSpec, Variant, fit, predict

MODEL_A_TEST_SIGNAL = "test mean = standardized test X (training standardizer) @ sum_j b_j v_j / d_j"


@dataclass(frozen=True)
class SimConfig:
    generator: str
    n: int
    p: int
    rho: float = 0.5
    sigma2: float = 1.0
    b: Optional[tuple] = None
    runs: int = 200
    test_size: int = 500
    seed: int = 0
    fixed_test: bool = False

    def __post_init__(self):
        if self.generator not in ("A", "B", "C"):
            raise ValueError(f"generator must be A, B or C, got {self.generator!r}")
        if self.n < 3 or self.p < 1 or self.runs < 1 or self.test_size < 1:
            raise ValueError("n >= 3, p >= 1, runs >= 1, test_size >= 1 required")
        if self.generator in ("B", "C") and self.p < 5:
            raise ValueError("Models B and C use the first five covariates; need p >= 5")
        if not 0 <= self.rho < 1:
            raise ValueError("rho must lie in [0, 1)")
        if self.sigma2 < 0:
            raise ValueError("sigma2 must be >= 0")
        if self.b is not None:
            object.__setattr__(self, "b", tuple(float(v) for v in self.b))


def model_b_mean(X):
    x = X[:, :5].T
    return 0.1 * np.exp(4 * x[0]) + 4 * expit(20 * (x[1] - 0.5)) + 3 * x[2] + 2 * x[3] + x[4]


def model_c_mean(X):
    x = X[:, :5].T
    return 10 * np.sin(np.pi * x[0] * x[1]) + 20 * (x[2] - 0.5) ** 2 + 10 * x[3] + x[4]


@functools.lru_cache(maxsize=16)
def ar1_cholesky(p, rho):
    """Lower Cholesky factor of the AR(1) correlation matrix rho^|j - j'|."""
    idx = np.arange(p)
    return np.linalg.cholesky(rho ** np.abs(idx[:, None] - idx[None, :]))


def _model_a_coefs(b, m):
    if b is None:
        return (m - np.arange(m)) / 10.0
    out = np.zeros(m)
    k = min(m, len(b))
    out[:k] = b[:k]
    return out


def generate(config, run_index):
    """One training set and one test set, deterministic in (seed, run_index).

    With ``config.fixed_test`` the test covariates and test noise are drawn
    once per seed and shared by all runs.
    """
    rng = np.random.default_rng([config.seed, 1, run_index])
    test_rng = np.random.default_rng(
        [config.seed, 2, 0 if config.fixed_test else run_index])
    n, p, nt = config.n, config.p, config.test_size
    sd = math.sqrt(config.sigma2)
    if config.generator == "A":
        L = ar1_cholesky(p, config.rho)
        Xtr = rng.standard_normal((n, p)) @ L.T
        Xte = test_rng.standard_normal((nt, p)) @ L.T
        Xs, _, st = standardize(Xtr, np.zeros(n))
        basis = extract_components(Xs, np.zeros(n))
        b = _model_a_coefs(config.b, basis.m)
        beta = basis.V @ (b / basis.d)
        mu_tr = basis.U @ b
        mu_te = st.transform(Xte) @ beta
    else:
        mean = model_b_mean if config.generator == "B" else model_c_mean
        Xtr = rng.uniform(size=(n, p))
        Xte = test_rng.uniform(size=(nt, p))
        mu_tr, mu_te = mean(Xtr), mean(Xte)
    ytr = mu_tr + sd * rng.standard_normal(n)
    yte = mu_te + sd * test_rng.standard_normal(nt)
    return Xtr, ytr, Xte, yte


@dataclass
class MethodRow:
    name: str
    average_mse: float
    se_mse: float
    median_components: float
    median_effective: float
    failed_runs: list
    seconds: float
    mse: list = field(repr=False)
    components: list = field(repr=False)
    selected: list = field(repr=False)


@dataclass
class BenchReport:
    rows: list
    metadata: dict

    def row(self, name):
        for r in self.rows:
            if r.name == name:
                return r
        raise KeyError(name)

    def to_dict(self, include_timing=False):
        rows = []
        for r in self.rows:
            d = asdict(r)
            if not include_timing:
                d.pop("seconds")
            rows.append(d)
        return {"metadata": self.metadata, "rows": rows}

    def to_table(self, include_timing=True):
        head = f"{'method':<14}{'average-MSE':>13}{'SE-MSE':>11}{'# comps':>9}{'failed':>8}"
        if include_timing:
            head += f"{'seconds':>10}"
        lines = [head, "-" * len(head)]
        for r in self.rows:
            line = (f"{r.name:<14}{r.average_mse:>13.4f}{r.se_mse:>11.4f}"
                    f"{r.median_components:>9g}{len(r.failed_runs):>8d}")
            if include_timing:
                line += f"{r.seconds:>10.3f}"
            lines.append(line)
        return "\n".join(lines) + "\n"


def _evaluate_methods(methods, Xtr, ytr, Xte, yte):
    out = []
    for spec in methods:
        t0 = time.perf_counter()
        try:
            f = fit(spec, Xtr, ytr)
            mse = float(np.mean((yte - predict(f, Xte)) ** 2))
            rec = (mse, f.hard_components, f.effective_components, f.selected.tolist(), None)
        except Exception as exc:  # per-run failures are reported, not fatal
            rec = (math.nan, None, None, None, f"{type(exc).__name__}: {exc}")
        out.append(rec + (time.perf_counter() - t0,))
    return out


def _sim_run(config, methods, run_index):
    return _evaluate_methods(methods, *generate(config, run_index))


def _split_run(X, y, ratio, seed, methods, run_index):
    rng = np.random.default_rng([seed, run_index])
    n = len(y)
    perm = rng.permutation(n)
    k = int(round(ratio * n))
    tr, te = perm[:k], perm[k:]
    return _evaluate_methods(methods, X[tr], y[tr], X[te], y[te])


def _map_runs(func, runs, n_jobs):
    if n_jobs is None or n_jobs <= 1:
        return [func(r) for r in range(runs)]
    with ProcessPoolExecutor(max_workers=n_jobs) as ex:
        return list(ex.map(func, range(runs), chunksize=max(1, runs // (4 * n_jobs))))


def _aggregate(methods, results, metadata):
    rows = []
    for i, spec in enumerate(methods):
        recs = [res[i] for res in results]
        mse = np.array([r[0] for r in recs])
        ok = np.isfinite(mse)
        good = mse[ok]
        comps = [r[1] for r in recs]
        k = good.size
        rows.append(MethodRow(
            name=spec.name,
            average_mse=float(np.mean(good)) if k else math.nan,
            se_mse=float(np.std(good, ddof=1) / math.sqrt(k)) if k > 1 else 0.0,
            median_components=float(np.median([c for c in comps if c is not None])) if k else math.nan,
            median_effective=float(np.median([r[2] for r in recs if r[2] is not None])) if k else math.nan,
            failed_runs=[{"run": j, "error": r[4]} for j, r in enumerate(recs) if r[4] is not None],
            seconds=float(sum(r[5] for r in recs)),
            mse=[float(v) for v in mse],
            components=comps,
            selected=[r[3] for r in recs],
        ))
    return BenchReport(rows, metadata)


def default_methods(seed=0):
    return [ModelSpec(v, seed=seed) for v in Variant]


def run_benchmark(config, methods=None, n_jobs=1):
    """Fit every method on ``config.runs`` simulated data sets and aggregate test MSE."""
    methods = list(methods) if methods is not None else default_methods(config.seed)
    if not methods:
        raise ValueError("no methods given")
    results = _map_runs(functools.partial(_sim_run, config, methods), config.runs, n_jobs)
    meta = {"protocol": "simulation", "config": asdict(config),
            "seeds": {"base": config.seed, "per_run": "default_rng([seed, run_index])"},
            "methods": [m.name for m in methods]}
    if config.generator == "A":
        meta["model_a_test_signal"] = MODEL_A_TEST_SIGNAL
    return _aggregate(methods, results, meta)


def split_protocol(X, y, ratio=2 / 3, runs=200, methods=None, seed=0, n_jobs=1):
    """Repeated random train/test splits of a fixed data set."""
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=float)
    if not 0 < ratio < 1:
        raise ValueError("ratio must lie in (0, 1)")
    methods = list(methods) if methods is not None else default_methods(seed)
    n, p = X.shape
    n_train = int(round(ratio * n))
    meta = {"protocol": "split", "n": n, "p": p, "ratio": ratio, "runs": runs,
            "train_size": n_train, "seeds": {"base": seed,
                                             "per_run": "default_rng([seed, run_index])"},
            "methods": [m.name for m in methods], "warnings": []}
    if n_train < p + 2:
        msg = f"training split of {n_train} rows < p + 2 = {p + 2}"
        warnings.warn(msg, TooFewRows)
        meta["warnings"].append(msg)
    results = _map_runs(functools.partial(_split_run, X, y, ratio, seed, methods), runs, n_jobs)
    return _aggregate(methods, results, meta)
