"""Derivative-free minimization of tuning criteria.

One-parameter criteria are minimized with bounded Brent search on each
piece of a subdivided range; two-parameter criteria with generalized
simulated annealing seeded from a coarse grid.
"""

from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy.optimize import dual_annealing, minimize_scalar

from .exceptions import AllInfinite
from .weights import Family, Ordering, ordering_statistic

DEFAULT_SUBDIVISIONS = 8
DEFAULT_BUDGET = 2000
GRID_2D = 20
A_RANGE = (0.1, 200.0)
LAMBDA_SCALE = 10.0

# stands in for +inf inside scipy's routines, small enough that parabolic
# interpolation arithmetic cannot overflow
_SENTINEL = 1e100


@dataclass(frozen=True)
class SearchRange:
    lo: float
    hi: float
    subdivisions: int = DEFAULT_SUBDIVISIONS
    knots: tuple = ()

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ValueError(f"empty range [{self.lo}, {self.hi}]")
        if self.subdivisions < 1:
            raise ValueError("subdivisions must be >= 1")

    def breakpoints(self):
        """Equal subdivision points merged with any interior knots."""
        pts = np.linspace(self.lo, self.hi, self.subdivisions + 1)
        knots = np.asarray(self.knots, dtype=float)
        knots = knots[(knots > self.lo) & (knots < self.hi)]
        return np.unique(np.concatenate([pts, knots]))


@dataclass
class TuneResult:
    x: tuple
    value: float
    evaluations: int
    trace: Optional[list] = field(default=None, repr=False)


class _Recorder:
    """Wraps an objective: counts calls, remembers the best point, masks inf."""

    def __init__(self, f, keep_trace=False):
        self.f = f
        self.calls = 0
        self.best_x = None
        self.best_value = np.inf
        self.trace = [] if keep_trace else None

    def __call__(self, *x):
        v = float(self.f(*x))
        self.calls += 1
        if self.trace is not None:
            self.trace.append((x, v))
        if v < self.best_value:
            self.best_value = v
            self.best_x = x
        return v if np.isfinite(v) else _SENTINEL

    def result(self):
        if self.best_x is None:
            raise AllInfinite("objective is +inf (or nan) at every probed point")
        return TuneResult(tuple(float(v) for v in self.best_x), self.best_value,
                          self.calls, self.trace)


def minimize_1d(f, search, tol=None, keep_trace=False):
    """Minimize scalar ``f`` over ``search`` by Brent's method on each sub-interval.

    Every breakpoint is evaluated as well, so the result is never worse
    than the range endpoints.
    """
    if tol is None:
        tol = 1e-6 * (search.hi - search.lo)
    rec = _Recorder(f, keep_trace)
    pts = search.breakpoints()
    for x in pts:
        rec(float(x))
    for lo, hi in zip(pts[:-1], pts[1:]):
        if hi - lo <= tol:
            continue
        minimize_scalar(rec, bounds=(lo, hi), method="bounded",
                        options={"xatol": tol})
    return rec.result()


def minimize_2d(f, range_a, range_c, budget=DEFAULT_BUDGET, seed=0, keep_trace=False):
    """Global minimization of ``f(a, c)`` on a box.

    A ``GRID_2D x GRID_2D`` grid is scanned first and its best point seeds a
    dual-annealing run with the remaining evaluation budget; the best point
    seen anywhere is returned.
    """
    if budget < 100:
        raise ValueError("budget must be >= 100")
    rec = _Recorder(f, keep_trace)
    ga = np.linspace(range_a.lo, range_a.hi, GRID_2D)
    gc = np.linspace(range_c.lo, range_c.hi, GRID_2D)
    for a in ga:
        for c in gc:
            rec(float(a), float(c))
    remaining = budget - rec.calls
    if remaining > 0 and rec.best_x is not None:
        dual_annealing(lambda z: rec(float(z[0]), float(z[1])),
                       bounds=[(range_a.lo, range_a.hi), (range_c.lo, range_c.hi)],
                       maxfun=remaining, rng=seed, x0=np.array(rec.best_x))
    return rec.result()


def default_range(family, ordering, basis, free_a=False):
    """Search ranges for the free parameters of a weight family.

    Returns a dict keyed by parameter name ("lam", "a", "c").
    """
    s = ordering_statistic(ordering, basis)
    if family is Family.RIDGE_SHRINK:
        scale = basis.d[0] ** 2 if ordering is Ordering.SINGULAR_VALUE else float(np.max(s))
        hi = LAMBDA_SCALE * scale if scale > 0 else 1.0
        return {"lam": SearchRange(0.0, hi)}
    smax, smin = float(np.max(s)), float(np.min(s))
    delta = 0.01 * (smax - smin + 1.0)
    if ordering is Ordering.SINGULAR_VALUE:
        lo, hi = smin - delta, smax + delta
    else:
        lo, hi = 0.0, smax + delta
    if free_a:
        return {"a": SearchRange(*A_RANGE), "c": SearchRange(lo, hi)}
    # a fixed steep expit makes the criterion step-like between consecutive
    # ordering values, so those values bound the Brent brackets
    return {"c": SearchRange(lo, hi, knots=tuple(np.sort(s)))}
