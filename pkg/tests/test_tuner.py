import numpy as np
import pytest

from wocr.components import decompose
from wocr.exceptions import AllInfinite
from wocr.models import ModelSpec, Variant, make_objective
from wocr.tuner import SearchRange, default_range, minimize_1d, minimize_2d
from wocr.weights import Family, Ordering

from conftest import linear_data, random_basis


def test_quadratic():
    res = minimize_1d(lambda x: (x - 2.0) ** 2, SearchRange(0, 10))
    assert res.x[0] == pytest.approx(2.0, abs=1e-5)


def test_bimodal_picks_global_basin():
    f = lambda x: min((x - 1) ** 2, (x - 9) ** 2 + 0.5)
    res = minimize_1d(f, SearchRange(0, 10, subdivisions=4))
    assert res.x[0] == pytest.approx(1.0, abs=1e-5)


def test_never_worse_than_endpoints():
    f = lambda x: -x  # monotone: optimum sits on the boundary
    res = minimize_1d(f, SearchRange(0, 3))
    assert res.value <= min(f(0.0), f(3.0)) + 1e-12


def test_infinite_regions_are_skipped():
    f = lambda x: np.inf if x < 4 else (x - 6) ** 2
    res = minimize_1d(f, SearchRange(0, 10))
    assert res.x[0] == pytest.approx(6.0, abs=1e-4)


def test_all_infinite():
    with pytest.raises(AllInfinite):
        minimize_1d(lambda x: np.inf, SearchRange(0, 1))
    with pytest.raises(AllInfinite):
        minimize_2d(lambda a, c: np.nan, SearchRange(0, 1), SearchRange(0, 1), budget=100)


def test_result_value_is_reevaluation():
    f = lambda x: np.cos(3 * x) + 0.1 * x
    res = minimize_1d(f, SearchRange(0, 10))
    assert res.value == f(res.x[0])
    g = lambda a, c: np.sin(a) * np.cos(c) + 0.01 * a
    res2 = minimize_2d(g, SearchRange(0, 6), SearchRange(0, 6), budget=300, seed=4)
    assert res2.value == g(*res2.x)


def test_determinism():
    f = lambda x: np.sin(5 * x) * x
    assert minimize_1d(f, SearchRange(0, 7)) == minimize_1d(f, SearchRange(0, 7))
    g = lambda a, c: (a - 1) ** 2 * np.cos(c) ** 2 + np.sin(a * c)
    r1 = minimize_2d(g, SearchRange(0, 5), SearchRange(0, 5), seed=11, budget=500)
    r2 = minimize_2d(g, SearchRange(0, 5), SearchRange(0, 5), seed=11, budget=500)
    assert r1.x == r2.x and r1.value == r2.value and r1.evaluations == r2.evaluations


def test_trace_records_every_call():
    res = minimize_1d(lambda x: x * x, SearchRange(-1, 1), keep_trace=True)
    assert len(res.trace) == res.evaluations
    assert min(v for _, v in res.trace) == res.value


def test_knots_are_breakpoints():
    r = SearchRange(0, 10, subdivisions=2, knots=(3.0, 11.0, 7.5))
    np.testing.assert_allclose(r.breakpoints(), [0, 3, 5, 7.5, 10])


def test_gcv_ridge_against_dense_grid(rng):
    X, y = linear_data(rng, 60, 8, noise=3.0)
    _, _, _, b = decompose(X, y)
    spec = ModelSpec(Variant.RR_D_LAMBDA)
    f, _ = make_objective(spec, b)
    r = default_range(Family.RIDGE_SHRINK, Ordering.SINGULAR_VALUE, b)["lam"]
    res = minimize_1d(f, r)
    grid = np.linspace(r.lo, r.hi, 100_000)
    step = grid[1] - grid[0]
    best = grid[int(np.argmin([f(v) for v in grid]))]
    assert abs(res.x[0] - best) <= max(1e-6 * (r.hi - r.lo), step)


def test_separable_quadratic_2d():
    res = minimize_2d(lambda a, c: (a - 3) ** 2 + (c + 1) ** 2,
                      SearchRange(0, 10), SearchRange(-5, 5), seed=1)
    assert res.x[0] == pytest.approx(3, abs=1e-2)
    assert res.x[1] == pytest.approx(-1, abs=1e-2)


def test_himmelblau():
    f = lambda x, y: (x * x + y - 11) ** 2 + (x + y * y - 7) ** 2
    res = minimize_2d(f, SearchRange(0, 5), SearchRange(0, 5), seed=2)
    assert f(*res.x) <= 1e-3


def test_pcr_gcv_against_dense_grid(rng):
    X, y = linear_data(rng, 80, 6, noise=2.0)
    _, _, _, b = decompose(X, y)
    f, names = make_objective(ModelSpec(Variant.PCR_D_AC), b)
    assert names == ("a", "c")
    r = default_range(Family.EXPIT, Ordering.SINGULAR_VALUE, b, free_a=True)
    res = minimize_2d(f, r["a"], r["c"], seed=0)
    A, C = np.meshgrid(np.linspace(r["a"].lo, r["a"].hi, 200),
                       np.linspace(r["c"].lo, r["c"].hi, 200))
    grid_best = min(f(a, c) for a, c in zip(A.ravel(), C.ravel()))
    assert res.value <= grid_best + 1e-9


def test_default_range_examples(rng):
    b, _ = random_basis(rng, 10, 3)
    b = type(b)(b.U, np.array([3.0, 2.0, 1.0]), b.V, b.gamma, b.y_norm2)
    c = default_range(Family.EXPIT, Ordering.SINGULAR_VALUE, b)["c"]
    assert c.lo <= 1.0 and c.hi >= 3.0
    assert set(np.sort(b.d)) <= set(c.knots)
    for fam, order in [(Family.RIDGE_SHRINK, Ordering.SINGULAR_VALUE),
                       (Family.RIDGE_SHRINK, Ordering.GAMMA_SQUARED)]:
        assert default_range(fam, order, b)["lam"].lo == 0.0
    g = default_range(Family.EXPIT, Ordering.GAMMA_SQUARED, b, free_a=True)
    assert g["c"].lo == 0.0 and g["c"].hi > np.max(b.gamma**2)
    assert (g["a"].lo, g["a"].hi) == (0.1, 200.0)


def test_default_lambda_range_is_wide_enough():
    # Model A designs: the optimum inside [0, 10 d1^2] is the optimum of a
    # far wider grid
    from wocr.bench import SimConfig, generate
    cfg = SimConfig("A", 60, 20, seed=5)
    for run in range(5):
        X, y, _, _ = generate(cfg, run)
        _, _, _, b = decompose(X, y)
        f, _ = make_objective(ModelSpec(Variant.RR_D_LAMBDA), b)
        r = default_range(Family.RIDGE_SHRINK, Ordering.SINGULAR_VALUE, b)["lam"]
        res = minimize_1d(f, r)
        wide = np.concatenate([np.linspace(0, r.hi, 20_000),
                               np.geomspace(r.hi, 100 * b.d[0] ** 2, 2_000)])
        vals = np.array([f(v) for v in wide])
        assert res.value <= vals.min() + 1e-12
