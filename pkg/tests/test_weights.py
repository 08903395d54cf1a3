import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from wocr.components import OrthoBasis
from wocr.exceptions import MissingParam
from wocr.weights import (Family, Ordering, TuningParams, WeightSpec,
                          weight_derivs_wrt_gamma_sq, weights)

RIDGE, EXPIT = Family.RIDGE_SHRINK, Family.EXPIT
BY_D, BY_G = Ordering.SINGULAR_VALUE, Ordering.GAMMA_SQUARED


def basis_from(d, gamma):
    d = np.asarray(d, float)
    gamma = np.asarray(gamma, float)
    m = d.size
    eye = np.eye(max(m, 1))[:, :m]
    return OrthoBasis(eye, d, eye, gamma, float(gamma @ gamma))


def spec(family, ordering, **kw):
    return WeightSpec(family, ordering, TuningParams(**kw))


def test_ridge_lambda_zero_is_ols():
    b = basis_from([3, 2, 1], [1, -2, 0.5])
    np.testing.assert_array_equal(weights(spec(RIDGE, BY_D, lam=0.0), b), 1.0)


def test_expit_midpoint():
    b = basis_from([4.0, 2.0], [1, 1])
    assert weights(spec(EXPIT, BY_D, a=3.0, c=2.0), b)[1] == 0.5


def test_ridge_half_weight():
    b = basis_from([3.0, 1.0], [1, 1])
    assert weights(spec(RIDGE, BY_D, lam=9.0), b)[0] == 0.5


def test_steep_expit_is_a_step():
    w = weights(spec(EXPIT, BY_D, a=50.0, c=50.0), basis_from([60.0, 40.0], [1, 1]))
    assert w[0] == pytest.approx(1.0, abs=1e-200)
    assert 0.0 <= w[1] < 1e-200


def test_gamma_ordering_uses_gamma_squared():
    b = basis_from([3, 2, 1], [0.5, -3.0, 1.0])
    w = weights(spec(RIDGE, BY_G, lam=1.0), b)
    np.testing.assert_allclose(w, [0.25 / 1.25, 9 / 10, 1 / 2])
    w = weights(spec(EXPIT, BY_G, a=2.0, c=1.0), b)
    np.testing.assert_allclose(w, 1 / (1 + np.exp(-2 * (np.array([0.25, 9, 1]) - 1))))


def test_missing_and_extra_params():
    with pytest.raises(MissingParam):
        spec(RIDGE, BY_D)
    with pytest.raises(MissingParam):
        spec(EXPIT, BY_G, a=1.0)
    with pytest.raises(ValueError):
        spec(RIDGE, BY_D, lam=1.0, c=2.0)
    with pytest.raises(ValueError):
        spec(EXPIT, BY_D, a=-1.0, c=0.0)


def test_derivative_examples():
    b = basis_from([3, 2], [1.5, -0.7])
    np.testing.assert_array_equal(weight_derivs_wrt_gamma_sq(spec(RIDGE, BY_G, lam=0.0), b), 0)
    a = 7.0
    wd = weight_derivs_wrt_gamma_sq(spec(EXPIT, BY_G, a=a, c=1.5**2), b)
    assert wd[0] == pytest.approx(a / 4)
    np.testing.assert_array_equal(weight_derivs_wrt_gamma_sq(spec(EXPIT, BY_D, a=a, c=2.0), b), 0)


def _fd_deriv(s, b, h=1e-6):
    g2 = b.gamma**2
    out = []
    for j in range(b.m):
        up, dn = g2.copy(), g2.copy()
        up[j] += h
        dn[j] -= h
        wu = weights(s, basis_from(b.d, np.sqrt(up)))[j]
        wl = weights(s, basis_from(b.d, np.sqrt(dn)))[j]
        out.append((wu - wl) / (2 * h))
    return np.array(out)


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), family=st.sampled_from([RIDGE, EXPIT]))
def test_derivative_matches_finite_difference(seed, family):
    r = np.random.default_rng(seed)
    gamma = r.uniform(0.3, 3.0, 5) * r.choice([-1, 1], 5)
    b = basis_from(np.sort(r.uniform(1, 5, 5))[::-1], gamma)
    if family is RIDGE:
        s = spec(RIDGE, BY_G, lam=float(r.uniform(0.1, 10)))
    else:
        s = spec(EXPIT, BY_G, a=float(r.uniform(0.1, 3)), c=float(r.uniform(0, 9)))
    np.testing.assert_allclose(weight_derivs_wrt_gamma_sq(s, b), _fd_deriv(s, b),
                               rtol=1e-5, atol=1e-9)


@settings(max_examples=100, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), family=st.sampled_from([RIDGE, EXPIT]),
       ordering=st.sampled_from([BY_D, BY_G]))
def test_monotone_bounded_nonnegative_derivative(seed, family, ordering):
    r = np.random.default_rng(seed)
    b = basis_from(np.sort(r.uniform(0.1, 10, 8))[::-1], r.normal(0, 3, 8))
    if family is RIDGE:
        s = spec(family, ordering, lam=float(r.exponential(5)))
    else:
        s = spec(family, ordering, a=float(r.uniform(0.01, 2)), c=float(r.uniform(0, 10)))
    w = weights(s, b)
    stat = b.d if ordering is BY_D else b.gamma**2
    order = np.argsort(stat, kind="stable")
    assert np.all(np.diff(w[order]) >= 0)
    assert np.all((w >= 0) & (w <= 1))
    assert np.all(weight_derivs_wrt_gamma_sq(s, b) >= 0)


def test_ridge_limits():
    b = basis_from([3, 2, 1], [1, 1, 1])
    assert np.all(weights(spec(RIDGE, BY_D, lam=1e12), b) < 1e-10)
    assert np.all(weights(spec(RIDGE, BY_D, lam=np.inf), b) == 0)


def test_expit_strictly_inside_unit_interval():
    b = basis_from(np.linspace(5, 1, 9), np.ones(9))
    w = weights(spec(EXPIT, BY_D, a=3.0, c=3.0), b)
    assert np.all((w > 0) & (w < 1))
