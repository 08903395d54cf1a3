"""Weight families for weighted orthogonal components.

Two families (ridge-type shrinkage and expit) crossed with two orderings
(singular value d_j, or squared response coefficient gamma_j^2) give the
four weight functions behind the six model variants.
"""

import enum
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.special import expit

from .exceptions import MissingParam

DEFAULT_FIXED_A = 50.0


class Family(enum.Enum):
    RIDGE_SHRINK = "ridge"
    EXPIT = "expit"


class Ordering(enum.Enum):
    SINGULAR_VALUE = "d"
    GAMMA_SQUARED = "gamma"


@dataclass(frozen=True)
class TuningParams:
    lam: Optional[float] = None
    a: Optional[float] = None
    c: Optional[float] = None

    def as_dict(self):
        out = {}
        if self.lam is not None:
            out["lambda"] = self.lam
        if self.a is not None:
            out["a"] = self.a
        if self.c is not None:
            out["c"] = self.c
        return out

    @classmethod
    def from_dict(cls, d):
        return cls(lam=d.get("lambda"), a=d.get("a"), c=d.get("c"))


def _check_params(family, params):
    if family is Family.RIDGE_SHRINK:
        if params.lam is None:
            raise MissingParam("ridge weights need lambda")
        if params.lam < 0:
            raise ValueError(f"lambda must be >= 0, got {params.lam}")
        if params.a is not None or params.c is not None:
            raise ValueError("ridge weights take only lambda")
    else:
        if params.a is None or params.c is None:
            raise MissingParam("expit weights need both a and c")
        if params.a <= 0:
            raise ValueError(f"a must be > 0, got {params.a}")
        if params.lam is not None:
            raise ValueError("expit weights take only a and c")


@dataclass(frozen=True)
class WeightSpec:
    family: Family
    ordering: Ordering
    params: TuningParams

    def __post_init__(self):
        _check_params(self.family, self.params)


def ordering_statistic(ordering, basis):
    """d_j for singular-value ordering, gamma_j^2 for response ordering."""
    if ordering is Ordering.SINGULAR_VALUE:
        return basis.d
    return basis.gamma_sq


def ridge_shrink(s2, lam):
    """s2 / (s2 + lam), with the lam = 0 limit taken as 1."""
    s2 = np.asarray(s2, dtype=float)
    if lam == 0:
        return np.ones_like(s2)
    if np.isinf(lam):
        return np.zeros_like(s2)
    return s2 / (s2 + lam)


def ridge_shrink_deriv(s2, lam):
    s2 = np.asarray(s2, dtype=float)
    if lam == 0 or np.isinf(lam):
        return np.zeros_like(s2)
    return lam / (s2 + lam) ** 2


def expit_weight(s, a, c):
    # scipy's expit saturates to exactly 0/1 instead of overflowing
    return expit(a * (np.asarray(s, dtype=float) - c))


def weights(spec, basis):
    """Per-component weights in [0, 1] for ``spec`` on ``basis``."""
    _check_params(spec.family, spec.params)
    s = ordering_statistic(spec.ordering, basis)
    if spec.family is Family.RIDGE_SHRINK:
        s2 = s**2 if spec.ordering is Ordering.SINGULAR_VALUE else s
        return ridge_shrink(s2, spec.params.lam)
    return expit_weight(s, spec.params.a, spec.params.c)


def weight_derivs_wrt_gamma_sq(spec, basis):
    """dw_j / d(gamma_j^2); identically zero under singular-value ordering."""
    _check_params(spec.family, spec.params)
    if spec.ordering is Ordering.SINGULAR_VALUE:
        return np.zeros(basis.m)
    if spec.family is Family.RIDGE_SHRINK:
        return ridge_shrink_deriv(basis.gamma_sq, spec.params.lam)
    w = expit_weight(basis.gamma_sq, spec.params.a, spec.params.c)
    return spec.params.a * w * (1.0 - w)
