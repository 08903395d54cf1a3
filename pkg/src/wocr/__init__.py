"""Weighted orthogonal components regression."""

from .bench import BenchReport, SimConfig, generate, run_benchmark, split_protocol
from .components import OrthoBasis, Standardizer, extract_components, standardize
from .criteria import (Criterion, CriterionValue, aic, bic, degrees_of_freedom, gcv,
                       sse_closed_form)
from .exceptions import (AllInfinite, ConstantColumn, DegenerateDF, DimensionMismatch,
                         MissingParam, NonpositiveSSE, SingularFit, TooFewRows, WOCRError,
                         ZeroMatrix)
from .models import (MODEL_NAMES, FitResult, ModelSpec, Variant, component_report, fit,
                     predict)
from .tuner import SearchRange, TuneResult, default_range, minimize_1d, minimize_2d
from .weights import (Family, Ordering, TuningParams, WeightSpec, weight_derivs_wrt_gamma_sq,
                      weights)

__version__ = "0.1.0"
