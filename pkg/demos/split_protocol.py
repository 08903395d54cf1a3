"""
Repeated train/test splits of one data set
==========================================

The same pipeline used for real data sets: random two-thirds training splits,
test MSE on the remaining third. A synthetic data set stands in for a real
one here.
"""

import numpy as np

from wocr.bench import split_protocol
from wocr.models import ModelSpec, Variant

rng = np.random.default_rng(3)
n, p = 506, 13
idx = np.arange(p)
X = rng.normal(size=(n, p)) @ np.linalg.cholesky(0.7 ** np.abs(idx[:, None] - idx[None, :])).T
y = X @ rng.normal(0, 1, p) + 0.5 * X[:, 0] ** 2 + rng.normal(0, 2, n)

methods = [ModelSpec(v) for v in (Variant.RR_D_LAMBDA, Variant.RR_GAMMA_LAMBDA,
                                  Variant.PCR_D_AC, Variant.PCR_CV)]
report = split_protocol(X, y, ratio=2 / 3, runs=30, methods=methods, seed=0)
print(f"training rows per split: {report.metadata['train_size']}")
print(report.to_table(include_timing=False))
