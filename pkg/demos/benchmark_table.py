"""
A small Monte Carlo table
=========================

Average test MSE of every method on the Model B regression function. The
full-size version is ``wocr bench --gen B --n 500 --p 5 --runs 200``.
"""

from wocr.bench import SimConfig, run_benchmark

cfg = SimConfig("B", n=500, p=5, runs=20, seed=0)
report = run_benchmark(cfg)
print(report.to_table())

# per-run MSEs are kept for further analysis
row = report.row("pcr-d-ac")
print("first five runs of pcr-d-ac:", [round(v, 3) for v in row.mse[:5]])
