"""Command-line interface: ``wocr fit | predict | bench | report``.

Exit codes: 0 success, 2 bad flags or unreadable CSV, 3 fitting errors.
All randomness comes from ``--seed`` (default 0).
"""

import argparse
import csv
import io
import json
import os
import sys

import numpy as np

from .bench import SimConfig, run_benchmark
from .criteria import Criterion
from .exceptions import WOCRError
from .models import (MODEL_NAMES, ModelSpec, Variant, component_report, fit,
                     fit_to_dict, predict_from_dict)
from .weights import DEFAULT_FIXED_A

EXIT_OK, EXIT_PARSE, EXIT_FIT = 0, 2, 3


class CsvError(Exception):
    pass


def read_csv(path):
    """Header row plus numeric body. Returns (names, float matrix)."""
    try:
        with open(path, newline="", encoding="utf-8") as fh:
            rows = list(csv.reader(fh))
    except (OSError, UnicodeDecodeError) as exc:
        raise CsvError(f"cannot read {path}: {exc}") from exc
    if not rows:
        raise CsvError(f"{path}: empty file")
    header = [h.strip() for h in rows[0]]
    if len(set(header)) != len(header):
        raise CsvError(f"{path}: duplicate column names")
    body = []
    for i, row in enumerate(rows[1:], start=2):
        if not row:
            continue
        if len(row) != len(header):
            raise CsvError(f"{path}: line {i} has {len(row)} cells, header has {len(header)}")
        vals = []
        for j, cell in enumerate(row):
            try:
                if cell.strip() == "":
                    raise ValueError
                vals.append(float(cell))
            except ValueError:
                raise CsvError(f"{path}: line {i}, column {header[j]!r}: "
                               f"non-numeric or missing value {cell!r}") from None
        body.append(vals)
    if not body:
        raise CsvError(f"{path}: no data rows")
    return header, np.array(body)


def _select(header, data, names, path):
    missing = [c for c in names if c not in header]
    if missing:
        raise CsvError(f"{path}: missing column(s) {missing}")
    return data[:, [header.index(c) for c in names]]


def _threads(args):
    if args.threads is not None:
        return args.threads
    try:
        return int(os.environ.get("WOCR_THREADS", "1"))
    except ValueError:
        return 1


def cmd_fit(args):
    header, data = read_csv(args.data)
    if args.response not in header:
        raise CsvError(f"{args.data}: response column {args.response!r} not found")
    names = [h for h in header if h != args.response]
    X = _select(header, data, names, args.data)
    y = data[:, header.index(args.response)]
    spec = ModelSpec(Variant(args.model), criterion=args.criterion, fixed_a=args.a,
                     seed=args.seed)
    result = fit(spec, X, y)
    record = fit_to_dict(result, names)
    text = json.dumps(record, indent=2)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    print(f"variant: {record['variant']}  criterion: {record['criterion']}")
    print(f"params: {json.dumps(record['params'])}")
    print(f"sse: {record['sse']:.6g}  df: {record['df']:.6g}  "
          f"criterion: {record['criterion_value']:.6g}")
    print(f"components: effective {record['effective_components']:.4g}, "
          f"hard {record['hard_components']} of {len(record['weights'])}")
    return EXIT_OK


def _load_fit(path):
    try:
        with open(path, encoding="utf-8") as fh:
            record = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise CsvError(f"cannot read fit file {path}: {exc}") from exc
    if record.get("schema") != 1:
        raise CsvError(f"{path}: unsupported schema {record.get('schema')!r}")
    return record


def cmd_predict(args):
    record = _load_fit(args.fit)
    header, data = read_csv(args.data)
    X = _select(header, data, record["column_names"], args.data)
    pred = predict_from_dict(record, X)
    out = io.StringIO()
    out.write("prediction\n")
    for v in pred:
        out.write(f"{float(v)!r}\n")
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(out.getvalue())
    else:
        sys.stdout.write(out.getvalue())
    return EXIT_OK


def _write(path, text):
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_bench(args):
    b = tuple(float(v) for v in args.b.split(",")) if args.b else None
    try:
        config = SimConfig(args.gen, args.n, args.p, rho=args.rho, sigma2=args.sigma2, b=b,
                           runs=args.runs, test_size=args.test_size, seed=args.seed,
                           fixed_test=args.fixed_test)
    except ValueError as exc:
        print(f"wocr bench: error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    names = args.methods.split(",") if args.methods else list(MODEL_NAMES)
    bad = [m for m in names if m not in MODEL_NAMES]
    if bad:
        print(f"wocr bench: error: unknown model(s) {bad}; valid: {', '.join(MODEL_NAMES)}",
              file=sys.stderr)
        return EXIT_PARSE
    methods = [ModelSpec(Variant(m), fixed_a=args.a, seed=args.seed) for m in names]
    report = run_benchmark(config, methods, n_jobs=_threads(args))
    text = json.dumps(report.to_dict(include_timing=args.timing), indent=2, sort_keys=True)
    if args.out:
        _write(args.out, text + "\n")
    table = report.to_table()
    if args.table:
        _write(args.table, table)
    sys.stdout.write(table)
    return EXIT_OK


def cmd_report(args):
    record = _load_fit(args.fit)
    rows = [{"j": j + 1, "d": d, "gamma": g, "w": w} for j, (d, g, w) in enumerate(
        zip(record["singular_values"], record["gamma"], record["weights"]))]
    if args.format == "json":
        text = json.dumps(rows, indent=2) + "\n"
    elif args.format == "csv":
        text = "j,d,gamma,w\n" + "".join(
            f"{r['j']},{r['d']!r},{r['gamma']!r},{r['w']!r}\n" for r in rows)
    else:
        text = f"{'j':>4}{'d_j':>14}{'gamma_j':>14}{'w_j':>10}\n" + "".join(
            f"{r['j']:>4}{r['d']:>14.5g}{r['gamma']:>14.5g}{r['w']:>10.4f}\n" for r in rows)
    _write(args.out, text)
    return EXIT_OK


def build_parser():
    ap = argparse.ArgumentParser(prog="wocr", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    f = sub.add_parser("fit", help="fit a model to a CSV file")
    f.add_argument("--data", required=True)
    f.add_argument("--response", required=True)
    f.add_argument("--model", required=True, choices=MODEL_NAMES)
    f.add_argument("--criterion", choices=[c.value for c in Criterion])
    f.add_argument("--a", type=float, default=DEFAULT_FIXED_A,
                   help="fixed expit steepness for pcr-d-c / pcr-gamma-c")
    f.add_argument("--seed", type=int, default=0)
    f.add_argument("--out")
    f.set_defaults(func=cmd_fit)

    p = sub.add_parser("predict", help="predict from a saved fit")
    p.add_argument("--fit", required=True)
    p.add_argument("--data", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_predict)

    b = sub.add_parser("bench", help="run a simulation benchmark")
    b.add_argument("--gen", required=True, choices=["A", "B", "C"])
    b.add_argument("--n", type=int, default=500)
    b.add_argument("--p", type=int, default=5)
    b.add_argument("--runs", type=int, default=200)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--rho", type=float, default=0.5)
    b.add_argument("--sigma2", type=float, default=1.0)
    b.add_argument("--b", help="comma-separated Model A coefficients")
    b.add_argument("--test-size", type=int, default=500)
    b.add_argument("--fixed-test", action="store_true",
                   help="share one test set across runs")
    b.add_argument("--methods", help=f"comma-separated subset of {','.join(MODEL_NAMES)}")
    b.add_argument("--a", type=float, default=DEFAULT_FIXED_A)
    b.add_argument("--threads", type=int)
    b.add_argument("--timing", action="store_true",
                   help="include wall-clock seconds in the JSON report")
    b.add_argument("--out", help="JSON report path")
    b.add_argument("--table", help="text table path")
    b.set_defaults(func=cmd_bench)

    r = sub.add_parser("report", help="per-component table of a saved fit")
    r.add_argument("--fit", required=True)
    r.add_argument("--format", choices=["table", "csv", "json"], default="table")
    r.add_argument("--out")
    r.set_defaults(func=cmd_report)
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CsvError as exc:
        print(f"wocr {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except WOCRError as exc:
        print(f"wocr {args.command}: fit error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FIT


if __name__ == "__main__":
    sys.exit(main())
