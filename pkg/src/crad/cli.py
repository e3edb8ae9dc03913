"""Command-line front end.

Subcommands: ``gen``, ``cluster``, ``sweep``, ``eval``, ``bench``, ``plot``.
Exit status is 0 on success, 2 on a usage error and 1 on a runtime error.

Input CSVs may carry a header row (detected automatically). When the last
header name is ``label`` that column is treated as ground truth rather than a
feature, which is the layout ``crad gen`` writes. ``--label-column`` overrides
the detection.

Label files written by ``cluster`` have the columns ``row_index,label``.
"""

import argparse
import csv
import hashlib
import json
import logging
import os
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__
from .bench import run_bench
from .cluster import crad, crad_dbscan, dbca, dbscan_eu, robust_depth
from .dataset import DataError, load_csv, standardize, write_csv
from .metrics import UndefinedScoreError, ami, calinski_harabasz, rand_index
from .neighbor import NeighborParams
from .plot import write_svg
from .synthgen import RECIPES, GenSpec, generate
from .tuning import NoValidClusteringError, default_grid, sweep_nbin

log = logging.getLogger("crad")

CRAD_ALGOS = ("crad", "crad-dbscan")
ALGOS = ("crad", "crad-dbscan", "dbca", "dbscan")


class UsageError(Exception):
    """Bad flag combination detected after argparse has run."""


# -- input helpers ------------------------------------------------------------


def _is_number(cell):
    try:
        float(cell)
    except ValueError:
        return False
    return True


def _peek_header(path, delimiter):
    with open(path, newline="") as fh:
        for line in fh:
            if line.strip():
                cells = line.split() if delimiter is None else next(csv.reader([line], delimiter=delimiter))
                return [c.strip() for c in cells]
    return []


def read_dataset(path, label_column=None, delimiter=","):
    """Load features and optional truth from a CSV, sniffing the header row."""
    first = _peek_header(path, delimiter)
    has_header = bool(first) and not all(_is_number(c) for c in first)
    if label_column is None and has_header and first[-1].lower() == "label":
        label_column = -1
    return load_csv(path, delimiter=delimiter, has_header=has_header, label_column=label_column)


def read_labels(path):
    """Read a label vector from ``row_index,label`` output or any CSV whose
    header names a ``label`` column (falls back to the last column)."""
    with open(path, newline="") as fh:
        rows = [r for r in csv.reader(fh) if r]
    if not rows:
        raise DataError(f"{path} is empty")
    col = len(rows[0]) - 1
    if not all(_is_number(c) for c in rows[0]):
        names = [c.strip().lower() for c in rows[0]]
        if "label" in names:
            col = names.index("label")
        rows = rows[1:]
    try:
        return np.array([int(float(r[col])) for r in rows], dtype=np.int64)
    except (ValueError, IndexError) as exc:
        raise DataError(f"bad label file {path}: {exc}") from None


def write_labels(path, labels):
    with open(path, "w", newline="") as fh:
        fh.write("row_index,label\n")
        for i, lab in enumerate(labels):
            fh.write(f"{i},{int(lab)}\n")


def fingerprint(path, X):
    digest = hashlib.sha256(Path(path).read_bytes()).hexdigest()
    return {"n": int(X.shape[0]), "p": int(X.shape[1]), "sha256": digest}


def _dump_json(obj, path=None):
    text = json.dumps(obj, indent=2, ensure_ascii=False) + "\n"
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _json_float(x):
    if x is None:
        return None
    x = float(x)
    return "inf" if np.isinf(x) else x


def _jobs_default():
    try:
        return max(1, int(os.environ.get("CRAD_JOBS", "1")))
    except ValueError:
        return 1


def _delimiter(value):
    if value in ("whitespace", "ws"):
        return None
    return value


def _parse_grid(text):
    try:
        a, b, step = (int(v) for v in text.split(":"))
    except ValueError:
        raise UsageError(f"--grid expects a:b:step, got {text!r}") from None
    if step <= 0 or b < a:
        raise UsageError(f"empty grid {text!r}")
    return list(range(a, b + 1, step))


def _parse_cols(text):
    try:
        i, j = (int(v) for v in text.split(","))
    except ValueError:
        raise UsageError(f"--cols expects i,j, got {text!r}") from None
    return i, j


# -- subcommands --------------------------------------------------------------


def cmd_gen(args):
    params = {}
    if args.n is not None:
        params["n"] = args.n
    spec = GenSpec(recipe=args.recipe, seed=args.seed, params=params, noise_ratio=args.noise_ratio)
    X, y = generate(spec)
    out = args.out or f"{args.recipe}_seed{args.seed}.csv"
    write_csv(out, X, y)
    print(out)
    return 0


def _check_cluster_flags(args):
    if args.algo in CRAD_ALGOS and not args.auto and args.nbin is None:
        raise UsageError(f"--algo {args.algo} needs --nbin (and optionally --step) or --auto")
    if args.algo == "crad-dbscan" and args.min_pts is None:
        raise UsageError("--algo crad-dbscan needs --min-pts")
    if args.algo == "dbca" and args.theta is None:
        raise UsageError("--algo dbca needs --theta")
    if args.algo == "dbscan" and (args.eps is None or args.min_pts is None):
        raise UsageError("--algo dbscan needs --eps and --min-pts")
    if args.auto and args.algo not in CRAD_ALGOS:
        raise UsageError("--auto only applies to crad and crad-dbscan")


def cmd_cluster(args):
    _check_cluster_flags(args)
    start = time.perf_counter()
    X_raw, truth = read_dataset(args.input, args.label_column, _delimiter(args.delimiter))
    X = standardize(X_raw) if args.standardize else X_raw
    if args.truth:
        truth = read_labels(args.truth)

    params = {}
    if args.algo in CRAD_ALGOS:
        D = robust_depth(X, seed=args.seed)
        if args.auto:
            res = sweep_nbin(
                X, algorithm=args.algo, grid=default_grid(X.shape[0], args.step),
                seed=args.seed, min_pts=args.min_pts, depth=D, jobs=args.jobs,
            )
            labels = res.best_labels
            params = {"n_bins": res.best[0], "step_size": res.best[1], "auto": True,
                      "sweep_ch": _json_float(res.best_score)}
        else:
            p = NeighborParams(args.nbin, args.step)
            if args.algo == "crad":
                labels = crad(X, p, depth=D, fallback=args.fallback)
            else:
                labels = crad_dbscan(X, p, args.min_pts, depth=D, fallback=args.fallback)
            params = {"n_bins": args.nbin, "step_size": args.step, "auto": False}
        if args.algo == "crad-dbscan":
            params["min_pts"] = args.min_pts
        params["fallback"] = args.fallback
    elif args.algo == "dbca":
        labels = dbca(X, args.theta, seed=args.seed)
        params = {"theta": args.theta}
    else:
        labels = dbscan_eu(X, args.eps, args.min_pts)
        params = {"epsilon": args.eps, "min_pts": args.min_pts}
    params["standardize"] = bool(args.standardize)

    write_labels(args.out, labels)
    try:
        ch = calinski_harabasz(X, labels)
    except UndefinedScoreError:
        ch = None
    metrics = {"ri": None, "ami": None}
    if truth is not None:
        if len(truth) != len(labels):
            raise DataError(f"truth has {len(truth)} labels for {len(labels)} rows")
        metrics = {"ri": rand_index(truth, labels, args.noise_mode), "ami": ami(truth, labels, args.noise_mode)}
    metrics.update({
        "ch": _json_float(ch),
        "n_clusters": int(labels.max(initial=0)),
        "n_noise": int((labels == 0).sum()),
    })
    report = {
        "algorithm": args.algo,
        "params": params,
        "dataset": fingerprint(args.input, X_raw),
        "labels": str(args.out),
        "metrics": metrics,
        "wall_ms": round((time.perf_counter() - start) * 1000.0, 3),
        "seed": args.seed,
        "version": __version__,
    }
    _dump_json(report, args.report)
    return 0


def cmd_sweep(args):
    if args.algo == "crad-dbscan" and args.min_pts is None:
        raise UsageError("--algo crad-dbscan needs --min-pts")
    X, _ = read_dataset(args.input, args.label_column, _delimiter(args.delimiter))
    if args.standardize:
        X = standardize(X)
    if args.grid:
        grid = [(nb, args.step) for nb in _parse_grid(args.grid)]
    else:
        grid = default_grid(X.shape[0], args.step)
    res = sweep_nbin(X, algorithm=args.algo, grid=grid, seed=args.seed, min_pts=args.min_pts, jobs=args.jobs)
    out = {"algorithm": args.algo, "seed": args.seed}
    out.update(res.to_dict())
    _dump_json(out, args.out)
    return 0


def cmd_eval(args):
    U = read_labels(args.labels)
    V = read_labels(args.truth)
    if len(U) != len(V):
        raise DataError(f"label files differ in length: {len(U)} vs {len(V)}")
    _dump_json({"ri": rand_index(V, U, args.noise_mode), "ami": ami(V, U, args.noise_mode),
                "noise_mode": args.noise_mode})
    return 0


BENCH_FIELDS = ["dataset", "n", "p", "algorithm", "mode", "trials", "ri", "ami", "ri_params", "ami_params"]


def cmd_bench(args):
    config = json.loads(Path(args.config).read_text(encoding="utf-8"))
    if args.trials is not None:
        config["trials"] = args.trials
    base = Path(args.config).parent
    for entry in config.get("datasets", []):
        if "path" in entry and not Path(entry["path"]).is_absolute():
            entry["path"] = str(base / entry["path"])
    rows = run_bench(config, jobs=args.jobs)
    with open(args.out_csv, "w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=BENCH_FIELDS, lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({k: json.dumps(r[k], sort_keys=True) if k.endswith("_params") else r[k] for k in BENCH_FIELDS})
    _dump_json(rows, args.out_json)
    for r in rows:
        print(f"{r['dataset']:>12} {r['algorithm']:>12} {r['mode']:>13}  RI {r['ri']:.4f}  AMI {r['ami']:.4f}")
    return 0


def cmd_plot(args):
    cols = _parse_cols(args.cols)
    X, _ = read_dataset(args.input, args.label_column, _delimiter(args.delimiter))
    labels = read_labels(args.labels)
    write_svg(args.out, X, labels, cols=cols)
    print(args.out)
    return 0


# -- parser -------------------------------------------------------------------


def _add_input(p):
    p.add_argument("input", help="data CSV")
    p.add_argument("--label-column", type=int, default=None,
                   help="ground-truth column to drop from the features (default: a trailing 'label' column)")
    p.add_argument("--delimiter", default=",", help="field separator, or 'whitespace'")


def build_parser():
    parser = argparse.ArgumentParser(prog="crad", description="Depth-based density clustering toolkit.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="write a synthetic dataset")
    p.add_argument("recipe", choices=sorted(RECIPES))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--n", type=int, default=None, help="point count (cassini, spirals)")
    p.add_argument("--noise-ratio", type=float, default=0.0, help="append uniform noise, as a fraction of n")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("cluster", help="cluster a CSV")
    _add_input(p)
    p.add_argument("--algo", choices=ALGOS, required=True)
    p.add_argument("--nbin", type=int, default=None)
    p.add_argument("--step", type=int, default=1)
    p.add_argument("--auto", action="store_true", help="pick --nbin by the CH sweep")
    p.add_argument("--min-pts", type=int, default=None)
    p.add_argument("--theta", type=float, default=None)
    p.add_argument("--eps", type=float, default=None)
    p.add_argument("--fallback", choices=("all", "self"), default="all")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--standardize", action="store_true")
    p.add_argument("--truth", default=None, help="ground-truth label CSV")
    p.add_argument("--noise-mode", choices=("one-cluster", "singletons"), default="one-cluster")
    p.add_argument("--out", default="labels.csv")
    p.add_argument("--report", default=None, help="report path (default: stdout)")
    p.add_argument("--jobs", type=int, default=_jobs_default())
    p.set_defaults(func=cmd_cluster)

    p = sub.add_parser("sweep", help="CH sweep over n_bins")
    _add_input(p)
    p.add_argument("--algo", choices=CRAD_ALGOS, default="crad")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--grid", help="n_bins range a:b:step (inclusive)")
    g.add_argument("--auto-grid", action="store_true")
    p.add_argument("--step", type=int, default=1, help="histogram step size")
    p.add_argument("--min-pts", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--standardize", action="store_true")
    p.add_argument("--out", default=None)
    p.add_argument("--jobs", type=int, default=_jobs_default())
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("eval", help="RI and AMI of a labeling against truth")
    p.add_argument("labels")
    p.add_argument("truth")
    p.add_argument("--noise-mode", choices=("one-cluster", "singletons"), default="one-cluster")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("bench", help="best-achievable benchmark from a JSON config")
    p.add_argument("config")
    p.add_argument("--trials", type=int, default=None)
    p.add_argument("--out-csv", default="bench.csv")
    p.add_argument("--out-json", default="bench.json")
    p.add_argument("--jobs", type=int, default=_jobs_default())
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("plot", help="SVG scatter of a labeling")
    _add_input(p)
    p.add_argument("labels")
    p.add_argument("--cols", default="0,1")
    p.add_argument("--out", default="plot.svg")
    p.set_defaults(func=cmd_plot)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(message)s")
    if getattr(args, "jobs", 1) < 1:
        parser.error("--jobs must be >= 1")
    try:
        return args.func(args)
    except UsageError as exc:
        parser.error(str(exc))
    except (DataError, NoValidClusteringError, ValueError, OSError) as exc:
        print(f"crad: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
