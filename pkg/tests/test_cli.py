import json

import numpy as np
import pytest

from crad.cli import main, read_labels


def run(argv, capsys=None):
    try:
        code = main([str(a) for a in argv])
    except SystemExit as exc:
        code = exc.code
    return code


@pytest.fixture
def toy(tmp_path):
    path = tmp_path / "toy.csv"
    assert run(["gen", "toy", "--seed", 7, "--out", path]) == 0
    return path


def test_gen_prints_path(tmp_path, capsys):
    out = tmp_path / "s.csv"
    assert run(["gen", "spirals", "--n", 60, "--seed", 2, "--out", out]) == 0
    assert capsys.readouterr().out.strip() == str(out)
    assert out.read_text().splitlines()[0] == "x0,x1,label"


def test_cluster_auto_toy_report(toy, tmp_path):
    labels, report = tmp_path / "labels.csv", tmp_path / "r.json"
    assert run(["cluster", toy, "--algo", "crad", "--auto", "--out", labels, "--report", report]) == 0
    rep = json.loads(report.read_text(encoding="utf-8"))
    assert list(rep) == ["algorithm", "params", "dataset", "labels", "metrics", "wall_ms", "seed", "version"]
    assert rep["dataset"]["n"] == 320 and rep["dataset"]["p"] == 2
    assert list(rep["metrics"]) == ["ri", "ami", "ch", "n_clusters", "n_noise"]
    assert labels.read_text().splitlines()[0] == "row_index,label"
    assert rep["metrics"]["n_clusters"] == 3


def test_cluster_explicit_modes(toy, tmp_path):
    out = tmp_path / "l.csv"
    for extra in (
        ["--algo", "crad", "--nbin", 60],
        ["--algo", "crad-dbscan", "--nbin", 60, "--min-pts", 3],
        ["--algo", "dbca", "--theta", 0.9],
        ["--algo", "dbscan", "--eps", 1.0, "--min-pts", 3],
        ["--algo", "crad", "--nbin", 60, "--standardize", "--fallback", "self"],
    ):
        assert run(["cluster", toy, "--out", out, "--report", tmp_path / "r.json", *extra]) == 0
        assert len(read_labels(out)) == 320


@pytest.mark.parametrize("extra", [
    ["--algo", "dbca"],
    ["--algo", "dbscan", "--eps", 1.0],
    ["--algo", "crad"],
    ["--algo", "crad-dbscan", "--auto"],
    ["--algo", "dbca", "--theta", 0.9, "--auto"],
])
def test_cluster_usage_errors(toy, tmp_path, extra):
    assert run(["cluster", toy, "--out", tmp_path / "l.csv", *extra]) == 2


def test_runtime_error_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.csv"
    bad.write_text("1,2\n3,x\n")
    assert run(["cluster", bad, "--algo", "dbca", "--theta", 0.9]) == 1
    assert "non-numeric" in capsys.readouterr().err
    assert run(["cluster", tmp_path / "missing.csv", "--algo", "dbca", "--theta", 0.9]) == 1


def test_eval_identical(toy, tmp_path, capsys):
    labels = tmp_path / "l.csv"
    run(["cluster", toy, "--algo", "dbca", "--theta", 0.9, "--out", labels, "--report", tmp_path / "r.json"])
    capsys.readouterr()
    assert run(["eval", labels, labels]) == 0
    res = json.loads(capsys.readouterr().out)
    assert res["ri"] == 1.0 and res["ami"] == 1.0
    # truth may also be a generated dataset with a label column
    assert run(["eval", labels, toy]) == 0


def test_sweep(toy, tmp_path):
    out = tmp_path / "sweep.json"
    assert run(["sweep", toy, "--grid", "20:60:10", "--out", out]) == 0
    res = json.loads(out.read_text())
    assert [g["n_bins"] for g in res["grid"]] == [20, 30, 40, 50, 60]
    assert res["best"]["n_bins"] in (20, 30, 40, 50, 60)
    assert run(["sweep", toy, "--out", out]) == 2
    assert run(["sweep", toy, "--grid", "9:1:1"]) == 2


def test_plot_deterministic(toy, tmp_path):
    labels = tmp_path / "l.csv"
    run(["cluster", toy, "--algo", "dbca", "--theta", 0.95, "--out", labels, "--report", tmp_path / "r.json"])
    a, b = tmp_path / "a.svg", tmp_path / "b.svg"
    assert run(["plot", toy, labels, "--out", a]) == 0
    assert run(["plot", toy, labels, "--out", b, "--cols", "0,1"]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert run(["plot", toy, labels, "--cols", "0,5", "--out", a]) == 1
    assert run(["plot", toy, labels, "--cols", "zero", "--out", a]) == 2


def test_bench(tmp_path, capsys):
    cfg = {
        "datasets": [{"name": "blobs", "generator": {"recipe": "gaussians",
                      "params": {"centers": [[0, 0], [12, 0]], "scales": 1.0, "counts": 25}}}],
        "algorithms": ["crad", "dbca", "dbscan", "crad-dbscan"],
        "modes": ["raw"],
        "grids": {"n_bins": [20, 40], "theta": [0.5, 0.9], "min_pts": [2], "eps_steps": 5},
        "trials": 2,
    }
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(cfg))
    out_csv, out_json = tmp_path / "b.csv", tmp_path / "b.json"
    assert run(["bench", path, "--out-csv", out_csv, "--out-json", out_json, "--jobs", 2]) == 0
    rows = json.loads(out_json.read_text())
    assert [r["algorithm"] for r in rows] == cfg["algorithms"]
    assert all(0 <= r["ri"] <= 1 for r in rows)
    assert out_csv.read_text().splitlines()[0].startswith("dataset,n,p,algorithm")


def test_crad_jobs_env(monkeypatch, toy, tmp_path):
    monkeypatch.setenv("CRAD_JOBS", "4")
    from crad.cli import build_parser

    args = build_parser().parse_args(["sweep", str(toy), "--auto-grid"])
    assert args.jobs == 4


def test_whitespace_input(tmp_path):
    data = tmp_path / "w.txt"
    g = np.random.default_rng(0)
    data.write_text("\n".join(" ".join(f"{v:.6f}" for v in row) + "  1" for row in g.normal(size=(20, 2))))
    assert run(["cluster", data, "--delimiter", "whitespace", "--label-column", -1,
                "--algo", "dbca", "--theta", 0.5, "--out", tmp_path / "l.csv", "--report", tmp_path / "r.json"]) == 0
    rep = json.loads((tmp_path / "r.json").read_text())
    assert rep["dataset"]["p"] == 2 and rep["metrics"]["ri"] is not None
