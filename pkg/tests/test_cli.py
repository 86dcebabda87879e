import json
import os

import numpy as np
import pytest

from cdmine.cli import EXIT_CONFIG, EXIT_OK, EXIT_PARSE, main


@pytest.fixture
def toy_csv(tmp_path):
    rng = np.random.default_rng(7)
    n, p = 120, 25
    labels = rng.integers(0, 2, n)
    path = tmp_path / "toy.csv"
    with open(path, "w") as fh:
        fh.write(",".join([f"v{j}" for j in range(p)] + ["cls"]) + "\n")
        for i in range(n):
            vals = rng.normal(size=p)
            vals[0] += 2.0 * labels[i]
            cells = [f"{v:.6f}" for v in vals]
            if i == 5:
                cells[3] = "NA"
            fh.write(",".join(cells + [str(labels[i])]) + "\n")
    return path


def test_rank_end_to_end(toy_csv, tmp_path, capsys):
    out = tmp_path / "out"
    code = main(
        ["rank", str(toy_csv), "--label", "cls", "--out", str(out), "--svg"]
    )
    assert code == EXIT_OK
    assert (out / "ranked.csv").exists()
    assert (out / "summary.json").exists()
    assert (out / "sorted_cr.csv").exists()
    assert (out / "sorted_cr.svg").exists()
    summary = json.loads((out / "summary.json").read_text())
    assert "v0" in summary["selected"]
    first = (out / "ranked.csv").read_text().splitlines()[1]
    assert first.startswith("v0,")


def test_cd_subcommand(toy_csv, tmp_path):
    out = tmp_path / "cd"
    code = main(
        ["cd", str(toy_csv), "--label", "cls", "--vars", "v0", "v1", "--out", str(out)]
    )
    assert code == EXIT_OK
    assert sorted(os.listdir(out)) == ["cd_v0.csv", "cd_v1.csv", "pp_v0.csv", "pp_v1.csv"]


def test_cd_unknown_variable(toy_csv, tmp_path):
    code = main(
        ["cd", str(toy_csv), "--label", "cls", "--vars", "nope", "--out", str(tmp_path)]
    )
    assert code == EXIT_CONFIG


def test_fdr_subcommand(tmp_path):
    rng = np.random.default_rng(8)
    z = np.concatenate([rng.normal(4.5, 1.0, 20), rng.standard_normal(980)])
    path = tmp_path / "z.csv"
    with open(path, "w") as fh:
        fh.write("id,z\n")
        for i, v in enumerate(z):
            fh.write(f"g{i},{v:.6f}\n")
    out = tmp_path / "fdr.csv"
    code = main(["fdr", str(path), "--col", "z", "--out", str(out)])
    assert code == EXIT_OK
    lines = out.read_text().splitlines()
    assert lines[0] == "item_id,z,u_flat,inverse_fdr,selected"
    selected = sum(line.endswith(",1") for line in lines[1:])
    assert 10 <= selected <= 40


def test_fdr_missing_column(tmp_path):
    path = tmp_path / "z.csv"
    path.write_text("id,z\ng0,1.0\n")
    assert main(["fdr", str(path), "--col", "w"]) == EXIT_CONFIG


def test_parse_error_exit_code(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("a,cls\n1,0\nbroken,1\n")
    assert main(["rank", str(path), "--label", "cls", "--out", str(tmp_path / "o")]) == EXIT_PARSE


def test_label_error_exit_code(toy_csv, tmp_path):
    code = main(["rank", str(toy_csv), "--label", "missing", "--out", str(tmp_path / "o")])
    assert code == EXIT_CONFIG


def test_missing_file_exit_code(tmp_path):
    assert main(["rank", str(tmp_path / "no.csv"), "--label", "cls"]) == EXIT_CONFIG


def test_simulate_subcommand(tmp_path, capsys):
    out = tmp_path / "sim"
    code = main(
        [
            "simulate", "--p", "200", "--signals", "10", "--runs", "3",
            "--seed", "4", "--out", str(out),
        ]
    )
    assert code == EXIT_OK
    assert (out / "runs.csv").exists()
    payload = json.loads((out / "summary.json").read_text())
    assert payload["runs"] == 3
    assert set(payload["summary"]) == {"cdfdr", "bh", "naive-two-step"}


def test_simulate_config_file(tmp_path):
    cfg = tmp_path / "sim.cfg"
    cfg.write_text("p=150\nsignals=5\nruns=2\nseed=9\nmethods=bh\n")
    out = tmp_path / "sim"
    code = main(["simulate", "--config", str(cfg), "--out", str(out)])
    assert code == EXIT_OK
    payload = json.loads((out / "summary.json").read_text())
    assert payload["p"] == 150
    assert list(payload["summary"]) == ["bh"]


def test_simulate_bad_config_file(tmp_path):
    cfg = tmp_path / "sim.cfg"
    cfg.write_text("this is not key value\n")
    assert main(["simulate", "--config", str(cfg)]) == EXIT_CONFIG
