"""Command line interface.

Subcommands:
  rank      full pipeline on a CSV: transform, CR ranking, CDfdr selection
  cd        comparison-density and PP curves for named variables
  fdr       threshold an externally supplied z or CR column
  simulate  contamination experiments against the baselines
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from .cdfdr import FdrConfig, NullMethod, cdfdr_pipeline
from .dataset import DEFAULT_MISSING_TOKENS, load_csv
from .errors import ConfigError, LabelError, ParseError
from .pipeline import (
    analyze,
    analyze_variable,
    curve_grid,
    export_plots,
    fmt,
    write_ranked_csv,
    write_summary_json,
)
from .simulate import (
    METHODS,
    SimConfig,
    run_experiment,
    write_report_csv,
    write_report_json,
)

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_CONFIG = 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cdmine")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_dataset_args(p):
        p.add_argument("csv", help="input CSV with a header row")
        p.add_argument("--label", required=True, help="name of the label column")
        p.add_argument("--positive", default=None, help="label value coded as class 1")
        p.add_argument(
            "--missing-token",
            action="append",
            default=None,
            help="cell value treated as missing (repeatable; default NA, empty, ?)",
        )
        p.add_argument("--M", type=int, default=4, help="number of score functions")

    p = sub.add_parser("rank", help="rank all variables and select by CDfdr")
    add_dataset_args(p)
    p.add_argument("--fdr-level", type=float, default=0.2)
    p.add_argument(
        "--null-method",
        choices=[m.value for m in NullMethod],
        default=NullMethod.POOLED_MOMENTS.value,
    )
    p.add_argument("--top-k", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default="cdmine_out")
    p.add_argument("--svg", action="store_true", help="also write SVG renderings")

    p = sub.add_parser("cd", help="export density and PP curves for variables")
    add_dataset_args(p)
    p.add_argument("--vars", nargs="+", required=True, help="variable names")
    p.add_argument("--out", default="cdmine_out")

    p = sub.add_parser("fdr", help="CDfdr selection on an external score column")
    p.add_argument("csv", help="input CSV with a header row")
    p.add_argument("--col", required=True, help="name of the score column")
    p.add_argument("--input-kind", choices=["z", "cr"], default="z")
    p.add_argument("--n", type=int, default=None, help="sample size behind CR values")
    p.add_argument("--M", type=int, default=4)
    p.add_argument("--fdr-level", type=float, default=0.2)
    p.add_argument(
        "--null-method",
        choices=[m.value for m in NullMethod],
        default=NullMethod.POOLED_MOMENTS.value,
    )
    p.add_argument("--L", type=int, default=6, help="residual series length")
    p.add_argument("--sides", choices=["two", "left", "right"], default="two")
    p.add_argument(
        "--weight-mode", choices=["theoretical", "empirical"], default="theoretical"
    )
    p.add_argument("--out", default="cdmine_fdr.csv")

    p = sub.add_parser("simulate", help="run a contamination experiment")
    p.add_argument("--config", default=None, help="key=value config file")
    p.add_argument("--p", type=int, default=1000)
    p.add_argument("--signals", type=int, default=25)
    p.add_argument(
        "--model", choices=["gaussian-shift", "uniform-band"], default="gaussian-shift"
    )
    p.add_argument("--mu", type=float, default=4.52)
    p.add_argument("--lo", type=float, default=2.0)
    p.add_argument("--hi", type=float, default=4.0)
    p.add_argument("--runs", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--methods", nargs="+", default=list(METHODS), choices=METHODS)
    p.add_argument("--fdr-level", type=float, default=0.2)
    p.add_argument("--out", default="cdmine_sim")
    return parser


def cmd_rank(args) -> int:
    dataset = load_csv(
        args.csv,
        label_column=args.label,
        positive_label=args.positive,
        missing_tokens=tuple(args.missing_token or DEFAULT_MISSING_TOKENS),
    )
    report = analyze(
        dataset,
        m=args.M,
        fdr_level=args.fdr_level,
        null_method=NullMethod(args.null_method),
        top_k=args.top_k,
    )
    os.makedirs(args.out, exist_ok=True)
    write_ranked_csv(report, os.path.join(args.out, "ranked.csv"))
    write_summary_json(report, os.path.join(args.out, "summary.json"))
    export_plots(report, args.out, svg=args.svg)
    print(f"ranked {dataset.p} variables; selected {len(report.selected_names())}")
    return EXIT_OK


def cmd_cd(args) -> int:
    dataset = load_csv(
        args.csv,
        label_column=args.label,
        positive_label=args.positive,
        missing_tokens=tuple(args.missing_token or DEFAULT_MISSING_TOKENS),
    )
    by_name = {v.name: v for v in dataset.variables}
    unknown = [v for v in args.vars if v not in by_name]
    if unknown:
        raise ConfigError(f"unknown variables: {unknown}")
    os.makedirs(args.out, exist_ok=True)
    for name in args.vars:
        va = analyze_variable(by_name[name], dataset.labels, args.M)
        if va.cd is None:
            print(f"{name}: skipped ({va.cr.flag})")
            continue
        u, dhat = curve_grid(va)
        path = os.path.join(args.out, f"cd_{name}.csv")
        with open(path, "w", encoding="utf-8") as fh:
            fh.write("u,dhat\n")
            for ui, di in zip(u, dhat):
                fh.write(f"{fmt(ui)},{fmt(di)}\n")
        path = os.path.join(args.out, f"pp_{name}.csv")
        with open(path, "w", encoding="utf-8") as fh:
            fh.write("h,f\n")
            for h, f in va.cd.pp_points:
                fh.write(f"{fmt(h)},{fmt(f)}\n")
        print(f"{name}: wrote cd/pp curves")
    return EXIT_OK


def cmd_fdr(args) -> int:
    import csv as _csv

    with open(args.csv, "r", encoding="utf-8", newline="") as fh:
        reader = _csv.reader(fh)
        header = next(reader, None)
        if header is None:
            raise ParseError("empty file", row=1)
        if args.col not in header:
            raise ConfigError(f"column {args.col!r} not in header")
        idx = header.index(args.col)
        id_idx = 0 if idx != 0 else None
        ids, scores = [], []
        for i, row in enumerate(reader):
            try:
                scores.append(float(row[idx]))
            except (ValueError, IndexError):
                raise ParseError(
                    f"cannot parse score in row {i + 2}", row=i + 2, column=args.col
                ) from None
            ids.append(row[id_idx] if id_idx is not None else str(i))
    cfg = FdrConfig(
        input_kind=args.input_kind,
        n=args.n,
        m=args.M,
        fdr_level=args.fdr_level,
        null_method=NullMethod(args.null_method),
        n_coeffs=args.L,
        sides=args.sides,
        weight_mode=args.weight_mode,
    )
    result = cdfdr_pipeline(np.array(scores), cfg)
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write("item_id,z,u_flat,inverse_fdr,selected\n")
        for i, item in enumerate(ids):
            fh.write(
                f"{item},{fmt(result.z[i])},{fmt(result.u_flat[i])},"
                f"{fmt(result.inverse_fdr[i])},{int(result.selected[i])}\n"
            )
    print(f"selected {int(result.selected.sum())} of {len(ids)} items")
    return EXIT_OK


def parse_config_file(path) -> dict:
    out = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{lineno}: expected key=value")
            key, value = line.split("=", 1)
            out[key.strip()] = value.strip()
    return out


def cmd_simulate(args) -> int:
    overrides = parse_config_file(args.config) if args.config else {}

    def get(key, cast, default):
        return cast(overrides[key]) if key in overrides else default

    cfg = SimConfig(
        p=get("p", int, args.p),
        m_signals=get("signals", int, args.signals),
        signal_model=get("model", str, args.model),
        mu=get("mu", float, args.mu),
        lo=get("lo", float, args.lo),
        hi=get("hi", float, args.hi),
        runs=get("runs", int, args.runs),
        seed=get("seed", int, args.seed),
        methods=tuple(overrides.get("methods", ",".join(args.methods)).split(","))
        if "methods" in overrides
        else tuple(args.methods),
        fdr_level=get("fdr_level", float, args.fdr_level),
    )
    report = run_experiment(cfg)
    os.makedirs(args.out, exist_ok=True)
    write_report_csv(report, os.path.join(args.out, "runs.csv"))
    write_report_json(report, os.path.join(args.out, "summary.json"))
    print(json.dumps(report.summary, indent=2, sort_keys=True))
    return EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handlers = {
        "rank": cmd_rank,
        "cd": cmd_cd,
        "fdr": cmd_fdr,
        "simulate": cmd_simulate,
    }
    try:
        return handlers[args.command](args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (ConfigError, LabelError, FileNotFoundError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
