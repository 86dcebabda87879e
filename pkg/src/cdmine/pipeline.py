"""End-to-end analysis: transform, basis expansion, CR statistics, ranking,
and CDfdr threshold selection, plus report/plot-data export."""

from __future__ import annotations

import json
import os
import re
from dataclasses import dataclass

import numpy as np
from scipy.stats import norm

from . import svgplot
from .cdfdr import FdrConfig, FdrResult, NullMethod, cdfdr_pipeline
from .comp_density import CdEstimate, TwoSampleData, cd_estimate, estimate_cd
from .cr import CrResult, RankedReport, rank_variables
from .dataset import Dataset
from .errors import (
    AllMissing,
    CdmineError,
    DegenerateVariable,
    RankDeficient,
)
from .midrank import VariableColumn, mid_rank_transform
from .score_basis import ScoreBasis, build_score_basis

CURVE_GRID_SIZE = 512
MIN_FDR_ITEMS = 20


def fmt(x) -> str:
    """Lossless decimal serialization for report numbers."""
    return format(float(x), ".17g")


@dataclass(frozen=True)
class VariableAnalysis:
    name: str
    cr: CrResult
    basis: ScoreBasis | None = None
    cd: CdEstimate | None = None


@dataclass(frozen=True)
class AnalysisReport:
    per_variable: list  # VariableAnalysis, input order
    ranked: RankedReport
    fdr: FdrResult | None  # None when too few variables for the fdr stage
    m: int
    fdr_level: float
    top_k: int
    n: int

    def selected_names(self):
        if self.fdr is None:
            return []
        sel = {
            self.per_variable[i].name
            for i in np.flatnonzero(self.fdr.selected)
        }
        return [r.variable_id for r in self.ranked.ordered if r.variable_id in sel]


def analyze_variable(
    col: VariableColumn, labels: np.ndarray, m: int
) -> VariableAnalysis:
    """Single-variable pass; degenerate columns come back flagged, not raised."""
    name = col.name
    mask = ~col.missing
    y = np.asarray(labels)[mask]

    def flagged(reason, n_eff):
        cr = CrResult(
            components=np.zeros(m),
            cr=0.0,
            pvalue=1.0,
            category="mixed",
            n_effective=n_eff,
            variable_id=name,
            flag=reason,
        )
        return VariableAnalysis(name=name, cr=cr)

    try:
        mid = mid_rank_transform(col)
    except AllMissing:
        return flagged("all-missing", int(mask.sum()))
    if mid.sigma_mid <= 0.0:
        return flagged("constant", mid.n_effective)
    counts = np.bincount(y, minlength=2)
    if counts[0] < 2 or counts[1] < 2:
        return flagged("class-too-small", mid.n_effective)

    m_used = m
    basis = None
    while m_used >= 1:
        try:
            basis = build_score_basis(mid, m_used)
            break
        except (RankDeficient, DegenerateVariable):
            m_used -= 1
    if basis is None:
        return flagged("rank-deficient", mid.n_effective)

    data = TwoSampleData.from_arrays(mid.u, y)
    cd = cd_estimate(data, basis)
    from .cr import cr_result

    cr = cr_result(data, basis, variable_id=name)
    if m_used < m:
        comps = np.zeros(m)
        comps[:m_used] = cr.components
        from dataclasses import replace

        cr = replace(cr, components=comps, flag=f"reduced-m:{m_used}")
    return VariableAnalysis(name=name, cr=cr, basis=basis, cd=cd)


def analyze(
    dataset: Dataset,
    m: int = 4,
    fdr_level: float = 0.2,
    null_method: NullMethod = NullMethod.POOLED_MOMENTS,
    top_k: int = 10,
) -> AnalysisReport:
    per_variable = []
    for col in dataset.variables:
        try:
            per_variable.append(analyze_variable(col, dataset.labels, m))
        except CdmineError as exc:
            raise type(exc)(f"variable {col.name!r}: {exc}") from exc

    ranked = rank_variables([va.cr for va in per_variable])

    fdr = None
    if len(per_variable) >= MIN_FDR_ITEMS:
        # Bridge each variable's chi-square p-value to a one-sided z-score;
        # using the p-value directly keeps reduced-df columns comparable.
        pvals = np.clip(
            np.array([va.cr.pvalue for va in per_variable]), 1e-300, 1.0 - 1e-16
        )
        z = norm.isf(pvals)
        fdr = cdfdr_pipeline(
            z,
            FdrConfig(
                input_kind="z",
                fdr_level=fdr_level,
                null_method=null_method,
                sides="right",
            ),
        )
    return AnalysisReport(
        per_variable=per_variable,
        ranked=ranked,
        fdr=fdr,
        m=m,
        fdr_level=fdr_level,
        top_k=top_k,
        n=dataset.n,
    )


def curve_grid(va: VariableAnalysis, size: int = CURVE_GRID_SIZE):
    """(u, dhat) on an open-interval grid for one analyzed variable."""
    if va.cd is None or va.basis is None:
        raise DegenerateVariable(f"variable {va.name!r} has no density estimate")
    u = (np.arange(size) + 0.5) / size
    dhat = estimate_cd(va.cd.theta, va.basis)(u)
    return u, dhat


def write_ranked_csv(report: AnalysisReport, path):
    m = report.m
    by_name = {va.name: va for va in report.per_variable}
    idx_by_name = {va.name: i for i, va in enumerate(report.per_variable)}
    header = (
        ["variable_id", "n_effective"]
        + [f"R{a}" for a in range(1, m + 1)]
        + ["CR", "pvalue", "category", "rank", "flag", "z", "inverse_fdr", "selected"]
    )
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(",".join(header) + "\n")
        for rank0, cr in enumerate(report.ranked.ordered):
            i = idx_by_name[cr.variable_id]
            if report.fdr is not None:
                z, inv = fmt(report.fdr.z[i]), fmt(report.fdr.inverse_fdr[i])
                sel = "1" if report.fdr.selected[i] else "0"
            else:
                z, inv, sel = "", "", "0"
            comps = list(cr.components) + [0.0] * (m - len(cr.components))
            row = (
                [cr.variable_id, str(cr.n_effective)]
                + [fmt(c) for c in comps[:m]]
                + [fmt(cr.cr), fmt(cr.pvalue), cr.category, str(rank0 + 1), cr.flag]
                + [z, inv, sel]
            )
            fh.write(",".join(row) + "\n")


def write_sorted_cr_csv(report: AnalysisReport, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("rank,variable_id,cr\n")
        for rank0, cr in enumerate(report.ranked.ordered):
            fh.write(f"{rank0 + 1},{cr.variable_id},{fmt(cr.cr)}\n")


def write_summary_json(report: AnalysisReport, path):
    payload = {
        "n": report.n,
        "p": len(report.per_variable),
        "m": report.m,
        "fdr_level": report.fdr_level,
        "selected": report.selected_names(),
        "n_selected": len(report.selected_names()),
        "flagged": {
            va.name: va.cr.flag for va in report.per_variable if va.cr.flag
        },
    }
    if report.fdr is not None:
        payload["null"] = {
            "mu0": report.fdr.null.mu0,
            "sigma0": report.fdr.null.sigma0,
            "method": report.fdr.null.method.value,
        }
    else:
        payload["fdr_skipped"] = f"fewer than {MIN_FDR_ITEMS} variables"
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def export_plots(report: AnalysisReport, out_dir, svg: bool = False):
    """Write sorted-CR data plus density/PP curves for the selected top-k.

    Returns the list of file paths written.
    """
    os.makedirs(out_dir, exist_ok=True)
    written = []

    path = os.path.join(out_dir, "sorted_cr.csv")
    write_sorted_cr_csv(report, path)
    written.append(path)
    if svg:
        pts = list(
            zip(range(1, len(report.ranked.sorted_cr) + 1), report.ranked.sorted_cr)
        )
        path = os.path.join(out_dir, "sorted_cr.svg")
        svgplot.polyline_svg(pts, path, xlabel="rank", ylabel="CR")
        written.append(path)

    by_name = {va.name: va for va in report.per_variable}
    for name in report.selected_names()[: report.top_k]:
        va = by_name[name]
        if va.cd is None:
            continue
        safe = _safe_name(name)
        u, dhat = curve_grid(va)
        path = os.path.join(out_dir, f"cd_{safe}.csv")
        with open(path, "w", encoding="utf-8") as fh:
            fh.write("u,dhat\n")
            for ui, di in zip(u, dhat):
                fh.write(f"{fmt(ui)},{fmt(di)}\n")
        written.append(path)
        path = os.path.join(out_dir, f"pp_{safe}.csv")
        with open(path, "w", encoding="utf-8") as fh:
            fh.write("h,f\n")
            for h, f in va.cd.pp_points:
                fh.write(f"{fmt(h)},{fmt(f)}\n")
        written.append(path)
        if svg:
            path = os.path.join(out_dir, f"cd_{safe}.svg")
            svgplot.polyline_svg(list(zip(u, dhat)), path, xlabel="u", ylabel="dhat")
            written.append(path)
            path = os.path.join(out_dir, f"pp_{safe}.svg")
            svgplot.polyline_svg(
                [tuple(p) for p in va.cd.pp_points], path, xlabel="H", ylabel="F"
            )
            written.append(path)
    return written


def _safe_name(name: str) -> str:
    return re.sub(r"[^A-Za-z0-9_.-]", "_", name)
