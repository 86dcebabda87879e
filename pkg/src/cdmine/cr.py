"""The CR statistic: squared label/score correlations, chi-square p-values,
ranking and impact-type categorization."""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np
from scipy.stats import chi2

from .comp_density import TwoSampleData
from .errors import DegenerateVariable
from .score_basis import ScoreBasis

CATEGORY_BY_COMPONENT = {1: "mean", 2: "variance", 3: "skewness", 4: "tail"}


@dataclass(frozen=True)
class CrResult:
    components: np.ndarray  # R_1 .. R_M
    cr: float
    pvalue: float
    category: str
    n_effective: int
    variable_id: str = ""
    flag: str = ""  # nonempty for degenerate/reduced columns


def component_correlations(data: TwoSampleData, basis: ScoreBasis) -> np.ndarray:
    """Sample correlation of the label with each score column."""
    y = data.y.astype(float)
    n = y.size
    sd_y = np.sqrt(data.pi_hat * (1.0 - data.pi_hat))
    if sd_y == 0.0:
        raise DegenerateVariable("labels are constant")
    cols = basis.score_matrix
    mean_cols = cols.mean(axis=0)
    cov = (y @ cols) / n - y.mean() * mean_cols
    sd_cols = np.sqrt(np.maximum((cols**2).mean(axis=0) - mean_cols**2, 0.0))
    return cov / (sd_y * sd_cols)


def cr_statistic(components: np.ndarray) -> float:
    components = np.asarray(components, dtype=float)
    return float(components @ components)


def null_pvalue(cr: float, n: int, m: int) -> float:
    """Upper-tail chi-square (m df) probability at n * cr."""
    if n <= 0 or m < 1:
        raise ValueError("need n > 0 and m >= 1")
    return float(chi2.sf(n * cr, df=m))


def categorize(components: np.ndarray) -> str:
    """Impact type: the dominant component's label if it carries more than
    half of CR, else 'mixed'.  Components beyond the fourth have no single
    moment label and fall back to 'mixed'."""
    components = np.asarray(components, dtype=float)
    sq = components**2
    total = sq.sum()
    if total <= 0.0:
        return "mixed"
    top = int(np.argmax(sq))
    if sq[top] > 0.5 * total:
        return CATEGORY_BY_COMPONENT.get(top + 1, "mixed")
    return "mixed"


def cr_result(data: TwoSampleData, basis: ScoreBasis, variable_id: str = "") -> CrResult:
    comps = component_correlations(data, basis)
    cr = cr_statistic(comps)
    return CrResult(
        components=comps,
        cr=cr,
        pvalue=null_pvalue(cr, data.y.size, basis.m),
        category=categorize(comps),
        n_effective=data.y.size,
        variable_id=variable_id,
    )


@dataclass(frozen=True)
class RankedReport:
    """CR results in descending order plus per-category top lists."""

    ordered: list  # CrResult, rank order
    ranks: np.ndarray  # rank (1-based) per input position
    sorted_cr: np.ndarray  # descending CR values, for the threshold plot
    category_top: dict  # category -> list of CrResult in rank order


def rank_variables(results: list) -> RankedReport:
    if not results:
        raise ValueError("no results to rank")
    order = sorted(range(len(results)), key=lambda i: (-results[i].cr, i))
    ordered = [results[i] for i in order]
    ranks = np.empty(len(results), dtype=int)
    for rank0, i in enumerate(order):
        ranks[i] = rank0 + 1
    sorted_cr = np.array([r.cr for r in ordered])
    cats = {}
    for r in ordered:
        cats.setdefault(r.category, []).append(r)
    return RankedReport(ordered=ordered, ranks=ranks, sorted_cr=sorted_cr, category_top=cats)


def with_flag(result: CrResult, flag: str) -> CrResult:
    return replace(result, flag=flag)
