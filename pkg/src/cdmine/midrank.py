"""Mid-rank (mid-distribution) transformation of raw data.

The mid-distribution value of an observation is F(x) - 0.5 p(x), which for a
sample reduces to (average_rank - 0.5) / n.  Ties always take average ranks,
so discrete, continuous and ordered-categorical columns go through the same
code path.  Missing entries are dropped per column (pairwise deletion).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np
from scipy.stats import rankdata

from .errors import AllMissing, NonFinite


class Kind(str, Enum):
    CONTINUOUS = "continuous"
    DISCRETE = "discrete"
    ORDINAL = "categorical-ordinal"


@dataclass(frozen=True)
class VariableColumn:
    """One feature: raw values, a missing mask of equal length, and a kind."""

    values: np.ndarray
    missing: np.ndarray
    kind: Kind = Kind.CONTINUOUS
    name: str = ""

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        missing = np.asarray(self.missing, dtype=bool)
        if values.shape != missing.shape or values.ndim != 1:
            raise ValueError("values and missing must be 1-d arrays of equal length")
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "missing", missing)

    @classmethod
    def from_values(cls, values, kind: Kind = Kind.CONTINUOUS, name: str = "") -> "VariableColumn":
        """Build a column with the missing mask inferred from NaNs."""
        values = np.asarray(values, dtype=float)
        return cls(values=values, missing=np.isnan(values), kind=kind, name=name)

    def present(self) -> np.ndarray:
        return self.values[~self.missing]


@dataclass(frozen=True)
class MidRankVector:
    """Mid-ranks of the non-missing entries of one column.

    sigma_mid is the standard deviation of the mid-distribution transform,
    sqrt((1/12) (1 - sum_a p_a^3)) over the distinct-value proportions p_a.
    """

    u: np.ndarray
    n_effective: int
    sigma_mid: float
    tie_profile: tuple = field(default=())


def mid_rank_transform(col: VariableColumn) -> MidRankVector:
    """Map the non-missing values of a column to (avg_rank - 0.5) / n."""
    x = col.present()
    if x.size < 2:
        raise AllMissing(f"column {col.name!r}: fewer than 2 non-missing values")
    if not np.all(np.isfinite(x)):
        raise NonFinite(f"column {col.name!r}: non-missing NaN or infinite value")
    n = x.size
    ranks = rankdata(x, method="average")
    u = (ranks - 0.5) / n
    distinct, counts = np.unique(x, return_counts=True)
    p_hat = counts / n
    sigma_sq = (1.0 - np.sum(p_hat**3)) / 12.0
    sigma_mid = float(np.sqrt(max(sigma_sq, 0.0)))
    profile = tuple(zip(distinct.tolist(), counts.tolist()))
    return MidRankVector(u=u, n_effective=n, sigma_mid=sigma_mid, tie_profile=profile)


def pooled_mid_cdf(col: VariableColumn):
    """Evaluator of the pooled mid-distribution Hmid(t) = F(t) - 0.5 p(t).

    At observed atoms the mid-cdf is returned; between atoms the plain
    empirical cdf.  Works on scalars and arrays.
    """
    x = col.present()
    if x.size < 2:
        raise AllMissing(f"column {col.name!r}: fewer than 2 non-missing values")
    if not np.all(np.isfinite(x)):
        raise NonFinite(f"column {col.name!r}: non-missing NaN or infinite value")
    n = x.size
    distinct, counts = np.unique(x, return_counts=True)
    p_hat = counts / n
    cum = np.cumsum(p_hat)

    def h_mid(t):
        t = np.asarray(t, dtype=float)
        idx = np.searchsorted(distinct, t, side="right")
        cdf = np.where(idx > 0, cum[np.maximum(idx - 1, 0)], 0.0)
        at_atom = (idx > 0) & (t == distinct[np.maximum(idx - 1, 0)])
        out = np.where(at_atom, cdf - 0.5 * p_hat[np.maximum(idx - 1, 0)], cdf)
        return float(out) if out.ndim == 0 else out

    return h_mid
