"""Two-sample comparison distribution and its orthogonal-series density.

For a variable X and binary label Y, the comparison distribution is
D(u) = F1(H^{-1}(u)) where F1 is the class-1 cdf and H the pooled cdf; its
density d(u) is flat exactly when the two class distributions agree.  The
series estimate is d(u) = 1 + sum_k theta_k S_k(u) with theta_k the class-1
average of the k-th score function.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import EmptyClass
from .score_basis import ScoreBasis, evaluate_scores


@dataclass(frozen=True)
class TwoSampleData:
    """Pooled mid-ranks with aligned binary labels."""

    u: np.ndarray
    y: np.ndarray
    n0: int
    n1: int
    pi_hat: float

    @classmethod
    def from_arrays(cls, u, y) -> "TwoSampleData":
        u = np.asarray(u, dtype=float)
        y = np.asarray(y, dtype=int)
        if u.shape != y.shape or u.ndim != 1:
            raise ValueError("u and y must be aligned 1-d arrays")
        if not np.all((y == 0) | (y == 1)):
            raise ValueError("labels must be coded 0/1")
        n1 = int(y.sum())
        n0 = int(y.size - n1)
        return cls(u=u, y=y, n0=n0, n1=n1, pi_hat=n1 / y.size)


@dataclass(frozen=True)
class CdEstimate:
    """Series coefficients and PP-plot points for one variable."""

    theta: np.ndarray
    basis: ScoreBasis
    pp_points: np.ndarray  # shape (r+1, 2), columns (H, F), starts at (0, 0)
    gof_norm: float


def theta_hat(data: TwoSampleData, basis: ScoreBasis) -> np.ndarray:
    """Class-1 averages of each score column."""
    _require_classes(data)
    return basis.score_matrix[data.y == 1].mean(axis=0)


def estimate_cd(theta: np.ndarray, basis: ScoreBasis):
    """Return the density evaluator u -> 1 + sum_k theta_k S_k(u).

    The raw series may dip below zero; clip only for display, never before
    computing norms.
    """
    theta = np.asarray(theta, dtype=float)

    def dhat(u):
        return 1.0 + evaluate_scores(basis, u) @ theta

    return dhat


def pp_plot_points(data: TwoSampleData) -> np.ndarray:
    """(pooled cdf, class-1 cdf) at each distinct pooled value, ascending.

    A leading (0, 0) anchors linear interpolation; the last point is (1, 1).
    """
    _require_classes(data)
    order = np.argsort(data.u, kind="stable")
    u_sorted = data.u[order]
    y_sorted = data.y[order]
    n = u_sorted.size
    # Distinct mid-rank levels correspond to distinct raw values in order.
    boundaries = np.flatnonzero(np.diff(u_sorted) > 0)
    ends = np.append(boundaries, n - 1)
    h = (ends + 1) / n
    f = np.cumsum(y_sorted)[ends] / data.n1
    pts = np.column_stack([h, f])
    return np.vstack([[0.0, 0.0], pts])


def gof_norm(theta: np.ndarray) -> float:
    """Squared deviation of the series density from flat: sum of theta_k^2."""
    theta = np.asarray(theta, dtype=float)
    return float(theta @ theta)


def cd_estimate(data: TwoSampleData, basis: ScoreBasis) -> CdEstimate:
    th = theta_hat(data, basis)
    return CdEstimate(
        theta=th,
        basis=basis,
        pp_points=pp_plot_points(data),
        gof_norm=gof_norm(th),
    )


def _require_classes(data: TwoSampleData):
    if data.n0 < 2 or data.n1 < 2:
        raise EmptyClass(f"class sizes n0={data.n0}, n1={data.n1}; need >= 2 each")
