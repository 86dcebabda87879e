"""Comparison-density local fdr (CDfdr) threshold selection.

Scores are flattened through an estimated null cdf, the residual density of
the flattened values is fit by a short shifted-Legendre series, and the
inverse fdr f/f0 is recovered as (estimated-null / theoretical-null density
ratio) x (residual density).  Items with inverse fdr >= 1/level are selected;
the conventional level 0.2 corresponds to the threshold 5.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.special import eval_legendre
from scipy.stats import chi2, norm

from .errors import ConfigError, TooFewItems, ZeroSpread

U_EPS = 1e-12
DENSITY_FLOOR = 0.01


class NullMethod(str, Enum):
    POOLED_MOMENTS = "pooled-moments"
    ROBUST_MEDIAN_MAD = "robust-median-mad"
    FIXED_THEORETICAL = "fixed-theoretical"


@dataclass(frozen=True)
class EmpiricalNull:
    mu0: float
    sigma0: float
    method: NullMethod


@dataclass(frozen=True)
class ResidualDensity:
    """Shifted-Legendre series for the density of the flattened scores.

    Coefficients with theta_k^2 <= 2/p are zeroed (kept mask records the
    survivors); the evaluator is floored at DENSITY_FLOOR.
    """

    coeffs: np.ndarray
    kept: np.ndarray
    n_items: int

    def __call__(self, u):
        u = np.asarray(u, dtype=float)
        active = np.flatnonzero(self.kept)
        d = np.ones_like(u)
        for k in active:
            d = d + self.coeffs[k] * _legendre01(k + 1, u)
        return np.maximum(d, DENSITY_FLOOR)


@dataclass(frozen=True)
class FdrConfig:
    input_kind: str = "z"  # "z" or "cr"
    n: int | None = None  # sample size behind each CR value (cr mode)
    m: int = 4  # chi-square df for the CR -> z bridge
    fdr_level: float = 0.2
    null_method: NullMethod = NullMethod.POOLED_MOMENTS
    n_coeffs: int = 6
    sides: str = "two"  # "two", "left", "right"
    weight_mode: str = "theoretical"  # "theoretical" or "empirical"


@dataclass(frozen=True)
class FdrResult:
    z: np.ndarray
    u_flat: np.ndarray
    null: EmpiricalNull
    residual: ResidualDensity
    inverse_fdr: np.ndarray
    selected: np.ndarray
    threshold: float


def estimate_null(z, method: NullMethod = NullMethod.POOLED_MOMENTS) -> EmpiricalNull:
    z = np.asarray(z, dtype=float)
    if z.size < 20:
        raise TooFewItems(f"need at least 20 scores, got {z.size}")
    if method == NullMethod.FIXED_THEORETICAL:
        return EmpiricalNull(0.0, 1.0, method)
    if method == NullMethod.POOLED_MOMENTS:
        mu0, sigma0 = float(z.mean()), float(z.std(ddof=1))
    elif method == NullMethod.ROBUST_MEDIAN_MAD:
        mu0 = float(np.median(z))
        sigma0 = float(1.4826 * np.median(np.abs(z - mu0)))
    else:
        raise ConfigError(f"unknown null method {method!r}")
    if sigma0 <= 0.0:
        raise ZeroSpread("null scale estimate is zero")
    return EmpiricalNull(mu0, sigma0, method)


def preflatten(z, null: EmpiricalNull) -> np.ndarray:
    """Flatten scores through the estimated null cdf, clamped into (0, 1)."""
    z = np.asarray(z, dtype=float)
    u = norm.cdf((z - null.mu0) / null.sigma0)
    return np.clip(u, U_EPS, 1.0 - U_EPS)


def estimate_residual_density(u_flat, n_coeffs: int = 6) -> ResidualDensity:
    if n_coeffs < 1:
        raise ConfigError("need at least one series coefficient")
    u = np.asarray(u_flat, dtype=float)
    p = u.size
    theta = np.array([_legendre01(k, u).mean() for k in range(1, n_coeffs + 1)])
    kept = theta**2 > 2.0 / p
    return ResidualDensity(coeffs=np.where(kept, theta, 0.0), kept=kept, n_items=p)


def inverse_fdr_curve(
    z, null: EmpiricalNull, resid: ResidualDensity, weight_mode: str = "theoretical"
) -> np.ndarray:
    """Per-item inverse fdr f/f0.

    In theoretical mode the exactly-known density ratio between the
    estimated null and the standard normal acts as an adjusting weight on
    the residual density; in empirical mode the estimated null *is* the
    reference and the weight drops out.
    """
    z = np.asarray(z, dtype=float)
    u = preflatten(z, null)
    d = resid(u)
    if weight_mode == "empirical":
        return d
    if weight_mode != "theoretical":
        raise ConfigError(f"unknown weight mode {weight_mode!r}")
    zs = (z - null.mu0) / null.sigma0
    log_w = norm.logpdf(zs) - np.log(null.sigma0) - norm.logpdf(z)
    return np.exp(log_w) * d


def select(inverse_fdr, u_flat, fdr_level: float = 0.2, sides: str = "two") -> np.ndarray:
    if not 0.0 < fdr_level < 1.0:
        raise ConfigError("fdr level must be in (0, 1)")
    inverse_fdr = np.asarray(inverse_fdr, dtype=float)
    u_flat = np.asarray(u_flat, dtype=float)
    mask = inverse_fdr >= 1.0 / fdr_level
    if sides == "left":
        mask &= u_flat < 0.5
    elif sides == "right":
        mask &= u_flat >= 0.5
    elif sides != "two":
        raise ConfigError(f"unknown sides {sides!r}")
    return mask


def cr_to_z(cr, n: int, m: int) -> np.ndarray:
    """One-sided bridge: CR values map to z through the chi-square p-value."""
    cr = np.asarray(cr, dtype=float)
    p = chi2.sf(n * cr, df=m)
    p = np.clip(p, 1e-300, 1.0 - 1e-16)
    return norm.isf(p)


def cdfdr_pipeline(scores, config: FdrConfig = FdrConfig()) -> FdrResult:
    scores = np.asarray(scores, dtype=float)
    if config.input_kind == "cr":
        if config.n is None:
            raise ConfigError("cr input needs the per-variable sample size n")
        z = cr_to_z(scores, config.n, config.m)
    elif config.input_kind == "z":
        z = scores
    else:
        raise ConfigError(f"unknown input kind {config.input_kind!r}")
    null = estimate_null(z, config.null_method)
    u = preflatten(z, null)
    resid = estimate_residual_density(u, config.n_coeffs)
    inv = inverse_fdr_curve(z, null, resid, config.weight_mode)
    sel = select(inv, u, config.fdr_level, config.sides)
    return FdrResult(
        z=z,
        u_flat=u,
        null=null,
        residual=resid,
        inverse_fdr=inv,
        selected=sel,
        threshold=1.0 / config.fdr_level,
    )


def _legendre01(k: int, u):
    """Orthonormal shifted Legendre polynomial on (0, 1)."""
    return np.sqrt(2.0 * k + 1.0) * eval_legendre(k, 2.0 * np.asarray(u) - 1.0)
