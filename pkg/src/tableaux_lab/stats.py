"""Estimation helpers for the experiment harness: unbiased cumulant
(k-statistic) estimators, the Kolmogorov-Smirnov distance, binomial standard
errors, and the log-log power-law fit."""

from __future__ import annotations

from math import sqrt
from typing import Callable, Sequence

import numpy as np


def empirical_cumulants(samples: Sequence[float], k_max: int = 4) -> list[float]:
    """Unbiased k-statistics for the first cumulants kappa_1..kappa_k_max (k_max <= 4)."""
    if not 1 <= k_max <= 4:
        raise ValueError("k_max must be between 1 and 4")
    x = np.asarray(samples, dtype=float)
    n = len(x)
    if n < 10:
        raise ValueError(f"need at least 10 samples, got {n}")
    mean = x.mean()
    d = x - mean
    m2 = float((d**2).mean())
    m3 = float((d**3).mean())
    m4 = float((d**4).mean())
    out = [float(mean)]
    if k_max >= 2:
        out.append(n / (n - 1) * m2)
    if k_max >= 3:
        out.append(n * n / ((n - 1) * (n - 2)) * m3)
    if k_max >= 4:
        out.append(n * n * ((n + 1) * m4 - 3 * (n - 1) * m2 * m2) / ((n - 1) * (n - 2) * (n - 3)))
    return out


def ks_statistic(samples: Sequence[float], cdf: Callable[[float], float]) -> float:
    """sup |empirical CDF - cdf| via the sorted-sample formula."""
    x = np.sort(np.asarray(samples, dtype=float))
    m = len(x)
    if m < 1:
        raise ValueError("need at least one sample")
    f = np.array([cdf(v) for v in x])
    grid = np.arange(m, dtype=float)
    return float(np.max(np.maximum((grid + 1) / m - f, f - grid / m)))


def mean_std_error(samples: Sequence[float]) -> float:
    """Standard error of the sample mean."""
    x = np.asarray(samples, dtype=float)
    return float(x.std(ddof=1) / sqrt(len(x)))


def variance_std_error(samples: Sequence[float]) -> float:
    """Standard error of the unbiased sample variance, from the empirical fourth moment.

    Var(s^2) = mu4/n - sigma^4 (n-3)/(n(n-1)), with mu4 and sigma^4 plugged in
    empirically.
    """
    x = np.asarray(samples, dtype=float)
    n = len(x)
    d = x - x.mean()
    m2 = float((d**2).mean())
    m4 = float((d**4).mean())
    v = m4 / n - m2 * m2 * (n - 3) / (n * (n - 1))
    return sqrt(max(v, 0.0))


def binomial_std_error(p_hat: float, samples: int) -> float:
    """Wald standard error of a binomial proportion; rule-of-three 3/n at p_hat in {0, 1}."""
    if samples < 1:
        raise ValueError("samples must be >= 1")
    if p_hat in (0.0, 1.0):
        return 3.0 / samples
    return sqrt(p_hat * (1.0 - p_hat) / samples)


def fit_power_law(sizes: Sequence[float], means: Sequence[float]) -> tuple[float, float, float]:
    """Least-squares fit of means ~ C * sizes**alpha on log-log axes.

    Returns (C, alpha, residual) where residual is the RMS of the log-scale
    fit residuals.
    """
    x = np.log(np.asarray(sizes, dtype=float))
    y = np.log(np.asarray(means, dtype=float))
    if len(x) < 3:
        raise ValueError("need at least 3 points to fit a power law")
    design = np.column_stack([np.ones_like(x), x])
    coef, *_ = np.linalg.lstsq(design, y, rcond=None)
    resid = y - design @ coef
    return float(np.exp(coef[0])), float(coef[1]), float(np.sqrt(np.mean(resid**2)))
