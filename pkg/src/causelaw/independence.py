"""Independence tests for binary data: stratified G-squared and a permutation test.

All randomness flows through numpy's default generator (PCG64) seeded with a
caller-supplied 64-bit integer, so every result is reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaincc

from .errors import ParameterError


@dataclass(frozen=True)
class CiResult:
    """Outcome of one conditional-independence test."""

    statistic: float
    dof: int
    p_value: float
    independent: bool


def chi2_sf(x, dof):
    """Upper-tail probability of the chi-square distribution.

    Computed as the regularized upper incomplete gamma Q(dof/2, x/2);
    absolute accuracy is well below 1e-10 over the tested range.
    """
    if x < 0:
        raise ParameterError("statistic must be non-negative")
    if dof < 1:
        raise ParameterError("degrees of freedom must be >= 1")
    p = float(gammaincc(dof / 2.0, x / 2.0))
    return min(1.0, max(0.0, p))


def _g2_from_table(table):
    """G-squared contribution of one 2x2 table under independence."""
    total = table.sum()
    if total == 0:
        return 0.0
    rows = table.sum(axis=1)
    cols = table.sum(axis=0)
    g2 = 0.0
    for i in (0, 1):
        for j in (0, 1):
            o = table[i, j]
            if o == 0:
                continue
            e = rows[i] * cols[j] / total
            g2 += o * math.log(o / e)
    return 2.0 * g2


def g2_test(matrix, x, y, z=(), alpha=0.05):
    """Likelihood-ratio test of X independent of Y given the set Z.

    The statistic sums per-stratum G-squared terms over the observed strata
    of Z; each observed stratum contributes one degree of freedom, empty
    strata contribute neither statistic nor dof.
    """
    if not 0 < alpha < 1:
        raise ParameterError("alpha must lie in (0, 1)")
    z = tuple(z)
    if x == y:
        raise ParameterError("x and y must differ")
    if x in z or y in z:
        raise ParameterError("conditioning set must not contain x or y")
    xs = matrix.column(x).astype(np.int64)
    ys = matrix.column(y).astype(np.int64)
    if z:
        strata = np.zeros(matrix.n_cases, dtype=np.int64)
        for v in z:
            strata = (strata << 1) | matrix.column(v)
        n_strata = 2 ** len(z)
    else:
        strata = np.zeros(matrix.n_cases, dtype=np.int64)
        n_strata = 1
    cell = ((strata * 2 + xs) * 2 + ys).astype(np.int64)
    counts = np.bincount(cell, minlength=n_strata * 4).reshape(n_strata, 2, 2)
    statistic = 0.0
    dof = 0
    for s in range(n_strata):
        table = counts[s]
        if table.sum() == 0:
            continue
        statistic += _g2_from_table(table)
        dof += 1
    if dof == 0:
        return CiResult(0.0, 0, 1.0, True)
    p = chi2_sf(statistic, dof)
    return CiResult(statistic, dof, p, p > alpha)


def dependence_statistic(x, r):
    """Absolute covariance of x with r plus with r squared.

    The second term picks up variance dependence that the plain covariance
    misses; the pair is the statistic behind the permutation test and the
    regression-residual ordering search.
    """
    x = np.asarray(x, dtype=float)
    r = np.asarray(r, dtype=float)
    xc = x - x.mean()
    rc = r - r.mean()
    r2 = r * r
    r2c = r2 - r2.mean()
    n = x.shape[0]
    return abs(float(xc @ rc)) / n + abs(float(xc @ r2c)) / n


def perm_dependence_test(x, r, n_perm=200, seed=0):
    """Permutation p-value for dependence between a vector and residuals.

    p = (1 + #{permutations with statistic >= observed}) / (1 + n_perm),
    with permutations of r drawn from numpy's seeded default generator.
    """
    x = np.asarray(x, dtype=float)
    r = np.asarray(r, dtype=float)
    if x.shape != r.shape or x.ndim != 1:
        raise ParameterError("x and r must be one-dimensional and equally long")
    if x.shape[0] < 3:
        raise ParameterError("need at least 3 observations")
    if n_perm < 1:
        raise ParameterError("n_perm must be positive")
    observed = dependence_statistic(x, r)
    rng = np.random.default_rng(seed)
    hits = 0
    for _ in range(n_perm):
        perm = rng.permutation(r)
        if dependence_statistic(x, perm) >= observed:
            hits += 1
    return (1 + hits) / (1 + n_perm)
