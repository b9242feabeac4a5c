"""Iterated averages of the psi error and their differenced statistics.

For r(n) = psi(n) - n, the k-fold averaged error is

    rbar_k(n) = S_k(n) / C(n+k-1, k)

where S_k is the k-fold prefix sum of r.  Differencing rbar_k in n gives
three derived statistics, each of which also has an equivalent
representation as a binomial-weighted sum over Lambda:

    hat_r(i, n)       = (i+1) * (rbar_i(n) - rbar_i(n-1))       [weights b]
    hat_prime_r(i, n) = (n-1) * (rbar_i(n) - rbar_i(n-1))
    tilde_r(i, n)     = (fr(n) - fr(n-1)) / 2,
                        fr(m) = m*(m-1)*(rbar_i(m) - rbar_i(m-1))  [weights h]

The weighted-sum forms are exposed (weighted_psi and friends) both as
public operations and as independent cross-checks of the difference
forms; the weighted batch variants run off prefix sums of Lambda-derived
series, a data path disjoint from the prefix sums of r.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

import numpy as np

from .accum import neumaier_prefix_sum, neumaier_sum
from .sieve import ErrorSeries, LambdaTable


@dataclass(frozen=True)
class IteratedAverage:
    """values[n] = rbar_order(n) for 1 <= n <= n_max (index 0 unused)."""

    order: int
    n_max: int
    values: np.ndarray


@dataclass(frozen=True)
class RangeSummary:
    lo: int
    hi: int
    min: float
    argmin: int
    max: float
    argmax: int


def _binom_column_exact(n_max: int, k: int) -> np.ndarray:
    """float C(n+k-1, k) for n = 1..n_max, exact integers converted once."""
    return np.array([float(comb(n + k - 1, k)) for n in range(1, n_max + 1)])


def iterated_average(series: ErrorSeries, k: int, n_max: int | None = None) -> IteratedAverage:
    """k-fold averaged error via k compensated prefix-sum passes.

    Raises ValueError for k outside [1, 8] or n_max beyond the series.
    """
    if not 1 <= k <= 8:
        raise ValueError(f"order k must be in [1, 8], got {k}")
    if n_max is None:
        n_max = series.n_max
    if not 1 <= n_max <= series.n_max:
        raise ValueError(f"n_max = {n_max} outside series range [1, {series.n_max}]")

    s = series.r[1 : n_max + 1]
    for _ in range(k):
        s = neumaier_prefix_sum(s)
    values = np.zeros(n_max + 1)
    values[1:] = s / _binom_column_exact(n_max, k)
    values.flags.writeable = False
    return IteratedAverage(k, n_max, values)


def average_via_weights(series: ErrorSeries, k: int, n: int) -> float:
    """Single-point rbar_k(n) as a weighted sum over r(1..n).

    rbar_k(n) = sum_{m <= n} C(n+k-m-1, k-1) r(m) / C(n+k-1, k), evaluated
    with exact binomials; independent route used to cross-check
    iterated_average.
    """
    if not 1 <= k <= 8:
        raise ValueError(f"order k must be in [1, 8], got {k}")
    if not 1 <= n <= series.n_max:
        raise ValueError(f"n = {n} outside series range [1, {series.n_max}]")
    terms = (
        float(comb(n + k - m - 1, k - 1)) * series.r[m] for m in range(1, n + 1)
    )
    return neumaier_sum(terms) / comb(n + k - 1, k)


# -- weighted Lambda sums ---------------------------------------------------


def _check_psi_args(table: LambdaTable, i: int, x: int) -> None:
    if not 1 <= x <= table.n_max:
        raise ValueError(f"x = {x} outside table range [1, {table.n_max}]")
    if i < 0:
        raise ValueError(f"order i must be >= 0, got {i}")


def weighted_psi(table: LambdaTable, i: int, x: int) -> float:
    """psi_i(x) = sum_{j <= x} a(i, x, j) Lambda(j); psi_0 = psi.

    Weights are evaluated as products of i linear factors in float; each
    weight carries only O(i) rounding.
    """
    _check_psi_args(table, i, x)
    if i == 0:
        return float(table.psi_prefix[x])
    j = np.arange(1, x + 1, dtype=float)
    w = np.ones(x)
    for t in range(i):
        w *= (x + i - j - t) / (x + i - 1 - t)
    return neumaier_sum(w * table.lam[1 : x + 1])


def weighted_psi_hat(table: LambdaTable, i: int, x: int) -> float:
    """psi-hat_i(x) = sum_{j <= x} b(i, x, j) Lambda(j)."""
    _check_psi_args(table, i, x)
    if i < 1:
        raise ValueError("psi-hat needs i >= 1")
    if x < 2:
        raise ValueError("psi-hat needs x >= 2")
    j = np.arange(1, x + 1, dtype=float)
    # (j-1) C(x+i-1-j, i-1) / C(x+i-1, i+1)
    w = (j - 1.0) / comb(x + i - 1, i + 1)
    for t in range(i - 1):
        w *= x + i - 1 - j - t
    w /= float(np.prod(np.arange(1, i, dtype=float)))  # (i-1)!
    return neumaier_sum(w * table.lam[1 : x + 1])


def weighted_psi_hat_prime(table: LambdaTable, i: int, x: int) -> float:
    """(n-1)-scaled variant: sum_j C(x+i-1-j, i-1)/C(x+i-1, i) (j-1) Lambda(j)."""
    if i < 1:
        raise ValueError("psi-hat' needs i >= 1")
    return weighted_psi_hat(table, i, x) * (x - 1) / (i + 1)


def weighted_psi_tilde(table: LambdaTable, i: int, x: int) -> float:
    """psi-tilde_i(x) = sum_{j <= x} h(i, x, j) Lambda(j), i >= 2."""
    _check_psi_args(table, i, x)
    if i < 2:
        raise ValueError("psi-tilde needs i >= 2")
    j = np.arange(1, x + 1, dtype=float)
    w = j * (j - 1.0) / 2.0 / comb(x + i - 1, i)
    for t in range(i - 2):
        w *= x + i - 2 - j - t
    w /= float(np.prod(np.arange(1, i - 1, dtype=float)))  # (i-2)!
    return neumaier_sum(w * table.lam[1 : x + 1])


def _iterated_lambda_prefix(values: np.ndarray, folds: int) -> np.ndarray:
    s = values
    for _ in range(folds):
        s = neumaier_prefix_sum(s)
    return s


def weighted_psi_series(table: LambdaTable, i: int, n_max: int) -> np.ndarray:
    """psi_i(n) for all n <= n_max in O(i * n), via prefix sums of Lambda.

    sum_j C(n+i-j, i) Lambda(j) is the (i+1)-fold prefix sum of Lambda, so
    the whole series costs i+1 compensated passes.  Index 0 unused.
    """
    _check_psi_args(table, i, n_max)
    s = _iterated_lambda_prefix(table.lam[1 : n_max + 1], i + 1)
    out = np.zeros(n_max + 1)
    out[1:] = s / _binom_column_exact(n_max, i)
    return out


def weighted_psi_hat_series(table: LambdaTable, i: int, n_max: int) -> np.ndarray:
    """psi-hat_i(n) for all n <= n_max: i-fold prefix sum of (j-1) Lambda(j)."""
    if i < 1:
        raise ValueError("psi-hat needs i >= 1")
    g = (np.arange(1, n_max + 1, dtype=float) - 1.0) * table.lam[1 : n_max + 1]
    s = _iterated_lambda_prefix(g, i)
    out = np.full(n_max + 1, np.nan)  # n = 1 undefined: C(i, i+1) = 0
    if n_max >= 2:
        denom = np.array([float(comb(n + i - 1, i + 1)) for n in range(2, n_max + 1)])
        out[2:] = s[1:] / denom
    return out


def weighted_psi_tilde_series(table: LambdaTable, i: int, n_max: int) -> np.ndarray:
    """psi-tilde_i(n) for all n <= n_max: (i-1)-fold prefix sum of C(j,2) Lambda(j)."""
    if i < 2:
        raise ValueError("psi-tilde needs i >= 2")
    j = np.arange(1, n_max + 1, dtype=float)
    g = j * (j - 1.0) / 2.0 * table.lam[1 : n_max + 1]
    s = _iterated_lambda_prefix(g, i - 1)
    # (i-1)-fold prefix of g gives sum_j C(n-j+i-2, i-2) g(j), exactly the
    # weighted numerator.
    out = np.zeros(n_max + 1)
    out[1:] = s / _binom_column_exact(n_max, i)
    return out


# -- differenced statistics -------------------------------------------------


def hat_r(avg: IteratedAverage, n: int) -> float:
    """(i+1) * (rbar_i(n) - rbar_i(n-1)); needs n >= 2."""
    if n < 2:
        raise ValueError("hat_r needs n >= 2")
    if n > avg.n_max:
        raise ValueError(f"n = {n} outside average range [2, {avg.n_max}]")
    return (avg.order + 1) * (float(avg.values[n]) - float(avg.values[n - 1]))


def hat_prime_r(avg: IteratedAverage, n: int) -> float:
    """(n-1) * (rbar_i(n) - rbar_i(n-1)); needs n >= 2."""
    if n < 2:
        raise ValueError("hat_prime_r needs n >= 2")
    if n > avg.n_max:
        raise ValueError(f"n = {n} outside average range [2, {avg.n_max}]")
    return (n - 1) * (float(avg.values[n]) - float(avg.values[n - 1]))


def tilde_r(avg: IteratedAverage, n: int) -> float:
    """Second difference statistic; needs n >= 3 and order >= 2."""
    if avg.order < 2:
        raise ValueError("tilde_r needs average order >= 2")
    if n < 3:
        raise ValueError("tilde_r needs n >= 3")
    if n > avg.n_max:
        raise ValueError(f"n = {n} outside average range [3, {avg.n_max}]")

    def fr(m: int) -> float:
        return m * (m - 1) * (float(avg.values[m]) - float(avg.values[m - 1]))

    return (fr(n) - fr(n - 1)) / 2.0


def hat_r_series(avg: IteratedAverage) -> np.ndarray:
    """hat_r for n = 2..n_max; out[n] aligned, out[0..1] = nan."""
    out = np.full(avg.n_max + 1, np.nan)
    out[2:] = (avg.order + 1) * np.diff(avg.values[1:])
    return out


def hat_prime_r_series(avg: IteratedAverage) -> np.ndarray:
    """hat_prime_r for n = 2..n_max; out[0..1] = nan."""
    out = np.full(avg.n_max + 1, np.nan)
    n = np.arange(2, avg.n_max + 1, dtype=float)
    out[2:] = (n - 1.0) * np.diff(avg.values[1:])
    return out


def tilde_r_series(avg: IteratedAverage) -> np.ndarray:
    """tilde_r for n = 3..n_max; out[0..2] = nan."""
    if avg.order < 2:
        raise ValueError("tilde_r needs average order >= 2")
    out = np.full(avg.n_max + 1, np.nan)
    n = np.arange(2, avg.n_max + 1, dtype=float)
    fr = n * (n - 1.0) * np.diff(avg.values[1:])
    out[3:] = np.diff(fr) / 2.0
    return out


def range_summary(values: np.ndarray, lo: int, hi: int) -> RangeSummary:
    """Exact min/max with first-attaining indices over values[lo..hi].

    values is indexed like the series arrays (index = n).  NaN entries
    (undefined leading indices of differenced statistics) are rejected.
    """
    if lo > hi:
        raise ValueError(f"empty range [{lo}, {hi}]")
    if lo < 0 or hi >= len(values):
        raise ValueError(f"range [{lo}, {hi}] outside array of length {len(values)}")
    window = values[lo : hi + 1]
    if np.isnan(window).any():
        raise ValueError("range contains undefined (NaN) entries")
    imin = int(np.argmin(window))
    imax = int(np.argmax(window))
    return RangeSummary(
        lo=lo,
        hi=hi,
        min=float(window[imin]),
        argmin=lo + imin,
        max=float(window[imax]),
        argmax=lo + imax,
    )
