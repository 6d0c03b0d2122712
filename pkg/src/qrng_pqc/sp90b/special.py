"""Tail probabilities used by the validation battery.

Chi-square survival goes through the regularized upper incomplete gamma
function. Binomial tails are summed exactly term by term in log space so
that p-values as small as ``1e-300`` keep full relative precision.
"""

from __future__ import annotations

import math

from ..errors import InvalidParameterError

_EPS = 1e-16
_TINY = 1e-300
_MAX_ITER = 10_000


def _lower_gamma_series(a: float, x: float) -> float:
    """Regularized lower incomplete gamma ``P(a, x)``; converges fast for ``x < a + 1``."""
    term = total = 1.0 / a
    ap = a
    for _ in range(_MAX_ITER):
        ap += 1.0
        term *= x / ap
        total += term
        if abs(term) < abs(total) * _EPS:
            break
    return total * math.exp(-x + a * math.log(x) - math.lgamma(a))


def _upper_gamma_cf(a: float, x: float) -> float:
    """Regularized upper incomplete gamma ``Q(a, x)`` by modified Lentz; for ``x >= a + 1``."""
    b = x + 1.0 - a
    c = 1.0 / _TINY
    d = 1.0 / b
    h = d
    for i in range(1, _MAX_ITER):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < _TINY:
            d = _TINY
        c = b + an / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _EPS:
            break
    return math.exp(-x + a * math.log(x) - math.lgamma(a)) * h


def upper_regularized_gamma(a: float, x: float) -> float:
    if a <= 0:
        raise InvalidParameterError(f"shape must be positive, got {a}")
    if x < 0:
        raise InvalidParameterError(f"x must be >= 0, got {x}")
    if x == 0:
        return 1.0
    if x < a + 1.0:
        return max(0.0, 1.0 - _lower_gamma_series(a, x))
    return min(1.0, _upper_gamma_cf(a, x))


def chi2_survival(x: float, df: int) -> float:
    """``P(X >= x)`` for ``X`` chi-square distributed with ``df`` degrees of freedom."""
    if df < 1 or int(df) != df:
        raise InvalidParameterError(f"df must be a positive integer, got {df}")
    if not x >= 0:
        raise InvalidParameterError(f"chi-square statistic must be >= 0, got {x}")
    return upper_regularized_gamma(df / 2.0, x / 2.0)


def log_binomial_pmf(k: int, n: int, p: float = 0.5) -> float:
    """``log P(X = k)`` for ``X ~ Binomial(n, p)``.

    ``log C(n, k)`` is accumulated as an exactly rounded sum of small
    logarithms instead of a difference of large ``lgamma`` values, which
    would cost ~1e-12 relative precision already at ``n = 1000``.
    """
    if not 0 <= k <= n:
        return -math.inf
    if p in (0.0, 1.0):
        hit = (k == 0) if p == 0.0 else (k == n)
        return 0.0 if hit else -math.inf
    m = min(k, n - k)
    terms = [math.log((n - m + i) / i) for i in range(1, m + 1)]
    terms.append(k * math.log(p))
    terms.append((n - k) * math.log1p(-p))
    return math.fsum(terms)


def binomial_upper_tail(k: int, n: int, p: float = 0.5) -> float:
    """``P(X >= k)`` for ``X ~ Binomial(n, p)``, by exact summation."""
    if n < 0 or not 0.0 <= p <= 1.0:
        raise InvalidParameterError(f"bad binomial parameters n={n}, p={p}")
    if k <= 0:
        return 1.0
    if k > n:
        return 0.0
    log_first = log_binomial_pmf(k, n, p)
    if log_first == -math.inf:
        return 0.0 if p < 1.0 else 1.0
    # successive pmf ratios are (n-j)/(j+1) * p/(1-p); summing relative to the first term
    odds = p / (1.0 - p)
    ratio = 1.0
    rel = [1.0]
    for j in range(k, n):
        ratio *= (n - j) / (j + 1) * odds
        rel.append(ratio)
        if ratio < 1e-20 * rel[0] and j > n * p:
            break
    return min(1.0, math.exp(log_first) * math.fsum(rel))


def binary_entropy(p: float) -> float:
    """Shannon entropy in bits of a Bernoulli(``p``) variable."""
    if not 0.0 <= p <= 1.0:
        raise InvalidParameterError(f"probability out of range: {p}")
    if p in (0.0, 1.0):
        return 0.0
    return -(p * math.log2(p) + (1.0 - p) * math.log2(1.0 - p))
