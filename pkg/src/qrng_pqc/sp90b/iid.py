"""Per-group statistics: MCV, min-entropy, independence, goodness-of-fit, LRS."""

from __future__ import annotations

import math

import numpy as np

from ..bits import BitString
from ..errors import InvalidParameterError
from .special import binary_entropy, binomial_upper_tail, chi2_survival

SANITY_THRESHOLD = 5e-6
IID_THRESHOLD = 1e-3

INDEPENDENCE_BLOCKS = 10
INDEPENDENCE_DF = 9
GF_WORD_BITS = 4
GF_DF = 14  # 16 cells would conventionally give 15; 14 kept on purpose


def _as_array(group) -> np.ndarray:
    if isinstance(group, BitString):
        return group.array
    return np.asarray(group, dtype=np.uint8)


def mcv_count(group) -> int:
    """Count of the most common value in a bit group."""
    bits = _as_array(group)
    if bits.size == 0:
        raise InvalidParameterError("group must be non-empty")
    ones = int(np.count_nonzero(bits))
    return max(ones, bits.size - ones)


def _check_mcv(mcv: int, n: int) -> None:
    if n < 1 or not (2 * mcv >= n and mcv <= n):
        raise InvalidParameterError(f"mcv must satisfy n/2 <= mcv <= n, got mcv={mcv}, n={n}")


def binary_min_entropy(mcv: int, n: int) -> float:
    """Per-bit entropy score of a group from its MCV count.

    Computed as the binary Shannon entropy of ``mcv / n``. Note this is not
    the SP 800-90B most-common-value min-entropy estimate -log2(p_max).
    """
    _check_mcv(mcv, n)
    return binary_entropy(mcv / n)


def binomial_mcv_pvalue(mcv: int, n: int) -> float:
    """Two-sided exact binomial p-value ``min(1, 2 P(X >= mcv))``, ``X ~ Bin(n, 1/2)``."""
    _check_mcv(mcv, n)
    return min(1.0, 2.0 * binomial_upper_tail(mcv, n, 0.5))


def independence_test(group, blocks: int = INDEPENDENCE_BLOCKS) -> tuple[float, float]:
    """Block chi-square over ``blocks`` equal slices, both symbols per block."""
    bits = _as_array(group)
    if bits.size == 0 or bits.size % blocks:
        raise InvalidParameterError(f"group length {bits.size} not divisible into {blocks} blocks")
    block_len = bits.size // blocks
    expected = block_len / 2
    ones = bits.reshape(blocks, block_len).sum(axis=1, dtype=np.int64)
    zeros = block_len - ones
    chi2 = float(np.sum((ones - expected) ** 2 + (zeros - expected) ** 2) / expected)
    return chi2, chi2_survival(chi2, INDEPENDENCE_DF)


def gf_test(group) -> tuple[float, float]:
    """Chi-square of 4-bit pattern counts over non-overlapping nibbles."""
    bits = _as_array(group)
    if bits.size == 0 or bits.size % GF_WORD_BITS:
        raise InvalidParameterError(f"group length {bits.size} not divisible by {GF_WORD_BITS}")
    words = bits.reshape(-1, GF_WORD_BITS).astype(np.int64) @ (1 << np.arange(GF_WORD_BITS - 1, -1, -1))
    counts = np.bincount(words, minlength=1 << GF_WORD_BITS)
    expected = words.size / (1 << GF_WORD_BITS)
    chi2 = float(np.sum((counts - expected) ** 2) / expected)
    return chi2, chi2_survival(chi2, GF_DF)


def suffix_array(bits: np.ndarray) -> np.ndarray:
    """Suffix array by prefix doubling; ``O(n log^2 n)`` with vectorized sorts."""
    n = bits.size
    if n == 0:
        return np.empty(0, dtype=np.int64)
    rank = bits.astype(np.int64)
    sa = np.argsort(rank, kind="stable")
    k = 1
    while True:
        nxt = np.full(n, -1, dtype=np.int64)
        if k < n:
            nxt[: n - k] = rank[k:]
        sa = np.lexsort((nxt, rank))
        keys_r, keys_n = rank[sa], nxt[sa]
        changed = np.empty(n, dtype=np.int64)
        changed[0] = 0
        changed[1:] = (keys_r[1:] != keys_r[:-1]) | (keys_n[1:] != keys_n[:-1])
        new_rank = np.empty(n, dtype=np.int64)
        new_rank[sa] = np.cumsum(changed)
        rank = new_rank
        if rank[sa[-1]] == n - 1 or k >= n:
            return sa
        k <<= 1


def lcp_array(bits: np.ndarray, sa: np.ndarray) -> np.ndarray:
    """Kasai: ``lcp[i]`` is the common prefix of suffixes ``sa[i-1]`` and ``sa[i]``."""
    n = bits.size
    seq = bits.tolist()
    sa_list = sa.tolist()
    rank = [0] * n
    for i, s in enumerate(sa_list):
        rank[s] = i
    lcp = [0] * n
    h = 0
    for i in range(n):
        r = rank[i]
        if r == 0:
            h = 0
            continue
        j = sa_list[r - 1]
        while i + h < n and j + h < n and seq[i + h] == seq[j + h]:
            h += 1
        lcp[r] = h
        if h:
            h -= 1
    return np.asarray(lcp, dtype=np.int64)


def lrs_length(group) -> int:
    """Length of the longest substring starting at two distinct positions.

    Occurrences may overlap. Returns 0 when no substring repeats.
    """
    bits = _as_array(group)
    if bits.size < 2:
        raise InvalidParameterError("group must hold at least 2 bits")
    sa = suffix_array(bits)
    return int(lcp_array(bits, sa).max())


def lrs_pvalue(length: int, n: int) -> float:
    """Chance that fair IID bits of length ``n`` repeat some ``length``-bit window.

    Treats the ``C(n - length + 1, 2)`` window pairs as independent
    collisions with probability ``2**-length`` each.
    """
    if not 1 <= length < n:
        raise InvalidParameterError(f"need 1 <= W < n, got W={length}, n={n}")
    pairs = math.comb(n - length + 1, 2)
    return -math.expm1(pairs * math.log1p(-(2.0 ** -length)))
