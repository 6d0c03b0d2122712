"""Dataset collection and the four-test validation battery."""

from __future__ import annotations

import statistics
from dataclasses import asdict, dataclass, field
from typing import Optional

import numpy as np

from ..bits import BitString
from ..errors import EntropyError, InvalidParameterError, PartialDataError
from ..sources import EntropySource, SourceFactory
from . import iid
from .special import binomial_upper_tail

DEFAULT_RESTARTS = 1000
DEFAULT_BITS_PER_RESTART = 1000
DEFAULT_SEQUENTIAL_BITS = 1_000_000

TESTS = ("independence", "gf", "lrs")


class RestartMatrix:
    """Bits from repeated fresh-start sessions, one session per row."""

    def __init__(self, bits: np.ndarray):
        bits = np.asarray(bits, dtype=np.uint8)
        if bits.ndim != 2 or 0 in bits.shape:
            raise InvalidParameterError(f"restart matrix must be a non-empty 2-D array, got shape {bits.shape}")
        if bits.max() > 1:
            raise InvalidParameterError("restart matrix cells must be 0 or 1")
        bits.flags.writeable = False
        self.bits = bits

    @classmethod
    def from_bitstring(cls, bits: BitString, rows: int, cols: int) -> "RestartMatrix":
        """Lay a bit string out row-major; the first ``rows * cols`` bits are used."""
        if len(bits) < rows * cols:
            raise InvalidParameterError(f"{len(bits)} bits cannot fill a {rows}x{cols} matrix")
        return cls(bits.array[: rows * cols].reshape(rows, cols))

    @property
    def rows(self) -> int:
        return self.bits.shape[0]

    @property
    def cols(self) -> int:
        return self.bits.shape[1]

    def to_bitstring(self) -> BitString:
        return BitString(self.bits.reshape(-1))


def collect_sequential(source: EntropySource, n: int = DEFAULT_SEQUENTIAL_BITS) -> BitString:
    """Draw ``n`` bits from a single session of ``source``."""
    if n < 1:
        raise InvalidParameterError(f"n must be >= 1, got {n}")
    return source.request(n, role="sequential")


def collect_restart(
    factory: SourceFactory,
    restarts: int = DEFAULT_RESTARTS,
    bits_per_restart: int = DEFAULT_BITS_PER_RESTART,
) -> RestartMatrix:
    if restarts < 1 or bits_per_restart < 1:
        raise InvalidParameterError("restarts and bits_per_restart must be >= 1")
    out = np.empty((restarts, bits_per_restart), dtype=np.uint8)
    for i in range(restarts):
        try:
            out[i] = factory(i).request(bits_per_restart, role=f"restart-{i}").array
        except EntropyError as exc:
            raise PartialDataError(f"restart {i} failed: {exc}", completed=i) from exc
    return RestartMatrix(out)


def extract_groups(matrix: RestartMatrix) -> list[BitString]:
    """All rows, then all columns."""
    rows = [BitString(r) for r in matrix.bits]
    cols = [BitString(c) for c in matrix.bits.T]
    return rows + cols


@dataclass
class GroupStats:
    axis: str
    index: int
    length: int
    mcv_count: int
    p_mcv: float
    chi2_independence: float
    p_independence: float
    chi2_gf: float
    p_gf: float
    lrs_length: int
    p_lrs: float


def group_stats(group: BitString, axis: str, index: int) -> GroupStats:
    n = len(group)
    mcv = iid.mcv_count(group)
    chi_ind, p_ind = iid.independence_test(group)
    chi_gf, p_gf = iid.gf_test(group)
    lrs = iid.lrs_length(group)
    p_lrs = iid.lrs_pvalue(lrs, n) if lrs >= 1 else 1.0
    return GroupStats(
        axis=axis,
        index=index,
        length=n,
        mcv_count=mcv,
        p_mcv=iid.binomial_mcv_pvalue(mcv, n),
        chi2_independence=chi_ind,
        p_independence=p_ind,
        chi2_gf=chi_gf,
        p_gf=p_gf,
        lrs_length=lrs,
        p_lrs=p_lrs,
    )


@dataclass
class SanityResult:
    global_mcv: int
    min_entropy: float
    p_value: float
    passed: bool


def sanity_test(matrix: RestartMatrix, threshold: float = iid.SANITY_THRESHOLD) -> SanityResult:
    """Worst-group MCV over rows and columns against the binomial threshold."""
    counts = []
    for g in extract_groups(matrix):
        mcv = iid.mcv_count(g)
        counts.append((mcv, len(g), iid.binomial_mcv_pvalue(mcv, len(g))))
    return _sanity_from_counts(counts, threshold)


def _sanity_from_counts(counts, threshold) -> SanityResult:
    # rows and columns differ in length for non-square matrices, so the worst group is ranked by p-value
    mcv, n, p = min(counts, key=lambda c: (c[2], -c[0]))
    global_mcv = max(c[0] for c in counts)
    return SanityResult(global_mcv, iid.binary_min_entropy(mcv, n), p, p >= threshold)


@dataclass
class CheckSummary:
    median_p: float
    min_p: float
    failures: int
    groups: int
    threshold: float
    strict_pass: bool
    passed: bool


def summarize(pvalues, threshold: float = iid.IID_THRESHOLD) -> CheckSummary:
    """Median, minimum and sub-threshold count of per-group p-values.

    ``strict_pass`` asks every group to clear the threshold. ``passed``
    asks only that the failure count is plausible for an ideal source,
    i.e. ``P(Binomial(groups, threshold) >= failures) >= threshold``.
    """
    groups = len(pvalues)
    failures = sum(p < threshold for p in pvalues)
    plausible = binomial_upper_tail(failures, groups, threshold) >= threshold
    return CheckSummary(
        median_p=float(statistics.median(pvalues)),
        min_p=float(min(pvalues)),
        failures=int(failures),
        groups=groups,
        threshold=threshold,
        strict_pass=failures == 0,
        passed=bool(plausible),
    )


@dataclass
class BatteryReport:
    rows: int
    cols: int
    sanity: SanityResult
    independence: CheckSummary
    gf: CheckSummary
    lrs: CheckSummary
    groups: list[GroupStats] = field(default_factory=list)
    label: Optional[str] = None
    mode: Optional[str] = None

    @property
    def global_mcv(self) -> int:
        return self.sanity.global_mcv

    @property
    def min_entropy(self) -> float:
        return self.sanity.min_entropy

    @property
    def p_sanity(self) -> float:
        return self.sanity.p_value

    @property
    def passed(self) -> bool:
        return self.sanity.passed and all(getattr(self, t).passed for t in TESTS)

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, doc: dict) -> "BatteryReport":
        return cls(
            rows=doc["rows"],
            cols=doc["cols"],
            sanity=SanityResult(**doc["sanity"]),
            independence=CheckSummary(**doc["independence"]),
            gf=CheckSummary(**doc["gf"]),
            lrs=CheckSummary(**doc["lrs"]),
            groups=[GroupStats(**g) for g in doc.get("groups", [])],
            label=doc.get("label"),
            mode=doc.get("mode"),
        )


def run_battery(matrix: RestartMatrix, label: Optional[str] = None, mode: Optional[str] = None) -> BatteryReport:
    """Run sanity, independence, goodness-of-fit and LRS on every row and column."""
    stats = [group_stats(BitString(r), "row", i) for i, r in enumerate(matrix.bits)]
    stats += [group_stats(BitString(c), "column", j) for j, c in enumerate(matrix.bits.T)]
    stats.sort(key=lambda s: (s.axis != "row", s.index))
    sanity = _sanity_from_counts([(s.mcv_count, s.length, s.p_mcv) for s in stats], iid.SANITY_THRESHOLD)
    return BatteryReport(
        rows=matrix.rows,
        cols=matrix.cols,
        sanity=sanity,
        independence=summarize([s.p_independence for s in stats]),
        gf=summarize([s.p_gf for s in stats]),
        lrs=summarize([s.p_lrs for s in stats]),
        groups=stats,
        label=label,
        mode=mode,
    )
