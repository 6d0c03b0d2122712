"""Restart/sequential datasets and the MCV, independence, goodness-of-fit and LRS tests."""

from .battery import (
    BatteryReport,
    CheckSummary,
    GroupStats,
    RestartMatrix,
    SanityResult,
    collect_restart,
    collect_sequential,
    extract_groups,
    group_stats,
    run_battery,
    sanity_test,
    summarize,
)
from .iid import (
    IID_THRESHOLD,
    SANITY_THRESHOLD,
    binary_min_entropy,
    binomial_mcv_pvalue,
    gf_test,
    independence_test,
    lrs_length,
    lrs_pvalue,
    mcv_count,
)
from .special import chi2_survival

__all__ = [
    "BatteryReport",
    "CheckSummary",
    "GroupStats",
    "IID_THRESHOLD",
    "RestartMatrix",
    "SANITY_THRESHOLD",
    "SanityResult",
    "binary_min_entropy",
    "binomial_mcv_pvalue",
    "chi2_survival",
    "collect_restart",
    "collect_sequential",
    "extract_groups",
    "gf_test",
    "group_stats",
    "independence_test",
    "lrs_length",
    "lrs_pvalue",
    "mcv_count",
    "run_battery",
    "sanity_test",
    "summarize",
]
