"""Parameter sets and seed sizes for ML-KEM, ML-DSA and SLH-DSA."""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import InvalidParameterError

# every ML-KEM and ML-DSA randomness input is 32 bytes regardless of parameter set
MLKEM_SEED_BITS = 256
MLDSA_SEED_BITS = 256

MLKEM_SETS = ("ML-KEM-512", "ML-KEM-768", "ML-KEM-1024")
MLDSA_SETS = ("ML-DSA-44", "ML-DSA-65", "ML-DSA-87")


@dataclass(frozen=True)
class SlhParamSet:
    name: str
    n: int
    security_level: int

    @property
    def seed_bits(self) -> int:
        return 8 * self.n


_SLH_ROWS = ((16, 1, "128"), (24, 3, "192"), (32, 5, "256"))

SLH_PARAM_SETS = {
    ps.name: ps
    for n, level, size in _SLH_ROWS
    for family in ("SHA2", "SHAKE")
    for variant in ("s", "f")
    for ps in [SlhParamSet(f"SLH-DSA-{family}-{size}{variant}", n, level)]
}


def _normalize(name: str) -> str:
    return name.upper().replace("_", "-").replace("SLHDSA", "SLH-DSA").replace("MLKEM", "ML-KEM").replace(
        "MLDSA", "ML-DSA"
    )


def slh_params(name: str) -> SlhParamSet:
    """Look up an SLH-DSA set; ``slhdsa-shake-128f`` and ``SLH-DSA-SHAKE-128f`` both work."""
    key = _normalize(name)
    for ps in SLH_PARAM_SETS.values():
        if ps.name.upper() == key:
            return ps
    raise InvalidParameterError(f"unknown SLH-DSA parameter set {name!r}")


def canonical_algorithm(name: str) -> str:
    """Canonical spelling of any supported parameter-set name."""
    key = _normalize(name)
    for known in MLKEM_SETS + MLDSA_SETS:
        if known == key:
            return known
    return slh_params(name).name
