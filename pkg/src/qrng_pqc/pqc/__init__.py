"""QRNG-fed seed wiring for ML-KEM, ML-DSA and SLH-DSA over a pluggable backend."""

from .backend import Call, MockBackend, PqcBackend, mock_backend
from .flows import (
    PREHASHES,
    SINGLE_CALL,
    THREE_CALLS,
    SignRequest,
    hash_slh_sign,
    mldsa_keygen,
    mldsa_sign,
    mlkem_encaps,
    mlkem_keygen,
    prehash_message,
    slh_keygen,
    slh_sign,
)
from .params import MLDSA_SETS, MLKEM_SETS, SLH_PARAM_SETS, SlhParamSet, canonical_algorithm, slh_params

__all__ = [
    "Call",
    "MLDSA_SETS",
    "MLKEM_SETS",
    "MockBackend",
    "PREHASHES",
    "PqcBackend",
    "SINGLE_CALL",
    "SLH_PARAM_SETS",
    "SignRequest",
    "SlhParamSet",
    "THREE_CALLS",
    "canonical_algorithm",
    "hash_slh_sign",
    "mldsa_keygen",
    "mldsa_sign",
    "mlkem_encaps",
    "mlkem_keygen",
    "mock_backend",
    "prehash_message",
    "slh_keygen",
    "slh_params",
    "slh_sign",
]
