"""QRNG seed wiring for ML-KEM, ML-DSA and SLH-DSA.

Each flow draws its seeds from an :class:`EntropySource` in a fixed order,
aborts with ``None`` (the failure value) as soon as a draw fails or comes
back empty, and only then hands the seeds to the backend's internal
function. Seed bits become bytes least-significant-bit first, matching the
bit-file layout.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from typing import Optional

from ..errors import EntropyError, InvalidParameterError
from ..sources import EntropySource
from .backend import PqcBackend
from .params import MLDSA_SEED_BITS, MLKEM_SEED_BITS, SlhParamSet

MAX_CTX_BYTES = 255

THREE_CALLS = "three-calls"
SINGLE_CALL = "single-call-split"
KEYGEN_MODES = (THREE_CALLS, SINGLE_CALL)


@dataclass(frozen=True)
class PreHash:
    name: str
    oid: bytes  # DER encoding, tag and length included

    def digest(self, message: bytes) -> bytes:
        if self.name == "SHA-256":
            return hashlib.sha256(message).digest()
        if self.name == "SHA-512":
            return hashlib.sha512(message).digest()
        if self.name == "SHAKE128":
            return hashlib.shake_128(message).digest(32)
        return hashlib.shake_256(message).digest(64)


_NIST_HASH_ARC = bytes.fromhex("06096086480165030402")

PREHASHES = {
    ph.name: ph
    for ph in (
        PreHash("SHA-256", _NIST_HASH_ARC + b"\x01"),
        PreHash("SHA-512", _NIST_HASH_ARC + b"\x03"),
        PreHash("SHAKE128", _NIST_HASH_ARC + b"\x0b"),
        PreHash("SHAKE256", _NIST_HASH_ARC + b"\x0c"),
    )
}


def prehash(name: str) -> PreHash:
    key = name.upper().replace("_", "-")
    key = {"SHA256": "SHA-256", "SHA512": "SHA-512", "SHAKE-128": "SHAKE128", "SHAKE-256": "SHAKE256"}.get(key, key)
    try:
        return PREHASHES[key]
    except KeyError:
        raise InvalidParameterError(f"unsupported pre-hash function {name!r}") from None


@dataclass(frozen=True)
class SignRequest:
    message: bytes
    ctx: bytes = b""
    prehash: Optional[str] = None


def _draw(source: EntropySource, bits: int, role: str) -> Optional[bytes]:
    try:
        out = source.request(bits, role=role)
    except EntropyError:
        return None
    return out.to_bytes()


def _pure_message(request: SignRequest) -> bytes:
    return bytes([0, len(request.ctx)]) + request.ctx + request.message


def prehash_message(request: SignRequest) -> bytes:
    """``0x01 || len(ctx) || ctx || OID || PH(M)``."""
    if request.prehash is None:
        raise InvalidParameterError("pre-hash signing needs a pre-hash function")
    ph = prehash(request.prehash)
    return bytes([1, len(request.ctx)]) + request.ctx + ph.oid + ph.digest(request.message)


def mlkem_keygen(source: EntropySource, backend: PqcBackend):
    """Returns ``(ek, dk)``, or ``None`` if either seed draw fails."""
    d = _draw(source, MLKEM_SEED_BITS, "d")
    if d is None:
        return None
    z = _draw(source, MLKEM_SEED_BITS, "z")
    if z is None:
        return None
    return backend.mlkem_keygen_internal(d, z)


def mlkem_encaps(source: EntropySource, backend: PqcBackend, ek: bytes):
    """Returns ``(K, c)``, or ``None`` if the draw of ``m`` fails."""
    m = _draw(source, MLKEM_SEED_BITS, "m")
    if m is None:
        return None
    return backend.mlkem_encaps_internal(ek, m)


def mldsa_keygen(source: EntropySource, backend: PqcBackend):
    xi = _draw(source, MLDSA_SEED_BITS, "xi")
    if xi is None:
        return None
    return backend.mldsa_keygen_internal(xi)


def mldsa_sign(source: EntropySource, backend: PqcBackend, request: SignRequest, sk: bytes):
    """Pure ML-DSA signing; the context is checked before any randomness is drawn."""
    if len(request.ctx) > MAX_CTX_BYTES:
        return None
    rnd = _draw(source, MLDSA_SEED_BITS, "rnd")
    if rnd is None:
        return None
    return backend.mldsa_sign_internal(_pure_message(request), sk, rnd)


def slh_keygen(source: EntropySource, backend: PqcBackend, params: SlhParamSet, mode: str = THREE_CALLS):
    """SLH-DSA key generation from three ``8n``-bit seeds.

    In ``single-call-split`` mode one ``24n``-bit draw is cut into
    SK.seed, SK.prf and PK.seed, in that order.
    """
    if mode not in KEYGEN_MODES:
        raise InvalidParameterError(f"unknown keygen mode {mode!r}")
    size = params.seed_bits
    if mode == SINGLE_CALL:
        try:
            blob = source.request(3 * size, role="SK.seed||SK.prf||PK.seed")
        except EntropyError:
            return None
        seeds = [blob[i * size:(i + 1) * size].to_bytes() for i in range(3)]
    else:
        seeds = []
        for role in ("SK.seed", "SK.prf", "PK.seed"):
            seed = _draw(source, size, role)
            if seed is None:
                return None
            seeds.append(seed)
    return backend.slh_keygen_internal(*seeds)


def slh_sign(source: EntropySource, backend: PqcBackend, request: SignRequest, sk: bytes, params: SlhParamSet):
    if len(request.ctx) > MAX_CTX_BYTES:
        return None
    addrnd = _draw(source, params.seed_bits, "addrnd")
    if addrnd is None:
        return None
    return backend.slh_sign_internal(_pure_message(request), sk, addrnd)


def hash_slh_sign(source: EntropySource, backend: PqcBackend, request: SignRequest, sk: bytes, params: SlhParamSet):
    """Pre-hash SLH-DSA signing; an unknown pre-hash raises before any draw."""
    if request.prehash is None:
        raise InvalidParameterError("hash_slh_sign needs request.prehash")
    prehash(request.prehash)
    if len(request.ctx) > MAX_CTX_BYTES:
        return None
    addrnd = _draw(source, params.seed_bits, "addrnd")
    if addrnd is None:
        return None
    return backend.slh_sign_internal(prehash_message(request), sk, addrnd)
