"""Internal-primitive backends.

The seed wiring hands all randomness to deterministic internal functions
(key generation, encapsulation, signing). A real FIPS 203/204/205 library
can be plugged in by implementing :class:`PqcBackend`. :class:`MockBackend`
stands in for one: each output is a SHAKE-256 digest of the function tag and
its length-prefixed arguments, and every call is logged so tests can check
exactly which seeds reached which function, in which order.

Transcript dump format (JSON)::

    {"backend": "mock", "param_set": "...",
     "calls": [{"function": "mlkem_keygen_internal",
                "args": [["d", "<hex>"], ["z", "<hex>"]],
                "outputs": [["ek", "<hex>"], ["dk", "<hex>"]]}, ...]}
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from typing import Protocol, Sequence


class PqcBackend(Protocol):
    def mlkem_keygen_internal(self, d: bytes, z: bytes) -> tuple[bytes, bytes]: ...

    def mlkem_encaps_internal(self, ek: bytes, m: bytes) -> tuple[bytes, bytes]: ...

    def mldsa_keygen_internal(self, xi: bytes) -> tuple[bytes, bytes]: ...

    def mldsa_sign_internal(self, m_prime: bytes, sk: bytes, rnd: bytes) -> bytes: ...

    def slh_keygen_internal(self, sk_seed: bytes, sk_prf: bytes, pk_seed: bytes) -> tuple[bytes, bytes]: ...

    def slh_sign_internal(self, m_prime: bytes, sk: bytes, addrnd: bytes) -> bytes: ...


@dataclass(frozen=True)
class Call:
    function: str
    args: tuple[tuple[str, bytes], ...]
    outputs: tuple[tuple[str, bytes], ...]

    def to_dict(self) -> dict:
        return {
            "function": self.function,
            "args": [[k, v.hex()] for k, v in self.args],
            "outputs": [[k, v.hex()] for k, v in self.outputs],
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "Call":
        return cls(
            doc["function"],
            tuple((k, bytes.fromhex(v)) for k, v in doc["args"]),
            tuple((k, bytes.fromhex(v)) for k, v in doc["outputs"]),
        )


def transcript_digest(function: str, args: Sequence[tuple[str, bytes]], output: str, size: int = 32) -> bytes:
    h = hashlib.shake_256()
    for part in (b"mock-pqc", function.encode(), output.encode()):
        h.update(len(part).to_bytes(4, "big") + part)
    for name, value in args:
        h.update(len(name).to_bytes(4, "big") + name.encode())
        h.update(len(value).to_bytes(8, "big") + value)
    return h.digest(size)


class MockBackend:
    """Deterministic digest-based stand-in for the internal algorithms."""

    def __init__(self, param_set: str = ""):
        self.param_set = param_set
        self.calls: list[Call] = []

    def _call(self, function: str, args: Sequence[tuple[str, bytes]], outputs: Sequence[str]):
        tagged = [(name, bytes(value)) for name, value in args]
        tag = f"{self.param_set}/{function}" if self.param_set else function
        results = tuple((o, transcript_digest(tag, tagged, o)) for o in outputs)
        self.calls.append(Call(function, tuple(tagged), results))
        values = tuple(v for _, v in results)
        return values if len(values) > 1 else values[0]

    def mlkem_keygen_internal(self, d, z):
        return self._call("mlkem_keygen_internal", [("d", d), ("z", z)], ["ek", "dk"])

    def mlkem_encaps_internal(self, ek, m):
        return self._call("mlkem_encaps_internal", [("ek", ek), ("m", m)], ["K", "c"])

    def mldsa_keygen_internal(self, xi):
        return self._call("mldsa_keygen_internal", [("xi", xi)], ["pk", "sk"])

    def mldsa_sign_internal(self, m_prime, sk, rnd):
        return self._call("mldsa_sign_internal", [("M'", m_prime), ("sk", sk), ("rnd", rnd)], ["sig"])

    def slh_keygen_internal(self, sk_seed, sk_prf, pk_seed):
        return self._call(
            "slh_keygen_internal",
            [("SK.seed", sk_seed), ("SK.prf", sk_prf), ("PK.seed", pk_seed)],
            ["SK", "PK"],
        )

    def slh_sign_internal(self, m_prime, sk, addrnd):
        return self._call("slh_sign_internal", [("M'", m_prime), ("SK", sk), ("addrnd", addrnd)], ["SIG"])

    def transcript(self) -> dict:
        return {"backend": "mock", "param_set": self.param_set, "calls": [c.to_dict() for c in self.calls]}

    def dump_transcript(self, indent: int | None = 2) -> str:
        return json.dumps(self.transcript(), indent=indent)

    @staticmethod
    def load_transcript(text: str) -> list[Call]:
        return [Call.from_dict(c) for c in json.loads(text)["calls"]]


def mock_backend(param_set: str = "") -> MockBackend:
    return MockBackend(param_set)
