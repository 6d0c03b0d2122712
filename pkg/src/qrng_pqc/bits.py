"""Bit strings and the on-disk bit-file format.

A bit file is two files side by side:

* ``<name>``      raw payload, bits packed 8 per byte, least significant bit
  first (bit ``i`` of the string lives in byte ``i // 8`` at position
  ``i % 8``). The final byte is zero-padded.
* ``<name>.hdr``  20-byte little-endian header: magic ``b"QRNGBITS"``,
  ``uint16`` version (1), ``uint16`` flags (0), ``uint64`` bit count.

A payload without a header is read as ``8 * len(payload)`` bits.
"""

from __future__ import annotations

import struct
from os import PathLike
from pathlib import Path
from typing import Iterable, Union

import numpy as np

from .errors import InvalidParameterError

HEADER_MAGIC = b"QRNGBITS"
HEADER_VERSION = 1
HEADER_STRUCT = struct.Struct("<8sHHQ")
HEADER_SUFFIX = ".hdr"

PathType = Union[str, "PathLike[str]"]


class BitString:
    """An immutable sequence of bits backed by a ``uint8`` array of 0/1."""

    __slots__ = ("_bits",)

    def __init__(self, bits: Iterable[int] | np.ndarray = ()):
        if isinstance(bits, (str, bytes)):
            raise TypeError("use BitString.from_str or BitString.from_bytes")
        arr = np.array(bits, dtype=np.uint8)
        if arr.ndim != 1:
            arr = arr.reshape(-1)
        if arr.size and arr.max() > 1:
            raise InvalidParameterError("bit values must be 0 or 1")
        arr.flags.writeable = False
        self._bits = arr

    @classmethod
    def from_str(cls, text: str) -> "BitString":
        if set(text) - {"0", "1"}:
            raise InvalidParameterError(f"not a bit string: {text!r}")
        return cls(np.frombuffer(text.encode("ascii"), dtype=np.uint8) - ord("0"))

    @classmethod
    def from_bytes(cls, data: bytes, length: int | None = None) -> "BitString":
        bits = np.unpackbits(np.frombuffer(data, dtype=np.uint8), bitorder="little")
        if length is None:
            return cls(bits)
        if length > bits.size:
            raise InvalidParameterError(f"{length} bits requested from {bits.size}-bit buffer")
        return cls(bits[:length])

    @classmethod
    def zeros(cls, length: int) -> "BitString":
        return cls(np.zeros(length, dtype=np.uint8))

    @property
    def array(self) -> np.ndarray:
        """Read-only view of the bits as a ``uint8`` array."""
        return self._bits

    def to_bytes(self) -> bytes:
        return np.packbits(self._bits, bitorder="little").tobytes()

    def count_ones(self) -> int:
        return int(np.count_nonzero(self._bits))

    def concat(self, other: "BitString") -> "BitString":
        return BitString(np.concatenate([self._bits, other._bits]))

    def __len__(self) -> int:
        return int(self._bits.size)

    def __getitem__(self, key):
        if isinstance(key, slice):
            return BitString(self._bits[key])
        return int(self._bits[key])

    def __iter__(self):
        return (int(b) for b in self._bits)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BitString):
            return NotImplemented
        return np.array_equal(self._bits, other._bits)

    def __hash__(self) -> int:
        return hash((len(self), self.to_bytes()))

    def __str__(self) -> str:
        return (self._bits + ord("0")).tobytes().decode("ascii")

    def __repr__(self) -> str:
        text = str(self)
        if len(text) > 40:
            text = text[:37] + "..."
        return f"BitString({text!r}, length={len(self)})"


def header_path(path: PathType) -> Path:
    p = Path(path)
    return p.with_name(p.name + HEADER_SUFFIX)


def write_bits(path: PathType, bits: BitString) -> None:
    """Write ``bits`` as a payload file plus its ``.hdr`` sidecar."""
    p = Path(path)
    p.write_bytes(bits.to_bytes())
    header_path(p).write_bytes(HEADER_STRUCT.pack(HEADER_MAGIC, HEADER_VERSION, 0, len(bits)))


def read_bits(path: PathType) -> BitString:
    p = Path(path)
    payload = p.read_bytes()
    hdr = header_path(p)
    if not hdr.exists():
        return BitString.from_bytes(payload)
    raw = hdr.read_bytes()
    if len(raw) != HEADER_STRUCT.size:
        raise InvalidParameterError(f"{hdr}: header must be {HEADER_STRUCT.size} bytes")
    magic, version, _flags, count = HEADER_STRUCT.unpack(raw)
    if magic != HEADER_MAGIC:
        raise InvalidParameterError(f"{hdr}: bad magic {magic!r}")
    if version != HEADER_VERSION:
        raise InvalidParameterError(f"{hdr}: unsupported version {version}")
    if (count + 7) // 8 != len(payload):
        raise InvalidParameterError(f"{p}: header says {count} bits, payload holds {len(payload)} bytes")
    return BitString.from_bytes(payload, count)
