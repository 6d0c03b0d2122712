"""Entropy sources: the QRNG simulator, a host PRNG baseline, and test doubles.

Every source serves ``request(bit_count)`` with exactly that many bits or
raises :class:`EntropyError`. Served bits are counted and each successful
draw is logged with an optional role tag, so callers can audit how much
randomness a flow consumed and in what order.

A source is a stateful stream. Give each concurrent flow its own source.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .bits import BitString
from .errors import EntropyError, InvalidParameterError
from .qsim import QrngConfig, generate_bits


@dataclass(frozen=True)
class Draw:
    role: Optional[str]
    bits: int


class EntropySource:
    """Base class. Subclasses implement :meth:`_produce`."""

    label = "entropy-source"

    def __init__(self):
        self.bits_served = 0
        self.draws: list[Draw] = []

    def _produce(self, bit_count: int) -> BitString:
        raise NotImplementedError

    def request(self, bit_count: int, role: Optional[str] = None) -> BitString:
        if bit_count < 1:
            raise InvalidParameterError(f"bit_count must be >= 1, got {bit_count}")
        bits = self._produce(bit_count)
        if bits is None or len(bits) != bit_count:
            raise EntropyError(f"{self.label}: short read for {bit_count} bits")
        self.bits_served += bit_count
        self.draws.append(Draw(role, bit_count))
        return bits

    @property
    def roles(self) -> list[Optional[str]]:
        return [d.role for d in self.draws]


class QrngSource(EntropySource):
    """One uninterrupted session of the simulated QRNG circuit."""

    def __init__(self, config: QrngConfig, sampler: Optional[np.random.Generator] = None):
        super().__init__()
        self.config = config
        self.label = f"qrng-{config.recipe.name}-c{config.num_qubits}"
        self._sampler = sampler if sampler is not None else config.make_sampler()

    def _produce(self, bit_count):
        return generate_bits(self.config, bit_count, sampler=self._sampler)


class PrngSource(EntropySource):
    """Host pseudo-random baseline (Mersenne Twister, seedable)."""

    label = "host-prng"

    def __init__(self, seed: Optional[int] = None):
        super().__init__()
        self._rng = random.Random(seed)

    def _produce(self, bit_count):
        value = self._rng.getrandbits(bit_count)
        return BitString(np.array([(value >> i) & 1 for i in range(bit_count)], dtype=np.uint8))


class StreamSource(EntropySource):
    """Serves a fixed bit stream front to back; fails once it runs dry."""

    label = "stream"

    def __init__(self, stream: BitString):
        super().__init__()
        self._stream = stream
        self._pos = 0

    def _produce(self, bit_count):
        if self._pos + bit_count > len(self._stream):
            raise EntropyError(f"stream exhausted at bit {self._pos}")
        out = self._stream[self._pos:self._pos + bit_count]
        self._pos += bit_count
        return out


class ConstantSource(EntropySource):
    label = "constant"

    def __init__(self, value: int = 0):
        super().__init__()
        self.value = value

    def _produce(self, bit_count):
        return BitString(np.full(bit_count, self.value, dtype=np.uint8))


class FailingSource(EntropySource):
    """Wraps ``inner`` and fails on the ``fail_at``-th request (0-based).

    ``mode="raise"`` raises :class:`EntropyError`; ``mode="null"`` makes the
    inner read come back empty, the way a driver returning NULL would.
    """

    def __init__(self, inner: EntropySource, fail_at: int = 0, mode: str = "raise"):
        super().__init__()
        if mode not in ("raise", "null"):
            raise InvalidParameterError(f"unknown failure mode {mode!r}")
        self.inner = inner
        self.fail_at = fail_at
        self.mode = mode
        self.label = f"failing({inner.label})"
        self._requests = 0

    def _produce(self, bit_count):
        index = self._requests
        self._requests += 1
        if index == self.fail_at:
            if self.mode == "null":
                return None
            raise EntropyError(f"forced failure on request {index}")
        return self.inner.request(bit_count)


SourceFactory = Callable[[int], EntropySource]


def qrng_restart_factory(config: QrngConfig) -> SourceFactory:
    """Factory of independent QRNG sessions; session ``i`` gets its own stream.

    Streams derive from ``config.sampler_seed`` through numpy ``SeedSequence``
    spawn keys, so session ``i`` is the same whatever order sessions run in.
    """
    root = np.random.SeedSequence(config.sampler_seed)

    def make(index: int) -> QrngSource:
        child = np.random.SeedSequence(root.entropy, spawn_key=(index,))
        return QrngSource(config, np.random.default_rng(child))

    return make
