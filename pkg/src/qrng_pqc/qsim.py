"""Single-qubit statevector simulation for the six superposition recipes.

Every recipe is a 2x2 unitary applied to a fresh ``|0>`` qubit. A QRNG
circuit holds ``c`` such qubits; generating ``L`` bits runs the circuit
``ceil(L / c)`` times and drops the surplus bits of the last pass.

Qubits in a pass never interact, so a pass is simulated as ``c``
independent two-amplitude states rather than one ``2**c`` vector.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass, field
from typing import Optional, Protocol

import numpy as np

from .bits import BitString
from .errors import InvalidParameterError, InvariantError

TOL = 1e-12
HALF_PI = math.pi / 2
_INV_SQRT2 = 1 / math.sqrt(2)


class RecipeKind(enum.Enum):
    H = "h"
    SX = "sx"
    RX = "rx"
    RY = "ry"
    PH = "ph"  # P(theta) followed by H
    U = "u"


@dataclass(frozen=True)
class GateRecipe:
    """A gate recipe and its angles in radians.

    ``theta`` is used by RX, RY, PH and U; ``phi`` and ``lam`` only by U.
    """

    kind: RecipeKind
    theta: float = HALF_PI
    phi: float = HALF_PI
    lam: float = HALF_PI

    @classmethod
    def parse(cls, name: str) -> "GateRecipe":
        try:
            return cls(RecipeKind(name.lower()))
        except ValueError:
            choices = ", ".join(k.value for k in RecipeKind)
            raise InvalidParameterError(f"unknown recipe {name!r} (choose from {choices})") from None

    @property
    def name(self) -> str:
        return self.kind.value

    @property
    def label(self) -> str:
        return _LABELS[self.kind]


_LABELS = {
    RecipeKind.H: "H-Gate",
    RecipeKind.SX: "SX-Gate",
    RecipeKind.RX: "RX-Gate",
    RecipeKind.RY: "RY-Gate",
    RecipeKind.PH: "P-Gate & H-Gate",
    RecipeKind.U: "U-Gate",
}

DEFAULT_RECIPES = tuple(GateRecipe(k) for k in RecipeKind)


@dataclass(frozen=True)
class QubitState:
    """Amplitudes of ``|0>`` and ``|1>``; normalized within ``TOL``."""

    alpha: complex
    beta: complex

    def __post_init__(self):
        a, b = complex(self.alpha), complex(self.beta)
        if not all(math.isfinite(v) for v in (a.real, a.imag, b.real, b.imag)):
            raise InvariantError("qubit amplitudes must be finite")
        norm = abs(a) ** 2 + abs(b) ** 2
        if abs(norm - 1.0) > TOL:
            raise InvariantError(f"state not normalized: |alpha|^2 + |beta|^2 = {norm!r}")
        object.__setattr__(self, "alpha", a)
        object.__setattr__(self, "beta", b)

    @classmethod
    def zero(cls) -> "QubitState":
        return cls(1.0, 0.0)

    @classmethod
    def one(cls) -> "QubitState":
        return cls(0.0, 1.0)

    def as_array(self) -> np.ndarray:
        return np.array([self.alpha, self.beta], dtype=np.complex128)


def _rx(theta: float) -> np.ndarray:
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    return np.array([[c, -1j * s], [-1j * s, c]], dtype=np.complex128)


def _ry(theta: float) -> np.ndarray:
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    return np.array([[c, -s], [s, c]], dtype=np.complex128)


def _phase(theta: float) -> np.ndarray:
    return np.array([[1, 0], [0, cmath.exp(1j * theta)]], dtype=np.complex128)


def _u(theta: float, phi: float, lam: float) -> np.ndarray:
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    return np.array(
        [
            [c, -cmath.exp(1j * lam) * s],
            [cmath.exp(1j * phi) * s, cmath.exp(1j * (phi + lam)) * c],
        ],
        dtype=np.complex128,
    )


HADAMARD = _INV_SQRT2 * np.array([[1, 1], [1, -1]], dtype=np.complex128)
SQRT_X = 0.5 * np.array([[1 + 1j, 1 - 1j], [1 - 1j, 1 + 1j]], dtype=np.complex128)


def build_gate(recipe: GateRecipe) -> np.ndarray:
    """Return the 2x2 complex unitary for ``recipe``.

    The PH recipe is the product ``H @ P(theta)``: phase first, then H.
    """
    angles = (recipe.theta, recipe.phi, recipe.lam)
    if not all(math.isfinite(a) for a in angles):
        raise InvalidParameterError(f"non-finite angle in {recipe!r}")
    kind = recipe.kind
    if kind is RecipeKind.H:
        gate = HADAMARD.copy()
    elif kind is RecipeKind.SX:
        gate = SQRT_X.copy()
    elif kind is RecipeKind.RX:
        gate = _rx(recipe.theta)
    elif kind is RecipeKind.RY:
        gate = _ry(recipe.theta)
    elif kind is RecipeKind.PH:
        gate = HADAMARD @ _phase(recipe.theta)
    else:
        gate = _u(*angles)
    gate.flags.writeable = False
    return gate


def is_unitary(gate: np.ndarray, tol: float = TOL) -> bool:
    gate = np.asarray(gate)
    if gate.shape != (2, 2) or not np.all(np.isfinite(gate)):
        return False
    return bool(np.max(np.abs(gate.conj().T @ gate - np.eye(2))) <= tol)


def apply_gate(gate: np.ndarray, state: QubitState) -> QubitState:
    if not is_unitary(gate):
        raise InvariantError("gate is not unitary within tolerance")
    alpha, beta = np.asarray(gate) @ state.as_array()
    return QubitState(complex(alpha), complex(beta))


def outcome_probabilities(state: QubitState) -> tuple[float, float]:
    """Born-rule probabilities ``(p0, p1)``."""
    return abs(state.alpha) ** 2, abs(state.beta) ** 2


class UniformSampler(Protocol):
    """Anything with numpy-``Generator``-style ``random(size=None)``."""

    def random(self, size=None): ...


def measure(state: QubitState, sampler: UniformSampler) -> int:
    """Collapse ``state``: 1 iff the next uniform draw is below ``p1``."""
    _, p1 = outcome_probabilities(state)
    return int(sampler.random() < p1)


def superposition_check(recipe: GateRecipe) -> bool:
    p0, p1 = outcome_probabilities(apply_gate(build_gate(recipe), QubitState.zero()))
    return abs(p0 - 0.5) <= TOL and abs(p1 - 0.5) <= TOL


@dataclass(frozen=True)
class QrngConfig:
    recipe: GateRecipe = field(default_factory=lambda: GateRecipe(RecipeKind.H))
    num_qubits: int = 1
    sampler_seed: Optional[int] = None

    def __post_init__(self):
        if isinstance(self.num_qubits, bool) or not isinstance(self.num_qubits, (int, np.integer)):
            raise InvalidParameterError("num_qubits must be an integer")
        if self.num_qubits < 1:
            raise InvalidParameterError(f"num_qubits must be >= 1, got {self.num_qubits}")

    def make_sampler(self) -> np.random.Generator:
        return np.random.default_rng(self.sampler_seed)


def circuit_passes(length: int, num_qubits: int) -> int:
    """Circuit executions needed for ``length`` bits on ``num_qubits`` qubits."""
    return -(-length // num_qubits)


def generate_bits(
    config: QrngConfig,
    length: int,
    sampler: Optional[UniformSampler] = None,
) -> BitString:
    """Run the ``c``-qubit circuit until ``length`` bits are measured.

    Each pass prepares ``c`` fresh ``|0>`` qubits, applies the recipe gate
    to every one, and measures them left to right. Passing ``sampler``
    continues an existing stream; otherwise a new one is seeded from
    ``config.sampler_seed``.
    """
    if isinstance(length, bool) or not isinstance(length, (int, np.integer)) or length < 1:
        raise InvalidParameterError(f"length must be a positive integer, got {length!r}")
    gate = build_gate(config.recipe)
    if sampler is None:
        sampler = config.make_sampler()
    c = int(config.num_qubits)
    passes = circuit_passes(length, c)
    out = np.empty(passes * c, dtype=np.uint8)
    for k in range(passes):
        register = np.zeros((2, c), dtype=np.complex128)
        register[0] = 1.0
        register = gate @ register
        p1 = register[1].real ** 2 + register[1].imag ** 2
        out[k * c:(k + 1) * c] = sampler.random(c) < p1
    return BitString(out[:length])
