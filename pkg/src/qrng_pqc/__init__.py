"""Simulated single-qubit QRNG, SP 800-90B style validation, and PQC seed wiring."""

__version__ = "0.1.0"

from .bits import BitString, read_bits, write_bits
from .qsim import DEFAULT_RECIPES, GateRecipe, QrngConfig, QubitState, RecipeKind, generate_bits
from .sources import EntropySource, PrngSource, QrngSource

__all__ = [
    "BitString",
    "DEFAULT_RECIPES",
    "EntropySource",
    "GateRecipe",
    "PrngSource",
    "QrngConfig",
    "QrngSource",
    "QubitState",
    "RecipeKind",
    "generate_bits",
    "read_bits",
    "write_bits",
]
