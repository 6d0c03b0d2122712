"""Wall-clock benchmark of bit generation over (recipe, length, qubit count)."""

from __future__ import annotations

import csv
import io
import time
from dataclasses import asdict, dataclass, field

import numpy as np

from .errors import InvalidParameterError
from .qsim import DEFAULT_RECIPES, GateRecipe, QrngConfig, generate_bits


@dataclass
class BenchConfig:
    recipes: tuple[GateRecipe, ...] = DEFAULT_RECIPES
    lengths: tuple[int, ...] = (256,)
    qubit_counts: tuple[int, ...] = (1, 2, 4, 8)
    repetitions: int = 1000
    seed: int = 0

    def __post_init__(self):
        if self.repetitions < 1:
            raise InvalidParameterError("repetitions must be >= 1")
        if not self.recipes or not self.lengths or not self.qubit_counts:
            raise InvalidParameterError("benchmark grid must be non-empty")
        if any(c < 1 for c in self.qubit_counts) or any(n < 1 for n in self.lengths):
            raise InvalidParameterError("lengths and qubit counts must be >= 1")


@dataclass
class BenchCell:
    recipe: str
    length: int
    qubits: int
    samples_ns: list[int]
    median_ns: float
    q1_ns: float
    q3_ns: float
    min_ns: int
    max_ns: int

    @classmethod
    def from_samples(cls, recipe: str, length: int, qubits: int, samples: list[int]) -> "BenchCell":
        q1, med, q3 = np.percentile(samples, [25, 50, 75])
        return cls(recipe, length, qubits, list(samples), float(med), float(q1), float(q3), min(samples), max(samples))


@dataclass
class BenchReport:
    repetitions: int
    cells: list[BenchCell] = field(default_factory=list)

    def cell(self, recipe: str, length: int, qubits: int) -> BenchCell:
        for c in self.cells:
            if (c.recipe, c.length, c.qubits) == (recipe, length, qubits):
                return c
        raise KeyError((recipe, length, qubits))

    def trends(self) -> dict[str, bool]:
        """``"<recipe>@<L>"`` -> whether the median falls strictly as qubits grow."""
        out = {}
        for recipe in dict.fromkeys(c.recipe for c in self.cells):
            for length in sorted({c.length for c in self.cells if c.recipe == recipe}):
                row = sorted((c for c in self.cells if (c.recipe, c.length) == (recipe, length)), key=lambda c: c.qubits)
                medians = [c.median_ns for c in row]
                out[f"{recipe}@{length}"] = all(a > b for a, b in zip(medians, medians[1:]))
        return out

    def to_dict(self) -> dict:
        doc = asdict(self)
        doc["trends"] = self.trends()
        return doc

    @classmethod
    def from_dict(cls, doc: dict) -> "BenchReport":
        return cls(doc["repetitions"], [BenchCell(**c) for c in doc["cells"]])

    def to_csv(self) -> str:
        """Median milliseconds, one row per recipe, one column per (L, c)."""
        keys = sorted({(c.length, c.qubits) for c in self.cells})
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["qrng"] + [f"({n}, {q})" for n, q in keys])
        for recipe in dict.fromkeys(c.recipe for c in self.cells):
            row = [recipe]
            for n, q in keys:
                try:
                    row.append(f"{self.cell(recipe, n, q).median_ns / 1e6:.3f}")
                except KeyError:
                    row.append("")
            writer.writerow(row)
        return buf.getvalue()

    def samples_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["qrng", "length", "qubits", "rep", "ns"])
        for c in self.cells:
            for i, ns in enumerate(c.samples_ns):
                writer.writerow([c.recipe, c.length, c.qubits, i, ns])
        return buf.getvalue()


def run_bench(config: BenchConfig) -> BenchReport:
    """Time ``generate_bits`` for every grid cell.

    Repetitions are interleaved across cells (rep 0 of every cell, then
    rep 1, ...) so slow drifts in machine load hit all cells alike. One
    untimed warm-up call per cell precedes the measurements.
    """
    grid = [(r, n, c) for r in config.recipes for n in config.lengths for c in config.qubit_counts]
    for r, n, c in grid:
        generate_bits(QrngConfig(r, c, config.seed), n)
    samples: dict[tuple, list[int]] = {key: [] for key in grid}
    for rep in range(config.repetitions):
        for key in grid:
            r, n, c = key
            cfg = QrngConfig(r, c, config.seed + rep)
            t0 = time.perf_counter_ns()
            generate_bits(cfg, n)
            samples[key].append(time.perf_counter_ns() - t0)
    return BenchReport(
        config.repetitions,
        [BenchCell.from_samples(r.name, n, c, samples[(r, n, c)]) for r, n, c in grid],
    )
