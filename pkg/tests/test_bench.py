import numpy as np
import pytest

from qrng_pqc.bench import BenchConfig, BenchReport, run_bench
from qrng_pqc.errors import InvalidParameterError
from qrng_pqc.qsim import GateRecipe, RecipeKind


def test_single_cell():
    report = run_bench(BenchConfig(recipes=(GateRecipe(RecipeKind.H),), qubit_counts=(4,), repetitions=7))
    (cell,) = report.cells
    assert len(cell.samples_ns) == 7
    assert cell.median_ns == float(np.median(cell.samples_ns))
    assert cell.min_ns <= cell.q1_ns <= cell.median_ns <= cell.q3_ns <= cell.max_ns


def test_round_trip():
    report = run_bench(BenchConfig(recipes=(GateRecipe(RecipeKind.SX),), qubit_counts=(1, 2), repetitions=3))
    doc = report.to_dict()
    assert BenchReport.from_dict(doc) == report
    assert set(doc["trends"]) == {"sx@256"}


def test_trend_detection():
    report = run_bench(BenchConfig(recipes=(GateRecipe(RecipeKind.H),), qubit_counts=(1, 8), repetitions=3))
    report.cells[0].median_ns, report.cells[1].median_ns = 1.0, 2.0
    assert report.trends() == {"h@256": False}


@pytest.mark.parametrize("kwargs", [{"repetitions": 0}, {"qubit_counts": (0,)}, {"lengths": ()}])
def test_invalid_config(kwargs):
    with pytest.raises(InvalidParameterError):
        BenchConfig(**kwargs)
