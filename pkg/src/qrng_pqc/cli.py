"""Command-line entry point: ``qrng-pqc {generate,test,bench,pqc-demo}``.

Exit codes: 0 success, 1 usage error, 2 data or validation failure, 3 I/O error.
"""

from __future__ import annotations

import argparse
import json
import statistics
import sys
import time
from pathlib import Path

from . import __version__
from .bench import BenchConfig, run_bench
from .bits import read_bits, write_bits
from .errors import InsufficientDataError, InvalidParameterError, QrngError
from .pqc import (
    MLDSA_SETS,
    MLKEM_SETS,
    SINGLE_CALL,
    THREE_CALLS,
    MockBackend,
    SignRequest,
    canonical_algorithm,
    hash_slh_sign,
    mldsa_keygen,
    mldsa_sign,
    mlkem_encaps,
    mlkem_keygen,
    slh_keygen,
    slh_params,
    slh_sign,
)
from .qsim import DEFAULT_RECIPES, GateRecipe, QrngConfig, circuit_passes, generate_bits
from .sources import PrngSource, QrngSource, qrng_restart_factory
from .sp90b import RestartMatrix, collect_restart, collect_sequential, run_battery
from .sp90b.report import to_csv, to_json

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_IO = 0, 1, 2, 3

RECIPE_CHOICES = [r.name for r in DEFAULT_RECIPES]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _positive(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _seed(text):
    value = int(text, 0)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must fit in 64 bits")
    return value


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    else:
        Path(out).write_text(text)


# ---- generate -------------------------------------------------------------------

def cmd_generate(args) -> int:
    config = QrngConfig(GateRecipe.parse(args.recipe), args.qubits, args.seed)
    bits = generate_bits(config, args.bits)
    write_bits(args.out, bits)
    print(
        f"wrote {len(bits)} bits to {args.out} "
        f"({config.recipe.label}, c={args.qubits}, {circuit_passes(args.bits, args.qubits)} circuit passes)"
    )
    return EXIT_OK


# ---- test -------------------------------------------------------------------------

def _recipes(name: str) -> list[GateRecipe]:
    if name == "all":
        return list(DEFAULT_RECIPES)
    return [GateRecipe.parse(name)]


def _matrix_from_file(args) -> RestartMatrix:
    bits = read_bits(args.input)
    needed = args.restarts * args.bits_per_restart
    if len(bits) < needed:
        raise InsufficientDataError(
            f"{args.input} holds {len(bits)} bits; {args.mode} mode needs {needed} "
            f"({args.restarts} x {args.bits_per_restart})"
        )
    return RestartMatrix.from_bitstring(bits, args.restarts, args.bits_per_restart)


def _matrix_from_generator(args, recipe: GateRecipe) -> RestartMatrix:
    config = QrngConfig(recipe, args.qubits, args.seed)
    if args.mode == "restart":
        return collect_restart(qrng_restart_factory(config), args.restarts, args.bits_per_restart)
    bits = collect_sequential(QrngSource(config), args.restarts * args.bits_per_restart)
    return RestartMatrix.from_bitstring(bits, args.restarts, args.bits_per_restart)


def cmd_test(args) -> int:
    if args.input is not None:
        reports = [run_battery(_matrix_from_file(args), label=Path(args.input).name, mode=args.mode)]
    else:
        reports = [
            run_battery(_matrix_from_generator(args, r), label=r.label, mode=args.mode) for r in _recipes(args.recipe)
        ]
    if args.format == "csv":
        text = to_csv(reports)
    elif len(reports) == 1:
        text = to_json(reports[0])
    else:
        text = json.dumps({"reports": [r.to_dict() for r in reports]}, indent=2)
    _emit(text, args.out)
    for r in reports:
        print(
            f"{r.label}: MCV={r.global_mcv} min-entropy={r.min_entropy:.5f} p={r.p_sanity:.5g} "
            f"sanity={'pass' if r.sanity.passed else 'FAIL'} "
            + " ".join(
                f"{t}: median={getattr(r, t).median_p:.5f} min={getattr(r, t).min_p:.5g} "
                f"below={getattr(r, t).failures}"
                for t in ("independence", "gf", "lrs")
            ),
            file=sys.stderr,
        )
    return EXIT_OK if all(r.passed for r in reports) else EXIT_DATA


# ---- bench ------------------------------------------------------------------------

def cmd_bench(args) -> int:
    names = args.recipe or RECIPE_CHOICES
    config = BenchConfig(
        recipes=tuple(GateRecipe.parse(n) for n in names),
        lengths=tuple(args.bits),
        qubit_counts=tuple(args.qubits),
        repetitions=args.reps,
        seed=args.seed or 0,
    )
    report = run_bench(config)
    if args.format == "csv":
        _emit(report.to_csv(), args.out)
        if args.out is not None:
            Path(args.out + ".samples.csv").write_text(report.samples_csv())
    else:
        _emit(json.dumps(report.to_dict(), indent=2), args.out)
    trends = report.trends()
    for key, ok in trends.items():
        print(f"{key}: median time {'decreases' if ok else 'does NOT decrease'} with qubit count", file=sys.stderr)
    return EXIT_OK if all(trends.values()) else EXIT_DATA


# ---- pqc-demo ---------------------------------------------------------------------

OPERATIONS = ("keygen", "encaps", "sign", "hash-sign")


def _family(algorithm: str) -> str:
    if algorithm in MLKEM_SETS:
        return "mlkem"
    if algorithm in MLDSA_SETS:
        return "mldsa"
    return "slhdsa"


def _check_pair(family: str, operation: str) -> None:
    allowed = {"mlkem": ("keygen", "encaps"), "mldsa": ("keygen", "sign"), "slhdsa": ("keygen", "sign", "hash-sign")}
    if operation not in allowed[family]:
        raise UsageError(f"operation {operation!r} is not defined for {family} (choose from {', '.join(allowed[family])})")


def _setup_key(family: str, algorithm: str, seed: int | None):
    """Key material for encaps/sign, made from a separate PRNG so it is not counted."""
    setup = PrngSource(None if seed is None else seed ^ 0x5EED)
    backend = MockBackend(algorithm)
    if family == "mlkem":
        return mlkem_keygen(setup, backend)[0]
    if family == "mldsa":
        return mldsa_keygen(setup, backend)[1]
    return slh_keygen(setup, backend, slh_params(algorithm))[0]


def _run_operation(args, family, algorithm, source, backend, key):
    request = SignRequest(args.message.encode(), args.ctx.encode(), args.prehash)
    if family == "mlkem":
        return mlkem_keygen(source, backend) if args.operation == "keygen" else mlkem_encaps(source, backend, key)
    if family == "mldsa":
        return mldsa_keygen(source, backend) if args.operation == "keygen" else mldsa_sign(source, backend, request, key)
    params = slh_params(algorithm)
    if args.operation == "keygen":
        return slh_keygen(source, backend, params, args.keygen_mode)
    if args.operation == "sign":
        return slh_sign(source, backend, request, key, params)
    return hash_slh_sign(source, backend, request, key, params)


def _timed(args, family, algorithm, key, make_source):
    times, first = [], None
    for rep in range(args.reps):
        source = make_source(rep)
        backend = MockBackend(algorithm)
        t0 = time.perf_counter_ns()
        result = _run_operation(args, family, algorithm, source, backend, key)
        times.append(time.perf_counter_ns() - t0)
        if first is None:
            first = (source, backend, result)
    return first, statistics.median(times)


def cmd_pqc_demo(args) -> int:
    try:
        algorithm = canonical_algorithm(args.algorithm)
    except InvalidParameterError as exc:
        raise UsageError(str(exc)) from None
    family = _family(algorithm)
    _check_pair(family, args.operation)
    key = _setup_key(family, algorithm, args.seed) if args.operation != "keygen" else None
    recipe = GateRecipe.parse(args.recipe)

    def qrng_source(rep):
        seed = None if args.seed is None else args.seed + rep
        return QrngSource(QrngConfig(recipe, args.qubits, seed))

    (source, backend, result), median_ns = _timed(args, family, algorithm, key, qrng_source)
    doc = {
        "algorithm": algorithm,
        "operation": args.operation,
        "source": source.label,
        "result": "ok" if result is not None else "bottom",
        "bits_consumed": source.bits_served,
        "draws": [{"role": d.role, "bits": d.bits} for d in source.draws],
        "median_wall_ms": median_ns / 1e6,
        "repetitions": args.reps,
        "transcript": backend.transcript(),
    }
    if args.baseline:
        def prng_source(rep):
            return PrngSource(None if args.seed is None else args.seed + rep)

        (base_src, _, _), base_ns = _timed(args, family, algorithm, key, prng_source)
        doc["baseline"] = {"source": base_src.label, "bits_consumed": base_src.bits_served, "median_wall_ms": base_ns / 1e6}

    if args.out is not None:
        Path(args.out).write_text(json.dumps(backend.transcript(), indent=2))
    if args.format == "json":
        print(json.dumps(doc, indent=2))
    else:
        print(f"{algorithm} {args.operation} via {source.label}: {doc['result']}")
        print(f"{source.bits_served} bits consumed")
        print("draw order: " + ", ".join(f"{d.role}({d.bits})" for d in source.draws))
        print(f"median wall time: {doc['median_wall_ms']:.3f} ms over {args.reps} run(s)")
        if args.baseline:
            print(f"baseline {doc['baseline']['source']}: {doc['baseline']['median_wall_ms']:.3f} ms")
    return EXIT_OK if result is not None else EXIT_DATA


# ---- parser -----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qrng-pqc", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("generate", help="write simulated QRNG bits to a bit file")
    p.add_argument("--recipe", choices=RECIPE_CHOICES, default="h")
    p.add_argument("--qubits", type=_positive, default=1)
    p.add_argument("--bits", type=_positive, required=True)
    p.add_argument("--seed", type=_seed)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("test", help="run the validation battery")
    p.add_argument("--input", help="bit file to test; omit to test the simulator directly")
    p.add_argument("--mode", choices=("sequential", "restart"), default="restart")
    p.add_argument("--recipe", choices=RECIPE_CHOICES + ["all"], default="h")
    p.add_argument("--qubits", type=_positive, default=8)
    p.add_argument("--seed", type=_seed)
    p.add_argument("--restarts", type=_positive, default=1000)
    p.add_argument("--bits-per-restart", type=_positive, default=1000)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out")
    p.set_defaults(func=cmd_test)

    p = sub.add_parser("bench", help="time bit generation over a (recipe, L, c) grid")
    p.add_argument("--recipe", choices=RECIPE_CHOICES, action="append")
    p.add_argument("--bits", type=_positive, nargs="+", default=[256])
    p.add_argument("--qubits", type=_positive, nargs="+", default=[1, 2, 4, 8])
    p.add_argument("--reps", type=_positive, default=1000)
    p.add_argument("--seed", type=_seed)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("pqc-demo", help="run a PQC flow on QRNG seeds against the mock backend")
    p.add_argument("--algorithm", required=True, help="mlkem-512/768/1024, mldsa-44/65/87 or slhdsa-<set>")
    p.add_argument("--operation", choices=OPERATIONS, default="keygen")
    p.add_argument("--recipe", choices=RECIPE_CHOICES, default="h")
    p.add_argument("--qubits", type=_positive, default=8)
    p.add_argument("--seed", type=_seed)
    p.add_argument("--keygen-mode", choices=(THREE_CALLS, SINGLE_CALL), default=THREE_CALLS)
    p.add_argument("--message", default="abc")
    p.add_argument("--ctx", default="")
    p.add_argument("--prehash", default=None, help="SHA-256, SHA-512, SHAKE128 or SHAKE256 (hash-sign only)")
    p.add_argument("--reps", type=_positive, default=1)
    p.add_argument("--baseline", action="store_true", help="also time a seeded host PRNG source")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out", help="write the mock backend transcript here")
    p.set_defaults(func=cmd_pqc_demo)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "operation", None) == "hash-sign" and args.prehash is None:
        args.prehash = "SHA-256"
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"qrng-pqc: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"qrng-pqc: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except QrngError as exc:
        print(f"qrng-pqc: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
