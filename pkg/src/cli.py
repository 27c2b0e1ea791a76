"""Command-line front end.

Exit codes: 0 success (or a completed conjecture scan), 1 verification mismatch
in a theorem check (pell, cbc, seq), 2 usage or precondition error.
"""
import argparse
import logging
import re
import statistics
import sys
import time
from dataclasses import dataclass, field
from functools import partial
from typing import Any, Callable, Optional, Sequence, TextIO

from . import roots, sequences
from .config import MIN_DIGIT_BUDGET, Config, load_config
from .errors import InvalidArgument, KronformError
from .kronecker import SubstitutionParams, eval_substitution, eval_substitution_unchecked
from .logger import LIBRARY_LOGGER_NAME, setup_logger
from .parallel import lift_int_str_limit, run_parallel
from .polyring import MonicModulus, Poly
from .records import Record, save_records, write_records
from .terms import eval_formula, render_term

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2

BENCH_SUITES = ("pell", "cbc", "substitution")
DEFAULT_BENCH_SIZES = {"pell": [64, 128, 256], "cbc": [16, 32, 64], "substitution": [64, 128, 256]}

# Values such as "-1,2" or "-2..3" are lists and ranges, not option flags
NEGATIVE_VALUE = re.compile(r"^-\d[\d,.]*$")


@dataclass(frozen=True)
class RunConfig:
    """One validated invocation: subcommand, its parameters, and output settings."""
    command: str
    json_output: bool = False
    precision: int = roots.DEFAULT_PRECISION
    digit_budget: int = roots.DEFAULT_DIGIT_BUDGET
    jobs: Optional[int] = None
    output_file: Optional[str] = None
    n_range: Optional[tuple[int, int]] = None
    a: Optional[int] = None
    root_degree: Optional[int] = None
    k_range: Optional[tuple[int, int]] = None
    c_values: tuple[int, ...] = ()
    a_max: Optional[int] = None
    coeffs: tuple[int, ...] = ()
    initials: Optional[tuple[int, ...]] = None
    strategy: sequences.BaseStrategy = sequences.BaseStrategy.APRIORI_BOUND
    convention: sequences.ExponentConvention = sequences.ExponentConvention.DIRECT
    suite: Optional[str] = None
    repetitions: int = 5
    sizes: tuple[int, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        if self.precision < 1:
            raise InvalidArgument(f"precision must be >= 1, got {self.precision}")
        if self.digit_budget < MIN_DIGIT_BUDGET:
            raise InvalidArgument(f"budget must be >= {MIN_DIGIT_BUDGET}, got {self.digit_budget}")
        if self.jobs is not None and self.jobs < 1:
            raise InvalidArgument(f"jobs must be >= 1, got {self.jobs}")
        for name, bounds in (("n", self.n_range), ("k", self.k_range)):
            if bounds is not None and bounds[0] > bounds[1]:
                raise InvalidArgument(f"empty {name} range {bounds[0]}..{bounds[1]}")


def parse_range(text: str) -> tuple[int, int]:
    """Parses "5" or "1..16" into an inclusive (low, high) pair."""
    try:
        if ".." in text:
            low, high = text.split("..", 1)
            return int(low), int(high)
        value = int(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected N or LOW..HIGH, got {text!r}") from e
    return value, value


def parse_int_list(text: str) -> tuple[int, ...]:
    """Parses a comma-separated integer list such as "1,1" or "-1,0,1"."""
    try:
        return tuple(int(part) for part in text.split(",") if part.strip())
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from e


class ListArgumentParser(argparse.ArgumentParser):
    """ArgumentParser that accepts option values starting with a negative number."""

    def __init__(self, *args: Any, **kwargs: Any) -> None:
        super().__init__(*args, **kwargs)
        self._negative_number_matcher = NEGATIVE_VALUE


def build_parser() -> argparse.ArgumentParser:
    common = ListArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=None, help="Emit line-delimited JSON records.")
    common.add_argument("--precision", type=int, default=None, help="Decimal places for root errors (default 30).")
    common.add_argument("--budget", type=int, default=None, help="Digit budget for moduli (default 500000).")
    common.add_argument("--jobs", type=int, default=None, help="Worker processes (default: CPU count).")
    common.add_argument("--output", default=None, help="Also save records to this file.")
    common.add_argument("--log-level", default=None, help="DEBUG, INFO, WARNING, ERROR or CRITICAL.")

    parser = ListArgumentParser(
        prog="kronform",
        description="Arithmetic-term formulas for C-recursive sequences via quotient rings and Kronecker substitution.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("pell", parents=[common], help="Verify the Pell closed form.")
    p.add_argument("--n", type=parse_range, default=(1, 16), help="N or LOW..HIGH (default 1..16).")

    p = sub.add_parser("cbc", parents=[common], help="Verify the central binomial closed form.")
    p.add_argument("--n", type=parse_range, default=(1, 14), help="N or LOW..HIGH (default 1..14).")

    p = sub.add_parser(
        "seq",
        parents=[common],
        help="Synthesize and verify a formula for a C-recursive sequence.",
        description=(
            "Coefficients are given high to low as in A(n) = c_{d-1}A(n-1) + ... + c_0A(n-d): "
            "--coeffs 2,1 is P(n) = 2P(n-1) + P(n-2)."
        ),
    )
    p.add_argument("--coeffs", type=parse_int_list, required=True, help="c_{d-1},...,c_0")
    p.add_argument("--initials", type=parse_int_list, default=None, help="A(0),...,A(d-1) (default all ones).")
    p.add_argument("--n", type=parse_range, required=True, help="N or LOW..HIGH.")
    p.add_argument("--strategy", choices=[s.value for s in sequences.BaseStrategy], default="apriori")
    p.add_argument("--exponent", choices=[c.value for c in sequences.ExponentConvention], default="n")

    p = sub.add_parser("root", parents=[common], help="Scan convergence of the n-th root formulas.")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--n", type=int, required=True, help="Root degree.")
    p.add_argument("--k-min", type=int, default=2)
    p.add_argument("--k-max", type=int, default=10)
    p.add_argument("--c", type=parse_int_list, default=(1,), help="Second-reduction parameters, c >= -1.")

    p = sub.add_parser("conjecture", parents=[common], help="Scan the floor-root conjecture.")
    p.add_argument("--a-max", type=int, required=True)

    p = sub.add_parser("bench", parents=[common], help="Time formula and ring computations.")
    p.add_argument("--suite", choices=BENCH_SUITES, required=True)
    p.add_argument("--repetitions", type=int, default=5)
    p.add_argument("--sizes", type=parse_int_list, default=None, help="Comma-separated sizes n.")
    return parser


def build_run_config(args: argparse.Namespace, cfg: Config) -> RunConfig:
    """Merges parsed flags over the environment configuration."""
    def pick(name: str, fallback: Any) -> Any:
        value = getattr(args, name, None)
        return fallback if value is None else value

    command = args.command
    options: dict[str, Any] = {
        "command": command,
        "json_output": bool(pick("json", cfg.json_output)),
        "precision": pick("precision", cfg.precision),
        "digit_budget": pick("budget", cfg.digit_budget),
        "jobs": pick("jobs", cfg.jobs),
        "output_file": pick("output", cfg.output_file),
    }
    if command in ("pell", "cbc"):
        options["n_range"] = args.n
    elif command == "seq":
        options.update(
            n_range=args.n,
            coeffs=args.coeffs,
            initials=args.initials,
            strategy=sequences.BaseStrategy(args.strategy),
            convention=sequences.ExponentConvention(args.exponent),
        )
    elif command == "root":
        options.update(a=args.a, root_degree=args.n, k_range=(args.k_min, args.k_max), c_values=args.c)
    elif command == "conjecture":
        options["a_max"] = args.a_max
    elif command == "bench":
        if args.repetitions < 1:
            raise InvalidArgument(f"repetitions must be >= 1, got {args.repetitions}")
        sizes = args.sizes if args.sizes else DEFAULT_BENCH_SIZES[args.suite]
        options.update(suite=args.suite, repetitions=args.repetitions, sizes=tuple(sizes))
    return RunConfig(**options)


def _cell(value: Any) -> str:
    return "-" if value is None else str(value)


def render_table(records: Sequence[Record], columns: Sequence[str]) -> list[str]:
    """Fixed-width text table of the given record columns."""
    rows = [[_cell(r.get(col)) for col in columns] for r in records]
    widths = [max([len(col)] + [len(row[i]) for row in rows]) for i, col in enumerate(columns)]
    lines = ["  ".join(col.ljust(widths[i]) for i, col in enumerate(columns))]
    lines.append("  ".join("-" * w for w in widths))
    lines.extend("  ".join(cell.rjust(widths[i]) for i, cell in enumerate(row)) for row in rows)
    return lines


def emit(
    run: RunConfig,
    records: Sequence[Record],
    columns: Sequence[str],
    out: TextIO,
    notes: Sequence[str] = (),
    summary: Optional[Record] = None,
) -> None:
    """
    Writes records as JSON lines or as a table, and optionally to run.output_file.

    In JSON mode the summary and each note follow the data as their own records,
    marked {"record": "summary"} and {"record": "note", "text": ...}.
    """
    extra: list[Record] = [summary] if summary else []
    extra.extend({"record": "note", "text": note} for note in notes)
    all_records = list(records) + extra
    if run.json_output:
        write_records(all_records, out)
    else:
        for line in render_table(records, columns):
            out.write(line + "\n")
        if summary:
            out.write("summary: " + ", ".join(f"{k}={v}" for k, v in summary.items() if k != "record") + "\n")
        for note in notes:
            out.write(f"note: {note}\n")
    if run.output_file:
        save_records(all_records, run.output_file)


def _range(run: RunConfig) -> range:
    assert run.n_range is not None
    return range(run.n_range[0], run.n_range[1] + 1)


def _timed(compute: Callable[[], Record]) -> Record:
    started = time.perf_counter()
    record = compute()
    record["elapsed_ms"] = round((time.perf_counter() - started) * 1000, 3)
    return record


def _pell_item(n: int) -> Record:
    def compute() -> Record:
        value = eval_formula(sequences.pell_term(n))
        oracle = sequences.oracle_term(sequences.PELL_RECURRENCE, n)
        return {"n": n, "variant": "pell", "value_decimal": str(value), "oracle_decimal": str(oracle),
                "matched": value == oracle}
    return _timed(compute)


def _cbc_item(n: int) -> Record:
    def compute() -> Record:
        value = eval_formula(sequences.central_binomial_term(n))
        oracle = sequences.binomial_oracle(2 * n, n)
        return {"n": n, "variant": "cbc", "value_decimal": str(value), "oracle_decimal": str(oracle),
                "matched": value == oracle}
    return _timed(compute)


def _seq_item(n: int, rec: sequences.CRecurrence, strategy: sequences.BaseStrategy,
              convention: sequences.ExponentConvention) -> Record:
    def compute() -> Record:
        term = sequences.synth_formula(rec, n, strategy, convention)
        value = eval_formula(term)
        oracle = sequences.oracle_term(rec, convention.exponent(n))
        return {"n": n, "variant": "seq", "term": render_term(term), "value_decimal": str(value),
                "oracle_decimal": str(oracle), "matched": value == oracle}
    return _timed(compute)


def _verification_exit(records: Sequence[Record], label: str) -> int:
    mismatches = [r["n"] for r in records if not r["matched"]]
    if mismatches:
        logger.error(f"{label}: mismatch at n={mismatches}")
        return EXIT_MISMATCH
    logger.info(f"{label}: all {len(records)} values match")
    return EXIT_OK


def cmd_pell(run: RunConfig, out: TextIO) -> int:
    if run.n_range is None or run.n_range[0] < 1:
        raise InvalidArgument("the Pell formula is valid for n > 0")
    records = run_parallel(_pell_item, _range(run), run.jobs)
    emit(run, records, ["n", "value_decimal", "oracle_decimal", "matched"], out)
    return _verification_exit(records, "pell")


def cmd_cbc(run: RunConfig, out: TextIO) -> int:
    if run.n_range is None or run.n_range[0] < 1:
        raise InvalidArgument("the central binomial formula is valid for n > 0")
    records = run_parallel(_cbc_item, _range(run), run.jobs)
    emit(run, records, ["n", "value_decimal", "oracle_decimal", "matched"], out)
    return _verification_exit(records, "cbc")


def cmd_seq(run: RunConfig, out: TextIO) -> int:
    rec = sequences.CRecurrence.from_high_to_low(run.coeffs, run.initials)
    n_values = list(_range(run))
    # preconditions do not depend on n beyond n >= 1, so checking the first index covers the range
    sequences.synth_formula(rec, n_values[0], run.strategy, run.convention)
    records = run_parallel(
        partial(_seq_item, rec=rec, strategy=run.strategy, convention=run.convention), n_values, run.jobs
    )
    notes = [f"exponent convention {run.convention.value!r}: {sequences.EXPONENT_NOTE}"]
    columns = ["n", "value_decimal", "oracle_decimal", "matched"]
    if not run.json_output:
        for record in records:
            out.write(f"A({record['n']}) = {record['term']}\n")
    emit(run, records, columns, out, notes=notes)
    return _verification_exit(records, "seq")


def cmd_root(run: RunConfig, out: TextIO) -> int:
    assert run.a is not None and run.root_degree is not None and run.k_range is not None
    scan = roots.convergence_scan(
        run.a,
        run.root_degree,
        run.k_range[0],
        run.k_range[1],
        c_values=run.c_values,
        precision=run.precision,
        digit_budget=run.digit_budget,
        jobs=run.jobs,
    )
    records = [r.to_record() for r in scan]
    emit(run, records, ["k", "c", "variant", "value_decimal", "error_decimal", "modulus_digits"], out)
    return EXIT_OK


def cmd_conjecture(run: RunConfig, out: TextIO) -> int:
    assert run.a_max is not None
    report = roots.conjecture_scan(run.a_max, run.digit_budget, run.jobs)
    records = [e.to_record() for e in report.entries]
    emit(
        run,
        records,
        ["a", "n", "value_decimal", "exact_decimal", "matched", "skipped_reason", "modulus_digits"],
        out,
        summary=report.summary(),
    )
    return EXIT_OK


def _median_ms(func: Callable[[], Any], repetitions: int) -> float:
    samples = []
    for _ in range(repetitions):
        started = time.perf_counter()
        func()
        samples.append((time.perf_counter() - started) * 1000)
    return round(statistics.median(samples), 3)


def _bench_pair(suite: str, size: int) -> tuple[tuple[str, Callable[[], Any]], tuple[str, Callable[[], Any]]]:
    if suite == "pell":
        return (
            ("formula_ms", lambda: sequences.pell(size)),
            ("oracle_ms", lambda: sequences.oracle_term(sequences.PELL_RECURRENCE, size)),
        )
    if suite == "cbc":
        return (
            ("formula_ms", lambda: sequences.central_binomial(size)),
            ("oracle_ms", lambda: sequences.binomial_oracle(2 * size, size)),
        )
    f = Poly((1, 1))
    modulus = MonicModulus(Poly.constant(2), 2)
    params = SubstitutionParams(gamma=3, k=size, b=1)
    return (
        ("checked_ms", lambda: eval_substitution(f, modulus, params)),
        ("unchecked_ms", lambda: eval_substitution_unchecked(f, modulus, params)),
    )


def cmd_bench(run: RunConfig, out: TextIO) -> int:
    assert run.suite is not None
    if run.suite not in BENCH_SUITES:
        raise InvalidArgument(f"unknown suite {run.suite!r}")
    records: list[Record] = []
    columns: list[str] = ["suite", "n"]
    for size in run.sizes:
        (first_name, first), (second_name, second) = _bench_pair(run.suite, size)
        records.append({
            "suite": run.suite,
            "n": size,
            first_name: _median_ms(first, run.repetitions),
            second_name: _median_ms(second, run.repetitions),
        })
        logger.debug(f"bench {run.suite} n={size}: {records[-1]}")
        if first_name not in columns:
            columns.extend([first_name, second_name])
    emit(run, records, columns, out)
    return EXIT_OK


COMMANDS: dict[str, Callable[[RunConfig, TextIO], int]] = {
    "pell": cmd_pell,
    "cbc": cmd_cbc,
    "seq": cmd_seq,
    "root": cmd_root,
    "conjecture": cmd_conjecture,
    "bench": cmd_bench,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Parses arguments, runs one subcommand, and returns the process exit code.

    Args:
        argv (Sequence[str] | None): Arguments without the program name; sys.argv when None.

    Returns:
        int: 0, 1 or 2 as described in the module docstring.
    """
    # Synthesized bases and exact values routinely exceed the default int-to-str limit
    lift_int_str_limit()

    # 1. Arguments
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE

    # 2. Configuration and logging
    try:
        cfg = load_config()
    except ValueError as e:
        print(f"error: configuration: {e}", file=sys.stderr)
        return EXIT_USAGE
    setup_logger(LIBRARY_LOGGER_NAME, args.log_level or cfg.log_level)

    # 3. Run the subcommand
    try:
        run = build_run_config(args, cfg)
        logger.info(f"Running '{run.command}'")
        return COMMANDS[run.command](run, sys.stdout)
    except KronformError as e:
        logger.debug(f"'{args.command}' rejected: {e}")
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as e:
        logger.exception(f"Unexpected error while running '{args.command}': {e}")
        return EXIT_USAGE
