"""n-th root approximation through (x + 1)^k in Z[x]/(x^n - a), its pure-arithmetic
forms, and the floor-root conjecture scanner.

All error measurement is exact: the reference value of a^(1/n) to P decimal places
is floor(a^(1/n) * 10^P), computed as an integer n-th root of a * 10^(nP).
"""
import logging
import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import partial
from typing import Any, Optional, Sequence

from .errors import (
    BudgetExceeded,
    InvalidArgument,
    ModulusNotPositive,
    PerfectPower,
    PreconditionViolated,
)
from .kronecker import powmod
from .parallel import run_parallel
from .polyring import MonicModulus, Poly, eval_at, poly_mul, poly_rem, ring_pow

logger = logging.getLogger(__name__)

Rational = Fraction

DEFAULT_PRECISION = 30
DEFAULT_DIGIT_BUDGET = 500_000

UNREDUCED = "unreduced"
REDUCED = "reduced"


@dataclass(frozen=True)
class ConvergenceRecord:
    """One observation of a root approximant against the exact reference."""
    a: int
    n: int
    k: int
    c: Optional[int]
    variant: str
    approximant: Rational = field(repr=False)
    value_decimal: str
    error_decimal: str
    modulus_digits: int
    elapsed_ms: float = 0.0

    def to_record(self) -> dict[str, Any]:
        return {
            "a": self.a,
            "n": self.n,
            "k": self.k,
            "c": self.c,
            "variant": self.variant,
            "value_decimal": self.value_decimal,
            "error_decimal": self.error_decimal,
            "modulus_digits": self.modulus_digits,
            "elapsed_ms": round(self.elapsed_ms, 3),
        }


@dataclass(frozen=True)
class ConjectureEntry:
    """Outcome of the floor-root conjecture for one (a, n) pair."""
    a: int
    n: int
    status: str  # "match", "mismatch" or "skipped"
    conjectured: Optional[int] = None
    exact: Optional[int] = None
    skipped_reason: Optional[str] = None
    modulus_digits: int = 0
    elapsed_ms: float = 0.0

    @property
    def matched(self) -> Optional[bool]:
        return None if self.status == "skipped" else self.status == "match"

    def to_record(self) -> dict[str, Any]:
        return {
            "a": self.a,
            "n": self.n,
            "k": 2 * self.a * self.n,
            "c": None,
            "variant": "conjecture",
            "value_decimal": None if self.conjectured is None else str(self.conjectured),
            "exact_decimal": None if self.exact is None else str(self.exact),
            "matched": self.matched,
            "skipped_reason": self.skipped_reason,
            "modulus_digits": self.modulus_digits,
            "elapsed_ms": round(self.elapsed_ms, 3),
        }


@dataclass(frozen=True)
class ConjectureReport:
    entries: tuple[ConjectureEntry, ...]

    def count(self, status: str) -> int:
        return sum(1 for e in self.entries if e.status == status)

    @property
    def matches(self) -> int:
        return self.count("match")

    @property
    def mismatches(self) -> int:
        return self.count("mismatch")

    @property
    def skipped(self) -> int:
        return self.count("skipped")

    @property
    def max_modulus_digits(self) -> int:
        computed = [e.modulus_digits for e in self.entries if e.status != "skipped"]
        return max(computed, default=0)

    def summary(self) -> dict[str, Any]:
        return {
            "record": "summary",
            "pairs": len(self.entries),
            "match": self.matches,
            "mismatch": self.mismatches,
            "skipped": self.skipped,
            "max_modulus_digits": self.max_modulus_digits,
        }


def power_digits(base: int, exponent: int) -> int:
    """Decimal digit count of base^exponent, estimated from logarithms without building the power."""
    if base < 1 or exponent < 0:
        raise InvalidArgument(f"power_digits needs base >= 1 and exponent >= 0, got {base}, {exponent}")
    if base == 1 or exponent == 0:
        return 1
    return int(exponent * math.log10(base)) + 1


def exact_floor_root(a: int, n: int) -> int:
    """
    The unique r with r^n <= a < (r + 1)^n, by binary search on exact powers.

    Args:
        a (int): Nonnegative radicand.
        n (int): Root degree, n >= 1.

    Returns:
        int: floor(a^(1/n)).
    """
    if n < 1:
        raise InvalidArgument(f"root degree must be >= 1, got {n}")
    if a < 0:
        raise InvalidArgument(f"radicand must be nonnegative, got {a}")
    if n == 1 or a < 2:
        return a
    lo = 0
    hi = 1 << -(-a.bit_length() // n)  # hi^n > a
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if mid ** n <= a:
            lo = mid
        else:
            hi = mid
    return lo


def reference_root_scaled(a: int, n: int, precision: int) -> int:
    """floor(a^(1/n) * 10^precision), exactly."""
    return exact_floor_root(a * 10 ** (n * precision), n)


def format_scaled(value: int, precision: int) -> str:
    """Renders value * 10^-precision as a signed fixed-point decimal string."""
    sign = "-" if value < 0 else ""
    whole, frac = divmod(abs(value), 10 ** precision)
    if precision == 0:
        return f"{sign}{whole}"
    return f"{sign}{whole}.{frac:0{precision}d}"


def _decimal(value: Rational, precision: int) -> str:
    return format_scaled(round(value * 10 ** precision), precision)


def _root_error(value: Rational, a: int, n: int, precision: int) -> str:
    reference = Fraction(reference_root_scaled(a, n, precision), 10 ** precision)
    return _decimal(value - reference, precision)


def _check_root_args(a: int, n: int, k: int, minimum_a: int, minimum_k: int) -> None:
    if a < minimum_a or n < 1 or k < minimum_k:
        raise InvalidArgument(
            f"need a >= {minimum_a}, n >= 1, k >= {minimum_k}; got a={a}, n={n}, k={k}"
        )


def root_approximant(a: int, n: int, k: int) -> Rational:
    """
    f_{k+1}(1) / f_k(1) - 1 with f_k(x) = (x + 1)^k in Z[x]/(x^n - a).

    Tends to a^(1/n) as k grows.
    """
    _check_root_args(a, n, k, 1, 1)
    modulus = MonicModulus(Poly.constant(a), n)
    f_k = ring_pow(Poly((1, 1)), k, modulus)
    f_next = poly_rem(poly_mul(f_k, Poly((1, 1))), modulus)
    return Fraction(eval_at(f_next, 1), eval_at(f_k, 1)) - 1


def binomial_root_sum(a: int, n: int, k: int) -> int:
    """f_k(1) written out: sum_j C(k, j) a^floor(j/n)."""
    _check_root_args(a, n, k, 1, 0)
    return sum(math.comb(k, j) * a ** (j // n) for j in range(k + 1))


def _root_residues(a: int, n: int, k: int) -> tuple[int, int, int]:
    """Returns (N, D, base) for base = k^(kn), modulus base^n - a."""
    base = k ** (k * n)
    modulus = base ** n - a
    if modulus <= 0:
        raise ModulusNotPositive(f"k^(k n^2) - a = {modulus} for a={a}, n={n}, k={k}")
    e = k * n
    return powmod(base + 1, e + 1, modulus), powmod(base + 1, e, modulus), base


def root_arith(a: int, n: int, k: int) -> Rational:
    """
    N / D - 1 with N = (k^(kn) + 1)^(kn+1) and D = (k^(kn) + 1)^(kn), both
    reduced modulo k^(k n^2) - a.

    Raises:
        InvalidArgument: For a <= 1, k < 2, or D = 0.
        ModulusNotPositive: If k^(k n^2) <= a.
    """
    _check_root_args(a, n, k, 2, 2)
    numerator, denominator, _ = _root_residues(a, n, k)
    if denominator == 0:
        raise InvalidArgument(f"denominator residue is zero for a={a}, n={n}, k={k}")
    return Fraction(numerator, denominator) - 1


def root_arith_reduced(a: int, n: int, k: int, c: int) -> Rational:
    """As root_arith, with both residues further reduced modulo k^(kn) - c, c >= -1."""
    _check_root_args(a, n, k, 2, 2)
    if c < -1:
        raise InvalidArgument(f"c must be >= -1, got {c}")
    numerator, denominator, base = _root_residues(a, n, k)
    second = base - c
    if second <= 1:
        raise InvalidArgument(f"k^(kn) - c = {second} must exceed 1")
    numerator %= second
    denominator %= second
    if denominator == 0:
        raise InvalidArgument(f"reduced denominator is zero for a={a}, n={n}, k={k}, c={c}")
    return Fraction(numerator, denominator) - 1


def _convergence_item(item: tuple[int, int, int, Optional[int]], precision: int) -> ConvergenceRecord:
    a, n, k, c = item
    started = time.perf_counter()
    if c is None:
        value = root_arith(a, n, k)
        variant = UNREDUCED
    else:
        value = root_arith_reduced(a, n, k, c)
        variant = REDUCED
    record = ConvergenceRecord(
        a=a,
        n=n,
        k=k,
        c=c,
        variant=variant,
        approximant=value,
        value_decimal=_decimal(value, precision),
        error_decimal=_root_error(value, a, n, precision),
        modulus_digits=power_digits(k, k * n * n),
        elapsed_ms=(time.perf_counter() - started) * 1000,
    )
    logger.debug(f"convergence a={a} n={n} k={k} c={c}: error {record.error_decimal}")
    return record


def convergence_scan(
    a: int,
    n: int,
    k_min: int,
    k_max: int,
    c_values: Optional[Sequence[int]] = None,
    precision: int = DEFAULT_PRECISION,
    digit_budget: int = DEFAULT_DIGIT_BUDGET,
    jobs: Optional[int] = 1,
) -> list[ConvergenceRecord]:
    """
    Evaluates root_arith for every k in [k_min, k_max], and root_arith_reduced for
    every (k, c) with c in c_values, recording the error against a^(1/n).

    Records are ordered by k, the unreduced record first, then c in the given order.

    Raises:
        InvalidArgument: For an empty range or invalid root arguments.
        BudgetExceeded: If k^(k n^2) would exceed digit_budget decimal digits.
    """
    if k_min > k_max:
        raise InvalidArgument(f"empty k range {k_min}..{k_max}")
    _check_root_args(a, n, k_min, 2, 2)
    if precision < 1:
        raise InvalidArgument(f"precision must be >= 1, got {precision}")
    for c in c_values or ():
        if c < -1:
            raise InvalidArgument(f"c must be >= -1, got {c}")
    for k in range(k_min, k_max + 1):
        digits = power_digits(k, k * n * n)
        if digits > digit_budget:
            raise BudgetExceeded(k, n, digits, digit_budget)

    items: list[tuple[int, int, int, Optional[int]]] = []
    for k in range(k_min, k_max + 1):
        items.append((a, n, k, None))
        items.extend((a, n, k, c) for c in (c_values or ()))
    logger.info(f"Convergence scan a={a}, n={n}, k={k_min}..{k_max}: {len(items)} evaluations")
    return run_parallel(partial(_convergence_item, precision=precision), items, jobs)


def conjecture_floor_root(a: int, n: int) -> int:
    """
    floor(N / D - 1) with N = (a^(2an) + 1)^(2an+1), D = (a^(2an) + 1)^(2an),
    both reduced modulo a^(2an^2) - a.

    Conjectured to equal floor(a^(1/n)) whenever a > 2, 1 < n <= floor(log2 a) + 1
    and a is not a perfect n-th power.

    Raises:
        PreconditionViolated: Naming the failed bound ("a_gt_2", "n_gt_1", "log2_bound").
        PerfectPower: If a = r^n for an integer r.
    """
    if a <= 2:
        raise PreconditionViolated("a_gt_2", f"a must exceed 2, got {a}")
    if n <= 1:
        raise PreconditionViolated("n_gt_1", f"n must exceed 1, got {n}")
    if n > a.bit_length():
        raise PreconditionViolated("log2_bound", f"n={n} exceeds floor(log2({a})) + 1 = {a.bit_length()}")
    root = exact_floor_root(a, n)
    if root ** n == a:
        raise PerfectPower(f"{a} = {root}^{n}")
    e = 2 * a * n
    base = a ** e
    modulus = base ** n - a
    numerator = powmod(base + 1, e + 1, modulus)
    denominator = powmod(base + 1, e, modulus)
    if denominator == 0:
        raise InvalidArgument(f"denominator residue is zero for a={a}, n={n}")
    # floor(N/D - 1) == floor((N - D) / D)
    return (numerator - denominator) // denominator


def conjecture_pairs(a_max: int) -> list[tuple[int, int]]:
    """Every (a, n) with 3 <= a <= a_max and 2 <= n <= floor(log2 a) + 1, sorted."""
    return [(a, n) for a in range(3, a_max + 1) for n in range(2, a.bit_length() + 1)]


def _conjecture_item(pair: tuple[int, int], digit_budget: int) -> ConjectureEntry:
    a, n = pair
    digits = power_digits(a, 2 * a * n * n)
    exact = exact_floor_root(a, n)
    # Neither skip check builds the modulus
    if exact ** n == a:
        return ConjectureEntry(a, n, "skipped", exact=exact, skipped_reason="perfect_power", modulus_digits=digits)
    if digits > digit_budget:
        return ConjectureEntry(a, n, "skipped", exact=exact, skipped_reason="budget_exceeded", modulus_digits=digits)
    started = time.perf_counter()
    try:
        conjectured = conjecture_floor_root(a, n)
    except (InvalidArgument, PreconditionViolated) as e:
        return ConjectureEntry(a, n, "skipped", exact=exact, skipped_reason=str(e), modulus_digits=digits)
    elapsed = (time.perf_counter() - started) * 1000
    status = "match" if conjectured == exact else "mismatch"
    if status == "mismatch":
        logger.warning(f"Conjecture mismatch at a={a}, n={n}: conjectured {conjectured}, exact {exact}")
    return ConjectureEntry(a, n, status, conjectured, exact, None, digits, elapsed)


def conjecture_scan(a_max: int, digit_budget: int = DEFAULT_DIGIT_BUDGET, jobs: Optional[int] = 1) -> ConjectureReport:
    """
    Compares conjecture_floor_root with exact_floor_root over the whole hypothesis set.

    Mismatches and skips are recorded, never raised.

    Raises:
        InvalidArgument: If a_max < 3.
    """
    if a_max < 3:
        raise InvalidArgument(f"a_max must be >= 3, got {a_max}")
    pairs = conjecture_pairs(a_max)
    logger.info(f"Conjecture scan up to a={a_max}: {len(pairs)} pairs, budget {digit_budget} digits")
    entries = run_parallel(partial(_conjecture_item, digit_budget=digit_budget), pairs, jobs)
    report = ConjectureReport(tuple(entries))
    logger.info(
        f"Conjecture scan finished: {report.matches} match, {report.mismatches} mismatch, {report.skipped} skipped"
    )
    return report
