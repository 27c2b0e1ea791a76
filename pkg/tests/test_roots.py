from fractions import Fraction

import gmpy2
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src import roots
from src.errors import (
    BudgetExceeded,
    InvalidArgument,
    ModulusNotPositive,
    PerfectPower,
    PreconditionViolated,
)
from src.polyring import MonicModulus, Poly, eval_at, ring_pow

SQRT2 = Fraction(14142135623730950488, 10 ** 19)

# (a, n, k) small enough that every residue equals the encoded polynomial value
ENCODED_CASES = [(2, 2, 4), (2, 2, 5), (3, 2, 4), (2, 3, 4)]

# --- Exact reference ---


@pytest.mark.parametrize(
    "a, n, expected",
    [(0, 2, 0), (1, 5, 1), (15, 2, 3), (16, 2, 4), (26, 3, 2), (27, 3, 3), (10 ** 40, 4, 10 ** 10), (2, 1, 2)],
)
def test_exact_floor_root(a, n, expected):
    assert roots.exact_floor_root(a, n) == expected


@settings(max_examples=10_000, deadline=None)
@given(a=st.integers(min_value=0, max_value=10 ** 30), n=st.integers(min_value=1, max_value=8))
def test_exact_floor_root_brackets_a(a, n):
    r = roots.exact_floor_root(a, n)
    assert r ** n <= a < (r + 1) ** n
    assert r == int(gmpy2.iroot(a, n)[0])


def test_exact_floor_root_rejects():
    with pytest.raises(InvalidArgument):
        roots.exact_floor_root(5, 0)
    with pytest.raises(InvalidArgument):
        roots.exact_floor_root(-5, 2)


def test_reference_root_scaled():
    assert roots.reference_root_scaled(2, 2, 5) == 141421
    assert roots.reference_root_scaled(8, 3, 3) == 2000


@pytest.mark.parametrize("value, precision, expected", [(1414, 3, "1.414"), (-5, 2, "-0.05"), (7, 0, "7")])
def test_format_scaled(value, precision, expected):
    assert roots.format_scaled(value, precision) == expected


@pytest.mark.parametrize("base, exponent, expected", [(10, 3, 4), (2, 10, 4), (1, 100, 1), (7, 0, 1)])
def test_power_digits(base, exponent, expected):
    assert roots.power_digits(base, exponent) == expected


# --- Polynomial side ---


def test_root_approximant_converges():
    assert abs(roots.root_approximant(2, 2, 20) - SQRT2) < Fraction(1, 10 ** 9)


@pytest.mark.parametrize("a, n, k", [(2, 2, 6), (5, 3, 9), (7, 2, 4)])
def test_root_approximant_matches_binomial_sum(a, n, k):
    expected = Fraction(roots.binomial_root_sum(a, n, k + 1), roots.binomial_root_sum(a, n, k)) - 1
    assert roots.root_approximant(a, n, k) == expected


def test_root_approximant_matches_binomial_sum_on_grid():
    for a in range(1, 6):
        for n in range(1, 5):
            sums = [roots.binomial_root_sum(a, n, k) for k in range(1, 22)]
            for k in range(1, 21):
                expected = Fraction(sums[k], sums[k - 1]) - 1
                assert roots.root_approximant(a, n, k) == expected, (a, n, k)


def test_binomial_root_sum_small():
    """(x + 1)^8 modulo x^2 - 2 evaluated at 1."""
    assert roots.binomial_root_sum(2, 2, 8) == 985


# --- Arithmetic forms ---


def test_root_arith_exact_for_linear_case():
    """n = 1, k = 4: N = 243 and D = 81 modulo 254."""
    assert roots.root_arith(2, 1, 4) == 2


def test_root_arith_square_root_of_four():
    assert abs(roots.root_arith(4, 2, 8) - 2) < Fraction(1, 1000)


@pytest.mark.parametrize("a, n, k", ENCODED_CASES)
def test_root_residues_equal_encoded_ring_values(a, n, k):
    numerator, denominator, base = roots._root_residues(a, n, k)
    modulus = MonicModulus(Poly.constant(a), n)
    assert base == k ** (k * n)
    assert numerator == eval_at(ring_pow(Poly((1, 1)), k * n + 1, modulus), base)
    assert denominator == eval_at(ring_pow(Poly((1, 1)), k * n, modulus), base)


@pytest.mark.parametrize("a, n, k", ENCODED_CASES)
def test_reduced_variant_recovers_ring_approximant(a, n, k):
    assert roots.root_arith_reduced(a, n, k, 1) == roots.root_approximant(a, n, k * n)


@pytest.mark.parametrize("a, k", [(2, 4), (2, 6), (3, 6)])
def test_reduced_variants_agree_for_degree_one(a, k):
    expected = roots.root_arith(a, 1, k)
    assert expected == a
    assert roots.root_arith_reduced(a, 1, k, a) == expected
    assert roots.root_arith_reduced(a, 1, k, -1) == expected


def test_root_arith_rejects():
    with pytest.raises(InvalidArgument):
        roots.root_arith(1, 2, 4)
    with pytest.raises(InvalidArgument):
        roots.root_arith(2, 2, 1)
    with pytest.raises(ModulusNotPositive):
        roots.root_arith(5, 1, 2)
    with pytest.raises(InvalidArgument):
        roots.root_arith_reduced(2, 2, 4, -2)


# --- Convergence scan ---


@pytest.mark.parametrize("a, n", [(2, 2), (5, 2), (2, 3), (10, 3)])
def test_convergence_scan_best_error(a, n):
    records = roots.convergence_scan(a, n, 4, 10, c_values=[1], jobs=1)
    best = min(abs(Fraction(r.error_decimal)) for r in records)
    assert best <= Fraction(1, 100)


@pytest.mark.parametrize(
    "a, n, k, c, error",
    [
        (2, 2, 10, 1, "-0.000000000000000237118920585791"),
        (5, 2, 10, 1, "-0.000000007465073818462891921974"),
        (2, 3, 10, 1, "-0.000000000197295329385210997500"),
        (10, 3, 10, 1, "0.000000419485229250717872549398"),
    ],
)
def test_convergence_scan_best_pair(a, n, k, c, error):
    """Smallest error over k = 4..10 with the unreduced and c = 1 variants, at 30 places."""
    records = roots.convergence_scan(a, n, 4, 10, c_values=[1], jobs=1)

    best = min(records, key=lambda r: abs(Fraction(r.error_decimal)))

    assert (best.k, best.c, best.error_decimal) == (k, c, error)


@pytest.mark.parametrize("a, n", [(4, 2), (8, 3), (9, 2), (16, 2), (16, 4)])
def test_convergence_scan_perfect_powers(a, n):
    records = roots.convergence_scan(a, n, 4, 10, jobs=1)
    errors = [abs(Fraction(r.error_decimal)) for r in records]

    assert [r.k for r in records] == list(range(4, 11))
    assert errors[-1] < errors[0]
    assert errors[-1] <= Fraction(1, 1000)


def test_convergence_scan_exact_cube_root():
    """root_arith(8, 3, 10) agrees with 2 to all 30 places."""
    records = roots.convergence_scan(8, 3, 10, 10, jobs=1)
    assert records[0].error_decimal == "0." + "0" * 30


def test_convergence_scan_order_and_fields():
    records = roots.convergence_scan(2, 2, 4, 6, c_values=[1, -1], precision=10, jobs=1)

    assert [(r.k, r.c) for r in records] == [
        (4, None), (4, 1), (4, -1),
        (5, None), (5, 1), (5, -1),
        (6, None), (6, 1), (6, -1),
    ]
    assert records[0].variant == roots.UNREDUCED
    assert records[1].variant == roots.REDUCED
    assert records[0].modulus_digits == roots.power_digits(4, 16)
    assert len(records[0].value_decimal.split(".")[1]) == 10
    assert set(records[0].to_record()) == {
        "a", "n", "k", "c", "variant", "value_decimal", "error_decimal", "modulus_digits", "elapsed_ms",
    }


def test_convergence_scan_budget():
    with pytest.raises(BudgetExceeded) as excinfo:
        roots.convergence_scan(2, 2, 2, 200, digit_budget=1000)
    assert excinfo.value.digits > 1000


@pytest.mark.parametrize(
    "kwargs",
    [
        {"a": 1, "n": 2, "k_min": 2, "k_max": 4},
        {"a": 2, "n": 2, "k_min": 5, "k_max": 4},
        {"a": 2, "n": 2, "k_min": 2, "k_max": 4, "c_values": [-3]},
        {"a": 2, "n": 2, "k_min": 2, "k_max": 4, "precision": 0},
    ],
)
def test_convergence_scan_rejects(kwargs):
    with pytest.raises(InvalidArgument):
        roots.convergence_scan(**kwargs)


# --- Floor-root conjecture ---


@pytest.mark.parametrize("a, n, expected", [(3, 2, 1), (10, 2, 3), (10, 3, 2), (30, 5, 1)])
def test_conjecture_floor_root(a, n, expected):
    assert roots.conjecture_floor_root(a, n) == expected


@pytest.mark.parametrize("a, n, which", [(2, 2, "a_gt_2"), (5, 1, "n_gt_1"), (5, 4, "log2_bound")])
def test_conjecture_preconditions(a, n, which):
    with pytest.raises(PreconditionViolated) as excinfo:
        roots.conjecture_floor_root(a, n)
    assert excinfo.value.which == which


@pytest.mark.parametrize("a, n", [(4, 2), (8, 3), (16, 4)])
def test_conjecture_rejects_perfect_powers(a, n):
    with pytest.raises(PerfectPower):
        roots.conjecture_floor_root(a, n)


def test_conjecture_pairs_include_log2_boundary():
    pairs = roots.conjecture_pairs(8)
    assert (4, 3) in pairs
    assert (8, 4) in pairs
    assert (7, 4) not in pairs
    assert pairs == sorted(pairs)


def test_conjecture_scan_golden():
    """Every non-perfect-power pair up to 30 matches the exact floor root."""
    report = roots.conjecture_scan(30, jobs=1)

    assert report.mismatches == 0
    assert len(report.entries) == 93
    assert report.skipped == 7
    assert report.matches == 86
    skipped = {(e.a, e.n) for e in report.entries if e.status == "skipped"}
    assert skipped == {(4, 2), (9, 2), (16, 2), (25, 2), (8, 3), (27, 3), (16, 4)}
    assert all(e.skipped_reason == "perfect_power" for e in report.entries if e.status == "skipped")
    summary = report.summary()
    assert summary["record"] == "summary"
    assert summary["match"] == 86
    assert summary["max_modulus_digits"] == report.max_modulus_digits > 0


def test_conjecture_scan_budget_skips():
    report = roots.conjecture_scan(30, digit_budget=1000, jobs=1)

    over_budget = [e for e in report.entries if e.skipped_reason == "budget_exceeded"]
    assert over_budget
    assert all(e.modulus_digits > 1000 for e in over_budget)
    assert all(e.conjectured is None and e.matched is None for e in over_budget)
    assert report.mismatches == 0


def test_conjecture_scan_rejects_small_bound():
    with pytest.raises(InvalidArgument):
        roots.conjecture_scan(2)


def test_conjecture_entry_record():
    entry = roots.ConjectureEntry(a=10, n=2, status="match", conjectured=3, exact=3, modulus_digits=41)
    record = entry.to_record()
    assert record["k"] == 40
    assert record["variant"] == "conjecture"
    assert record["value_decimal"] == "3"
    assert record["matched"] is True
