import math
import random

import pytest

from src.errors import InvalidArgument, UnsupportedCoefficients, UnsupportedInitials
from src.sequences import (
    EXPONENT_NOTE,
    PELL_RECURRENCE,
    BaseStrategy,
    CRecurrence,
    ExponentConvention,
    binomial_oracle,
    central_binomial,
    central_binomial_alternating_sum,
    central_binomial_ring,
    central_binomial_term,
    choose_base,
    oracle_term,
    pell,
    pell_binomial_sum,
    pell_ring,
    pell_term,
    ring_term,
    synth_formula,
)
from src.terms import eval_formula, render_term

# High-to-low coefficient lists with nonnegative, not all zero, entries
UNIT_RECURRENCES = [[1, 1], [2, 1], [1, 0, 1], [3], [1, 1, 1], [0, 2], [1, 2, 3]]

SYNTH_FUZZ_SEED = 7001
SYNTH_FUZZ_CASES = 500

PELL_NUMBERS = [0, 1, 2, 5, 12, 29, 70, 169, 408, 985, 2378, 5741, 13860, 33461, 80782, 195025, 470832]

# --- CRecurrence ---


def test_from_high_to_low_reverses(fibonacci):
    rec = CRecurrence.from_high_to_low([2, 1])
    assert rec.coeffs == (1, 2)
    assert rec.initials == (1, 1)
    assert fibonacci.order == 2
    assert str(rec.modulus()) == "x^2 - 2x - 1"


def test_recurrence_validation():
    with pytest.raises(InvalidArgument):
        CRecurrence((), ())
    with pytest.raises(InvalidArgument, match="initial values"):
        CRecurrence((1, 1), (1,))


# --- Oracle ---


@pytest.mark.parametrize("n, expected", [(0, 1), (1, 1), (2, 2), (4, 5), (5, 8), (10, 89)])
def test_oracle_term_fibonacci(fibonacci, n, expected):
    assert oracle_term(fibonacci, n) == expected


def test_oracle_term_pell():
    assert [oracle_term(PELL_RECURRENCE, n) for n in range(len(PELL_NUMBERS))] == PELL_NUMBERS


def test_oracle_term_negative_index(fibonacci):
    with pytest.raises(InvalidArgument):
        oracle_term(fibonacci, -1)


# --- Ring side ---


@pytest.mark.parametrize("coeffs", UNIT_RECURRENCES + [[1, -1], [-2, 3]])
def test_ring_term_matches_oracle(coeffs):
    rec = CRecurrence.from_high_to_low(coeffs)
    for n in range(31):
        assert ring_term(rec, n) == oracle_term(rec, n), n


def test_ring_term_shifted_convention(fibonacci):
    for n in range(1, 20):
        assert ring_term(fibonacci, n, ExponentConvention.SHIFTED) == oracle_term(fibonacci, n - 1)
    with pytest.raises(InvalidArgument):
        ring_term(fibonacci, 0, ExponentConvention.SHIFTED)


def test_ring_term_requires_unit_initials():
    with pytest.raises(UnsupportedInitials):
        ring_term(PELL_RECURRENCE, 3)


# --- Synthesized formulas ---


@pytest.mark.parametrize("coeffs", UNIT_RECURRENCES)
@pytest.mark.parametrize("strategy", list(BaseStrategy))
def test_synth_formula_matches_oracle(coeffs, strategy):
    rec = CRecurrence.from_high_to_low(coeffs)
    for n in range(1, 26):
        assert eval_formula(synth_formula(rec, n, strategy)) == oracle_term(rec, n), n


@pytest.mark.parametrize("strategy", list(BaseStrategy))
def test_synth_formula_shifted_convention(fibonacci, strategy):
    for n in range(1, 20):
        term = synth_formula(fibonacci, n, strategy, ExponentConvention.SHIFTED)
        assert eval_formula(term) == oracle_term(fibonacci, n - 1)


def test_synth_formula_oracle_base_text(fibonacci):
    """b = A(5) + max(c) + 1 = 10 and g(10) = 11."""
    term = synth_formula(fibonacci, 5, BaseStrategy.ORACLE_MINIMAL)
    assert render_term(term) == "(((10 ^ 5) mod ((10 ^ 2) - 11)) mod (10 - 1))"
    assert eval_formula(term) == 8


def test_choose_base_apriori_is_power_of_two(fibonacci):
    b = choose_base(fibonacci, 5, BaseStrategy.APRIORI_BOUND)
    assert b == 64
    assert b > oracle_term(fibonacci, 5) + max(fibonacci.coeffs)


@pytest.mark.parametrize(
    "rec, n, error",
    [
        (PELL_RECURRENCE, 3, UnsupportedInitials),
        (CRecurrence.from_high_to_low([1, -1]), 3, UnsupportedCoefficients),
        (CRecurrence.from_high_to_low([0, 0]), 3, UnsupportedCoefficients),
        (CRecurrence.from_high_to_low([1, 1]), 0, InvalidArgument),
    ],
)
def test_synth_formula_rejects(rec, n, error):
    with pytest.raises(error):
        synth_formula(rec, n)


def test_exponent_note_mentions_both_conventions():
    assert "n-1" in EXPONENT_NOTE
    assert ExponentConvention.DIRECT.exponent(0) == 0
    assert ExponentConvention.SHIFTED.exponent(3) == 2


# --- Pell ---


@pytest.mark.parametrize("n", range(1, 17))
def test_pell_three_ways(n):
    assert pell(n) == PELL_NUMBERS[n]
    assert pell_ring(n) == PELL_NUMBERS[n]
    assert eval_formula(pell_term(n)) == PELL_NUMBERS[n]


@pytest.mark.parametrize("func", [pell, pell_ring, pell_term])
def test_pell_rejects_zero(func):
    with pytest.raises(InvalidArgument, match="n > 0"):
        func(0)


def test_pell_large_index():
    assert pell(200) == oracle_term(PELL_RECURRENCE, 200)


@pytest.mark.parametrize("n", range(0, 21))
def test_pell_binomial_sum(n):
    assert pell_binomial_sum(n) == oracle_term(PELL_RECURRENCE, n + 1)


# --- Central binomial ---


@pytest.mark.parametrize("n", range(1, 15))
def test_central_binomial_four_ways(n):
    expected = math.comb(2 * n, n)
    assert central_binomial(n) == expected
    assert central_binomial_ring(n) == expected
    assert eval_formula(central_binomial_term(n)) == expected
    assert central_binomial_alternating_sum(n) == expected


def test_central_binomial_large_index():
    assert central_binomial(60) == math.comb(120, 60)


def test_central_binomial_rejects_zero():
    with pytest.raises(InvalidArgument, match="n > 0"):
        central_binomial(0)


@pytest.mark.parametrize("n, k, expected", [(10, 3, 120), (0, 0, 1), (28, 14, 40116600), (5, 5, 1)])
def test_binomial_oracle(n, k, expected):
    assert binomial_oracle(n, k) == expected


@pytest.mark.parametrize("n, k", [(3, 4), (-1, 0), (3, -1)])
def test_binomial_oracle_rejects(n, k):
    with pytest.raises(InvalidArgument):
        binomial_oracle(n, k)


# --- Extended ranges ---


def test_pell_matches_oracle_to_300():
    window = [oracle_term(PELL_RECURRENCE, 0), oracle_term(PELL_RECURRENCE, 1)]
    for n in range(1, 301):
        assert pell(n) == window[1], n
        window = [window[1], 2 * window[1] + window[0]]


def test_pell_binomial_sum_to_300():
    for n in range(0, 301):
        assert pell_binomial_sum(n) == oracle_term(PELL_RECURRENCE, n + 1), n


def test_central_binomial_to_150():
    for n in range(1, 151):
        assert central_binomial(n) == binomial_oracle(2 * n, n), n


def test_alternating_sum_to_60():
    for n in range(1, 61):
        assert central_binomial_alternating_sum(n) == math.comb(2 * n, n), n


def test_synth_formula_seeded_fuzz():
    """Random unit-initial recurrences of order <= 6 with coefficients in 0..9 and n <= 100."""
    rng = random.Random(SYNTH_FUZZ_SEED)
    for _ in range(SYNTH_FUZZ_CASES):
        coeffs = [rng.randint(0, 9) for _ in range(rng.randint(1, 6))]
        if not any(coeffs):
            coeffs[-1] = rng.randint(1, 9)
        rec = CRecurrence.from_high_to_low(coeffs)
        n = rng.randint(1, 100)
        expected = oracle_term(rec, n)
        for strategy in BaseStrategy:
            assert eval_formula(synth_formula(rec, n, strategy)) == expected, (coeffs, n, strategy)
