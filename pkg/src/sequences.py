"""C-recursive sequences evaluated three ways, plus the Pell and central binomial closed forms.

1. oracle_term iterates the recurrence directly (ground truth).
2. ring_term powers x in Z[x]/(x^d - g(x)) and evaluates the remainder at 1.
3. synth_formula emits ((b^E mod (b^d - g(b))) mod (b - 1)) as an ArithmeticTerm,
   evaluated by eval_formula.

Only sequences whose initial values are all 1 have ring and formula forms.
"""
import logging
from collections import deque
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence

from .errors import (
    DegenerateModulus,
    InvalidArgument,
    UnsupportedCoefficients,
    UnsupportedInitials,
)
from .kronecker import powmod
from .polyring import MonicModulus, Poly, eval_at, ring_pow
from .terms import Add, ArithmeticTerm, IntConst, Mod, Pow, Sub, eval_formula

logger = logging.getLogger(__name__)

__all__ = [
    "BaseStrategy",
    "CRecurrence",
    "ExponentConvention",
    "EXPONENT_NOTE",
    "PELL_RECURRENCE",
    "binomial_oracle",
    "central_binomial",
    "central_binomial_alternating_sum",
    "central_binomial_ring",
    "central_binomial_term",
    "choose_base",
    "eval_formula",
    "oracle_term",
    "pell",
    "pell_binomial_sum",
    "pell_ring",
    "pell_term",
    "ring_term",
    "synth_formula",
]

EXPONENT_NOTE = (
    "x^n evaluated at 1 gives A(n) for 0-based n; the exponent n-1 gives A(n-1), "
    "i.e. the n-th term when counting from 1."
)


@dataclass(frozen=True)
class CRecurrence:
    """
    A(n) = c_{d-1} A(n-1) + ... + c_0 A(n-d) with initial values A(0..d-1).

    ``coeffs`` is stored low to high (coeffs[j] = c_j), the same order as the
    coefficients of the characteristic body g(x).
    """
    coeffs: tuple[int, ...]
    initials: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))
        object.__setattr__(self, "initials", tuple(int(v) for v in self.initials))
        if not self.coeffs:
            raise InvalidArgument("a recurrence needs at least one coefficient")
        if len(self.coeffs) != len(self.initials):
            raise InvalidArgument(
                f"order {len(self.coeffs)} needs {len(self.coeffs)} initial values, got {len(self.initials)}"
            )

    @classmethod
    def from_high_to_low(cls, coeffs: Sequence[int], initials: Optional[Sequence[int]] = None) -> "CRecurrence":
        """Builds a recurrence from c_{d-1}, ..., c_0 as written in the recurrence; initials default to ones."""
        low_to_high = tuple(reversed(tuple(coeffs)))
        return cls(low_to_high, tuple(initials) if initials is not None else (1,) * len(low_to_high))

    @property
    def order(self) -> int:
        return len(self.coeffs)

    def characteristic_body(self) -> Poly:
        return Poly(self.coeffs)

    def modulus(self) -> MonicModulus:
        return MonicModulus(self.characteristic_body(), self.order)

    def has_unit_initials(self) -> bool:
        return all(v == 1 for v in self.initials)


PELL_RECURRENCE = CRecurrence(coeffs=(1, 2), initials=(0, 1))


class ExponentConvention(Enum):
    DIRECT = "n"
    SHIFTED = "n-1"

    def exponent(self, n: int) -> int:
        e = n if self is ExponentConvention.DIRECT else n - 1
        if e < 0:
            raise InvalidArgument(f"exponent convention {self.value!r} needs n >= 1, got n={n}")
        return e


class BaseStrategy(Enum):
    ORACLE_MINIMAL = "oracle"
    APRIORI_BOUND = "apriori"


def oracle_term(rec: CRecurrence, n: int) -> int:
    """A(n) by iterating the recurrence from its initial values."""
    if n < 0:
        raise InvalidArgument(f"n must be >= 0, got {n}")
    if n < rec.order:
        return rec.initials[n]
    window = deque(rec.initials, maxlen=rec.order)
    # coeffs are low to high, matching the window from A(n-d) to A(n-1)
    for _ in range(n - rec.order + 1):
        window.append(sum(c * a for c, a in zip(rec.coeffs, window)))
    return window[-1]


def _require_unit_initials(rec: CRecurrence) -> None:
    if not rec.has_unit_initials():
        raise UnsupportedInitials(f"initial values must all be 1, got {list(rec.initials)}")


def ring_term(rec: CRecurrence, n: int, convention: ExponentConvention = ExponentConvention.DIRECT) -> int:
    """
    Evaluates x^E mod (x^d - g(x)) at x = 1.

    With the DIRECT convention (E = n) this equals oracle_term(rec, n).

    Raises:
        UnsupportedInitials: If any initial value differs from 1.
    """
    _require_unit_initials(rec)
    e = convention.exponent(n)
    return eval_at(ring_pow(Poly.x(), e, rec.modulus()), 1)


def choose_base(rec: CRecurrence, e: int, strategy: BaseStrategy) -> int:
    """
    Picks the substitution base b for the term A(e).

    Both strategies guarantee b >= A(e) + max(c) + 1, which makes
    b^e mod (b^d - g(b)) equal to the encoded remainder and keeps A(e) below b - 1.

    Args:
        rec (CRecurrence): Recurrence with unit initials and nonnegative coefficients.
        e (int): Ring exponent.
        strategy (BaseStrategy): ORACLE_MINIMAL uses the exact A(e);
            APRIORI_BOUND uses A(e) <= S^e with S the coefficient sum.

    Returns:
        int: The base b.
    """
    largest = max(rec.coeffs)
    if strategy is BaseStrategy.ORACLE_MINIMAL:
        return oracle_term(rec, e) + largest + 1
    total = sum(rec.coeffs)
    # smallest power of two strictly above S^e + S
    return 1 << (total ** e + total).bit_length()


def synth_formula(
    rec: CRecurrence,
    n: int,
    strategy: BaseStrategy = BaseStrategy.APRIORI_BOUND,
    convention: ExponentConvention = ExponentConvention.DIRECT,
) -> ArithmeticTerm:
    """
    Synthesizes ((b^E mod (b^d - g(b))) mod (b - 1)) with a concrete base b.

    Args:
        rec (CRecurrence): Recurrence with all initial values 1 and nonnegative,
            not all zero, coefficients.
        n (int): Term index, n >= 1.
        strategy (BaseStrategy): How b is chosen.
        convention (ExponentConvention): E = n (DIRECT) or E = n - 1 (SHIFTED).

    Returns:
        ArithmeticTerm: A term whose value is oracle_term(rec, E).

    Raises:
        InvalidArgument: If n < 1.
        UnsupportedInitials: If an initial value is not 1.
        UnsupportedCoefficients: For negative or all-zero coefficients.
        DegenerateModulus: If b - 1 or b^d - g(b) is too small to reduce by.
    """
    # 1. Supported recurrences only
    if n < 1:
        raise InvalidArgument(f"n must be >= 1, got {n}")
    _require_unit_initials(rec)
    if any(c < 0 for c in rec.coeffs):
        raise UnsupportedCoefficients(f"coefficients must be nonnegative, got {list(rec.coeffs)}")
    if not any(rec.coeffs):
        raise UnsupportedCoefficients("coefficients must not all be zero")

    # 2. Base and the two moduli
    e = convention.exponent(n)
    b = choose_base(rec, e, strategy)
    g_b = eval_at(rec.characteristic_body(), b)
    if b - 1 <= 0:
        raise DegenerateModulus(f"b - 1 = {b - 1}")
    if b ** rec.order - g_b <= 1:
        raise DegenerateModulus(f"b^d - g(b) = {b ** rec.order - g_b}")
    logger.debug(f"synth_formula: order={rec.order}, E={e}, strategy={strategy.value}, base bits={b.bit_length()}")

    # 3. ((b^E mod (b^d - g(b))) mod (b - 1))
    base = IntConst(b)
    return Mod(
        Mod(Pow(base, IntConst(e)), Sub(Pow(base, IntConst(rec.order)), IntConst(g_b))),
        Sub(base, IntConst(1)),
    )


def _require_positive(n: int, name: str) -> None:
    if n < 1:
        raise InvalidArgument(
            f"{name} is valid for n > 0; n={n} makes the final modulus zero (undefined remainder)"
        )


def pell(n: int) -> int:
    """P_n = ((3^n + 1)^(n-1) mod (9^n - 2)) mod (3^n - 1), for n >= 1."""
    _require_positive(n, "the Pell formula")
    t = 3 ** n
    return powmod(t + 1, n - 1, t * t - 2) % (t - 1)


def pell_ring(n: int) -> int:
    """Polynomial-side Pell value: (x + 1)^(n-1) mod (x^2 - 2) evaluated at 1."""
    _require_positive(n, "the Pell formula")
    return eval_at(ring_pow(Poly((1, 1)), n - 1, MonicModulus(Poly.constant(2), 2)), 1)


def pell_term(n: int) -> ArithmeticTerm:
    """The Pell closed form for a concrete n as an ArithmeticTerm."""
    _require_positive(n, "the Pell formula")
    three_n = Pow(IntConst(3), IntConst(n))
    return Mod(
        Mod(Pow(Add(three_n, IntConst(1)), IntConst(n - 1)), Sub(Pow(IntConst(9), IntConst(n)), IntConst(2))),
        Sub(three_n, IntConst(1)),
    )


def pell_binomial_sum(n: int) -> int:
    """P_{n+1} = sum_{k=0}^{n} C(n, k) 2^floor(k/2)."""
    if n < 0:
        raise InvalidArgument(f"n must be >= 0, got {n}")
    total = 0
    binom = 1
    for k in range(n + 1):
        total += binom << (k // 2)
        binom = binom * (n - k) // (k + 1)
    return total


def central_binomial(n: int) -> int:
    """C(2n, n) = ((4^n + 1)^(2n) mod (4^(n(n+1)) + 1)) mod (4^n - 1), for n >= 1."""
    _require_positive(n, "the central binomial formula")
    q = 4 ** n
    return powmod(q + 1, 2 * n, q ** (n + 1) + 1) % (q - 1)


def central_binomial_ring(n: int) -> int:
    """Polynomial-side value: (x + 1)^(2n) mod (x^(n+1) + 1) evaluated at 1."""
    _require_positive(n, "the central binomial formula")
    return eval_at(ring_pow(Poly((1, 1)), 2 * n, MonicModulus(Poly.constant(-1), n + 1)), 1)


def central_binomial_term(n: int) -> ArithmeticTerm:
    """The central binomial closed form for a concrete n as an ArithmeticTerm."""
    _require_positive(n, "the central binomial formula")
    four_n = Pow(IntConst(4), IntConst(n))
    return Mod(
        Mod(
            Pow(Add(four_n, IntConst(1)), IntConst(2 * n)),
            Add(Pow(IntConst(4), IntConst(n * (n + 1))), IntConst(1)),
        ),
        Sub(four_n, IntConst(1)),
    )


def central_binomial_alternating_sum(n: int) -> int:
    """sum_{k=0}^{2n} C(2n, k) (-1)^floor(k/(n+1)), by direct summation."""
    if n < 0:
        raise InvalidArgument(f"n must be >= 0, got {n}")
    total = 0
    binom = 1
    m = 2 * n
    for k in range(m + 1):
        total += -binom if (k // (n + 1)) % 2 else binom
        binom = binom * (m - k) // (k + 1)
    return total


def binomial_oracle(n: int, k: int) -> int:
    """
    C(n, k) by the multiplicative formula; each partial product divides exactly.

    Raises:
        InvalidArgument: If k > n or either argument is negative.
    """
    if n < 0 or k < 0:
        raise InvalidArgument(f"n and k must be nonnegative, got n={n}, k={k}")
    if k > n:
        raise InvalidArgument(f"k must not exceed n, got n={n}, k={k}")
    k = min(k, n - k)
    result = 1
    for i in range(1, k + 1):
        result = result * (n - k + i) // i
    return result
