"""Kronecker substitution: integer encoding of polynomials, coefficient extraction,
and the substitution identity for powers in quotient rings.

eval_substitution is a verification harness: it computes the polynomial side with
polyring and the integer side with modular exponentiation only, and checks that
they agree. eval_substitution_unchecked skips the polynomial side.
"""
import logging
from dataclasses import dataclass
from typing import Optional

import gmpy2

from .errors import (
    CoefficientOutOfRange,
    DivisionByZero,
    InvalidArgument,
    InvalidBase,
    PreconditionViolated,
    TheoremMismatch,
)
from .polyring import MonicModulus, Poly, eval_at, ring_pow

logger = logging.getLogger(__name__)


def canonical_mod(x: int, m: int) -> int:
    """Representative of x modulo m in [0, |m|)."""
    if m == 0:
        raise DivisionByZero("mod", "modulus is zero")
    return x % abs(m)


def powmod(base: int, exponent: int, modulus: int) -> int:
    """
    Modular exponentiation with a canonical result in [0, |modulus|).

    Args:
        base (int): Any integer (negative bases are reduced first).
        exponent (int): Nonnegative exponent.
        modulus (int): Nonzero modulus.

    Returns:
        int: base^exponent mod |modulus| as a plain int.
    """
    if modulus == 0:
        raise DivisionByZero("mod", "modulus is zero")
    if exponent < 0:
        raise InvalidArgument(f"powmod exponent must be >= 0, got {exponent}")
    m = abs(modulus)
    return int(gmpy2.powmod(base % m, exponent, m))


@dataclass(frozen=True)
class SubstitutionParams:
    """
    Parameters of the substitution x = gamma^k, evaluated back at x = b.

    When ``exponent`` is None the ring exponent is k itself (the theorem's form).
    Otherwise the ring exponent is ``exponent`` and gamma^k is only the base,
    which is how the Pell and central binomial closed forms are built.
    """
    gamma: int
    k: int
    b: int
    exponent: Optional[int] = None

    def __post_init__(self) -> None:
        if self.gamma < 1 or self.k < 1 or self.b < 1:
            raise InvalidArgument(
                f"gamma, k and b must be >= 1, got gamma={self.gamma}, k={self.k}, b={self.b}"
            )
        if self.exponent is not None and self.exponent < 0:
            raise InvalidArgument(f"exponent must be >= 0, got {self.exponent}")
        if self.base == self.b:
            raise InvalidArgument(f"gamma^k must differ from b (both are {self.b})")

    @property
    def base(self) -> int:
        return self.gamma ** self.k

    @property
    def ring_exponent(self) -> int:
        return self.k if self.exponent is None else self.exponent


def kron_encode(p: Poly, base: int) -> int:
    """
    Packs the coefficients of p as radix-``base`` digits, i.e. returns p(base).

    Raises:
        CoefficientOutOfRange: If a coefficient is negative or not below base.
    """
    if base < 1:
        raise InvalidArgument(f"base must be positive, got {base}")
    for i, c in enumerate(p.coeffs):
        if c < 0 or c >= base:
            raise CoefficientOutOfRange(f"coefficient {c} of x^{i} is outside [0, {base})")
    return eval_at(p, base)


def kron_decode(v: int, base: int) -> Poly:
    """Radix-``base`` digit expansion of v as a polynomial."""
    if base < 2:
        raise InvalidArgument(f"base must be >= 2, got {base}")
    if v < 0:
        raise InvalidArgument(f"value must be nonnegative, got {v}")
    digits: list[int] = []
    while v:
        v, digit = divmod(v, base)
        digits.append(digit)
    return Poly(tuple(digits))


def extract_coeff(f: Poly, k: int, b: int) -> int:
    """
    Reads [x^k]f(x) as floor(f(f(b)) / f(b)^k) mod f(b).

    f(b) must exceed every coefficient of f, otherwise base-f(b) digits overlap.

    Args:
        f (Poly): Non-constant polynomial with nonnegative coefficients.
        k (int): Coefficient index, 0 <= k <= degree(f).
        b (int): Positive evaluation point.

    Returns:
        int: The coefficient of x^k.

    Raises:
        InvalidArgument: For constant f, negative coefficients, b < 1 or k out of range.
        InvalidBase: If f(b) is zero or not above the largest coefficient.
    """
    degree = f.degree
    if degree is None or degree < 1:
        raise InvalidArgument(f"f must be non-constant, got {f}")
    if any(c < 0 for c in f.coeffs):
        raise InvalidArgument(f"f must have nonnegative coefficients, got {f}")
    if b < 1:
        raise InvalidArgument(f"b must be positive, got {b}")
    if not 0 <= k <= degree:
        raise InvalidArgument(f"k must be in [0, {degree}], got {k}")
    fb = eval_at(f, b)
    if fb == 0:
        raise InvalidBase(f"f({b}) = 0")
    largest = max(f.coeffs)
    if fb <= largest:
        raise InvalidBase(f"f({b}) = {fb} does not exceed the largest coefficient {largest}")
    return (eval_at(f, fb) // fb ** k) % fb


def eval_substitution_unchecked(f: Poly, m: MonicModulus, params: SubstitutionParams) -> int:
    """(f(G)^e mod m(G)) mod (G - b) with G = gamma^k, by integer arithmetic only."""
    base = params.base
    ring_modulus = m.evaluate(base)
    reduced = powmod(eval_at(f, base), params.ring_exponent, ring_modulus)
    return canonical_mod(reduced, base - params.b)


def eval_substitution(f: Poly, m: MonicModulus, params: SubstitutionParams) -> int:
    """
    Evaluates r(b), r = f^e mod m, through the substitution x = gamma^k and checks
    the result against the polynomial-side computation.

    Besides the theorem's hypotheses, the checks include the two range conditions
    under which the integer residues equal the encoded values:
    0 <= r(b) < gamma^k - b, and 0 <= r(gamma^k) < m(gamma^k).

    Args:
        f (Poly): Non-constant polynomial.
        m (MonicModulus): Monic modulus.
        params (SubstitutionParams): gamma, k, b and the optional ring exponent.

    Returns:
        int: r(b).

    Raises:
        PreconditionViolated: With ``which`` naming the failed hypothesis.
        TheoremMismatch: If both sides disagree despite every check passing.
    """
    # 1. Hypotheses on f and m
    degree = f.degree
    if degree is None or degree < 1:
        raise PreconditionViolated("f_constant", f"f must be non-constant, got {f}")
    if params.exponent is None and params.k < m.degree:
        raise PreconditionViolated("k_below_degree", f"k={params.k} is below modulus degree {m.degree}")

    # 2. Polynomial side, then the range conditions on r
    base = params.base
    r = ring_pow(f, params.ring_exponent, m)
    r_b = eval_at(r, params.b)
    if base <= abs(r_b):
        raise PreconditionViolated("gamma_power_bound", f"gamma^k={base} does not exceed |r(b)|={abs(r_b)}")
    final_modulus = base - params.b
    if final_modulus <= 0:
        raise PreconditionViolated("residue_range", f"gamma^k - b = {final_modulus} is not positive")
    if r_b % final_modulus == 0:
        raise PreconditionViolated("residue_zero", f"r(b)={r_b} is divisible by gamma^k - b = {final_modulus}")
    if not 0 <= r_b < final_modulus:
        raise PreconditionViolated("residue_range", f"r(b)={r_b} is outside [0, {final_modulus})")
    ring_modulus = m.evaluate(base)
    r_base = eval_at(r, base)  # r encoded at gamma^k
    if ring_modulus <= 0 or not 0 <= r_base < ring_modulus:
        raise PreconditionViolated(
            "encoding_range", f"r(gamma^k) is not a canonical residue modulo m(gamma^k) for gamma^k={base}"
        )

    # 3. Integer side must agree
    value = eval_substitution_unchecked(f, m, params)
    if value != r_b:
        logger.error(f"Substitution mismatch: f={f}, m={m}, params={params}, integer={value}, ring={r_b}")
        raise TheoremMismatch(f"integer side gave {value}, polynomial side gave {r_b}")
    logger.debug(f"Substitution verified: f={f}, m={m}, params={params}, value={value}")
    return value
