"""Dense integer polynomials and powering in quotient rings Z[x]/(x^d - body(x)).

Coefficients are stored low to high: ``coeffs[i]`` is the coefficient of x^i.
Only monic moduli are supported, so every reduction stays in exact integers.
"""
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .errors import InvalidArgument


def _normalize(coeffs: Iterable[int]) -> tuple[int, ...]:
    items = [int(c) for c in coeffs]
    while items and items[-1] == 0:
        items.pop()
    return tuple(items)


@dataclass(frozen=True)
class Poly:
    """Integer polynomial with no trailing (highest-index) zero coefficients."""
    coeffs: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", _normalize(self.coeffs))

    @classmethod
    def x(cls) -> "Poly":
        return cls((0, 1))

    @classmethod
    def constant(cls, c: int) -> "Poly":
        return cls((c,))

    @property
    def degree(self) -> Optional[int]:
        """Highest index with a nonzero coefficient; None for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else None

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __add__(self, other: "Poly") -> "Poly":
        return poly_add(self, other)

    def __sub__(self, other: "Poly") -> "Poly":
        return poly_sub(self, other)

    def __neg__(self) -> "Poly":
        return poly_neg(self)

    def __mul__(self, other: "Poly") -> "Poly":
        return poly_mul(self, other)

    def __call__(self, b: int) -> int:
        return eval_at(self, b)

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts: list[str] = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if i == 0:
                body = str(mag)
            else:
                power = "x" if i == 1 else f"x^{i}"
                body = power if mag == 1 else f"{mag}{power}"
            if not parts:
                parts.append(f"-{body}" if sign == "-" else body)
            else:
                parts.append(f"{sign} {body}")
        return " ".join(parts)


@dataclass(frozen=True)
class MonicModulus:
    """The monic polynomial x^d - body(x), with degree(body) < d."""
    body: Poly
    degree: int

    def __post_init__(self) -> None:
        if self.degree < 1:
            raise InvalidArgument(f"modulus degree must be >= 1, got {self.degree}")
        body_degree = self.body.degree
        if body_degree is not None and body_degree >= self.degree:
            raise InvalidArgument(
                f"body degree {body_degree} must be below modulus degree {self.degree}"
            )

    @classmethod
    def from_poly(cls, p: Poly) -> "MonicModulus":
        """Builds the modulus from a monic polynomial such as x^2 - 2."""
        d = p.degree
        if d is None or d < 1 or p.coeffs[d] != 1:
            raise InvalidArgument(f"modulus must be monic of degree >= 1, got {p}")
        return cls(body=Poly(tuple(-c for c in p.coeffs[:d])), degree=d)

    def as_poly(self) -> Poly:
        return Poly(tuple(-c for c in _pad(self.body.coeffs, self.degree)) + (1,))

    def evaluate(self, b: int) -> int:
        """Integer value b^d - body(b) of the modulus at x = b."""
        return b ** self.degree - eval_at(self.body, b)

    def __str__(self) -> str:
        return str(self.as_poly())


def _pad(coeffs: Sequence[int], length: int) -> list[int]:
    return list(coeffs) + [0] * (length - len(coeffs))


def poly_add(a: Poly, b: Poly) -> Poly:
    n = max(len(a.coeffs), len(b.coeffs))
    return Poly(tuple(x + y for x, y in zip(_pad(a.coeffs, n), _pad(b.coeffs, n))))


def poly_neg(a: Poly) -> Poly:
    return Poly(tuple(-c for c in a.coeffs))


def poly_sub(a: Poly, b: Poly) -> Poly:
    return poly_add(a, poly_neg(b))


def poly_mul(a: Poly, b: Poly) -> Poly:
    """Schoolbook convolution product."""
    if a.is_zero() or b.is_zero():
        return Poly()
    out = [0] * (len(a.coeffs) + len(b.coeffs) - 1)
    for i, ai in enumerate(a.coeffs):
        if ai == 0:
            continue
        for j, bj in enumerate(b.coeffs):
            out[i + j] += ai * bj
    return Poly(tuple(out))


def poly_rem(a: Poly, m: MonicModulus) -> Poly:
    """
    Reduces a modulo the monic modulus m by rewriting x^d as body(x),
    from the top degree down.

    Args:
        a (Poly): Polynomial to reduce.
        m (MonicModulus): The modulus x^d - body(x).

    Returns:
        Poly: The unique remainder of degree < m.degree.
    """
    d = m.degree
    coeffs = list(a.coeffs)
    body = m.body.coeffs
    for i in range(len(coeffs) - 1, d - 1, -1):
        c = coeffs[i]
        if c == 0:
            continue
        coeffs[i] = 0
        # x^i = x^(i-d) * body(x); every target index is below i
        for j, bj in enumerate(body):
            if bj:
                coeffs[i - d + j] += c * bj
    return Poly(tuple(coeffs[:d]))


def ring_pow(base: Poly, e: int, m: MonicModulus) -> Poly:
    """
    Computes base^e in Z[x]/(m) by square-and-multiply, reducing after every product.

    Args:
        base (Poly): The polynomial to raise.
        e (int): Nonnegative exponent.
        m (MonicModulus): The modulus.

    Returns:
        Poly: base^e reduced modulo m.

    Raises:
        InvalidArgument: If e is negative.
    """
    if e < 0:
        raise InvalidArgument(f"ring_pow exponent must be >= 0, got {e}")
    result = poly_rem(Poly.constant(1), m)
    square = poly_rem(base, m)
    while e:
        if e & 1:
            result = poly_rem(poly_mul(result, square), m)
        e >>= 1
        if e:  # skip the final unused square
            square = poly_rem(poly_mul(square, square), m)
    return result


def eval_at(p: Poly, b: int) -> int:
    """Horner evaluation p(b)."""
    acc = 0
    for c in reversed(p.coeffs):
        acc = acc * b + c
    return acc
