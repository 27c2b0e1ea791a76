"""Arithmetic terms: expression trees over integer constants, ^, mod, div, + and -.

The canonical text form parenthesizes every binary node, the root included, and
puts single spaces around operators: ``((((3 ^ 5) + 1) ^ 4) mod ((9 ^ 5) - 2))``.
parse_term(render_term(t)) == t for every term.
"""
import re
from dataclasses import dataclass
from typing import Union

from .errors import DivisionByZero, InvalidArgument, TermSyntaxError
from .kronecker import powmod

# Integer literals may carry a sign; operators are separated by whitespace in the canonical form
TOKEN_PATTERN = re.compile(r"\s*(?:(?P<int>-?\d+)|(?P<op>\^|mod|div|\+|-)|(?P<lparen>\()|(?P<rparen>\)))")


@dataclass(frozen=True)
class IntConst:
    value: int


@dataclass(frozen=True)
class Pow:
    base: "ArithmeticTerm"
    exponent: "ArithmeticTerm"


@dataclass(frozen=True)
class Mod:
    value: "ArithmeticTerm"
    modulus: "ArithmeticTerm"


@dataclass(frozen=True)
class FloorDiv:
    num: "ArithmeticTerm"
    den: "ArithmeticTerm"


@dataclass(frozen=True)
class Add:
    left: "ArithmeticTerm"
    right: "ArithmeticTerm"


@dataclass(frozen=True)
class Sub:
    left: "ArithmeticTerm"
    right: "ArithmeticTerm"


ArithmeticTerm = Union[IntConst, Pow, Mod, FloorDiv, Add, Sub]

_OPERATORS: dict[type, str] = {Pow: "^", Mod: "mod", FloorDiv: "div", Add: "+", Sub: "-"}
_NODES: dict[str, type] = {symbol: node for node, symbol in _OPERATORS.items()}


def _children(t: ArithmeticTerm) -> tuple[ArithmeticTerm, ArithmeticTerm]:
    if isinstance(t, Pow):
        return t.base, t.exponent
    if isinstance(t, Mod):
        return t.value, t.modulus
    if isinstance(t, FloorDiv):
        return t.num, t.den
    if isinstance(t, (Add, Sub)):
        return t.left, t.right
    raise InvalidArgument(f"not a binary term: {t!r}")


def render_term(t: ArithmeticTerm) -> str:
    """Canonical text form of a term."""
    if isinstance(t, IntConst):
        return str(t.value)
    left, right = _children(t)
    return f"({render_term(left)} {_OPERATORS[type(t)]} {render_term(right)})"


def _tokenize(text: str) -> list[tuple[str, str]]:
    tokens: list[tuple[str, str]] = []
    pos = 0
    stripped_end = len(text.rstrip())
    while pos < stripped_end:
        match = TOKEN_PATTERN.match(text, pos)
        if not match or match.end() == pos:
            raise TermSyntaxError(f"unexpected character at offset {pos}: {text[pos:pos + 10]!r}")
        kind = match.lastgroup
        assert kind is not None
        tokens.append((kind, match.group(kind)))
        pos = match.end()
    return tokens


def parse_term(text: str) -> ArithmeticTerm:
    """
    Parses the canonical text form back into a term.

    Args:
        text (str): Text produced by render_term (whitespace may vary).

    Returns:
        ArithmeticTerm: The parsed tree.

    Raises:
        TermSyntaxError: If the text is not a well-formed fully parenthesized term.
    """
    tokens = _tokenize(text)
    if not tokens:
        raise TermSyntaxError("empty term")
    term, pos = _parse_at(tokens, 0)
    if pos != len(tokens):
        raise TermSyntaxError(f"trailing tokens after position {pos}: {tokens[pos:]}")
    return term


def _parse_at(tokens: list[tuple[str, str]], pos: int) -> tuple[ArithmeticTerm, int]:
    if pos >= len(tokens):
        raise TermSyntaxError("unexpected end of term")
    kind, text = tokens[pos]
    if kind == "int":
        return IntConst(int(text)), pos + 1
    if kind != "lparen":
        raise TermSyntaxError(f"expected integer or '(' but found {text!r}")
    left, pos = _parse_at(tokens, pos + 1)
    if pos >= len(tokens) or tokens[pos][0] != "op":
        raise TermSyntaxError(f"expected operator at token {pos}")
    node = _NODES[tokens[pos][1]]
    right, pos = _parse_at(tokens, pos + 1)
    if pos >= len(tokens) or tokens[pos][0] != "rparen":
        raise TermSyntaxError(f"expected ')' at token {pos}")
    return node(left, right), pos + 1


def eval_formula(t: ArithmeticTerm) -> int:
    """
    Evaluates a term bottom-up with exact integers.

    A Pow directly under a Mod is computed by modular exponentiation, so
    formulas like (B + 1)^e mod M never materialize (B + 1)^e.

    Raises:
        DivisionByZero: With the dotted node path of the zero modulus or denominator.
        InvalidArgument: For a negative exponent.
    """
    return _eval(t, "root")


def _eval(t: ArithmeticTerm, path: str) -> int:
    if isinstance(t, IntConst):
        return t.value
    if isinstance(t, Mod):
        # The modulus is evaluated before the value
        modulus = _eval(t.modulus, f"{path}.modulus")
        if modulus == 0:
            raise DivisionByZero(f"{path}.modulus")
        if isinstance(t.value, Pow):
            base = _eval(t.value.base, f"{path}.value.base")
            exponent = _eval(t.value.exponent, f"{path}.value.exponent")
            if exponent < 0:
                raise InvalidArgument(f"negative exponent {exponent} at {path}.value.exponent")
            return powmod(base, exponent, modulus)
        return _eval(t.value, f"{path}.value") % abs(modulus)  # canonical residue in [0, |M|)
    if isinstance(t, Pow):
        base = _eval(t.base, f"{path}.base")
        exponent = _eval(t.exponent, f"{path}.exponent")
        if exponent < 0:
            raise InvalidArgument(f"negative exponent {exponent} at {path}.exponent")
        return base ** exponent
    if isinstance(t, FloorDiv):
        den = _eval(t.den, f"{path}.den")
        if den == 0:
            raise DivisionByZero(f"{path}.den")
        return _eval(t.num, f"{path}.num") // den
    if isinstance(t, Add):
        return _eval(t.left, f"{path}.left") + _eval(t.right, f"{path}.right")
    if isinstance(t, Sub):
        return _eval(t.left, f"{path}.left") - _eval(t.right, f"{path}.right")
    raise InvalidArgument(f"unknown term node {t!r} at {path}")
