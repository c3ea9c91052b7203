"""Plain-text Hamiltonian expressions.

Grammar (whitespace-insensitive; no implicit multiplication):

    expr   := ["+"|"-"] term (("+"|"-") term)*
    term   := factor ("*" factor)*
    factor := number | "i" | symbol ("^" uint)? | "(" expr ")"
    number := uint | uint "/" uint

Symbols are either the two-mode aliases x, y, px, py or the numbered forms
x<N>, p<N> with N >= 1; mixing the two styles in one expression is an error
that names the clashing symbols.  Powers attach to symbols only.

Parsing produces a flat sum-of-products AST: products are flattened left to
right, parenthesized sums are distributed, and like terms are never merged,
so the AST is a faithful record of the expression's term structure.  Every
flattened coefficient is purely real or purely imaginary by construction.
"""

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import AliasConflictError, ParseError
from .weyl import (
    BasisIndex,
    ComplexRational,
    ONE,
    I,
    WeylPolynomial,
    format_coefficient,
)

__all__ = [
    "ExprTerm",
    "HamiltonianExpr",
    "parse_hamiltonian",
    "infer_num_modes",
    "lower",
    "render",
    "parse_to_polynomial",
]

_ALIASES = {"x": ("x", 1), "y": ("x", 2), "px": ("p", 1), "py": ("p", 2)}
_NUMBERED = re.compile(r"^([xp])([1-9][0-9]*)$")

_TOKEN_NAMES = {
    "+": "'+'", "-": "'-'", "*": "'*'", "/": "'/'",
    "^": "'^'", "(": "'('", ")": "')'",
}


@dataclass(frozen=True)
class _Token:
    kind: str          # "number", "ident", one of +-*/^() or "end"
    text: str
    line: int
    col: int


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    line, col = 1, 1
    pos = 0
    while pos < len(text):
        ch = text[pos]
        if ch == "\n":
            line += 1
            col = 1
            pos += 1
            continue
        if ch.isspace():
            col += 1
            pos += 1
            continue
        if ch.isdigit():
            start = pos
            while pos < len(text) and text[pos].isdigit():
                pos += 1
            tokens.append(_Token("number", text[start:pos], line, col))
            col += pos - start
            continue
        if ch.isalpha():
            start = pos
            while pos < len(text) and text[pos].isalnum():
                pos += 1
            tokens.append(_Token("ident", text[start:pos], line, col))
            col += pos - start
            continue
        if ch in "+-*/^()":
            tokens.append(_Token(ch, ch, line, col))
            col += 1
            pos += 1
            continue
        raise ParseError(
            f"{line}:{col}: unexpected character {ch!r}", line, col, ())
    tokens.append(_Token("end", "", line, col))
    return tokens


@dataclass(frozen=True)
class ExprTerm:
    """One flattened product: a scalar times an ordered word of symbol powers."""

    coeff: ComplexRational
    factors: tuple[tuple[str, int], ...]


@dataclass(frozen=True)
class HamiltonianExpr:
    """Flat sum of terms, in source order."""

    terms: tuple[ExprTerm, ...]

    def symbols(self) -> set[str]:
        return {name for term in self.terms for name, _ in term.factors}


def _validate_symbol(name: str, token: _Token) -> None:
    if name in _ALIASES or _NUMBERED.match(name):
        return
    raise ParseError(
        f"{token.line}:{token.col}: unknown symbol {name!r}; expected one of "
        "x, y, px, py or numbered x<N>, p<N> with N >= 1",
        token.line, token.col, ("symbol",))


def _check_no_mixing(symbols: set[str], line: int = 1, col: int = 1) -> None:
    aliases = sorted(s for s in symbols if s in _ALIASES)
    numbered = sorted(s for s in symbols if _NUMBERED.match(s))
    if aliases and numbered:
        raise AliasConflictError(
            f"alias symbols {{{', '.join(aliases)}}} cannot be mixed with "
            f"numbered symbols {{{', '.join(numbered)}}} in one expression",
            line, col, ())


class _Parser:
    def __init__(self, tokens: list[_Token]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def fail(self, expected: tuple[str, ...]) -> ParseError:
        tok = self.peek()
        got = "end of input" if tok.kind == "end" else repr(tok.text)
        names = ", ".join(expected)
        return ParseError(
            f"{tok.line}:{tok.col}: expected {names}; got {got}",
            tok.line, tok.col, expected)

    def parse_expr(self) -> list[ExprTerm]:
        terms: list[ExprTerm] = []
        sign = ONE
        if self.peek().kind in ("+", "-"):
            if self.advance().kind == "-":
                sign = -ONE
        terms.extend(self._signed_term(sign))
        while self.peek().kind in ("+", "-"):
            sign = ONE if self.advance().kind == "+" else -ONE
            terms.extend(self._signed_term(sign))
        return terms

    def _signed_term(self, sign: ComplexRational) -> list[ExprTerm]:
        return [
            ExprTerm(coeff=sign * t.coeff, factors=t.factors)
            for t in self.parse_term()
        ]

    def parse_term(self) -> list[ExprTerm]:
        product = self.parse_factor()
        while self.peek().kind == "*":
            self.advance()
            rhs = self.parse_factor()
            product = [
                ExprTerm(coeff=a.coeff * b.coeff, factors=a.factors + b.factors)
                for a in product
                for b in rhs
            ]
        return product

    def parse_factor(self) -> list[ExprTerm]:
        tok = self.peek()
        if tok.kind == "number":
            self.advance()
            numerator = int(tok.text)
            if self.peek().kind == "/":
                self.advance()
                den_tok = self.peek()
                if den_tok.kind != "number":
                    raise self.fail(("number",))
                self.advance()
                if int(den_tok.text) == 0:
                    raise ParseError(
                        f"{den_tok.line}:{den_tok.col}: zero denominator",
                        den_tok.line, den_tok.col, ())
                value = Fraction(numerator, int(den_tok.text))
            else:
                value = Fraction(numerator)
            return [ExprTerm(coeff=ComplexRational(value), factors=())]
        if tok.kind == "ident":
            self.advance()
            if tok.text == "i":
                return [ExprTerm(coeff=I, factors=())]
            _validate_symbol(tok.text, tok)
            power = 1
            if self.peek().kind == "^":
                self.advance()
                ptok = self.peek()
                if ptok.kind != "number":
                    raise self.fail(("number",))
                self.advance()
                power = int(ptok.text)
            return [ExprTerm(coeff=ONE, factors=((tok.text, power),))]
        if tok.kind == "(":
            self.advance()
            inner = self.parse_expr()
            if self.peek().kind != ")":
                raise self.fail(("')'", "'+'", "'-'", "'*'"))
            self.advance()
            return inner
        raise self.fail(("number", "'i'", "symbol", "'('"))


def parse_hamiltonian(text: str) -> HamiltonianExpr:
    """Parse expression text to its flat AST.

    Raises ParseError (with 1-based line/column and the expected-token set)
    on malformed input, and AliasConflictError when alias and numbered
    symbol styles are mixed.
    """
    parser = _Parser(_tokenize(text))
    terms = parser.parse_expr()
    tok = parser.peek()
    if tok.kind != "end":
        raise parser.fail(("'+'", "'-'", "'*'", "end of input"))
    expr = HamiltonianExpr(terms=tuple(terms))
    _check_no_mixing(expr.symbols())
    return expr


def infer_num_modes(expr: HamiltonianExpr) -> int:
    """Mode count: 2 for alias style, the largest index for numbered style,
    and 1 for constant expressions with no symbols at all."""
    symbols = expr.symbols()
    _check_no_mixing(symbols)
    if any(s in _ALIASES for s in symbols):
        return 2
    modes = [int(_NUMBERED.match(s).group(2)) for s in symbols]
    return max(modes, default=1)


def lower(expr: HamiltonianExpr) -> WeylPolynomial:
    """Evaluate the AST to a normal-ordered operator polynomial.

    Factors multiply in source order, so noncommuting products mean exactly
    what the expression wrote.
    """
    num_modes = infer_num_modes(expr)
    total = WeylPolynomial.zero(num_modes)
    for term in expr.terms:
        acc = WeylPolynomial.constant(term.coeff, num_modes)
        for name, power in term.factors:
            kind, mode = _ALIASES.get(name) or _NUMBERED.match(name).groups()
            base = WeylPolynomial.basis_element(
                BasisIndex(kind, int(mode)), num_modes)
            for _ in range(power):
                acc = acc * base
        total = total + acc
    return total


def render(expr: HamiltonianExpr) -> str:
    """Canonical text of an AST; parsing it back yields an identical AST.

    (Identical for parser-produced ASTs, whose coefficients are purely real
    or purely imaginary; hand-built mixed coefficients still render, but
    reparse as their distributed two-term form.)
    """
    pieces: list[str] = []
    for term in expr.terms:
        factor_txt = "*".join(
            name if power == 1 else f"{name}^{power}"
            for name, power in term.factors)
        sign, body = format_coefficient(term.coeff, standalone=not factor_txt)
        text = body + factor_txt if factor_txt else body
        if not pieces:
            pieces.append(text if sign == "+" else f"-{text}")
        else:
            pieces.append(f" {sign} {text}")
    return "".join(pieces) if pieces else "0"


def parse_to_polynomial(text: str) -> WeylPolynomial:
    """Convenience: parse and lower in one step."""
    return lower(parse_hamiltonian(text))
