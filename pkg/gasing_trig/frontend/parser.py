"""
Expression grammar, highest binding first:

    atom    ::= NUMBER | IDENT | "(" expr ")"
              | "sqrt" "(" expr ")" | FN "(" ANGLE ")"
    power   ::= atom { "^" INTEGER }
    unary   ::= "-" unary | power
    term    ::= unary { ("*" | "/") unary }
    expr    ::= term { ("+" | "-") term }

FN is one of the six trigonometric functions and ANGLE is an identifier
or whole degrees such as 30deg. tan, sec, csc and cot expand over sine
and cosine while parsing. A bare identifier is a side length.
"""

import re
from dataclasses import dataclass
from enum import Enum, auto
from fractions import Fraction

from gasing_trig.backend.angles import TRIG_NAMES, exact_value
from gasing_trig.backend.exactnum import sqrt_exact
from gasing_trig.backend.exceptions import DomainException, ExprSyntaxException, UnknownFunctionException
from gasing_trig.backend.trigexpr import TrigRational, const, cos, length, sin


class TokenType(Enum):
    NUMBER = auto()
    DEGREES = auto()
    IDENT = auto()
    PLUS = auto()
    MINUS = auto()
    TIMES = auto()
    DIVIDE = auto()
    POWER = auto()
    LPAREN = auto()
    RPAREN = auto()
    END = auto()


@dataclass(frozen=True)
class Token:
    type: TokenType
    text: str
    offset: int


_TOKEN = re.compile(
    r"(?P<DEGREES>\d+deg\b)"
    r"|(?P<NUMBER>\d+(?:\.\d+)?)"
    r"|(?P<IDENT>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<PUNCT>[-+*/^()])"
    r"|(?P<SPACE>\s+)"
)
_PUNCT = {
    "+": TokenType.PLUS,
    "-": TokenType.MINUS,
    "*": TokenType.TIMES,
    "/": TokenType.DIVIDE,
    "^": TokenType.POWER,
    "(": TokenType.LPAREN,
    ")": TokenType.RPAREN,
}


def tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    position = 0
    while position < len(text):
        match = _TOKEN.match(text, position)
        if match is None:
            raise ExprSyntaxException(f"unexpected character {text[position]!r}", _byte_offset(text, position))
        kind = match.lastgroup
        if kind == "PUNCT":
            tokens.append(Token(_PUNCT[match.group()], match.group(), position))
        elif kind != "SPACE":
            tokens.append(Token(TokenType[kind], match.group(), position))
        position = match.end()
    tokens.append(Token(TokenType.END, "", len(text)))
    return tokens


def _byte_offset(text: str, position: int) -> int:
    return len(text[:position].encode("utf-8"))


def _expand(name: str, angle: str) -> TrigRational:
    s, c = sin(angle), cos(angle)
    return {
        "sin": s,
        "cos": c,
        "tan": s / c,
        "sec": 1 / c,
        "csc": 1 / s,
        "cot": c / s,
    }[name]


class Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.index = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def _error(self, message: str, token: Token | None = None) -> ExprSyntaxException:
        token = token or self.current
        return ExprSyntaxException(message, _byte_offset(self.text, token.offset))

    def _advance(self) -> Token:
        token = self.current
        if token.type is not TokenType.END:
            self.index += 1
        return token

    def _expect(self, kind: TokenType, what: str) -> Token:
        if self.current.type is not kind:
            found = self.current.text or "end of input"
            raise self._error(f"expected {what}, found {found!r}")
        return self._advance()

    def parse(self) -> TrigRational:
        result = self.expr()
        if self.current.type is not TokenType.END:
            raise self._error(f"unexpected {self.current.text!r}")
        return result

    def expr(self) -> TrigRational:
        result = self.term()
        while self.current.type in (TokenType.PLUS, TokenType.MINUS):
            op = self._advance()
            right = self.term()
            result = result + right if op.type is TokenType.PLUS else result - right
        return result

    def term(self) -> TrigRational:
        result = self.unary()
        while self.current.type in (TokenType.TIMES, TokenType.DIVIDE):
            op = self._advance()
            right = self.unary()
            if op.type is TokenType.TIMES:
                result = result * right
            elif right.num.is_zero:
                raise self._error("division by zero", op)
            else:
                result = result / right
        return result

    def unary(self) -> TrigRational:
        if self.current.type is TokenType.MINUS:
            self._advance()
            return -self.unary()
        return self.power()

    def power(self) -> TrigRational:
        result = self.atom()
        while self.current.type is TokenType.POWER:
            self._advance()
            exponent = self._expect(TokenType.NUMBER, "a positive integer exponent")
            if not exponent.text.isdigit() or int(exponent.text) == 0:
                raise self._error("exponents must be positive integers", exponent)
            result = result ** int(exponent.text)
        return result

    def atom(self) -> TrigRational:
        token = self.current
        if token.type is TokenType.NUMBER:
            self._advance()
            return const(Fraction(token.text))
        if token.type is TokenType.LPAREN:
            self._advance()
            inner = self.expr()
            self._expect(TokenType.RPAREN, "')'")
            return inner
        if token.type is TokenType.IDENT:
            self._advance()
            if self.current.type is not TokenType.LPAREN:
                if token.text in TRIG_NAMES or token.text == "sqrt":
                    raise self._error(f"{token.text} needs an argument in parentheses")
                return length(token.text)
            if token.text == "sqrt":
                return self._sqrt(token)
            if token.text in TRIG_NAMES:
                return self._function(token.text)
            raise UnknownFunctionException(f"unknown function {token.text!r}")
        found = token.text or "end of input"
        raise self._error(f"unexpected {found!r}")

    def _sqrt(self, name: Token) -> TrigRational:
        self._expect(TokenType.LPAREN, "'('")
        argument = self.expr()
        self._expect(TokenType.RPAREN, "')'")
        if not argument.is_constant:
            raise self._error("sqrt takes a constant argument", name)
        root = sqrt_exact(argument.constant_value())
        if root is None:
            raise DomainException(f"sqrt({argument.render()}) needs a nested radical")
        return const(root)

    def _function(self, name: str) -> TrigRational:
        self._expect(TokenType.LPAREN, "'('")
        angle = self.current
        if angle.type is TokenType.DEGREES:
            self._advance()
            result = const(exact_value(name, int(angle.text[:-3])))  # type: ignore[arg-type]
        elif angle.type is TokenType.IDENT:
            self._advance()
            result = _expand(name, angle.text)
        else:
            raise self._error("expected an angle name or whole degrees like 30deg")
        self._expect(TokenType.RPAREN, "')'")
        return result


def parse(text: str) -> TrigRational:
    return Parser(text).parse()
