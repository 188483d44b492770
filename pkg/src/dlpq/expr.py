"""Element literals: a small expression grammar, its parser, and the
canonical formatter that inverts it.

Grammar (see docs/grammar.ebnf)::

    expr   := term (("+" | "-") term)*
    term   := unary ("*" unary)*
    unary  := "-" unary | atom
    atom   := NUMBER ["/" INTEGER] | BLADE | "(" expr ")"

Numbers are integers, decimals, or decimals with an explicitly signed
exponent ("1e-05"); the sign requirement keeps "2e1" unambiguous -- it
tokenizes as "2" followed by the blade "e1" and is rejected for the missing
"*".  A blade token is "e" followed by strictly increasing digits 1-9
("e13" is fine, "e31" is an error), which caps the surface syntax at nine
generators; larger algebras take coefficient arrays instead.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .algebra import (
    Element,
    Signature,
    add,
    basis_blade,
    indices_from_mask,
    mul,
    neg,
    scalar_element,
    sub,
)
from .scalars import FLOAT64, ScalarBackend, scalar_str


class ExprError(ValueError):
    """Base for parse-time errors; carries the byte offset."""

    def __init__(self, pos: int, message: str):
        super().__init__(f"at offset {pos}: {message}")
        self.pos = pos


class ExprSyntaxError(ExprError):
    def __init__(self, pos: int, expected: set[str], found: str):
        self.expected = frozenset(expected)
        self.found = found
        want = ", ".join(sorted(expected))
        super().__init__(pos, f"expected {want}; found {found}")


class BladeError(ExprError):
    def __init__(self, pos: int, text: str, reason: str):
        super().__init__(pos, f"bad blade {text!r}: {reason}")
        self.blade_text = text


class GeneratorRangeError(ValueError):
    """A blade names a generator the signature does not have."""

    def __init__(self, index: int, n: int, pos: int = -1):
        super().__init__(f"generator e{index} out of range: the algebra has n = {n}")
        self.index = index
        self.n = n
        self.pos = pos


# ---------------------------------------------------------------------------
# abstract syntax
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Num:
    value: Fraction
    pos: int


@dataclass(frozen=True)
class Blade:
    indices: tuple[int, ...]
    pos: int

    @property
    def mask(self) -> int:
        out = 0
        for i in self.indices:
            out |= 1 << (i - 1)
        return out


@dataclass(frozen=True)
class Neg:
    operand: "Node"
    pos: int


@dataclass(frozen=True)
class Add:
    left: "Node"
    right: "Node"
    pos: int


@dataclass(frozen=True)
class Sub:
    left: "Node"
    right: "Node"
    pos: int


@dataclass(frozen=True)
class Mul:
    left: "Node"
    right: "Node"
    pos: int


Node = Union[Num, Blade, Neg, Add, Sub, Mul]


# ---------------------------------------------------------------------------
# tokenizer
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class _Token:
    kind: str  # "num" | "blade" | one of "+-*/()" | "end"
    pos: int
    text: str = ""
    value: Fraction = Fraction(0)
    is_int: bool = False
    indices: tuple[int, ...] = ()


def _tokenize(text: str) -> list[_Token]:
    toks: list[_Token] = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch in " \t\r\n":
            i += 1
            continue
        if ch in "+-*/()":
            toks.append(_Token(ch, i, ch))
            i += 1
            continue
        if ch.isdigit():
            start = i
            while i < n and text[i].isdigit():
                i += 1
            is_int = True
            if i < n and text[i] == ".":
                i += 1
                if i >= n or not text[i].isdigit():
                    raise ExprSyntaxError(i, {"digit"}, "end" if i >= n else text[i])
                while i < n and text[i].isdigit():
                    i += 1
                is_int = False
            # exponent only with an explicit sign: "1e-05" is a number,
            # "2e1" stays NUMBER BLADE and fails for the missing "*"
            if (
                i + 2 < n
                and text[i] in "eE"
                and text[i + 1] in "+-"
                and text[i + 2].isdigit()
            ):
                i += 2
                while i < n and text[i].isdigit():
                    i += 1
                is_int = False
            raw = text[start:i]
            toks.append(_Token("num", start, raw, Fraction(raw), is_int))
            continue
        if ch == "e":
            start = i
            i += 1
            digits = ""
            while i < n and text[i].isdigit():
                digits += text[i]
                i += 1
            raw = text[start:i]
            if not digits:
                raise ExprSyntaxError(start, {"blade digits"}, raw or ch)
            indices = tuple(int(d) for d in digits)
            if any(d == 0 for d in indices):
                raise BladeError(start, raw, "generator indices start at 1")
            if any(a >= b for a, b in zip(indices, indices[1:])):
                raise BladeError(start, raw, "indices must be strictly increasing")
            toks.append(_Token("blade", start, raw, indices=indices))
            continue
        raise ExprSyntaxError(i, {"NUMBER", "blade", "operator"}, repr(ch))
    toks.append(_Token("end", n))
    return toks


# ---------------------------------------------------------------------------
# recursive-descent parser
# ---------------------------------------------------------------------------

_ATOM_EXPECTED = {"NUMBER", "blade", "'('", "'-'"}


class _Parser:
    def __init__(self, tokens: list[_Token]):
        self.toks = tokens
        self.i = 0

    def peek(self) -> _Token:
        return self.toks[self.i]

    def advance(self) -> _Token:
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, kind: str, expected: set[str]) -> _Token:
        tok = self.peek()
        if tok.kind != kind:
            raise ExprSyntaxError(tok.pos, expected, tok.text or tok.kind)
        return self.advance()

    def expr(self) -> Node:
        node = self.term()
        while self.peek().kind in "+-":
            op = self.advance()
            rhs = self.term()
            node = Add(node, rhs, op.pos) if op.kind == "+" else Sub(node, rhs, op.pos)
        return node

    def term(self) -> Node:
        node = self.unary()
        while self.peek().kind == "*":
            op = self.advance()
            node = Mul(node, self.unary(), op.pos)
        return node

    def unary(self) -> Node:
        tok = self.peek()
        if tok.kind == "-":
            self.advance()
            return Neg(self.unary(), tok.pos)
        return self.atom()

    def atom(self) -> Node:
        tok = self.peek()
        if tok.kind == "num":
            self.advance()
            if self.peek().kind == "/":
                slash = self.advance()
                if not tok.is_int:
                    raise ExprSyntaxError(
                        slash.pos, {"integer numerator"}, tok.text
                    )
                den = self.expect("num", {"integer denominator"})
                if not den.is_int:
                    raise ExprSyntaxError(den.pos, {"integer denominator"}, den.text)
                if den.value == 0:
                    raise ExprSyntaxError(den.pos, {"nonzero denominator"}, den.text)
                return Num(tok.value / den.value, tok.pos)
            return Num(tok.value, tok.pos)
        if tok.kind == "blade":
            self.advance()
            return Blade(tok.indices, tok.pos)
        if tok.kind == "(":
            self.advance()
            node = self.expr()
            self.expect(")", {"')'"})
            return node
        raise ExprSyntaxError(tok.pos, _ATOM_EXPECTED, tok.text or tok.kind)


def parse(text: str) -> Node:
    """Parse an element literal into its syntax tree."""
    if not text.strip():
        raise ExprSyntaxError(0, _ATOM_EXPECTED, "empty input")
    parser = _Parser(_tokenize(text))
    node = parser.expr()
    end = parser.peek()
    if end.kind != "end":
        raise ExprSyntaxError(end.pos, {"'+'", "'-'", "'*'", "end of input"}, end.text)
    return node


# ---------------------------------------------------------------------------
# binding and formatting
# ---------------------------------------------------------------------------


def bind(node: Node, sig: Signature, backend: ScalarBackend = FLOAT64) -> Element:
    """Evaluate a syntax tree in DL(p,q) with the given scalar backend."""
    if isinstance(node, Num):
        return scalar_element(sig, backend.cast(node.value), backend)
    if isinstance(node, Blade):
        for i in node.indices:
            if i > sig.n:
                raise GeneratorRangeError(i, sig.n, node.pos)
        return basis_blade(sig, node.mask, backend)
    if isinstance(node, Neg):
        return neg(bind(node.operand, sig, backend))
    if isinstance(node, Add):
        return add(bind(node.left, sig, backend), bind(node.right, sig, backend))
    if isinstance(node, Sub):
        return sub(bind(node.left, sig, backend), bind(node.right, sig, backend))
    if isinstance(node, Mul):
        return mul(bind(node.left, sig, backend), bind(node.right, sig, backend))
    raise TypeError(f"not a syntax node: {node!r}")


def parse_element(text: str, sig: Signature, backend: ScalarBackend = FLOAT64) -> Element:
    return bind(parse(text), sig, backend)


def format_element(u: Element) -> str:
    """Canonical text: terms in increasing blade-mask order, explicit ``*``
    between coefficient and blade, shortest round-trip scalars."""
    parts: list[str] = []
    for mask, c in enumerate(u.coeffs):
        if not c:
            continue
        negative = c < 0
        mag = scalar_str(-c if negative else c)
        if mask == 0:
            body = mag
        else:
            indices = indices_from_mask(mask)
            if indices[-1] > 9:
                # display-only form: the single-digit grammar stops at e9
                blade = "e{" + ",".join(str(i) for i in indices) + "}"
            else:
                blade = "e" + "".join(str(i) for i in indices)
            body = f"{mag}*{blade}"
        if not parts:
            parts.append(f"-{body}" if negative else body)
        else:
            parts.append(f"- {body}" if negative else f"+ {body}")
    return " ".join(parts) if parts else "0"
