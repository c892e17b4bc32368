"""Recursive-descent parser for form expressions such as ``(E4-1)/240`` or ``[2*E4/240^2]_8``.

Grammar (``@`` is the tensor product, ``^`` takes a nonnegative integer)::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/' | '@') unary)*
    unary  := '-' unary | factor
    factor := atom ('^' int)?
    atom   := int | name | 'q0(' expr ')' | 'chi0(' expr ')' | '[' expr ']_' int | '(' expr ')'
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

NAMES = ("E1", "G3", "E4", "E6")


class ParseError(ValueError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos


@dataclass(frozen=True)
class Num:
    value: int


@dataclass(frozen=True)
class Name:
    id: str


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Neg:
    operand: "Expr"


@dataclass(frozen=True)
class Pow:
    base: "Expr"
    exp: int


@dataclass(frozen=True)
class Call:
    func: str  # q0 or chi0
    arg: "Expr"


@dataclass(frozen=True)
class Bracket:
    arg: "Expr"
    n: int


Expr = Union[Num, Name, BinOp, Neg, Pow, Call, Bracket]

_TOKEN = re.compile(r"\s*(?:(\d+)|(q0\(|chi0\(|\]_)|([A-Za-z_][A-Za-z0-9_]*)|(\S))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # trailing whitespace
            break
        start = m.start(m.lastindex)
        num, kw, word, sym = m.groups()
        if num is not None:
            out.append(("int", num, start))
        elif kw is not None:
            out.append(("kw", kw, start))
        elif word is not None:
            if word not in NAMES:
                raise ParseError(f"unknown name {word!r}", start)
            out.append(("name", word, start))
        elif sym in "+-*/@^()[":
            out.append(("sym", sym, start))
        else:
            raise ParseError(f"unexpected character {sym!r}", start)
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self) -> tuple[str, str, int]:
        return self.toks[self.i]

    def take(self, kind: str, value: str | None = None) -> tuple[str, str, int]:
        tok = self.peek()
        if tok[0] != kind or (value is not None and tok[1] != value):
            want = value or kind
            got = tok[1] or "end of input"
            raise ParseError(f"expected {want!r}, found {got!r}", tok[2])
        self.i += 1
        return tok

    def at(self, *values: str) -> bool:
        kind, value, _ = self.peek()
        return kind in ("sym", "kw") and value in values

    def expr(self) -> Expr:
        left = self.term()
        while self.at("+", "-"):
            op = self.take("sym")[1]
            left = BinOp(op, left, self.term())
        return left

    def term(self) -> Expr:
        left = self.unary()
        while self.at("*", "/", "@"):
            op = self.take("sym")[1]
            left = BinOp(op, left, self.unary())
        return left

    def unary(self) -> Expr:
        if self.at("-"):
            self.take("sym")
            return Neg(self.unary())
        return self.factor()

    def factor(self) -> Expr:
        base = self.atom()
        if self.at("^"):
            self.take("sym")
            return Pow(base, int(self.take("int")[1]))
        return base

    def atom(self) -> Expr:
        kind, value, pos = self.peek()
        if kind == "int":
            self.i += 1
            return Num(int(value))
        if kind == "name":
            self.i += 1
            return Name(value)
        if kind == "kw" and value in ("q0(", "chi0("):
            self.i += 1
            arg = self.expr()
            self.take("sym", ")")
            return Call(value[:-1], arg)
        if self.at("["):
            self.take("sym")
            arg = self.expr()
            self.take("kw", "]_")
            return Bracket(arg, int(self.take("int")[1]))
        if self.at("("):
            self.take("sym")
            inner = self.expr()
            self.take("sym", ")")
            return inner
        raise ParseError(f"unexpected {value or 'end of input'!r}", pos)


def parse(text: str) -> Expr:
    p = _Parser(text)
    e = p.expr()
    p.take("end")
    return e


_PREC = {"+": 1, "-": 1, "*": 2, "/": 2, "@": 2}


def _level(e: Expr) -> int:
    if isinstance(e, BinOp):
        return _PREC[e.op]
    if isinstance(e, Neg):
        return 3
    if isinstance(e, Pow):
        return 4
    return 5


def unparse(e: Expr) -> str:
    """Print with the fewest parentheses that parse back to the same tree."""
    if isinstance(e, Num):
        return str(e.value)
    if isinstance(e, Name):
        return e.id
    if isinstance(e, Call):
        return f"{e.func}({unparse(e.arg)})"
    if isinstance(e, Bracket):
        return f"[{unparse(e.arg)}]_{e.n}"
    if isinstance(e, Pow):
        b = unparse(e.base)
        return f"{b if _level(e.base) == 5 else f'({b})'}^{e.exp}"
    if isinstance(e, Neg):
        s = unparse(e.operand)
        return f"-{s if _level(e.operand) >= 3 else f'({s})'}"
    lv = _PREC[e.op]
    left, right = unparse(e.left), unparse(e.right)
    if _level(e.left) < lv:
        left = f"({left})"
    if _level(e.right) <= lv:
        right = f"({right})"
    sep = " " if lv == 1 else ""
    return f"{left}{sep}{e.op}{sep}{right}"
