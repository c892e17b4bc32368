"""Exact evaluation of parsed expressions to scalars, q-series or bivariate series."""

from __future__ import annotations

from fractions import Fraction
from typing import Union

from ..congruence import BivariateCongruence, DividedCongruence, bracket1, bracket2
from ..errors import LevelError
from ..qseries import Series1, Series2, chi0_left, eisenstein, tensor
from .parser import BinOp, Bracket, Call, Expr, Name, Neg, Num, Pow, parse

Value = Union[Fraction, Series1, Series2]

# name -> {level: (series level, weight)}
_NAMES = {
    "E1": {3: (3, 1)},
    "G3": {3: (3, 3)},
    "E4": {1: (1, 4), 3: (1, 4)},
    "E6": {1: (1, 6), 3: (1, 6)},
}


def _series1(v: Value, prec: int) -> Series1:
    if isinstance(v, Series1):
        return v
    if isinstance(v, Fraction):
        return Series1.constant(v, prec)
    raise TypeError("tensor factors must be univariate")


def _combine(op: str, x: Value, y: Value, prec: int) -> Value:
    if op == "@":
        return tensor(_series1(x, prec), _series1(y, prec))
    if isinstance(x, Series1) and isinstance(y, Series2) or isinstance(x, Series2) and isinstance(y, Series1):
        raise TypeError(f"cannot combine univariate and bivariate series with {op!r}")
    if op == "+":
        return x + y if not isinstance(x, Fraction) else y + x
    if op == "-":
        return x - y
    if op == "*":
        return x * y if not isinstance(x, Fraction) else y * x
    if op == "/":
        if not isinstance(y, Fraction):
            raise TypeError("division only by scalars")
        if y == 0:
            raise ZeroDivisionError("division by zero")
        return x / y
    raise ValueError(op)


def evaluate(e: Union[Expr, str], level: int = 1, prec: int = 64) -> Value:
    """Evaluate an expression at ``level`` with series truncated at ``prec``.

    Brackets are replaced by the expansion of the form they return.
    """
    if isinstance(e, str):
        e = parse(e)
    if isinstance(e, Num):
        return Fraction(e.value)
    if isinstance(e, Name):
        table = _NAMES[e.id]
        if level not in table:
            raise LevelError(f"{e.id} is not a form at level {level}")
        lv, w = table[level]
        return eisenstein(lv, w, prec)
    if isinstance(e, Neg):
        return -evaluate(e.operand, level, prec)
    if isinstance(e, Pow):
        return evaluate(e.base, level, prec) ** e.exp
    if isinstance(e, BinOp):
        return _combine(e.op, evaluate(e.left, level, prec), evaluate(e.right, level, prec), prec)
    if isinstance(e, Call):
        v = evaluate(e.arg, level, prec)
        if e.func == "q0":
            return v if isinstance(v, Fraction) else v.q0()
        if not isinstance(v, Series2):
            raise TypeError("chi0 needs a bivariate argument")
        return chi0_left(v)
    if isinstance(e, Bracket):
        return evaluate_bracket(e, level, prec).expansion()
    raise TypeError(f"not an expression node: {e!r}")


def evaluate_bracket(e: Bracket, level: int, prec: int):
    """Return the ``GradedForm`` or ``TensorForm`` behind a bracket node."""
    v = evaluate(e.arg, level, prec)
    if isinstance(v, Series2):
        return bracket2(BivariateCongruence(level, v), e.n)
    return bracket1(DividedCongruence(level, _series1(v, prec)), e.n)


def as_congruence(v: Value, level: int, prec: int) -> DividedCongruence:
    if isinstance(v, Series2):
        raise TypeError("expected a univariate expression")
    return DividedCongruence(level, _series1(v, prec))
