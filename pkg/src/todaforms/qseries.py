"""Truncated q-expansions in one variable (q) and two variables (q_L, q_R).

Coefficients are exact :class:`~fractions.Fraction` values.  Products are
computed by Kronecker substitution: both operands are brought to a common
denominator, packed into one big integer each, and multiplied with CPython's
big-integer multiplication.  This keeps bivariate products at precision 64
well under a second.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from numbers import Rational as _RationalABC
from typing import Callable, Optional, Sequence

from .arith import to_integer_vector

DEFAULT_PREC = 64


def _is_scalar(x) -> bool:
    return isinstance(x, (int, Fraction, _RationalABC)) and not isinstance(x, bool)


def _convolve_nonneg(a: list[int], b: list[int], out_len: int) -> list[int]:
    """Coefficients of the product of the polynomials ``a`` and ``b`` (nonnegative ints)."""
    if not any(a) or not any(b):
        return [0] * out_len
    bound = max(a) * max(b) * min(len(a), len(b))
    width = (bound.bit_length() + 8) // 8
    pa = int.from_bytes(b"".join(v.to_bytes(width, "little") for v in a), "little")
    pb = int.from_bytes(b"".join(v.to_bytes(width, "little") for v in b), "little")
    prod = pa * pb
    raw = prod.to_bytes((len(a) + len(b)) * width, "little")
    return [int.from_bytes(raw[i * width:(i + 1) * width], "little") for i in range(out_len)]


def _convolve(a: list[int], b: list[int], out_len: int) -> list[int]:
    ap = [v if v > 0 else 0 for v in a]
    an = [-v if v < 0 else 0 for v in a]
    bp = [v if v > 0 else 0 for v in b]
    bn = [-v if v < 0 else 0 for v in b]
    pp = _convolve_nonneg(ap, bp, out_len)
    nn = _convolve_nonneg(an, bn, out_len)
    pn = _convolve_nonneg(ap, bn, out_len)
    np_ = _convolve_nonneg(an, bp, out_len)
    return [w + x - y - z for w, x, y, z in zip(pp, nn, pn, np_)]


class Series1:
    """``sum_{n=0}^{prec} c_n q^n`` with rational ``c_n``."""

    __slots__ = ("prec", "coeffs")

    def __init__(self, coeffs: Sequence, prec: Optional[int] = None):
        coeffs = [Fraction(c) for c in coeffs]
        if prec is None:
            prec = len(coeffs) - 1
        if prec < 0:
            raise ValueError("precision must be nonnegative")
        coeffs = coeffs[:prec + 1] + [Fraction(0)] * (prec + 1 - len(coeffs))
        self.prec = prec
        self.coeffs = tuple(coeffs)

    @classmethod
    def constant(cls, c, prec: int = DEFAULT_PREC) -> "Series1":
        return cls([c], prec)

    @classmethod
    def monomial(cls, n: int, prec: int = DEFAULT_PREC, c=1) -> "Series1":
        coeffs = [0] * (prec + 1)
        if n <= prec:
            coeffs[n] = c
        return cls(coeffs, prec)

    def __getitem__(self, n: int) -> Fraction:
        return self.coeffs[n]

    def __len__(self) -> int:
        return self.prec + 1

    def __iter__(self):
        return iter(self.coeffs)

    def q0(self) -> Fraction:
        return self.coeffs[0]

    def truncate(self, prec: int) -> "Series1":
        if prec > self.prec:
            raise ValueError(f"cannot raise precision from {self.prec} to {prec}")
        return Series1(self.coeffs[:prec + 1], prec)

    def is_integral(self, start: int = 0) -> bool:
        return all(c.denominator == 1 for c in self.coeffs[start:])

    def denominator(self, start: int = 0) -> int:
        _, d = to_integer_vector(self.coeffs[start:])
        return d

    def __eq__(self, other) -> bool:
        if isinstance(other, Series1):
            return self.prec == other.prec and self.coeffs == other.coeffs
        if _is_scalar(other):
            return self.coeffs[0] == other and not any(self.coeffs[1:])
        return NotImplemented

    def __hash__(self):
        return hash((self.prec, self.coeffs))

    def __repr__(self) -> str:
        shown = ", ".join(str(c) for c in self.coeffs[:6])
        more = ", ..." if self.prec >= 6 else ""
        return f"Series1([{shown}{more}], prec={self.prec})"

    def __neg__(self) -> "Series1":
        return Series1([-c for c in self.coeffs], self.prec)

    def __add__(self, other) -> "Series1":
        if _is_scalar(other):
            return Series1((self.coeffs[0] + other,) + self.coeffs[1:], self.prec)
        if not isinstance(other, Series1):
            return NotImplemented
        p = min(self.prec, other.prec)
        return Series1([a + b for a, b in zip(self.coeffs[:p + 1], other.coeffs[:p + 1])], p)

    __radd__ = __add__

    def __sub__(self, other) -> "Series1":
        if _is_scalar(other) or isinstance(other, Series1):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other) -> "Series1":
        return (-self) + other

    def __mul__(self, other) -> "Series1":
        if _is_scalar(other):
            c = Fraction(other)
            return Series1([c * a for a in self.coeffs], self.prec)
        if not isinstance(other, Series1):
            return NotImplemented
        p = min(self.prec, other.prec)
        a, da = to_integer_vector(self.coeffs[:p + 1])
        b, db = to_integer_vector(other.coeffs[:p + 1])
        d = da * db
        return Series1([Fraction(v, d) for v in _convolve(a, b, p + 1)], p)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Series1":
        if _is_scalar(other):
            return self * (1 / Fraction(other))
        return NotImplemented

    def __pow__(self, k: int) -> "Series1":
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = Series1.constant(1, self.prec)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result


class Series2:
    """``sum_{i,j<=prec} c_{ij} q_L^i q_R^j`` with square truncation."""

    __slots__ = ("prec", "coeffs")

    def __init__(self, coeffs: Sequence[Sequence], prec: Optional[int] = None):
        rows = [[Fraction(c) for c in row] for row in coeffs]
        if prec is None:
            prec = len(rows) - 1
        if prec < 0:
            raise ValueError("precision must be nonnegative")
        size = prec + 1
        rows = rows[:size] + [[] for _ in range(size - len(rows))]
        self.prec = prec
        self.coeffs = tuple(tuple(r[:size] + [Fraction(0)] * (size - len(r))) for r in rows)

    @classmethod
    def zero(cls, prec: int = DEFAULT_PREC) -> "Series2":
        return cls([[0]], prec)

    @classmethod
    def constant(cls, c, prec: int = DEFAULT_PREC) -> "Series2":
        return cls([[c]], prec)

    def __getitem__(self, ij) -> Fraction:
        i, j = ij
        return self.coeffs[i][j]

    def q0(self) -> Fraction:
        return self.coeffs[0][0]

    def truncate(self, prec: int) -> "Series2":
        if prec > self.prec:
            raise ValueError(f"cannot raise precision from {self.prec} to {prec}")
        return Series2([r[:prec + 1] for r in self.coeffs[:prec + 1]], prec)

    def flat(self, start: int = 0) -> list[Fraction]:
        """Coefficients with ``i, j >= start`` in row-major order."""
        return [c for r in self.coeffs[start:] for c in r[start:]]

    def is_integral(self, start: int = 0) -> bool:
        return all(c.denominator == 1 for c in self.flat(start))

    def __eq__(self, other) -> bool:
        if isinstance(other, Series2):
            return self.prec == other.prec and self.coeffs == other.coeffs
        if _is_scalar(other):
            return self == Series2.constant(other, self.prec)
        return NotImplemented

    def __hash__(self):
        return hash((self.prec, self.coeffs))

    def __repr__(self) -> str:
        return f"Series2(prec={self.prec}, corner={[list(map(str, r[:3])) for r in self.coeffs[:3]]})"

    def __neg__(self) -> "Series2":
        return Series2([[-c for c in r] for r in self.coeffs], self.prec)

    def __add__(self, other) -> "Series2":
        if _is_scalar(other):
            rows = [list(r) for r in self.coeffs]
            rows[0][0] += other
            return Series2(rows, self.prec)
        if not isinstance(other, Series2):
            return NotImplemented
        p = min(self.prec, other.prec)
        return Series2([[a + b for a, b in zip(r[:p + 1], s[:p + 1])]
                        for r, s in zip(self.coeffs[:p + 1], other.coeffs[:p + 1])], p)

    __radd__ = __add__

    def __sub__(self, other) -> "Series2":
        if _is_scalar(other) or isinstance(other, Series2):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other) -> "Series2":
        return (-self) + other

    def __mul__(self, other) -> "Series2":
        if _is_scalar(other):
            c = Fraction(other)
            return Series2([[c * a for a in r] for r in self.coeffs], self.prec)
        if not isinstance(other, Series2):
            return NotImplemented
        p = min(self.prec, other.prec)
        size = p + 1
        stride = 2 * p + 1
        # flatten (i, j) -> i * stride + j so that products never wrap between rows
        def packed(s: "Series2") -> tuple[list[int], int]:
            ints, d = to_integer_vector([c for r in s.coeffs[:size] for c in r[:size]])
            out = [0] * (size * stride)
            for i in range(size):
                out[i * stride:i * stride + size] = ints[i * size:(i + 1) * size]
            return out, d
        a, da = packed(self)
        b, db = packed(other)
        prod = _convolve(a, b, size * stride)
        d = da * db
        return Series2([[Fraction(prod[i * stride + j], d) for j in range(size)] for i in range(size)], p)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Series2":
        if _is_scalar(other):
            return self * (1 / Fraction(other))
        return NotImplemented

    def __pow__(self, k: int) -> "Series2":
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = Series2.constant(1, self.prec)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result


def add(f, g):
    return f + g


def mul(f, g):
    return f * g


def scale(c, f):
    return f * Fraction(c)


def power(f, k: int):
    return f ** k


def tensor(f: Series1, g: Series1) -> Series2:
    """``f (x) g``: coefficient ``(i, j)`` is ``f_i g_j``."""
    p = min(f.prec, g.prec)
    fc, gc = f.coeffs[:p + 1], g.coeffs[:p + 1]
    return Series2([[a * b for b in gc] for a in fc], p)


def chi0_left(F: Series2) -> Series1:
    """Left constant term: ``sum r1 (x) r2  ->  sum q0(r1) r2``."""
    return Series1(F.coeffs[0], F.prec)


def chi_minus3(d: int) -> int:
    """The Dirichlet character mod 3 of conductor 3."""
    return (0, 1, -1)[d % 3]


def divisor_sum_series(power: int, character: Optional[Callable[[int], int]] = None,
                       prec: int = DEFAULT_PREC, on_complement: bool = False) -> Series1:
    """``sum_{n>=1} (sum_{d|n} chi(d) d^power) q^n``.

    With ``on_complement`` the character is evaluated at ``n/d`` instead of ``d``.
    """
    if power < 0:
        raise ValueError("power must be nonnegative")
    chi = character or (lambda d: 1)
    out = [0] * (prec + 1)
    for d in range(1, prec + 1):
        dp = d ** power
        for n in range(d, prec + 1, d):
            out[n] += (chi(n // d) if on_complement else chi(d)) * dp
    return Series1(out, prec)


# Supported (level, weight) pairs.  The weight-3 form at level 3 is
# 1 - 9 sum (sum_{d|n} chi(d) d^2) q^n.
_EISENSTEIN = {
    (1, 4): (240, 3, None),
    (1, 6): (-504, 5, None),
    (3, 1): (6, 0, chi_minus3),
    (3, 3): (-9, 2, chi_minus3),
}


@lru_cache(maxsize=None)
def eisenstein(level: int, weight: int, prec: int = DEFAULT_PREC) -> Series1:
    """Eisenstein series ``E4, E6`` (level 1) and ``E1, G3`` (level 3)."""
    try:
        factor, power, chi = _EISENSTEIN[(level, weight)]
    except KeyError:
        raise ValueError(f"no Eisenstein generator for level {level}, weight {weight}") from None
    return 1 + factor * divisor_sum_series(power, chi, prec)
