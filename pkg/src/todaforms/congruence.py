"""The quotient ``D_Q / (D + (M_0 + M_n)_Q)`` and virtual-weight brackets.

A class is represented by any rational q-series (a :class:`DividedCongruence`).
Constants are always killed, so only the coefficients of ``q^1 .. q^prec``
matter; two series represent the same class iff their difference is an
integral series plus a rational weight-``n`` form (plus a constant).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm
from typing import Iterable, Optional, Sequence

from .arith import (INTEGER, RATIONAL, LatticeProjector, qmodz_reduce, solve_mod_integers_columns)
from .errors import Infeasible, LevelError, NoVirtualWeight, NotPTorsion, PrecisionTooLow
from .modforms import FormSpace, GradedForm, check_level, dim_formula, space, sturm_bound
from .qseries import Series1, Series2, tensor


@dataclass(frozen=True)
class DividedCongruence:
    """A rational q-series standing for its class at a given level."""

    level: int
    expansion: Series1

    def __post_init__(self):
        check_level(self.level)

    @property
    def prec(self) -> int:
        return self.expansion.prec

    def _coerce(self, other) -> Series1:
        if isinstance(other, DividedCongruence):
            if other.level != self.level:
                raise LevelError(f"level {self.level} vs level {other.level}")
            return other.expansion
        return other

    def __add__(self, other):
        return DividedCongruence(self.level, self.expansion + self._coerce(other))

    __radd__ = __add__

    def __sub__(self, other):
        return DividedCongruence(self.level, self.expansion - self._coerce(other))

    def __rsub__(self, other):
        return DividedCongruence(self.level, other - self.expansion)

    def __neg__(self):
        return DividedCongruence(self.level, -self.expansion)

    def __mul__(self, c):
        return DividedCongruence(self.level, self.expansion * self._coerce(c))

    __rmul__ = __mul__

    def __truediv__(self, c):
        return DividedCongruence(self.level, self.expansion / c)

    def truncate(self, prec: int) -> "DividedCongruence":
        return self if prec == self.prec else DividedCongruence(self.level, self.expansion.truncate(prec))

    def at_level(self, level: int) -> "DividedCongruence":
        """Reinterpret the same q-expansion at another level."""
        return DividedCongruence(level, self.expansion)


@dataclass(frozen=True)
class BivariateCongruence:
    level: int
    expansion: Series2

    def __post_init__(self):
        check_level(self.level)

    @property
    def prec(self) -> int:
        return self.expansion.prec

    def __add__(self, other):
        return BivariateCongruence(self.level, self.expansion + _expansion2(other, self.level))

    def __sub__(self, other):
        return BivariateCongruence(self.level, self.expansion - _expansion2(other, self.level))

    def __mul__(self, c):
        return BivariateCongruence(self.level, self.expansion * c)

    __rmul__ = __mul__


def _expansion2(x, level: int) -> Series2:
    if isinstance(x, BivariateCongruence):
        if x.level != level:
            raise LevelError(f"level {level} vs level {x.level}")
        return x.expansion
    return x


@dataclass(frozen=True)
class QuotientClass:
    """Canonical fingerprint of a class in ``(D/M_0+M_n)_{Q/Z}``.

    ``positions[i]`` is the q-exponent that ``tail[i]`` is attached to.
    """

    level: int
    n: int
    prec: int
    positions: tuple
    tail: tuple

    def is_zero(self) -> bool:
        return not any(self.tail)

    def order(self) -> int:
        return lcm(1, *(t.denominator for t in self.tail))

    def nonzero(self) -> dict:
        return {p: t for p, t in zip(self.positions, self.tail) if t}


@dataclass(frozen=True)
class IndeterminacySpec:
    """Explicit generators of an indeterminacy subgroup, each with a multiplier domain."""

    generators: tuple = ()
    domains: tuple = ()
    labels: tuple = field(default=(), compare=False)

    def __post_init__(self):
        if len(self.generators) != len(self.domains):
            raise ValueError("one domain per generator required")
        if not self.labels:
            object.__setattr__(self, "labels", tuple(f"g{i}" for i in range(len(self.generators))))

    def __bool__(self) -> bool:
        return bool(self.generators)

    def __len__(self) -> int:
        return len(self.generators)

    def __add__(self, other: "IndeterminacySpec") -> "IndeterminacySpec":
        return IndeterminacySpec(self.generators + other.generators, self.domains + other.domains,
                                 self.labels + other.labels)

    @classmethod
    def of(cls, generators: Iterable, domain: str = INTEGER, labels: Sequence[str] = ()) -> "IndeterminacySpec":
        gens = tuple(generators)
        return cls(gens, (domain,) * len(gens), tuple(labels))


EMPTY = IndeterminacySpec()


def required_prec(level: int, n: int) -> int:
    return sturm_bound(level, n) + dim_formula(level, n)


def _check(x: DividedCongruence, n: int) -> None:
    need = required_prec(x.level, n)
    if x.prec < need:
        raise PrecisionTooLow(f"precision {x.prec} < {need} needed for weight {n} at level {x.level}")


def _positive(s: Series1) -> list[Fraction]:
    return list(s.coeffs[1:])


def _basis_columns(S: FormSpace, prec: int) -> list[list[Fraction]]:
    return [list(f.coeffs[1:prec + 1]) for f in S.basis]


@lru_cache(maxsize=None)
def _projector(level: int, n: int, prec: int) -> LatticeProjector:
    S = space(level, n, prec)
    return LatticeProjector(_basis_columns(S, prec), prec)


def fingerprint(x: DividedCongruence, n: int) -> QuotientClass:
    """Canonical ``Q/Z`` invariant of the class of ``x`` in the weight-``n`` quotient."""
    _check(x, n)
    proj = _projector(x.level, n, x.prec)
    tail = proj.reduce(_positive(x.expansion))
    return QuotientClass(x.level, n, x.prec, tuple(c + 1 for c in proj.free), tail)


def _zero_modulo(x: DividedCongruence, n: int, indet: IndeterminacySpec = EMPTY) -> Optional[list[Fraction]]:
    _check(x, n)
    prec = x.prec
    S = space(x.level, n, prec)
    cols = _basis_columns(S, prec)
    doms = [RATIONAL] * len(cols)
    for g, dom in zip(indet.generators, indet.domains):
        if g.level != x.level:
            raise LevelError(f"indeterminacy generator at level {g.level}, class at level {x.level}")
        if g.prec < prec:
            raise PrecisionTooLow(f"indeterminacy generator precision {g.prec} < {prec}")
        cols.append(_positive(g.expansion)[:prec])
        doms.append(dom)
    try:
        return solve_mod_integers_columns(cols, _positive(x.expansion), doms)
    except Infeasible:
        return None


def zero_test(x: DividedCongruence, n: int) -> bool:
    """True iff ``x`` lies in ``D + (M_0 + M_n)_Q`` up to the precision of ``x``."""
    return _zero_modulo(x, n) is not None


def class_eq(x: DividedCongruence, y: DividedCongruence, n: int,
             indet: IndeterminacySpec = EMPTY) -> bool:
    if x.level != y.level:
        raise LevelError(f"level {x.level} vs level {y.level}")
    p = min(x.prec, y.prec)
    x, y = x.truncate(p), y.truncate(p)
    if not indet:
        return fingerprint(x, n) == fingerprint(y, n)
    return _zero_modulo(x - y, n, indet) is not None


def _divisors(m: int) -> list[int]:
    small = [d for d in range(1, int(m ** 0.5) + 1) if m % d == 0] if m < 10 ** 8 else None
    if small is None:
        return [d for d in range(1, m + 1) if m % d == 0]
    return sorted(set(small + [m // d for d in small]))


def order(x: DividedCongruence, n: int, indet: IndeterminacySpec = EMPTY) -> int:
    """Least ``m >= 1`` with ``m x`` zero in the quotient (modulo ``indet``)."""
    plain = fingerprint(x, n).order()
    if not indet:
        return plain
    for m in _divisors(plain):
        if _zero_modulo(x * m, n, indet) is not None:
            return m
    raise AssertionError("order search exhausted its divisor list")  # plain order always works


def cycle_lattice(S: FormSpace, prec: Optional[int] = None) -> tuple:
    """Describe ``{c : sum c_j f_j has integral positive part}`` for the echelon basis.

    Returns ``(g, d)``: the lattice is ``(1/g) Z e_0 + Z e_1 + ... + Z e_{d-1}``,
    with ``g == 0`` meaning the ``e_0`` direction is unconstrained (weight 0).
    """
    prec = S.prec if prec is None else prec
    if S.dim == 0:
        return 0, 0
    g = 0
    for c in S.basis[0].coeffs[1:prec + 1]:
        g = gcd(g, int(c))
    return g, S.dim


def _balanced(t: Fraction) -> Fraction:
    """Representative of ``t`` mod 1 in ``(-1/2, 1/2]``."""
    r = qmodz_reduce(t)
    return r - 1 if r > Fraction(1, 2) else r


def normalize_coordinates(coords: Sequence, S: FormSpace, scale: int = 1) -> tuple:
    """Reduce ``coords`` modulo ``(1/scale)`` times the cycle lattice, balanced."""
    g, _ = cycle_lattice(S)
    out = []
    for j, c in enumerate(coords):
        if j == 0:
            out.append(Fraction(0) if g == 0 else _balanced(c * g * scale) / (g * scale))
        else:
            out.append(_balanced(c * scale) / scale)
    return tuple(out)


def bracket1(f: DividedCongruence, n: int) -> GradedForm:
    """A weight-``n`` rational form ``g`` with ``q^i(g) = q^i(f)`` mod Z for all ``i >= 1``.

    Among all solutions (which differ by cycles) the one with balanced
    coordinates modulo the cycle lattice is returned.
    """
    _check(f, n)
    S = space(f.level, n, f.prec)
    if S.dim == 0:
        if not f.expansion.is_integral(start=1):
            raise NoVirtualWeight(f"positive part is not integral and M_{n} = 0")
        return GradedForm(f.level, {}, f.prec)
    try:
        c = solve_mod_integers_columns(_basis_columns(S, f.prec), _positive(f.expansion),
                                       [RATIONAL] * S.dim)
    except Infeasible:
        raise NoVirtualWeight(f"no weight-{n} form matches the positive coefficients mod Z") from None
    c = normalize_coordinates(c, S)
    g = GradedForm(f.level, {n: c}, f.prec)
    if not (f.expansion - g.expansion()).is_integral(start=1):
        raise AssertionError("bracket1 substitution check failed")
    return g


class TensorForm:
    """``sum c_{w,u,v} m_u^{(w)} (x) m_v^{(n-w)}`` over echelon bases of ``M_w`` and ``M_{n-w}``."""

    def __init__(self, level: int, n: int, terms: dict, prec: int):
        self.level = level
        self.n = n
        self.prec = prec
        self.terms = {k: Fraction(v) for k, v in terms.items() if v}

    def expansion(self, prec: Optional[int] = None) -> Series2:
        prec = self.prec if prec is None else prec
        size = prec + 1
        acc = [[Fraction(0)] * size for _ in range(size)]
        for (w, u, v), c in self.terms.items():
            left = space(self.level, w, prec).basis[u].coeffs
            right = space(self.level, self.n - w, prec).basis[v].coeffs
            for i in range(size):
                a = left[i] * c
                if a:
                    row = acc[i]
                    for j in range(size):
                        if right[j]:
                            row[j] += a * right[j]
        return Series2(acc, prec)

    def chi0(self) -> Series1:
        """Left constant term; only ``f_0`` of each left space has a constant term."""
        out = Series1.constant(0, self.prec)
        for (w, u, v), c in self.terms.items():
            if u == 0:
                out = out + space(self.level, self.n - w, self.prec).basis[v] * c
        return out

    def __repr__(self) -> str:
        return f"TensorForm(level={self.level}, n={self.n}, terms={len(self.terms)})"


def _tensor_index(level: int, n: int, prec: int) -> list[tuple[int, int, int]]:
    out = []
    for w in range(n + 1):
        d1, d2 = dim_formula(level, w), dim_formula(level, n - w)
        out.extend((w, u, v) for u in range(d1) for v in range(d2))
    return out


def bracket2(F: BivariateCongruence, n: int) -> TensorForm:
    """Bivariate virtual-weight bracket.

    Returns ``R`` in ``sum_w M_w (x) M_{n-w}`` with ``q_L^i q_R^j (F - R)``
    integral for all ``1 <= i, j <= prec``.
    """
    level, prec = F.level, F.prec
    need = max(required_prec(level, w) for w in range(n + 1))
    if prec < need:
        raise PrecisionTooLow(f"precision {prec} < {need} needed for bidegree weight {n}")
    index = _tensor_index(level, n, prec)
    cols = []
    for w, u, v in index:
        left = space(level, w, prec).basis[u]
        right = space(level, n - w, prec).basis[v]
        cols.append(tensor(left, right).flat(start=1))
    try:
        x = solve_mod_integers_columns(cols, F.expansion.flat(start=1), [RATIONAL] * len(cols))
    except Infeasible:
        raise NoVirtualWeight(f"no element of weight {n} matches F in positive bidegrees") from None
    R = TensorForm(level, n, dict(zip(index, x)), prec)
    if not (F.expansion - R.expansion()).is_integral(start=1):
        raise AssertionError("bracket2 substitution check failed")
    return R


def bivariate_integral(F: Series2) -> bool:
    """``q_L^i q_R^j F`` integral for all ``i, j >= 1``."""
    return F.is_integral(start=1)


def p_adapt(x: DividedCongruence, p: int, n: int) -> DividedCongruence:
    """Representative ``x'`` of the class of ``x`` with ``p x'`` integral in positive degrees."""
    if p == 0:
        raise ValueError("p must be nonzero")
    _check(x, n)
    if not zero_test(x * p, n):
        raise NotPTorsion(f"{p} times the class is nonzero at weight {n}")
    S = space(x.level, n, x.prec)
    if S.dim == 0:
        return x
    cols = [[p * v for v in col] for col in _basis_columns(S, x.prec)]
    c = solve_mod_integers_columns(cols, [p * v for v in _positive(x.expansion)], [RATIONAL] * S.dim)
    c = normalize_coordinates(c, S, scale=abs(p))
    out = x - S.from_coordinates(c)
    if not (out.expansion * p).is_integral(start=1):
        raise AssertionError("p_adapt postcondition failed")
    return out
