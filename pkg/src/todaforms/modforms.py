"""Spaces of modular forms ``M_k(Gamma_1(N))`` for N in {1, 3}, via q-expansions.

Level 1 is spanned by ``E4^a E6^b`` and level 3 by ``E1^a G3^b``.  Each space
carries the integral echelon basis ``f_0, ..., f_{d-1}`` with
``q^i(f_j) = delta_ij`` for ``i, j < d``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import ceil
from typing import Mapping, Sequence

from .errors import BasisError, LevelError, NotInSpace, PrecisionTooLow
from .qseries import DEFAULT_PREC, Series1, eisenstein

LEVELS = (1, 3)
# generator weights and the index mu used in the Sturm bound
_GENERATORS = {1: (4, 6), 3: (1, 3)}
_INDEX = {1: 1, 3: 8}
STURM_GUARD = 5


def check_level(level: int) -> None:
    if level not in LEVELS:
        raise LevelError(f"unsupported level {level}; expected one of {LEVELS}")


def dim_formula(level: int, k: int) -> int:
    """Dimension of ``M_k`` from the classical formulas."""
    check_level(level)
    if k < 0:
        return 0
    if level == 1:
        if k % 2:
            return 0
        return k // 12 + (0 if k % 12 == 2 else 1)
    return k // 3 + 1


def sturm_bound(level: int, k: int, guard: int = STURM_GUARD) -> int:
    check_level(level)
    return ceil(Fraction(k * _INDEX[level], 12)) + guard


def monomial_exponents(level: int, k: int) -> list[tuple[int, int]]:
    """Exponents ``(a, b)`` with ``wa * a + wb * b == k`` for the two generators."""
    check_level(level)
    wa, wb = _GENERATORS[level]
    if k < 0:
        return []
    return [((k - wb * b) // wa, b) for b in range(k // wb + 1) if (k - wb * b) % wa == 0]


def monomial(level: int, exps: tuple[int, int], prec: int) -> Series1:
    wa, wb = _GENERATORS[level]
    a, b = exps
    return eisenstein(level, wa, prec) ** a * eisenstein(level, wb, prec) ** b


def _rref(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    rows = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        k = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if k is None:
            continue
        rows[r], rows[k] = rows[k], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [v * inv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [u - f * v for u, v in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


@dataclass(frozen=True)
class FormSpace:
    """``M_k`` at a level, with its echelon basis truncated at ``prec``."""

    level: int
    weight: int
    dim: int
    basis: tuple
    prec: int
    monomials: tuple = field(default=(), repr=False)

    def from_coordinates(self, coords: Sequence) -> Series1:
        if len(coords) != self.dim:
            raise ValueError(f"expected {self.dim} coordinates, got {len(coords)}")
        out = Series1.constant(0, self.prec)
        for c, f in zip(coords, self.basis):
            if c:
                out = out + f * c
        return out

    def to_coordinates(self, f: Series1) -> tuple:
        return to_coordinates(f, self)


@lru_cache(maxsize=None)
def space(level: int, k: int, prec: int = DEFAULT_PREC) -> FormSpace:
    """Build ``M_k`` at ``level`` with an integral echelon basis.

    The basis is the reduced row echelon form of the monomial q-expansions;
    it must have pivots ``0..dim-1`` and integral coefficients, otherwise a
    :class:`BasisError` is raised.
    """
    check_level(level)
    if k < 0:
        raise ValueError("weight must be nonnegative")
    exps = monomial_exponents(level, k)
    dim = dim_formula(level, k)
    if prec < sturm_bound(level, k):
        raise PrecisionTooLow(f"prec {prec} below Sturm bound {sturm_bound(level, k)} for weight {k}")
    if not exps:
        return FormSpace(level, k, 0, (), prec)
    mons = [monomial(level, e, prec) for e in exps]
    rows, pivots = _rref([list(m.coeffs) for m in mons])
    if len(rows) != len(exps) or len(rows) != dim:
        raise BasisError(f"level {level} weight {k}: monomials have rank {len(rows)}, expected {dim}")
    if pivots != list(range(dim)):
        raise BasisError(f"level {level} weight {k}: echelon pivots {pivots} are not 0..{dim - 1}")
    bad = [i for i, r in enumerate(rows) if any(v.denominator != 1 for v in r)]
    if bad:
        raise BasisError(f"level {level} weight {k}: echelon rows {bad} are not integral")
    bound = sturm_bound(level, k)
    if _rref([r[:bound + 1] for r in rows])[1] != list(range(dim)):
        raise BasisError(f"level {level} weight {k}: basis not separated within Sturm bound {bound}")
    basis = tuple(Series1(r, prec) for r in rows)
    return FormSpace(level, k, dim, basis, prec, tuple(exps))


def to_coordinates(f: Series1, S: FormSpace) -> tuple:
    """Coordinates of ``f`` in the echelon basis of ``S``; raises :class:`NotInSpace`."""
    if f.prec < sturm_bound(S.level, S.weight):
        raise PrecisionTooLow(f"prec {f.prec} below Sturm bound for weight {S.weight}")
    p = min(f.prec, S.prec)
    resid = list(f.coeffs[:p + 1])
    coords = []
    for j, b in enumerate(S.basis):
        c = resid[j]
        coords.append(c)
        if c:
            resid = [u - c * v for u, v in zip(resid, b.coeffs[:p + 1])]
    nz = next((i for i, v in enumerate(resid) if v), None)
    if nz is not None:
        raise NotInSpace(f"residual coefficient at q^{nz} is {resid[nz]}")
    return tuple(coords)


class GradedForm:
    """A finite sum of rational forms of several weights at one level."""

    def __init__(self, level: int, parts: Mapping[int, Sequence] | None = None, prec: int = DEFAULT_PREC):
        check_level(level)
        self.level = level
        self.prec = prec
        self.parts = {}
        for w, coords in (parts or {}).items():
            coords = tuple(Fraction(c) for c in coords)
            if len(coords) != dim_formula(level, w):
                raise ValueError(f"weight {w} needs {dim_formula(level, w)} coordinates")
            if any(coords):
                self.parts[w] = coords

    @classmethod
    def from_series(cls, f: Series1, level: int, weight: int) -> "GradedForm":
        S = space(level, weight, f.prec)
        return cls(level, {weight: to_coordinates(f, S)}, f.prec)

    @property
    def weights(self) -> list[int]:
        return sorted(self.parts)

    def expansion(self, prec: int | None = None) -> Series1:
        prec = self.prec if prec is None else prec
        out = Series1.constant(0, prec)
        for w, coords in self.parts.items():
            out = out + space(self.level, w, prec).from_coordinates(coords)
        return out

    def q0(self) -> Fraction:
        # echelon basis: only f_0 has a constant term
        return sum((c[0] for c in self.parts.values()), Fraction(0))

    def __add__(self, other: "GradedForm") -> "GradedForm":
        if not isinstance(other, GradedForm):
            return NotImplemented
        if other.level != self.level:
            raise LevelError("cannot add forms of different levels")
        parts = dict(self.parts)
        for w, c in other.parts.items():
            parts[w] = tuple(a + b for a, b in zip(parts[w], c)) if w in parts else c
        return GradedForm(self.level, parts, min(self.prec, other.prec))

    def __mul__(self, c) -> "GradedForm":
        c = Fraction(c)
        return GradedForm(self.level, {w: tuple(c * v for v in cs) for w, cs in self.parts.items()}, self.prec)

    __rmul__ = __mul__

    def __neg__(self) -> "GradedForm":
        return self * -1

    def __sub__(self, other: "GradedForm") -> "GradedForm":
        return self + (-other)

    def __eq__(self, other) -> bool:
        return (isinstance(other, GradedForm) and self.level == other.level
                and self.parts == other.parts)

    def __repr__(self) -> str:
        body = ", ".join(f"{w}: ({', '.join(map(str, c))})" for w, c in sorted(self.parts.items()))
        return f"GradedForm(level={self.level}, {{{body}}})"
