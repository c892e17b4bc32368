"""f-invariants of Toda brackets assembled from e-invariants and brackets.

Stems and weights are tied together: an odd class of stem ``2l - 1`` has an
e-invariant of weight ``l``, an even class of stem ``2n - 2`` has its
f-invariant in the weight-``n`` quotient.  Every constructor checks this.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .arith import INTEGER
from .congruence import (EMPTY, BivariateCongruence, DividedCongruence, IndeterminacySpec, bracket1,
                         bracket2, class_eq, cycle_lattice, order, p_adapt)
from .errors import LevelError, NoVirtualWeight
from .modforms import GradedForm, check_level, space
from .qseries import DEFAULT_PREC, Series1, eisenstein, tensor

LEFT = "left"
RIGHT = "right"
CASES_WITH_P = ("ii", "iii", "iv", "v")


def _joint_level(*levels: int) -> int:
    # level-1 forms are level-3 forms with the same q-expansion
    for lv in levels:
        check_level(lv)
    return max(levels)


@dataclass(frozen=True)
class EInvariant:
    """Odd-stem class with its rational form ``e_M`` and constant term ``e``."""

    name: str
    dim: int
    e: Fraction
    e_m: GradedForm
    level: int

    def __post_init__(self):
        if self.dim % 2 != 1 or self.dim < 1:
            raise ValueError(f"{self.name}: e-invariants need an odd positive stem, got {self.dim}")
        if self.e_m.level != self.level:
            raise LevelError(f"{self.name}: form at level {self.e_m.level}, class at level {self.level}")
        if self.e_m.weights and self.e_m.weights != [self.weight]:
            raise ValueError(f"{self.name}: stem {self.dim} needs weight {self.weight}, form has {self.e_m.weights}")
        if self.e_m.q0() != self.e:
            raise ValueError(f"{self.name}: q0(e_M) = {self.e_m.q0()} but e = {self.e}")

    @property
    def weight(self) -> int:
        return (self.dim + 1) // 2

    @property
    def prec(self) -> int:
        return self.e_m.prec

    def series(self) -> Series1:
        return self.e_m.expansion()

    def scaled(self, m) -> "EInvariant":
        m = Fraction(m)
        label = self.name if m == 1 else f"{m}{self.name}"
        return EInvariant(label, self.dim, self.e * m, self.e_m * m, self.level)

    def at_level(self, level: int) -> "EInvariant":
        if level == self.level:
            return self
        if level < self.level:
            raise LevelError(f"cannot move {self.name} from level {self.level} down to {level}")
        e_m = GradedForm.from_series(self.series(), level, self.weight) if self.e_m.weights else GradedForm(level, {}, self.prec)
        return EInvariant(self.name, self.dim, self.e, e_m, level)


@dataclass(frozen=True)
class FInvariantClass:
    """Even-stem class together with a representative of its f-invariant."""

    name: str
    dim: int
    representative: DividedCongruence
    weight: int
    level: int
    parts: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        if self.dim % 2 or self.dim < 2:
            raise ValueError(f"{self.name}: f-invariants need an even stem >= 2, got {self.dim}")
        if self.weight != (self.dim + 2) // 2:
            raise ValueError(f"{self.name}: stem {self.dim} has weight {(self.dim + 2) // 2}, not {self.weight}")
        if self.representative.level != self.level:
            raise LevelError(f"{self.name}: representative at level {self.representative.level}")

    @property
    def prec(self) -> int:
        return self.representative.prec

    def at_level(self, level: int) -> "FInvariantClass":
        if level == self.level:
            return self
        if level < self.level:
            raise LevelError(f"cannot move {self.name} from level {self.level} down to {level}")
        return FInvariantClass(self.name, self.dim, self.representative.at_level(level), self.weight, level,
                               self.parts)

    def class_eq(self, other, indet: IndeterminacySpec = EMPTY) -> bool:
        other = other.representative if isinstance(other, FInvariantClass) else other
        level = _joint_level(self.level, other.level, *(g.level for g in indet.generators))
        return class_eq(self.representative.at_level(level), other.at_level(level), self.weight,
                        _indet_at(indet, level))

    def order(self, indet: IndeterminacySpec = EMPTY) -> int:
        level = _joint_level(self.level, *(g.level for g in indet.generators))
        return order(self.representative.at_level(level), self.weight, _indet_at(indet, level))


def _indet_at(indet: IndeterminacySpec, level: int) -> IndeterminacySpec:
    if all(g.level == level for g in indet.generators):
        return indet
    return IndeterminacySpec(tuple(g.at_level(level) for g in indet.generators), indet.domains, indet.labels)


def _einv(name: str, dim: int, level: int, form: Series1, weight: int, prec: int) -> EInvariant:
    gf = GradedForm.from_series(form, level, weight)
    return EInvariant(name, dim, gf.q0(), gf, level)


def catalog(prec: int = DEFAULT_PREC) -> dict:
    """Hopf maps with their e-invariants and the f-invariants of their squares."""
    E1 = eisenstein(3, 1, prec)
    E4 = eisenstein(1, 4, prec)
    eta = _einv("eta", 1, 3, E1 / 2, 1, prec)
    nu = _einv("nu", 3, 3, E1 * E1 / 12, 2, prec)
    sigma = _einv("sigma", 7, 1, E4 / 240, 4, prec)
    return {
        "eta": eta,
        "nu": nu,
        "sigma": sigma,
        "nu^2": f_product(nu, nu),
        "sigma^2": f_product(sigma, sigma),
    }


_ELEMENT = re.compile(r"^\s*(-?\d+(?:/\d+)?)?\s*\*?\s*([A-Za-z]+(?:\^2)?)\s*$")


def element(text: str, prec: int = DEFAULT_PREC):
    """Look up ``"2sigma"``, ``"nu^2"``, ``"eta"`` and the like in the catalog.

    A bare integer such as ``"2"`` is returned as an ``int`` (the degree-``p`` map).
    """
    text = text.strip()
    if re.fullmatch(r"-?\d+", text):
        return int(text)
    m = _ELEMENT.match(text)
    cat = catalog(prec)
    if not m or m.group(2) not in cat:
        raise KeyError(f"unknown element {text!r}; known: {', '.join(cat)}")
    base = cat[m.group(2)]
    if m.group(1) is None:
        return base
    mult = Fraction(m.group(1))
    if isinstance(base, EInvariant):
        return base.scaled(mult)
    return FInvariantClass(f"{mult}{base.name}", base.dim, base.representative * mult, base.weight, base.level)


def f_product(a: EInvariant, b: EInvariant) -> FInvariantClass:
    """``f(ab) = e(a) e_M(b)`` for a product of two odd classes."""
    level = _joint_level(a.level, b.level)
    b = b.at_level(level)
    rep = DividedCongruence(level, b.series() * a.e)
    name = f"{a.name}^2" if a.name == b.name else f"{a.name}*{b.name}"
    return FInvariantClass(name, a.dim + b.dim, rep, a.weight + b.weight, level)


def toda3_center_p(fa: FInvariantClass, p: int, eb: EInvariant, side: str = LEFT) -> FInvariantClass:
    """Bracket with ``p`` in the middle and one even class.

    ``side=LEFT`` is ``<a, p, b>`` with ``f(a)`` known, giving ``p e(b) f(a)``;
    ``side=RIGHT`` is ``<b, p, a>``, giving ``-p e(b) f(a)``.  ``f(a)`` is
    first replaced by a ``p``-adapted representative at its own weight.
    """
    if side not in (LEFT, RIGHT):
        raise ValueError(f"side must be {LEFT!r} or {RIGHT!r}")
    adapted = p_adapt(fa.representative, p, fa.weight)
    sign = 1 if side == LEFT else -1
    rep = adapted * (sign * p * eb.e)
    name = f"<{fa.name},{p},{eb.name}>" if side == LEFT else f"<{eb.name},{p},{fa.name}>"
    return FInvariantClass(name, fa.dim + eb.dim + 1, rep, fa.weight + eb.weight, fa.level,
                           {"adapted": adapted})


def toda3_odd(a: EInvariant, b: EInvariant, c: EInvariant) -> FInvariantClass:
    """``<a, b, c>`` for three odd classes.

    ``e_M(a) (q0 f(b,c) - e(b) e(c)) + e(c) f(a,b)`` with
    ``f(a,b) = [e_M(a) e(b)]_{k+l}``; raises :class:`NoVirtualWeight` when a
    bracket does not exist.
    """
    level = _joint_level(a.level, b.level)
    a, b = a.at_level(level), b.at_level(level)
    k, l, m = a.weight, b.weight, c.weight
    f_ab = bracket1(DividedCongruence(level, a.series() * b.e), k + l)
    f_bc = bracket1(DividedCongruence(level, b.series() * c.e), l + m)
    rep = a.series() * (f_bc.q0() - b.e * c.e) + f_ab.expansion() * c.e
    return FInvariantClass(f"<{a.name},{b.name},{c.name}>", a.dim + b.dim + c.dim + 1,
                           DividedCongruence(level, rep), k + l + m, level,
                           {"f_ab": f_ab, "f_bc": f_bc})


def _as_pair(x, y) -> tuple:
    level = _joint_level(x.level, y.level)
    x, y = x.at_level(level), y.at_level(level)
    return level, x, y


def _series_of(x) -> Series1:
    return x.series() if isinstance(x, EInvariant) else x.representative.expansion


def toda3_with_p(case: str, first, second, p: int) -> FInvariantClass:
    """Three-fold brackets with one even class and ``p`` at an end.

    ``case`` and argument order:

    * ``ii``: ``<a, b, p>`` with ``first = f(a)`` even, ``second = b`` odd
    * ``iii``: ``<p, b, c>`` with ``first = b`` odd, ``second = f(c)`` even
    * ``iv``: ``<a, b, p>`` with ``first = a`` odd, ``second = f(b)`` even
    * ``v``: ``<p, b, c>`` with ``first = f(b)`` even, ``second = c`` odd

    In cases iv and v the even class is ``p``-adapted first.
    """
    if case not in CASES_WITH_P:
        raise ValueError(f"case must be one of {CASES_WITH_P}")
    even_first = case in ("ii", "v")
    f_cls, e_cls = (first, second) if even_first else (second, first)
    if not isinstance(f_cls, FInvariantClass) or not isinstance(e_cls, EInvariant):
        raise TypeError(f"case {case} takes ({'f-class, e-invariant' if even_first else 'e-invariant, f-class'})")
    level, f_cls, e_cls = _as_pair(f_cls, e_cls)
    n = f_cls.weight + e_cls.weight
    f = f_cls.representative
    if case in ("iv", "v"):
        f = p_adapt(f, p, f_cls.weight)
    fs, es = f.expansion, e_cls.series()
    F = tensor(fs, es) if even_first else tensor(es, fs)
    R = bracket2(BivariateCongruence(level, F), n)
    chi = R.chi0()
    if case == "ii":
        rep = fs * (p * e_cls.e) + chi * p
    elif case == "iii":
        rep = chi * -p
    elif case == "iv":
        rep = es * fs * -p - chi * p
    else:
        rep = chi * p
    names = {"ii": (f_cls.name, e_cls.name, p), "iii": (p, e_cls.name, f_cls.name),
             "iv": (e_cls.name, f_cls.name, p), "v": (p, f_cls.name, e_cls.name)}[case]
    name = "<" + ",".join(map(str, names)) + ">"
    return FInvariantClass(name, f_cls.dim + e_cls.dim + 1, DividedCongruence(level, rep), n, level,
                           {"bracket": R, "input": F, "even": f})


def toda4(fa: FInvariantClass, fb: FInvariantClass, p: int) -> FInvariantClass:
    """``<p, a, p, b>`` for two even classes: ``p chi0 [p f(a) (x) f(b)]_{k+l}``."""
    level, fa, fb = _as_pair(fa, fb)
    a = p_adapt(fa.representative, p, fa.weight)
    b = p_adapt(fb.representative, p, fb.weight)
    n = fa.weight + fb.weight
    F = tensor(a.expansion * p, b.expansion)
    R = bracket2(BivariateCongruence(level, F), n)
    rep = DividedCongruence(level, R.chi0() * p)
    return FInvariantClass(f"<{p},{fa.name},{p},{fb.name}>", fa.dim + fb.dim + 2, rep, n, level,
                           {"bracket": R, "input": F, "adapted": (a, b)})


def divided_eisenstein(level: int, w: int, prec: int = DEFAULT_PREC) -> Optional[DividedCongruence]:
    """``f_0 / g`` for weight ``w``: the cycle with the largest constant denominator.

    ``None`` when no such cycle exists (``M_w = 0`` or weight zero).
    """
    S = space(level, w, prec)
    g, _ = cycle_lattice(S)
    if not g:
        return None
    return DividedCongruence(level, S.basis[0] / g)


def _scaled(x: Optional[DividedCongruence], c) -> list:
    return [] if x is None or not c else [x * c]


def indeterminacy_for(case: str = "", *, level: int = 1, prec: int = DEFAULT_PREC,
                      extras: Sequence[DividedCongruence] = (), **params) -> IndeterminacySpec:
    """Explicit generators for the indeterminacy of a bracket formula.

    ``case`` is one of

    * ``"center"``: ``<a, p, b>``; params ``e`` (the e-invariant of the odd
      class) and ``weight`` (weight of the even class).  Generator ``e * f_0/g``.
    * ``"odd"``: ``<a, b, c>``; params ``a``, ``b``, ``c`` (EInvariants).
      Generators ``e_M(a) q0(f_0/g)`` at weight ``l+m`` and ``e(c) f_0/g`` at ``k+l``.
    * ``"with_p"``: params ``p`` and ``weight``; ``p`` times divided Eisenstein classes.
    * ``"fourfold"``: ``<p, a, p, b>``; params ``fa``, ``fb`` (FInvariantClass) and ``p``.

    An empty ``case`` gives only ``extras``.
    """
    gens: list = []
    labels: list = []

    def add(items, label):
        for i, g in enumerate(items):
            gens.append(g)
            labels.append(label if len(items) == 1 else f"{label}[{i}]")

    if case == "center":
        w = params["weight"]
        add(_scaled(divided_eisenstein(level, w, prec), Fraction(params["e"])), f"e*Ebar_{w}")
    elif case == "odd":
        a, b, c = params["a"].at_level(level), params["b"].at_level(level), params["c"]
        k, l, m = a.weight, b.weight, c.weight
        g_lm, _ = cycle_lattice(space(level, l + m, prec))
        if g_lm:
            add([DividedCongruence(level, a.series() / g_lm)], f"e_M(a)*q0(Ebar_{l + m})")
        add(_scaled(divided_eisenstein(level, k + l, prec), c.e), f"e(c)*Ebar_{k + l}")
    elif case == "with_p":
        w, p = params["weight"], params["p"]
        for v in range(1, w + 1):
            add(_scaled(divided_eisenstein(level, v, prec), p), f"p*Ebar_{v}")
    elif case == "fourfold":
        fa, fb, p = params["fa"].at_level(level), params["fb"].at_level(level), params["p"]
        k, l = fa.weight, fb.weight
        a = p_adapt(fa.representative, p, k)
        b = p_adapt(fb.representative, p, l)
        ha, hb = divided_eisenstein(level, k, prec), divided_eisenstein(level, l, prec)
        for h, left, label in ((ha, True, f"chi0[Ebar_{k}(x)f(b)]"), (hb, False, f"chi0[f(a)(x)Ebar_{l}]")):
            if h is None:
                continue
            F = tensor(h.expansion, b.expansion) if left else tensor(a.expansion, h.expansion)
            try:
                R = bracket2(BivariateCongruence(level, F), k + l)
            except NoVirtualWeight:
                continue
            add([DividedCongruence(level, R.chi0())], label)
        if ha is not None:
            add([b * (p * ha.expansion.q0())], f"p*q0(Ebar_{k})*f(b)")
            if hb is not None:
                add([ha * (p * hb.expansion.q0())], f"p*Ebar_{k}*q0(Ebar_{l})")
        for v in sorted({k, l}):
            add(_scaled(divided_eisenstein(level, v, prec), p), f"p*Ebar_{v}")
    elif case:
        raise ValueError(f"unknown indeterminacy case {case!r}")
    add(list(extras), "extra")
    return IndeterminacySpec(tuple(gens), (INTEGER,) * len(gens), tuple(labels))
