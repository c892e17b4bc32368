"""Worked examples and invariant checks run by the ``examples`` and ``selftest`` commands."""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Callable, Iterator

from ..congruence import (BivariateCongruence, DividedCongruence, bracket1, bracket2, class_eq,
                          fingerprint, order, p_adapt, zero_test)
from ..modforms import LEVELS, dim_formula, space
from ..qseries import Series1, eisenstein, tensor
from ..toda import catalog, indeterminacy_for, toda3_center_p, toda3_odd, toda4

Check = tuple[str, Callable[[int], bool]]


def _a(prec):
    return (eisenstein(1, 4, prec) - 1) / 240


def _ex_brackets(prec):
    E4 = eisenstein(1, 4, prec)
    D = lambda s: DividedCongruence(1, s)
    return (not bracket1(D(E4 / 240), 5).parts
            and class_eq(D(bracket1(D(E4 * 2 / 240 ** 2), 8).expansion()), D(E4 * E4 / 240 ** 2), 8)
            and bracket1(D(E4 / 1440), 6).q0() == Fraction(-1, 3024))


def _ex_sigma_2sigma_eta(prec):
    c = catalog(prec)
    x = toda3_odd(c["sigma"], c["sigma"].scaled(2), c["eta"])
    a = _a(prec)
    return x.class_eq(DividedCongruence(1, a * a / 2))


def _ex_sigma_2sigma_nu(prec):
    c = catalog(prec)
    s, nu = c["sigma"], c["nu"]
    E4 = eisenstein(1, 4, prec)
    x = toda3_odd(s, s.scaled(2), nu)
    ref = (E4 * Fraction(-31, 21) + E4 * E4 / 2) / (6 * 240 ** 2)
    indet = indeterminacy_for("odd", a=s, b=s.scaled(2), c=nu, level=1, prec=prec)
    return x.representative.expansion == ref and x.order(indet) == 4


def _ex_nu2_eta(prec):
    c = catalog(prec)
    E1 = eisenstein(3, 1, prec)
    u = (E1 * E1 - 1) / 12
    return toda3_center_p(c["nu^2"], 2, c["eta"]).class_eq(DividedCongruence(3, -u * u / 2))


def _ex_sigma2_eta(prec):
    c = catalog(prec)
    a = _a(prec)
    x = toda3_center_p(c["sigma^2"], 2, c["eta"])
    y = toda3_odd(c["sigma"], c["sigma"].scaled(2), c["eta"])
    return x.class_eq(DividedCongruence(1, -a * a / 2)) and x.class_eq(y)


def _beta43(prec):
    E1 = eisenstein(3, 1, prec)
    v = (E1 * E1 - 1) / 4
    return DividedCongruence(3, v ** 4 / 2 + v ** 3 / 2)


def _ex_cross_level_plain(prec):
    a = _a(prec)
    return class_eq(DividedCongruence(3, -a * a / 2), _beta43(prec), 9)


def _ex_cross_level_indet(prec):
    c = catalog(prec)
    x = toda3_center_p(c["sigma^2"], 2, c["eta"]).at_level(3)
    indet = indeterminacy_for("center", e=c["eta"].e, weight=c["sigma^2"].weight, level=3, prec=prec)
    return x.class_eq(_beta43(prec), indet)


def _ex_kervaire_bracket(prec):
    a = _a(prec)
    E4 = eisenstein(1, 4, prec)
    one = Series1.constant(1, prec)
    R = bracket2(BivariateCongruence(1, tensor(a * a / 2, a * a)), 16)
    P = ((tensor(E4, one) - tensor(one, E4)) / 240) ** 4 / 12
    return (R.expansion() - P).is_integral(start=1)


def _ex_kervaire(prec):
    c = catalog(prec)
    k = toda4(c["sigma^2"], c["sigma^2"], 2)
    a = _a(prec)
    indet = indeterminacy_for("fourfold", fa=c["sigma^2"], fb=c["sigma^2"], p=2, level=1, prec=prec)
    return k.order() == 2 and k.class_eq(DividedCongruence(1, a ** 4 / 2), indet)


EXAMPLES: list[Check] = [
    ("brackets [E4/240]_5, [2E4/240^2]_8, q0([E4/1440]_6)", _ex_brackets),
    ("f<sigma,2sigma,eta> = 1/2 ((E4-1)/240)^2", _ex_sigma_2sigma_eta),
    ("f<sigma,2sigma,nu> representative, order 4 modulo indeterminacy", _ex_sigma_2sigma_nu),
    ("f<nu^2,2,eta> = -1/2 ((E1^2-1)/12)^2 (level 3)", _ex_nu2_eta),
    ("f<sigma^2,2,eta> = -1/2 ((E4-1)/240)^2 = f<sigma,2sigma,eta>", _ex_sigma2_eta),
    ("-1/2 ((E4-1)/240)^2 ~ beta_4/3 at level 3, no indeterminacy", _ex_cross_level_plain),
    ("f<sigma^2,2,eta> ~ beta_4/3 at level 3, modulo bracket indeterminacy", _ex_cross_level_indet),
    ("[1/2 a^2 (x) a^2]_16 = 1/12 ((E4(x)1 - 1(x)E4)/240)^4 up to cycles", _ex_kervaire_bracket),
    ("f<2,sigma^2,2,sigma^2> has order 2 and equals 1/2 ((E4-1)/240)^4", _ex_kervaire),
]


def _echelon_ok(prec):
    for level in LEVELS:
        for k in range(33):
            S = space(level, k, prec)
            if S.dim != dim_formula(level, k):
                return False
            for j, f in enumerate(S.basis):
                if any(f.coeffs[i] != (1 if i == j else 0) for i in range(S.dim)):
                    return False
    return True


def _well_defined(prec, trials=200, seed=0):
    rng = random.Random(seed)
    for _ in range(trials):
        level = rng.choice(LEVELS)
        n = rng.randrange(1 if level == 3 else 4, 13, 1 if level == 3 else 2)
        w = rng.randrange(0, 13)
        base = space(level, w, prec)
        if not base.dim:
            continue
        x = base.from_coordinates([Fraction(rng.randint(-30, 30), rng.randint(1, 30)) for _ in range(base.dim)])
        S = space(level, n, prec)
        g = S.from_coordinates([Fraction(rng.randint(-30, 30), rng.randint(1, 30)) for _ in range(S.dim)])
        m = Series1([rng.randint(-50, 50) for _ in range(prec + 1)], prec)
        c = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
        X = DividedCongruence(level, x)
        Y = DividedCongruence(level, x + g + m + c)
        fx, fy = fingerprint(X, n), fingerprint(Y, n)
        if fx != fy or zero_test(X, n) != fx.is_zero():
            return False
    return True


def _order_minimal(prec):
    a = _a(prec)
    for x, n in ((DividedCongruence(1, a ** 4 / 2), 16), (DividedCongruence(1, a * a / 2), 9)):
        m = order(x, n)
        if not zero_test(x * m, n) or any(zero_test(x * d, n) for d in range(1, m)):
            return False
    return True


def _adapt_ok(prec):
    a = _a(prec)
    x = DividedCongruence(1, a * a / 2)
    y = p_adapt(x, 2, 9)
    return class_eq(x, y, 9) and (y.expansion * 2).is_integral(start=1)


SELFTEST: list[Check] = [
    ("echelon bases q^i(f_j) = delta_ij, k <= 32, both levels", _echelon_ok),
    ("fingerprint unchanged by forms, constants, integral series", _well_defined),
    ("order is the least annihilating multiple", _order_minimal),
    ("2-adapted representative keeps the class", _adapt_ok),
]


def run(checks: list[Check], prec: int) -> Iterator[tuple[str, bool, str]]:
    for label, fn in checks:
        try:
            yield label, bool(fn(prec)), ""
        except Exception as exc:  # reported, not raised
            yield label, False, f"{type(exc).__name__}: {exc}"
