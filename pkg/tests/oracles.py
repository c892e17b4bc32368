"""Brute-force reference computations, deliberately independent of the package internals."""

from fractions import Fraction
from itertools import combinations, product
from math import gcd, lcm


def sigma(r, n, chi=None):
    return sum((chi(d) if chi else 1) * d ** r for d in range(1, n + 1) if n % d == 0)


def chi3(d):
    return (0, 1, -1)[d % 3]


def naive_mul(a, b, prec):
    return [sum(a[i] * b[k - i] for i in range(k + 1)) for k in range(prec + 1)]


def naive_pow(a, k, prec):
    out = [1] + [0] * prec
    for _ in range(k):
        out = naive_mul(out, a, prec)
    return out


def e4(prec):
    return [1] + [240 * sigma(3, n) for n in range(1, prec + 1)]


def e6(prec):
    return [1] + [-504 * sigma(5, n) for n in range(1, prec + 1)]


def e1(prec):
    return [1] + [6 * sigma(0, n, chi3) for n in range(1, prec + 1)]


def det(M):
    """Exact determinant by cofactor expansion (small matrices only)."""
    if not M:
        return Fraction(1)
    if len(M) == 1:
        return Fraction(M[0][0])
    return sum((-1) ** j * M[0][j] * det([row[:j] + row[j + 1:] for row in M[1:]]) for j in range(len(M)))


def _rank(rows):
    rows = [list(map(Fraction, r)) for r in rows]
    r = 0
    for c in range(len(rows[0]) if rows else 0):
        k = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if k is None:
            continue
        rows[r], rows[k] = rows[k], rows[r]
        for i in range(r + 1, len(rows)):
            f = rows[i][c] / rows[r][c]
            rows[i] = [u - f * v for u, v in zip(rows[i], rows[r])]
        r += 1
    return r


def minor_gcd(A):
    """gcd of the maximal nonzero minors of an integer matrix (rank r)."""
    m, n = len(A), len(A[0])
    r = _rank(A)
    if r == 0:
        return 1, 0
    g = 0
    for rs in combinations(range(m), r):
        for cs in combinations(range(n), r):
            g = gcd(g, int(det([[A[i][j] for j in cs] for i in rs])))
    return g, r


def brute_integer_congruence(A_rat, A_int, b):
    """Search for ``x`` (rational on ``A_rat`` columns, integer on ``A_int``) with ``A x - b`` integral.

    ``A_rat`` must be an integer matrix.  Integer unknowns only matter modulo the
    denominators of their column; rational unknowns can be taken in
    ``(1/N) Z / Z`` with ``N = L * (gcd of maximal minors)``, where ``L`` clears
    every denominator not coming from the rational columns.
    """
    m = len(b)
    n_rat = len(A_rat[0]) if A_rat else 0
    n_int = len(A_int[0]) if A_int else 0
    int_ranges = []
    L = lcm(*[Fraction(v).denominator for v in b])
    for j in range(n_int):
        d = lcm(*[Fraction(A_int[i][j]).denominator for i in range(m)])
        int_ranges.append(range(d))
        L = lcm(L, d)
    if n_rat:
        G, _ = minor_gcd(A_rat)
        N = L * G
    else:
        N = 1
    rat_ranges = [range(N)] * n_rat
    for ys in product(*int_ranges):
        for ks in product(*rat_ranges):
            ok = True
            for i in range(m):
                v = -Fraction(b[i])
                v += sum(Fraction(k, N) * A_rat[i][j] for j, k in enumerate(ks))
                v += sum(y * Fraction(A_int[i][j]) for j, y in enumerate(ys))
                if v.denominator != 1:
                    ok = False
                    break
            if ok:
                return [Fraction(k, N) for k in ks] + [Fraction(y) for y in ys]
    return None


def brute_virtual_weight_dim1(f, f0, prec):
    """Is there ``c`` with ``c * f0 = f`` mod Z in degrees ``1..prec``?

    ``f`` has positive-degree denominators dividing ``D``; any ``c`` must lie in
    ``(1/(D g)) Z`` where ``g`` is the gcd of the positive coefficients of ``f0``, and
    only matters modulo ``(1/g) Z``.
    """
    D = lcm(*[Fraction(v).denominator for v in f[1:prec + 1]])
    g = 0
    for v in f0[1:prec + 1]:
        g = gcd(g, int(v))
    if g == 0:
        return Fraction(0) if D == 1 else None
    for k in range(D):
        c = Fraction(k, D * g)
        if all((c * f0[i] - f[i]).denominator == 1 for i in range(1, prec + 1)):
            return c
    return None


def g3(prec):
    return [1] + [-9 * sigma(2, n, chi3) for n in range(1, prec + 1)]


def rref(rows):
    rows = [list(map(Fraction, r)) for r in rows]
    out, pivots, r = rows, [], 0
    for c in range(len(rows[0]) if rows else 0):
        k = next((i for i in range(r, len(out)) if out[i][c]), None)
        if k is None:
            continue
        out[r], out[k] = out[k], out[r]
        out[r] = [v / out[r][c] for v in out[r]]
        for i in range(len(out)):
            if i != r and out[i][c]:
                f = out[i][c]
                out[i] = [u - f * v for u, v in zip(out[i], out[r])]
        pivots.append(c)
        r += 1
        if r == len(out):
            break
    return out[:r], pivots


def naive_basis(level, k, prec):
    """Echelon basis of M_k from naive monomial products."""
    if level == 1:
        a, b, wa, wb = e4(prec), e6(prec), 4, 6
    else:
        a, b, wa, wb = e1(prec), g3(prec), 1, 3
    mons = [naive_mul(naive_pow(a, (k - wb * j) // wa, prec), naive_pow(b, j, prec), prec)
            for j in range(k // wb + 1) if (k - wb * j) % wa == 0] if k >= 0 else []
    if not mons:
        return []
    rows, _ = rref(mons)
    return rows


def brute_virtual_weight(f, basis, prec):
    """Search ``g = sum c_j f_j`` with ``f - g`` integral in degrees ``1..prec``.

    For ``j >= 1`` the echelon shape forces ``c_j = q^j(f)`` mod Z (shifts by
    integers change ``g`` by an integral series).  What is left is a search for
    ``c_0`` over ``(1/(D g)) Z / (1/g) Z``.
    """
    f = list(map(Fraction, f[:prec + 1]))
    d = len(basis)
    if d == 0:
        return [] if all(v.denominator == 1 for v in f[1:]) else None
    resid = list(f)
    cs = [Fraction(0)] * d
    for j in range(1, d):
        cs[j] = resid[j]
        resid = [u - cs[j] * v for u, v in zip(resid, basis[j])]
    c0 = brute_virtual_weight_dim1(resid, basis[0], prec)
    if c0 is None:
        return None
    cs[0] = c0
    return cs
