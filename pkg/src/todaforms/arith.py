"""Exact rational arithmetic and linear algebra over Q and modulo Z.

Everything here works with :class:`fractions.Fraction` and Python integers;
there is no floating point anywhere.  The central routine is
:func:`solve_mod_integers`, which decides systems ``A x = b (mod Z^m)`` where
each unknown ranges over either Z or Q.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

from .errors import Infeasible

Rational = Fraction

INTEGER = "integer"
RATIONAL = "rational"


def qmodz_reduce(r) -> Fraction:
    """Return the representative of ``r`` mod Z in ``[0, 1)``."""
    r = Fraction(r)
    return r - (r.numerator // r.denominator)


def is_integral(r) -> bool:
    return Fraction(r).denominator == 1


def common_denominator(values: Iterable) -> int:
    d = 1
    for v in values:
        d = lcm(d, Fraction(v).denominator)
    return d


def to_integer_vector(values: Sequence) -> tuple[list[int], int]:
    """Write ``values`` as ``(numerators, D)`` with ``values[i] == numerators[i] / D``."""
    vals = [Fraction(v) for v in values]
    d = common_denominator(vals)
    return [v.numerator * (d // v.denominator) for v in vals], d


@dataclass(frozen=True)
class ExactMatrix:
    """Dense row-major matrix of rationals."""

    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} entries, "
                f"got {len(self.entries)}"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "ExactMatrix":
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), ncols, tuple(Fraction(x) for r in rows for x in r))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], nrows: int | None = None) -> "ExactMatrix":
        columns = [list(c) for c in columns]
        if nrows is None:
            nrows = len(columns[0]) if columns else 0
        return cls.from_rows([[c[i] for c in columns] for i in range(nrows)]) if columns else cls(nrows, 0, ())

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)])

    def __getitem__(self, ij) -> Fraction:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> tuple:
        return self.entries[j::self.cols] if self.cols else ()

    def columns(self) -> list[tuple]:
        return [self.column(j) for j in range(self.cols)]

    def to_rows(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def apply(self, x: Sequence) -> list[Fraction]:
        if len(x) != self.cols:
            raise ValueError("dimension mismatch")
        return [sum((a * Fraction(v) for a, v in zip(self.row(i), x)), Fraction(0))
                for i in range(self.rows)]


def _as_columns(A) -> tuple[list[list[Fraction]], int]:
    if isinstance(A, ExactMatrix):
        return [list(c) for c in A.columns()], A.rows
    rows = [list(r) for r in A]
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    return [[Fraction(rows[i][j]) for i in range(nrows)] for j in range(ncols)], nrows


# ---------------------------------------------------------------------------
# exact solving over Q


def solve_columns_exact(columns: Sequence[Sequence], b: Sequence) -> list[Fraction]:
    """Solve ``sum_j x_j columns[j] == b`` exactly; free unknowns are set to 0.

    Rows are consumed incrementally into a reduced echelon basis, and scanning
    stops as soon as the basis has full column rank; the solution is then
    checked against every row by substitution.
    """
    r = len(columns)
    m = len(b)
    basis: list[tuple[int, list[Fraction]]] = []   # (pivot column, row of length r+1)
    for i in range(m):
        if len(basis) == r:
            break
        row = [Fraction(columns[j][i]) for j in range(r)] + [Fraction(b[i])]
        for p, brow in basis:
            f = row[p]
            if f:
                row = [u - f * v for u, v in zip(row, brow)]
        piv = next((j for j in range(r) if row[j]), None)
        if piv is None:
            if row[r]:
                raise Infeasible(f"inconsistent equation at row {i}")
            continue
        inv = 1 / row[piv]
        row = [u * inv for u in row]
        basis = [(p, [u - brow[piv] * v for u, v in zip(brow, row)]) if brow[piv] else (p, brow)
                 for p, brow in basis]
        basis.append((piv, row))
    x = [Fraction(0)] * r
    for p, brow in basis:
        x[p] = brow[r]
    nz = [(j, x[j]) for j in range(r) if x[j]]
    for i in range(m):
        if sum((v * columns[j][i] for j, v in nz), Fraction(0)) != b[i]:
            raise Infeasible(f"inconsistent equation at row {i}")
    return x


def solve_linear_exact(A, b: Sequence) -> list[Fraction]:
    """Return some ``x`` with ``A x == b`` exactly, or raise :class:`Infeasible`."""
    columns, nrows = _as_columns(A)
    if len(b) != nrows:
        raise ValueError("right-hand side has wrong length")
    return solve_columns_exact(columns, [Fraction(v) for v in b])


def rank(vectors: Sequence[Sequence]) -> int:
    """Rank over Q of a list of equal-length vectors."""
    basis: list[tuple[int, list[Fraction]]] = []
    for v in vectors:
        row = [Fraction(x) for x in v]
        for p, brow in basis:
            if row[p]:
                f = row[p] / brow[p]
                row = [u - f * w for u, w in zip(row, brow)]
        piv = next((j for j, u in enumerate(row) if u), None)
        if piv is not None:
            basis.append((piv, row))
    return len(basis)


# ---------------------------------------------------------------------------
# integer lattices


def hermite_normal_form(M: Sequence[Sequence[int]]) -> tuple[list[list[int]], list[list[int]]]:
    """Row-style Hermite normal form.

    Returns ``(H, U)`` with ``H == U @ M``, ``U`` unimodular, ``H`` in row echelon
    form with positive pivots and entries above each pivot reduced into
    ``[0, pivot)``.
    """
    H = [list(map(int, r)) for r in M]
    m = len(H)
    n = len(H[0]) if m else 0
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    r = 0
    for c in range(n):
        if r == m:
            break
        while True:
            nz = [i for i in range(r, m) if H[i][c]]
            if not nz:
                break
            k = min(nz, key=lambda i: abs(H[i][c]))
            H[r], H[k] = H[k], H[r]
            U[r], U[k] = U[k], U[r]
            done = True
            for i in range(r + 1, m):
                if H[i][c]:
                    f = H[i][c] // H[r][c]
                    H[i] = [a - f * b for a, b in zip(H[i], H[r])]
                    U[i] = [a - f * b for a, b in zip(U[i], U[r])]
                    if H[i][c]:
                        done = False
            if done:
                break
        if r < m and H[r][c]:
            if H[r][c] < 0:
                H[r] = [-a for a in H[r]]
                U[r] = [-a for a in U[r]]
            for i in range(r):
                f = H[i][c] // H[r][c]
                if f:
                    H[i] = [a - f * b for a, b in zip(H[i], H[r])]
                    U[i] = [a - f * b for a, b in zip(U[i], U[r])]
            r += 1
    return H, U


def integer_determinant(M: Sequence[Sequence[int]]) -> int:
    """Exact determinant of a square integer matrix (fraction-free Bareiss)."""
    A = [list(map(int, r)) for r in M]
    n = len(A)
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k]), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1] if n else 1


class LatticeProjector:
    """Quotient map ``Q^m / (Z^m + V)  ->  (Q/Z)^(m - dim V)``.

    ``V`` is the Q-span of the given vectors.  Integer column operations bring
    the spanning rows to lower-echelon form; the recorded operations define a
    unimodular ``U`` and the map ``x -> (x U)`` restricted to the non-pivot
    columns has kernel exactly ``V`` (and maps ``Z^m`` onto the integers), so
    reducing its output mod 1 is a canonical invariant of ``x`` modulo
    ``Z^m + V``.  When the reduced echelon form of ``V`` is integral the map is
    the familiar "subtract the combination matching the pivot entries, keep the
    rest".
    """

    def __init__(self, vectors: Sequence[Sequence], length: int):
        self.length = length
        self.ops: list[tuple[int, int, int]] = []   # x[c] -= f * x[p]
        rows = []
        for v in vectors:
            if len(v) != length:
                raise ValueError("vector length mismatch")
            ints, _ = to_integer_vector(v)
            g = 0
            for a in ints:
                g = gcd(g, a)
            if g:
                rows.append([a // g for a in ints])
        used = [False] * length
        self.pivots: list[int] = []
        ops = self.ops
        for r in range(len(rows)):
            row = rows[r]
            later = rows[r:]
            while True:
                nz = [c for c in range(length) if row[c] and not used[c]]
                if not nz:
                    break
                p = next((c for c in nz if abs(row[c]) == 1), None)
                if p is not None:
                    s = row[p]
                    for c in nz:
                        if c != p:
                            f = row[c] * s
                            ops.append((c, p, f))
                            for w in later:
                                if w[p]:
                                    w[c] -= f * w[p]
                    used[p] = True
                    self.pivots.append(p)
                    break
                if len(nz) == 1:
                    used[nz[0]] = True
                    self.pivots.append(nz[0])
                    break
                p = min(nz, key=lambda c: abs(row[c]))
                for c in nz:
                    if c != p:
                        f = row[c] // row[p]
                        if f:
                            ops.append((c, p, f))
                            for w in later:
                                if w[p]:
                                    w[c] -= f * w[p]
        self.free = tuple(c for c in range(length) if not used[c])
        self.rank = len(self.pivots)

    def _forward(self, ints: list[int]) -> list[int]:
        x = list(ints)
        for c, p, f in self.ops:
            if x[p]:
                x[c] -= f * x[p]
        return x

    def transform(self, x: Sequence) -> list[Fraction]:
        """Full image ``x U`` (pivot and free coordinates)."""
        ints, d = to_integer_vector(x)
        return [Fraction(a, d) for a in self._forward(ints)]

    def project(self, x: Sequence) -> tuple:
        """Image of ``x`` on the free coordinates (not yet reduced mod 1)."""
        ints, d = to_integer_vector(x)
        y = self._forward(ints)
        return tuple(Fraction(y[c], d) for c in self.free)

    def reduce(self, x: Sequence) -> tuple:
        return tuple(qmodz_reduce(v) for v in self.project(x))

    def split(self, x: Sequence) -> tuple[list[Fraction], list[int]]:
        """Write ``x = v + z`` with ``v`` in ``V`` and ``z`` integral.

        Raises :class:`Infeasible` if ``x`` is not in ``V + Z^m``.
        """
        ints, d = to_integer_vector(x)
        y = self._forward(ints)
        z = [0] * self.length
        for c in self.free:
            if y[c] % d:
                raise Infeasible("vector is not in V + Z^m")
            z[c] = y[c] // d
        for c, p, f in reversed(self.ops):
            if z[p]:
                z[c] += f * z[p]
        v = [Fraction(a, d) - b for a, b in zip(ints, z)]
        return v, z


def _solve_integer_congruence(columns: Sequence[Sequence], c: Sequence) -> list[int]:
    """Find integers ``y`` with ``sum_j y_j columns[j] == c (mod Z)``.

    Clears denominators to ``M y == e (mod d)`` and diagonalises ``M`` with
    unimodular row and column operations (entries kept reduced mod ``d``).
    """
    t = len(columns)
    vals = [v for col in columns for v in col] + list(c)
    d = common_denominator(vals)
    m = len(c)
    rows = []
    for i in range(m):
        row = [int(Fraction(columns[j][i]) * d) % d for j in range(t)]
        rhs = int(Fraction(c[i]) * d) % d
        if any(row):
            rows.append(row + [rhs])
        elif rhs:
            raise Infeasible("congruence has an unsatisfiable row")
    R = [[int(i == j) for j in range(t)] for i in range(t)]
    n = len(rows)
    diag = []
    for k in range(min(t, n)):
        while True:
            best = None
            for i in range(k, n):
                row = rows[i]
                for j in range(k, t):
                    if row[j] and (best is None or row[j] < best[0]):
                        best = (row[j], i, j)
            if best is None:
                break
            _, i, j = best
            rows[k], rows[i] = rows[i], rows[k]
            if j != k:
                for row in rows:
                    row[k], row[j] = row[j], row[k]
                for row in R:
                    row[k], row[j] = row[j], row[k]
            piv = rows[k][k]
            clean = True
            for i in range(k + 1, n):
                a = rows[i][k]
                if a:
                    f = a // piv
                    rk = rows[k]
                    rows[i] = [(u - f * v) % d for u, v in zip(rows[i], rk)]
                    if rows[i][k]:
                        clean = False
            for j in range(k + 1, t):
                a = rows[k][j]
                if a:
                    f = a // piv
                    for row in rows:
                        row[j] = (row[j] - f * row[k]) % d
                    for row in R:
                        row[j] -= f * row[k]
                    if rows[k][j]:
                        clean = False
            if clean:
                break
        if k >= n or not rows[k][k]:
            break
        diag.append(rows[k][k])
    w = [0] * t
    for k, dk in enumerate(diag):
        e = rows[k][t]
        g = gcd(dk, d)
        if e % g:
            raise Infeasible("congruence has no integer solution")
        mod = d // g
        w[k] = (e // g) * pow(dk // g, -1, mod) % mod if mod > 1 else 0
    for i in range(len(diag), n):
        if rows[i][t] % d:
            raise Infeasible("congruence has no integer solution")
    y = [sum(R[i][j] * w[j] for j in range(t)) for i in range(t)]
    return y


def solve_mod_integers_columns(columns: Sequence[Sequence], b: Sequence,
                               domains: Sequence[str]) -> list[Fraction]:
    """Column-oriented form of :func:`solve_mod_integers`."""
    m = len(b)
    if len(domains) != len(columns):
        raise ValueError("one domain per column required")
    b = [Fraction(v) for v in b]
    qidx = [j for j, dom in enumerate(domains) if dom == RATIONAL]
    zidx = [j for j, dom in enumerate(domains) if dom == INTEGER]
    if len(qidx) + len(zidx) != len(domains):
        raise ValueError(f"domains must be {INTEGER!r} or {RATIONAL!r}")
    proj = LatticeProjector([columns[j] for j in qidx], m)
    y = _solve_integer_congruence([proj.project(columns[j]) for j in zidx], proj.project(b)) if zidx else []
    resid = list(b)
    for j, yj in zip(zidx, y):
        if yj:
            resid = [u - yj * Fraction(v) for u, v in zip(resid, columns[j])]
    v, _ = proj.split(resid)
    xq = solve_columns_exact([columns[j] for j in qidx], v) if qidx else []
    x = [Fraction(0)] * len(columns)
    for j, val in zip(qidx, xq):
        x[j] = val
    for j, val in zip(zidx, y):
        x[j] = Fraction(val)
    for i in range(m):
        lhs = sum((x[j] * columns[j][i] for j in range(len(columns)) if x[j]), Fraction(0))
        if not is_integral(lhs - b[i]):
            raise AssertionError(f"solver substitution check failed at row {i}")
    return x


def solve_mod_integers(A, b: Sequence, domains: Sequence[str]) -> list[Fraction]:
    """Return ``x`` with ``A x - b`` integral, ``x_j`` in Z where ``domains[j] == "integer"``.

    Raises :class:`Infeasible` when no such ``x`` exists.
    """
    columns, nrows = _as_columns(A)
    if len(b) != nrows:
        raise ValueError("right-hand side has wrong length")
    return solve_mod_integers_columns(columns, b, domains)
