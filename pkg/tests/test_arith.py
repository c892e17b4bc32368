from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import brute_integer_congruence, det
from todaforms.arith import (INTEGER, RATIONAL, ExactMatrix, LatticeProjector, hermite_normal_form,
                             integer_determinant, qmodz_reduce, solve_linear_exact, solve_mod_integers)
from todaforms.errors import Infeasible

fractions = st.fractions(min_value=-50, max_value=50, max_denominator=60)


@pytest.mark.parametrize("r, expected", [
    (Fraction(7, 4), Fraction(3, 4)),
    (Fraction(-1, 3), Fraction(2, 3)),
    (Fraction(5), Fraction(0)),
    (Fraction(-2), Fraction(0)),
])
def test_qmodz_reduce(r, expected):
    assert qmodz_reduce(r) == expected


@given(fractions, fractions)
def test_qmodz_additive(r, s):
    assert qmodz_reduce(r + s) == qmodz_reduce(qmodz_reduce(r) + qmodz_reduce(s))
    assert 0 <= qmodz_reduce(r) < 1


def test_exact_matrix_shape_checks():
    M = ExactMatrix.from_rows([[1, 2], [3, 4]])
    assert M[1, 0] == 3
    assert M.column(1) == (2, 4)
    assert M.apply([1, Fraction(1, 2)]) == [2, 5]
    with pytest.raises(ValueError):
        ExactMatrix(2, 2, (1, 2, 3))


def test_solve_linear_exact_examples():
    I = ExactMatrix.identity(2)
    assert solve_linear_exact(I, [Fraction(1, 2), -3]) == [Fraction(1, 2), -3]
    assert solve_linear_exact([[2]], [Fraction(1, 3)]) == [Fraction(1, 6)]
    with pytest.raises(Infeasible):
        solve_linear_exact([[1], [1]], [0, 1])


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(st.integers(-4, 4), min_size=3, max_size=3), min_size=2, max_size=4),
       st.lists(st.integers(-3, 3), min_size=3, max_size=3))
def test_solve_linear_exact_substitution(rows, x0):
    A = [[Fraction(v) for v in r] for r in rows]
    b = [sum(a * x for a, x in zip(r, x0)) for r in A]
    x = solve_linear_exact(A, b)
    assert [sum(a * v for a, v in zip(r, x)) for r in A] == b


def test_solve_mod_integers_examples():
    assert solve_mod_integers([[1]], [Fraction(1, 2)], [RATIONAL]) == [Fraction(1, 2)]
    with pytest.raises(Infeasible):
        solve_mod_integers([[2]], [Fraction(1, 2)], [INTEGER])
    b = [Fraction(1, 4) + 126]
    with pytest.raises(Infeasible):
        solve_mod_integers([[504]], b, [INTEGER])
    x = solve_mod_integers([[504]], b, [RATIONAL])
    assert (504 * x[0] - b[0]).denominator == 1
    # 1/2016 is one such solution
    assert (504 * Fraction(1, 2016) - b[0]).denominator == 1


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(st.integers(-2, 2), min_size=2, max_size=2), min_size=3, max_size=3),
       st.lists(st.lists(st.fractions(min_value=-2, max_value=2, max_denominator=2), min_size=1, max_size=1),
                min_size=3, max_size=3),
       st.lists(st.fractions(min_value=-2, max_value=2, max_denominator=4), min_size=3, max_size=3))
def test_solve_mod_integers_matches_brute_force(A_rat, A_int, b):
    rows = [r + i for r, i in zip(A_rat, A_int)]
    doms = [RATIONAL, RATIONAL, INTEGER]
    brute = brute_integer_congruence(A_rat, A_int, b)
    try:
        x = solve_mod_integers(rows, b, doms)
    except Infeasible:
        assert brute is None
        return
    assert brute is not None
    assert x[2].denominator == 1
    for r, bi in zip(rows, b):
        assert (sum(a * v for a, v in zip(r, x)) - bi).denominator == 1


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(st.integers(-6, 6), min_size=3, max_size=3), min_size=2, max_size=4))
def test_hermite_normal_form(M):
    H, U = hermite_normal_form(M)
    n = len(M)
    assert abs(integer_determinant(U)) == 1
    assert abs(det(U)) == 1
    assert [[sum(U[i][k] * M[k][j] for k in range(n)) for j in range(3)] for i in range(n)] == H
    # row echelon with positive pivots and reduced entries above them
    last = -1
    for i, row in enumerate(H):
        nz = [j for j, v in enumerate(row) if v]
        if not nz:
            assert all(not any(r) for r in H[i:])
            break
        p = nz[0]
        assert p > last and row[p] > 0
        assert all(0 <= H[k][p] < row[p] for k in range(i))
        last = p


def test_lattice_projector_split_and_reduce():
    # V spanned by (1, 3) and (0, 3): residues of x mod V + Z^2
    proj = LatticeProjector([[1, 3], [0, 3]], 2)
    assert proj.rank == 2
    x = [Fraction(1, 2), Fraction(7, 6)]
    v, z = proj.split(x)
    assert [a - b for a, b in zip(x, v)] == z
    assert all(isinstance(c, int) for c in z)
    assert proj.reduce(x) == ()


def test_lattice_projector_split_lands_in_span():
    proj = LatticeProjector([[2, 4, 6]], 3)
    x = [Fraction(6, 5), Fraction(2, 5), Fraction(-7, 5)]  # (1/5)(1, 2, 3) + (1, 0, -2)
    v, z = proj.split(x)
    t = v[0] / 2
    assert v == [2 * t, 4 * t, 6 * t]
    assert [a - b for a, b in zip(x, v)] == z


def test_lattice_projector_detects_nonzero_residue():
    # the single vector (3, 3) leaves a Q/Z invariant in the second coordinate
    proj = LatticeProjector([[3, 3]], 2)
    assert proj.reduce([Fraction(1, 3), Fraction(1, 3)]) == (Fraction(0),)
    assert proj.reduce([Fraction(1, 3), Fraction(2, 3)]) != (Fraction(0),)
    with pytest.raises(Infeasible):
        proj.split([Fraction(1, 3), Fraction(2, 3)])
