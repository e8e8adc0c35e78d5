import math

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from oracles import determinantal_invariants
from tamelog.intlinalg import (
    cofactor_normal,
    det,
    divisors,
    echelon_coordinates,
    hermite_rows,
    is_prime,
    matmul,
    smith_normal_form,
    vector_gcd,
)

small = st.integers(-6, 6)


def matrices(max_rows=3, max_cols=4):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r)
        )
    )


@pytest.mark.parametrize(
    "m, expected",
    [
        ([[2, 0], [0, 3]], [1, 6]),
        ([[0, 0], [0, 0]], [0, 0]),
        ([[2, 4, 4], [-6, 6, 12], [10, -4, -16]], [2, 6, 12]),
        ([[6, 10, 15]], [1]),
        ([[2], [2]], [2]),
    ],
)
def test_smith_examples(m, expected):
    assert smith_normal_form(m).diagonal == expected


def test_smith_empty():
    assert smith_normal_form([]).diagonal == []


@given(matrices())
def test_smith_transforms_and_divisibility(m):
    diag, u, v = smith_normal_form(m)
    rows, cols = len(m), len(m[0])
    d = [[diag[i] if i == j and i < len(diag) else 0 for j in range(cols)] for i in range(rows)]
    assert matmul(matmul(u, m), v) == d
    assert abs(det(u)) == 1 and abs(det(v)) == 1
    assert all(x >= 0 for x in diag)
    nonzero = [x for x in diag if x]
    assert diag[: len(nonzero)] == nonzero
    for a, b in zip(nonzero, nonzero[1:]):
        assert b % a == 0


@given(matrices(3, 3))
def test_smith_matches_minors_oracle(m):
    assert smith_normal_form(m).diagonal == determinantal_invariants(m)


@given(st.lists(st.lists(small, min_size=3, max_size=3), min_size=1, max_size=3))
def test_det_matches_sympy(rows):
    n = len(rows)
    sq = [r[:n] for r in rows]
    assert det(sq) == sympy.Matrix(sq).det()


@given(st.lists(st.lists(small, min_size=3, max_size=3), min_size=1, max_size=4), st.lists(small, min_size=3, max_size=3))
def test_hermite_spans_same_lattice(rows, combo_seed):
    basis = hermite_rows(rows, 3)
    assert len(basis) == sympy.Matrix(rows).rank()
    for r in rows:
        assert echelon_coordinates(basis, r) is not None
    for b in basis:
        lead = next(x for x in b if x)
        assert lead > 0
    point = [sum(c * r[i] for c, r in zip(combo_seed, rows)) for i in range(3)]
    assert echelon_coordinates(basis, point) is not None


def test_echelon_coordinates_outside():
    basis = hermite_rows([[2, 0], [0, 2]], 2)
    assert echelon_coordinates(basis, (1, 0)) is None
    assert echelon_coordinates(basis, (4, -2)) == (2, -1)


@given(st.lists(st.lists(small, min_size=3, max_size=3), min_size=2, max_size=2))
def test_cofactor_normal_is_orthogonal(vs):
    n = cofactor_normal(vs)
    for v in vs:
        assert sum(a * b for a, b in zip(n, v)) == 0
    expected = sympy.Matrix(vs[0]).cross(sympy.Matrix(vs[1]))
    assert any(n) == any(expected)


def test_number_theory_helpers():
    assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert divisors(12) == [1, 2, 3, 4, 6, 12]
    assert vector_gcd((6, -10, 15)) == 1
    assert vector_gcd((0, 0)) == 0
    assert vector_gcd((4, -6)) == math.gcd(4, 6)
