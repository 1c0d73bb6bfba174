import random

import sympy
from hypothesis import given, settings, strategies as st
from sympy.matrices.normalforms import hermite_normal_form

from boundgen.lattice import hnf, in_lattice, lll_reduce

rows_strategy = st.lists(st.lists(st.integers(-9, 9), min_size=3, max_size=3), min_size=1, max_size=5)


def _det_gram(rows):
    m = sympy.Matrix(rows)
    return (m * m.T).det()


def test_lll_small_example():
    basis = [[1, 1, 1], [-1, 0, 2], [3, 5, 6]]
    red = lll_reduce(basis)
    assert red == [[0, 1, 0], [1, 0, 1], [-1, 0, 2]]
    assert abs(sympy.Matrix(red).det()) == abs(sympy.Matrix(basis).det())


def test_lll_preserves_lattice():
    rng = random.Random(0)
    for _ in range(20):
        while True:
            basis = [[rng.randint(-20, 20) for _ in range(4)] for _ in range(3)]
            if _det_gram(basis) != 0:
                break
        red = lll_reduce(basis)
        assert _det_gram(red) == _det_gram(basis)
        h1, h2 = hnf(basis, 4), hnf(red, 4)
        assert h1 == h2


@settings(max_examples=80, deadline=None)
@given(rows_strategy)
def test_hnf_matches_sympy_column_form(rows):
    got = hnf(rows, 3)
    if not any(any(r) for r in rows):
        assert got == []
        return
    # sympy works on columns; transpose both ways and compare the spanned lattice
    want = hermite_normal_form(sympy.Matrix(rows).T).T
    want_rows = [list(map(int, want.row(i))) for i in range(want.rows) if any(want.row(i))]
    assert hnf(want_rows, 3) == got
    for r in rows:
        assert in_lattice(r, got)


@settings(max_examples=80, deadline=None)
@given(rows_strategy)
def test_hnf_canonical_shape(rows):
    basis = hnf(rows, 3)
    pivots = []
    for r in basis:
        c = next(i for i, x in enumerate(r) if x)
        assert r[c] > 0
        pivots.append(c)
    assert pivots == sorted(set(pivots))
    for i, (c, r) in enumerate(zip(pivots, basis)):
        for above in basis[:i]:
            assert 0 <= above[c] < r[c]
    shuffled = list(reversed(rows))
    assert hnf(shuffled, 3) == basis
