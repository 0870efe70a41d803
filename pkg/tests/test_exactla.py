import numpy as np
from hypothesis import given, settings, strategies as st

from jokerlab.exactla import (
    Matrix,
    column_space,
    extend_basis,
    hstack,
    in_column_space,
    inverse,
    is_invertible,
    kernel,
    kronecker,
    rank,
    rref,
    solve,
)
from jokerlab.ffield import F4


def matrices(rows=st.integers(1, 5), cols=st.integers(1, 5)):
    return st.tuples(rows, cols).flatmap(
        lambda rc: st.lists(st.integers(0, 3), min_size=rc[0] * rc[1], max_size=rc[0] * rc[1]).map(
            lambda xs: Matrix(F4, np.array(xs, dtype=np.uint8).reshape(rc))
        )
    )


def test_text_round_trip():
    m = Matrix.from_rows(F4, [[1, "w"], ["w2", 0]])
    assert m.to_text() == "1 w\nw2 0"
    assert Matrix.from_text(F4, m.to_text()) == m


def test_known_inverse():
    m = Matrix.from_rows(F4, [[1, 1, "w"], [0, 1, 1], [0, 0, 1]])
    inv = inverse(m)
    assert m @ inv == Matrix.identity(F4, 3)


def test_solve_inconsistent_returns_none():
    m = Matrix.from_rows(F4, [[1, 0], [0, 0]])
    assert solve(m, Matrix.column(F4, [0, 1])) is None


def test_kronecker_blocks():
    a = Matrix.from_rows(F4, [[1, "w"]])
    b = Matrix.identity(F4, 2)
    k = kronecker(a, b)
    assert k.shape == (2, 4)
    assert k[:, 2:4] == b.scale("w")


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rank_nullity(m):
    assert rank(m) + kernel(m).cols == m.cols
    assert (m @ kernel(m)).is_zero()


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rref_pivots(m):
    r, pivots, k = rref(m)
    assert len(pivots) == k == rank(m)
    for t, p in enumerate(pivots):
        assert r.a[t, p] == 1


@settings(max_examples=60, deadline=None)
@given(matrices(), st.lists(st.integers(0, 3), min_size=5, max_size=5))
def test_solve_consistent_systems(m, xs):
    x = Matrix(F4, np.array(xs[: m.cols], dtype=np.uint8).reshape(-1, 1))
    b = m @ x
    y = solve(m, b)
    assert y is not None and m @ y == b
    assert in_column_space(m, b)


@settings(max_examples=40, deadline=None)
@given(matrices(rows=st.just(4), cols=st.just(4)))
def test_inverse_when_invertible(m):
    if is_invertible(m):
        assert inverse(m) @ m == Matrix.identity(F4, 4)
    else:
        assert rank(m) < 4


@settings(max_examples=40, deadline=None)
@given(matrices(rows=st.just(4)))
def test_extend_basis_spans(m):
    whole = Matrix.identity(F4, 4)
    sub = column_space(m)
    chosen = extend_basis(sub, whole)
    assert rank(hstack([sub, whole[:, chosen]], F4, 4)) == 4
    assert len(chosen) == 4 - sub.cols
