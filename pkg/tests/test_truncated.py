import pytest

from jokerlab.exactla import Matrix
from jokerlab.ffield import F4
from jokerlab.gmod import (
    RMatrix,
    builtin,
    endotrivial_truncated,
    lift_module,
    truncated_regular,
    truncated_trivial,
)


def test_rmatrix_multiplication_uses_w_squared():
    w = RMatrix.teichmuller(Matrix.from_rows(F4, [["w"]]), 4)
    w2 = w @ w  # w^2 = -1 - w
    assert int(w2.a[0, 0]) == 15 and int(w2.b[0, 0]) == 15
    assert (w2 @ w) == RMatrix.identity(1, 4)


def test_rmatrix_inverse():
    m = RMatrix.teichmuller(Matrix.from_rows(F4, [[1, "w"], [0, 1]]), 6)
    assert m @ m.inverse() == RMatrix.identity(2, 6)


@pytest.mark.parametrize("name", ["W3", "W5", "Jprime", "nu_eta", "Mprime"])
def test_lift_is_action_and_endotrivial(name):
    lifted = lift_module(builtin(name), m=8)
    assert lifted.check_action() == []
    assert lifted.reduction().rho == builtin(name).rho
    assert endotrivial_truncated(lifted)


def test_truncated_regular_and_trivial(q8):
    assert not endotrivial_truncated(truncated_regular(q8))
    assert endotrivial_truncated(truncated_trivial(q8, 1))
    assert not endotrivial_truncated(truncated_trivial(q8, 2))
