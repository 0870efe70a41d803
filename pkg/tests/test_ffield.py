import itertools

import pytest
from hypothesis import given, strategies as st

from jokerlab.ffield import F2, F4, ReducibleModulusError, field_by_name, make_field

F16 = make_field(4, 0b10011)
F8 = make_field(3, 0b1011)


def test_f4_notation_round_trip():
    assert [F4.format(a) for a in range(4)] == ["0", "1", "w", "w2"]
    for a in range(4):
        assert F4.parse(F4.format(a)) == a


def test_w_satisfies_its_minimal_polynomial():
    w = F4.w
    assert w * w + w + F4.one == F4.zero
    assert w**3 == F4.one
    assert w * w == F4("w2")


def test_reducible_modulus_names_a_factor():
    with pytest.raises(ReducibleModulusError):
        make_field(2, 0b101)  # x^2 + 1 = (x + 1)^2


def test_field_by_name():
    assert field_by_name("F4") == F4
    assert field_by_name("F2") == F2


def test_mixed_fields_rejected():
    with pytest.raises(ValueError):
        F4(1) + F16(1)


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        F4(1) / F4(0)


@pytest.mark.parametrize("field", [F2, F4, F8, F16])
def test_field_axioms_exhaustive(field):
    els = field.elements()
    zero, one = field.zero, field.one
    for a, b in itertools.product(els, repeat=2):
        assert a + b == b + a
        assert a * b == b * a
        assert a + a == zero  # characteristic 2
    for a, b, c in itertools.product(els, repeat=3):
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
    for a in els:
        if a != zero:
            assert a * a.inverse() == one
        assert a.frobenius() == a * a


@given(st.integers(0, 15), st.integers(0, 15))
def test_frobenius_is_additive_f16(x, y):
    a, b = F16(x), F16(y)
    assert (a + b).frobenius() == a.frobenius() + b.frobenius()
    assert (a * b).frobenius() == a.frobenius() * b.frobenius()
