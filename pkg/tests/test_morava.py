import itertools
import json

import pytest
from hypothesis import given, strategies as st

from jokerlab.exactla import Matrix
from jokerlab.ffield import F4
from jokerlab.morava import (
    CoactionSpecError,
    O2Element,
    Z4Element,
    action_violations,
    alpha_eval,
    builtin_coaction,
    coaction_action,
    coaction_matrix,
    complete_coaction,
    hensel_sqrt,
    parse_coaction_spec,
    q8_elements,
    reconstruct,
    teichmuller_digits,
    teichmuller_lift,
)

z4 = st.builds(Z4Element, st.integers(0, 255), st.integers(0, 255))
o2 = st.builds(O2Element, z4, z4)


def test_hensel_sqrt_truncations():
    assert hensel_sqrt(-7, 3) % 8 == 5
    assert hensel_sqrt(-7, 4) == 5
    s = hensel_sqrt(-7, 8)
    assert s == 181 and (s * s + 7) % 256 == 0


def test_omega_is_a_cube_root_of_unity():
    w = Z4Element.omega()
    assert w * w + w + 1 == Z4Element(0, 0)
    assert w.sigma() == w * w


def test_teichmuller_lifts_are_fixed_by_cubing():
    for x in F4.elements()[1:]:
        t = teichmuller_lift(x)
        assert t**3 == Z4Element(1, 0)
        assert t.residue() == x


def test_q8_group_table():
    e = q8_elements(8)
    i, j, k = e["i"], e["j"], e["k"]
    assert i * i == j * j == k * k == e["-1"]
    assert i * j == k and j * k == i and k * i == j
    assert j * i == e["-k"]


@pytest.mark.parametrize("name, digits", [("i", ["1", "1", "w"]), ("j", ["1", "w2", "w"]), ("k", ["1", "w", "w"])])
def test_q8_digits_mod_s_cubed(name, digits):
    got = teichmuller_digits(q8_elements(8)[name], 3)
    assert [F4.format(d.residue().value) for d in got] == digits


def test_minus_one_digits():
    got = teichmuller_digits(q8_elements(8)["-1"], 4)
    assert [F4.format(d.residue().value) for d in got] == ["1", "0", "1", "0"]


@pytest.mark.parametrize("name", ["1", "-1", "i", "-i", "j", "-j", "k", "-k"])
def test_reconstruction(name):
    g = q8_elements(8)[name]
    assert (reconstruct(teichmuller_digits(g, 16)) - g).is_zero_mod_S(16)


@given(o2, o2, o2)
def test_o2_associative(a, b, c):
    assert (a * b) * c == a * (b * c)


@given(o2, o2)
def test_o2_s_twists(a, b):
    s = O2Element.S()
    # S z = sigma(z) S on the Z4 part
    assert s * O2Element.of(a.x) == O2Element.of(a.x.sigma()) * s
    assert (a + b) - b == a


def test_alpha_eval_is_digit_reading():
    i = q8_elements(8)["i"]
    assert alpha_eval(0, i) == F4(1)
    assert alpha_eval(2, i) == F4("w")


def test_coaction_tables():
    mats = coaction_action(builtin_coaction("cone_eta"), 8)
    assert mats["i"] == Matrix.from_rows(F4, [[1, 1], [0, 1]])
    assert mats["j"] == Matrix.from_rows(F4, [[1, "w2"], [0, 1]])
    mats = coaction_action(builtin_coaction("nu_eta"), 8)
    assert mats["i"] == Matrix.from_rows(F4, [[1, 1, "w"], [0, 1, 1], [0, 0, 1]])


def test_coaction_right_law_and_left_law_on_transposes():
    spec = builtin_coaction("nu_eta")
    assert action_violations(coaction_action(spec, 8, "right"), "right") == []
    assert action_violations(coaction_action(spec, 8, "left"), "left") == []
    # the column matrices are not a left action
    assert action_violations(coaction_action(spec, 8, "right"), "left")


def test_sigma_nu_completions_all_centrally_trivial():
    comps = complete_coaction(builtin_coaction("sigma_nu"))
    assert len(comps) == 16
    assert all(c.center_trivial for c in comps)


def test_inconsistent_spec_has_no_completion():
    spec = parse_coaction_spec(
        {
            "basis": [{"name": "a", "degree": 0}, {"name": "b", "degree": 2}],
            "coaction": [
                {"source": "a", "terms": [{"alpha": "1", "target": "a"}]},
                # alpha0^2 alone on the diagonal is not an action unless paired correctly
                {"source": "b", "terms": [{"alpha": "a1", "target": "a", "coeff": "*"}, {"alpha": "a1", "target": "b"}]},
            ],
        }
    )
    assert complete_coaction(spec) == []


def test_spec_round_trip_and_errors():
    spec = builtin_coaction("cone_eta")
    again = parse_coaction_spec(json.dumps(spec.to_json()))
    g = q8_elements(8)["j"]
    assert coaction_matrix(again, g) == coaction_matrix(spec, g)
    with pytest.raises(CoactionSpecError):
        parse_coaction_spec({"basis": ["x"]})
    with pytest.raises(KeyError):
        builtin_coaction("nope")
