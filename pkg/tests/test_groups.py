import itertools

import pytest

from jokerlab.groups import (
    double_cosets,
    elementary_abelian_subgroups,
    group_by_name,
    make_g24,
    make_q8,
)


@pytest.mark.parametrize("name", ["q8", "c3", "g24", "klein", "c4"])
def test_group_axioms(name):
    g = group_by_name(name)
    for a, b, c in itertools.product(g.elements(), repeat=3):
        assert g.mul(g.mul(a, b), c) == g.mul(a, g.mul(b, c))
    for a in g.elements():
        assert g.mul(a, g.inv(a)) == g.identity


def test_q8_relations():
    g = make_q8()
    i, j, k, m1 = (g.index(n) for n in ("i", "j", "k", "-1"))
    assert g.mul(i, i) == g.mul(j, j) == g.mul(k, k) == m1
    assert g.mul(i, j) == k
    assert g.center().order == 2
    assert len(g.conjugacy_classes()) == 5


def test_q8_has_a_unique_elementary_abelian_subgroup():
    subs = elementary_abelian_subgroups(make_q8())
    assert [s.order for s in subs] == [2]


def test_g24_conjugation_cycles_i_j_k():
    data = make_g24()
    g = data.group
    w = g.index("w")
    assert g.conj(w, g.index("i")) == g.index("j")
    assert g.conj(w, g.index("j")) == g.index("k")
    assert g.conj(w, g.index("k")) == g.index("i")
    assert data.q8.is_normal()
    assert data.q8.order == 8 and data.c3.order == 3
    assert len(g.sylow_subgroups(2)) == 1


def test_g24_double_cosets_of_c3():
    data = make_g24()
    dc = double_cosets(data.group, data.c3)
    # 1, -1 and the two orbits {i, j, k}, {-i, -j, -k}
    assert sorted(len(d.members) for d in dc) == [3, 3, 9, 9]


def test_unknown_group_name():
    with pytest.raises(ValueError, match="q8"):
        group_by_name("S5")
