import itertools

import pytest

from jokerlab.exactla import Matrix, inverse, is_invertible, rank
from jokerlab.ffield import F4
from jokerlab.gmod import (
    BUILTIN_NAMES,
    GroupAlgebraElement,
    InconsistentActionError,
    builtin,
    decompose,
    direct_sum,
    dual,
    endotrivial,
    endotrivial_report,
    fixed_points,
    g24_structure,
    is_indecomposable,
    is_intertwiner,
    module_from_action,
    module_iso,
    projective_cover,
    radical_basis,
    regular_module,
    restrict,
    stable_iso,
    stable_iso_witness,
    strip_free,
    syzygy,
    syzygy_n,
    tensor,
    trivial_module,
)
from jokerlab.gmod.builtins import W3_MATRICES
from jokerlab.groups import make_g24, make_klein


EXPECTED_DIMS = {
    "k": 1,
    "regular": 8,
    "W3": 3,
    "W5": 5,
    "Mprime": 3,
    "Mdoubleprime": 3,
    "Lprime": 3,
    "Ldoubleprime": 3,
    "Jprime": 5,
    "Jdoubleprime": 5,
    "cone_eta": 2,
    "cone_nu": 2,
    "nu_eta": 3,
    "sigma_nu": 3,
}


@pytest.mark.parametrize("name", BUILTIN_NAMES)
def test_builtin_module_laws_exhaustive(name):
    m = builtin(name)
    assert m.dim == EXPECTED_DIMS[name]
    m.check_action()  # all 64 products


def test_w3_generator_matrices(q8):
    m = builtin("W3")
    for g, rows in W3_MATRICES.items():
        assert m.act(g) == Matrix.from_rows(F4, rows)


def test_inconsistent_generators_are_reported(q8):
    with pytest.raises(InconsistentActionError) as info:
        module_from_action(F4, q8, {"i": [["w"]], "j": [[1]]})
    assert "=" in info.value.relation


def test_swap_representation_is_consistent(q8):
    # i acting by the swap and j trivially factors through Q8 -> C2
    m = module_from_action(F4, q8, {"i": [[0, 1], [1, 0]], "j": [[1, 0], [0, 1]]})
    assert m.dim == 2


def test_tensor_and_dual_are_modules():
    w3 = builtin("W3")
    tensor(w3, dual(w3)).check_action()


def test_radical_layers_of_regular_module(q8):
    reg = regular_module(F4, q8)
    assert radical_basis(reg).cols == 7
    assert fixed_points(reg).cols == 1


def test_projective_cover_and_syzygy():
    w3 = builtin("W3")
    p, cover = projective_cover(w3)
    assert p.dim == 8
    assert rank(cover.matrix) == 3
    assert syzygy(w3).dim == 5


def test_syzygy_dimensions_of_trivial(q8):
    k = trivial_module(F4, q8)
    assert [syzygy_n(k, n).dim for n in range(5)] == [1, 7, 9, 7, 1]


def test_strip_free_splitting_maps():
    j = builtin("Jprime")
    m = tensor(j, dual(j))
    split = strip_free(m)
    assert split.rank == 3 and split.remainder.dim == 1
    # the retraction is a left inverse of the inclusion
    assert (split.retraction.matrix @ split.inclusion.matrix).is_identity()
    assert (split.retraction.matrix @ split.remainder_inclusion.matrix).is_zero()


def test_strip_free_of_trivial_module(q8):
    split = strip_free(trivial_module(F4, q8))
    assert split.rank == 0 and split.remainder.dim == 1


def test_decompose_direct_sum():
    w3, k = builtin("W3"), builtin("k")
    parts = decompose(direct_sum(w3, k))
    assert sorted(p.module.dim for p in parts) == [1, 3]
    assert is_indecomposable(w3)


def test_isomorphism_witnesses():
    for a, b in (("Lprime", "Mprime"), ("Ldoubleprime", "Mdoubleprime"), ("W3", "Mprime")):
        w = module_iso(builtin(a), builtin(b))
        assert w is not None and is_invertible(w) and is_intertwiner(builtin(a), builtin(b), w)
    assert module_iso(builtin("Jprime"), builtin("Jdoubleprime")) is None


def test_syzygy_of_jprime_is_lprime():
    om = syzygy(builtin("Jprime"))
    assert om.dim == 3
    assert module_iso(om, builtin("Lprime")) is not None


def test_stable_relations(q8):
    j, jj = builtin("Jprime"), builtin("Jdoubleprime")
    k = trivial_module(F4, q8)
    assert stable_iso(tensor(j, j), k)
    assert stable_iso(syzygy_n(j, 2), jj)
    assert stable_iso(syzygy_n(k, 4), k)
    sm, sn, w = stable_iso_witness(tensor(j, j), k)
    assert is_intertwiner(sm.remainder, sn.remainder, w)


@pytest.mark.parametrize(
    "name, expected",
    [("W3", True), ("W5", True), ("Mprime", True), ("Mdoubleprime", True), ("Jprime", True), ("nu_eta", True),
     ("cone_eta", False), ("sigma_nu", False), ("regular", False)],
)
def test_endotriviality(name, expected):
    rep = endotrivial_report(builtin(name))
    assert rep.direct == rep.by_restriction == expected


def test_sum_of_trivials_is_not_endotrivial(q8):
    assert not endotrivial(trivial_module(F4, q8, 2))


def test_endotrivial_over_klein_four():
    v4 = make_klein()
    assert endotrivial(trivial_module(F4, v4))
    assert not endotrivial(regular_module(F4, v4))


def test_g24_structure():
    st = g24_structure()
    assert st.radical_dim == 21
    assert [s.dim for s in st.simples] == [1, 1, 1]
    assert [p.dim for p in st.projectives] == [8, 8, 8]
    e = st.idempotents
    for s, t in itertools.product(range(3), repeat=2):
        prod = e[s] * e[t]
        assert prod == e[s] if s == t else prod.is_zero()
    # the simples are pairwise non-isomorphic
    for a, b in itertools.combinations(st.simples, 2):
        assert a.rho != b.rho


def test_g24_module_restricts_to_q8():
    g24 = make_g24()
    reg = regular_module(F4, g24.group)
    res = restrict(reg, g24.q8)
    assert res.dim == 24
    assert strip_free(res).rank == 3


def test_group_algebra_relations(q8):
    from jokerlab.gmod import element_X, element_Y, word

    x, y = element_X(), element_Y()
    assert x * x == word("YXY")
    assert y * y == word("XYX")
    assert word("XYXY") == GroupAlgebraElement.norm(F4, q8) == word("YXYX")
    assert x.augmentation() == 0 and y.augmentation() == 0
