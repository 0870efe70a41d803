import itertools

import pytest

from jokerlab.cohom import (
    CohomClass,
    MasseyUndefinedError,
    NonLocalAlgebraError,
    ResolutionTooShortError,
    cup,
    ext_basis,
    hom_identification,
    lift_chain_map,
    load_resolution,
    massey_triple,
    minimal_resolution,
    named_classes,
    resolution,
    save_resolution,
)
from jokerlab.ffield import F2, F4
from jokerlab.groups import make_g24, make_klein, make_cyclic


def test_betti_numbers(res):
    assert res.ranks == [1, 2, 2, 1, 1, 2, 2, 1, 1, 2]


def test_resolution_is_exact_minimal_complex(res):
    assert res.is_complex() and res.is_exact() and res.is_minimal()


def test_betti_numbers_of_other_groups():
    assert minimal_resolution(F2, make_klein(), 4).ranks == [1, 2, 3, 4, 5]
    assert minimal_resolution(F2, make_cyclic(4), 4).ranks == [1, 1, 1, 1, 1]


def test_non_two_group_rejected():
    with pytest.raises(NonLocalAlgebraError):
        minimal_resolution(F4, make_g24().group, 2)


def test_chain_maps_commute_with_differentials(res):
    for c in ext_basis(res, 1) + ext_basis(res, 2):
        maps = lift_chain_map(res, c, 4)
        for n in range(1, 5):
            assert res.differentials[n] @ maps[n] == maps[n - 1] @ res.differentials[n + c.degree]


def test_generators_and_relations(res):
    nc = named_classes(res)
    u, v = nc["u"], nc["v"]
    assert (hom_identification(res, u)["i"], hom_identification(res, u)["j"]) == (1, 0)
    assert (hom_identification(res, v)["i"], hom_identification(res, v)["j"]) == (0, 1)
    uu, uv, vv = cup(res, u, u), cup(res, u, v), cup(res, v, v)
    assert (uu + uv + vv).is_zero()
    assert cup(res, uu, u).is_zero() and cup(res, vv, v).is_zero()
    assert (cup(res, uu, v) + cup(res, u, vv)).is_zero()


def test_alpha1_squares(res):
    nc = named_classes(res)
    a1, a2 = nc["alpha1"], nc["alpha1_sq"]
    # alpha1 * (alpha1^2) = 0, so the triple product is defined
    assert cup(res, a1, a2).is_zero() and cup(res, a2, a1).is_zero()
    assert not cup(res, a1, a1).is_zero()


def test_cup_product_associative(res):
    b1 = ext_basis(res, 1)
    for a, b, c in itertools.product(b1, repeat=3):
        assert cup(res, cup(res, a, b), c) == cup(res, a, cup(res, b, c))


def test_periodicity_class(res):
    w = named_classes(res)["w"]
    # multiplication by the degree-4 generator is an isomorphism Ext^1 -> Ext^5
    images = [cup(res, w, b) for b in ext_basis(res, 1)]
    assert all(not x.is_zero() for x in images) and images[0] != images[1]


def test_massey_bracket(res):
    nc = named_classes(res)
    u, v = nc["u"], nc["v"]
    uu, vv = cup(res, u, u), cup(res, v, v)
    m = massey_triple(res, nc["alpha1"], nc["alpha1_sq"], nc["alpha1"])
    assert m.contains(uu + vv.scale("w2"))
    assert not m.contains(uu + vv.scale("w"))
    ind = m.indeterminacy_classes()
    assert len(ind) == 1
    target = uu + vv.scale("w")
    assert any(ind[0].scale(c) == target for c in (1, 2, 3))


def test_massey_nullhomotopy_identities(res):
    nc = named_classes(res)
    a, b = nc["alpha1"], nc["alpha1_sq"]
    m = massey_triple(res, a, b, a)
    U, V = m.homotopies
    A = lift_chain_map(res, a, 4)
    B = lift_chain_map(res, b, 6)
    for n in range(len(U) - 1):
        ab = A[n] @ B[n + 1]
        assert ab == res.differentials[n + 1] @ U[n + 1] + U[n] @ res.differentials[n + 2]


def test_massey_choice_independence(res):
    nc = named_classes(res)
    a, b = nc["alpha1"], nc["alpha1_sq"]
    base = massey_triple(res, a, b, a)
    for su, sv in itertools.product(ext_basis(res, 1), repeat=2):
        alt = massey_triple(res, a, b, a, shift_u=su, shift_v=sv)
        assert base.contains(alt.representative)


def test_undefined_massey_product(res):
    u = named_classes(res)["u"]
    with pytest.raises(MasseyUndefinedError):
        massey_triple(res, u, u, u)


def test_too_short_resolution():
    short = minimal_resolution(F4, make_klein(), 2)
    c = ext_basis(short, 2)[0]
    with pytest.raises(ResolutionTooShortError):
        cup(short, c, c)


def test_cache_round_trip(tmp_path, q8):
    r = resolution(F4, q8, 5, cache_dir=tmp_path)
    files = list(tmp_path.iterdir())
    assert len(files) == 1
    again = load_resolution(files[0], q8)
    assert again.ranks == r.ranks
    assert all(x == y for x, y in zip(again.differentials, r.differentials))
    # a second call reads the cache
    assert resolution(F4, q8, 5, cache_dir=tmp_path).ranks == r.ranks


def test_corrupt_cache_is_rebuilt(tmp_path, q8):
    r = resolution(F4, q8, 3, cache_dir=tmp_path)
    path = next(tmp_path.iterdir())
    path.write_text("{not json")
    assert resolution(F4, q8, 3, cache_dir=tmp_path).ranks == r.ranks


def test_class_arithmetic():
    a = CohomClass(1, (1, 2), F4)
    b = CohomClass(1, (1, 3), F4)
    assert (a + b).values == (0, 1)
    assert (a + a).is_zero()
    with pytest.raises(ValueError):
        a + CohomClass(2, (1, 0), F4)
