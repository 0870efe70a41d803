import itertools

import pytest

from jokerlab.groups import make_q8
from jokerlab.hecke import (
    DISPLAYED_G24_MATRICES,
    GradedAlgebraAction,
    HeckeElement,
    HeckeSetup,
    LaurentElement,
    NotFixedError,
    SkewGroupElement,
    double_coset_act,
    double_coset_element,
    expected_g24_basis,
    g24_action,
    g24_matrices,
    g24_module_and_fixed_points,
    g24_setup,
    hecke_act,
    hecke_basis,
    hecke_coordinates,
    hecke_mul,
    hecke_unit,
    parse_laurent,
    parse_laurent_matrix,
    skew_product,
)

L = LaurentElement.monomial


@pytest.fixture(scope="module")
def setup():
    return g24_setup()


@pytest.fixture(scope="module")
def basis(setup):
    return hecke_basis(setup)


def test_laurent_arithmetic():
    a = L(1, 2) + L(2, -1)
    assert str(a) == "w*u^-1+u^2"
    assert (a + a).is_zero()
    assert L(2, 1) * L(3, 2) == L(1, 3)
    assert parse_laurent("w2*u^-1") == L(3, -1)
    assert parse_laurent("u") == L(1, 1)
    assert parse_laurent("0").is_zero()
    with pytest.raises(ValueError):
        parse_laurent("x^2")


def test_action_on_u(setup):
    act = g24_action()
    g = act.group
    w = g.index("w")
    assert act.apply(w, L(1, 1)) == L(3, 1)  # u -> w^2 u
    assert act.apply(w, L(1, 3)) == L(1, 3)  # u^3 is invariant
    assert all(act.apply(g.index(n), L(1, 1)) == L(1, 1) for n in ("i", "j", "k", "-1"))


def test_inconsistent_action_data_rejected():
    q8 = make_q8()
    with pytest.raises(ValueError):
        # i of order 4 cannot send u to w u (w has order 3 and i^4 = 1 forces chi(i)^4 = 1)
        GradedAlgebraAction.from_generators(q8, {"i": (2, False), "j": (1, False)})


def test_skew_product_twists_once():
    act = g24_action()
    g = act.group
    w = g.index("w")
    x = SkewGroupElement.of(act, {w: L(1, 1)})
    prod = skew_product(x, x)
    # (u w)(u w) = u w(u) w^2 = w^2 u^2 w^2
    assert prod.as_dict() == {g.index("w2"): L(3, 2)}
    inv = SkewGroupElement.of(act, {g.inv(w): L(1, 0)})
    one = SkewGroupElement.of(act, {w: L(1, 0)}) * inv
    assert one.as_dict() == {g.identity: L(1, 0)}


def test_skew_product_associative(setup):
    act = setup.action
    g = act.group
    els = [
        SkewGroupElement.of(act, {g.index("w"): L(1, 1), g.index("i"): L(2, -1)}),
        SkewGroupElement.of(act, {g.index("j*w"): L(3, 2)}),
        SkewGroupElement.of(act, {g.index("k"): L(1, 0), g.index("w2"): L(1, 1)}),
    ]
    for a, b, c in itertools.product(els, repeat=3):
        assert (a * b) * c == a * (b * c)


def test_basis_matches_expected(setup, basis):
    assert [b.coeffs for b in basis] == [b.coeffs for b in expected_g24_basis(setup)]
    assert all(b.is_fixed() for b in basis)


def test_matrices_match_display():
    for got, shown in zip(g24_matrices(), DISPLAYED_G24_MATRICES):
        assert got == parse_laurent_matrix(shown)


def test_unit_and_closure(setup, basis):
    one = hecke_unit(setup)
    for x in basis:
        assert hecke_mul(one, x) == x == hecke_mul(x, one)
    for x, y in itertools.product(basis, repeat=2):
        assert hecke_mul(x, y).is_fixed()
        hecke_coordinates(hecke_mul(x, y), basis)  # re-expressible in the basis


def test_associativity_all_triples(basis):
    prods = {(a, b): hecke_mul(basis[a], basis[b]) for a in range(8) for b in range(8)}
    for a, b, c in itertools.product(range(8), repeat=3):
        assert hecke_mul(prods[a, b], basis[c]) == hecke_mul(basis[a], prods[b, c])


def test_orbit_sum_squared(setup, basis):
    t = basis[2]  # iH + jH + kH
    sq = hecke_mul(t, t)
    coords = hecke_coordinates(sq, basis)
    # direct expansion: the nine products xy for x, y in {i, j, k}
    g = setup.group
    expected = [LaurentElement()] * setup.size
    for x, y in itertools.product(("i", "j", "k"), repeat=2):
        c = setup.coset_of(g.mul(g.index(x), g.index(y)))
        expected[c] = expected[c] + L(1, 0)
    assert sq.coeffs == tuple(expected)
    # i^2 = j^2 = k^2 = -1 three times, ij = k, jk = i, ki = j, ji = -k, kj = -i, ik = -j
    assert [str(c) for c in coords] == ["0", "1", "1", "1", "0", "0", "0", "0"]


def test_representative_independence(setup, basis):
    other = setup.with_reps([max(c) for c in setup.subgroup.left_cosets()])
    for x, y in itertools.product(basis, repeat=2):
        moved = hecke_mul(x.in_setup(other), y.in_setup(other)).in_setup(setup)
        assert moved.coeffs == hecke_mul(x, y).coeffs


def test_fixed_point_action_right_convention(setup, basis):
    module, zs = g24_module_and_fixed_points()
    assert module.check_action() == []
    for a, b in itertools.product(basis, repeat=2):
        ab = hecke_mul(a, b)
        for z in zs:
            assert hecke_act(ab, z, module) == hecke_act(b, hecke_act(a, z, module), module)


def test_fixed_point_action_left_convention(setup, basis):
    module, zs = g24_module_and_fixed_points()
    left = module.to_left()
    assert left.check_action() == []
    for a, b in itertools.product(basis, repeat=2):
        ab = hecke_mul(a, b)
        for z in zs:
            assert hecke_act(ab, z, left) == hecke_act(a, hecke_act(b, z, left), left)


def test_degree_bookkeeping(basis):
    module, zs = g24_module_and_fixed_points()
    shifts = [0, 0, 0, 0, 2, 2, -2, -2]
    for b, shift in zip(basis, shifts):
        for z in zs:
            img = hecke_act(b, z, module)
            d = module.is_homogeneous(img)
            assert d is not None
            if any(img):
                assert d == module.is_homogeneous(z) + shift


def test_double_coset_action(setup, basis):
    module, zs = g24_module_and_fixed_points()
    g = setup.group
    for n in ("1", "-1", "i", "-i", "j", "k"):
        el = double_coset_element(setup, g.index(n))
        for z in zs:
            assert double_coset_act(setup, g.index(n), z, module) == hecke_act(el, z, module)
    with pytest.raises(ValueError):
        double_coset_act(setup, g.index("w"), zs[0], module)


def test_not_fixed_vector_rejected(setup, basis):
    module, zs = g24_module_and_fixed_points()
    with pytest.raises(NotFixedError):
        hecke_act(basis[0], (L(1, 1), LaurentElement(), LaurentElement()), module)
    bad = HeckeElement(setup, (L(1, 1),) + (LaurentElement(),) * 7)
    with pytest.raises(NotFixedError):
        hecke_mul(bad, basis[0])


def test_restriction_to_q8_gives_three_cell_matrices(setup):
    from jokerlab.morava import builtin_coaction, coaction_matrix, q8_elements

    module, _ = g24_module_and_fixed_points()
    mats = module.normalized_matrices(setup.complement.members)
    spec = builtin_coaction("nu_eta")
    for name, g in q8_elements(8).items():
        assert coaction_matrix(spec, g).a.tolist() == mats[name]


def test_normal_subgroup_gives_skew_group_ring():
    q8 = make_q8()
    act = GradedAlgebraAction.trivial(q8)
    setup = HeckeSetup.create(act, q8.center())
    basis = hecke_basis(setup)
    assert len(basis) == 4  # G/H = Q8 / {+-1}
    by_coset = {next(t for t, c in enumerate(b.coeffs) if c): b for b in basis}
    for (s, a), (t, b) in itertools.product(by_coset.items(), repeat=2):
        prod = hecke_mul(a, b)
        target = setup.coset_of(q8.mul(setup.reps[s], setup.reps[t]))
        assert prod == by_coset[target]


def test_trivial_subgroup_is_whole_skew_ring(setup):
    g = setup.group
    s = HeckeSetup.create(setup.action, g.trivial_subgroup())
    assert len(hecke_basis(s)) == 24
