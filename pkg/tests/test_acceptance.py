"""Acceptance criteria 1-12.

Each test prints one ``criterion N: PASS`` / ``criterion N: FAIL`` line
(visible with ``pytest -s`` or in ``-v`` output) and asserts on the public
API directly; expected values are restated here rather than imported from
the verification suite, so a bad table there cannot hide a regression.
"""

import itertools
from contextlib import contextmanager

import pytest

from jokerlab.cohom import cup, massey_triple, hom_identification, named_classes, resolution, ext_basis
from jokerlab.exactla import Matrix, hstack, is_invertible, rank
from jokerlab.ffield import F2, F4
from jokerlab.groups import make_q8
from jokerlab.gmod import (
    GroupAlgebraElement,
    builtin,
    element_X,
    element_Y,
    endotrivial,
    endotrivial_report,
    endotrivial_truncated,
    g24_structure,
    is_intertwiner,
    lift_module,
    module_iso,
    stable_iso,
    stable_iso_witness,
    syzygy_n,
    tensor,
    trivial_module,
    word,
)
from jokerlab.gmod.builtins import BUILTIN_NAMES
from jokerlab.gmod.module import from_right_action
from jokerlab.hecke import (
    DISPLAYED_G24_MATRICES,
    double_coset_act,
    expected_g24_basis,
    g24_matrices,
    g24_module_and_fixed_points,
    g24_setup,
    hecke_act,
    hecke_basis,
    hecke_mul,
    hecke_unit,
    parse_laurent_matrix,
)
from jokerlab.morava import (
    action_violations,
    builtin_coaction,
    coaction_action,
    complete_coaction,
    hensel_sqrt,
    q8_embed,
    q8_elements,
    reconstruct,
    teichmuller_digits,
)


@contextmanager
def criterion(n, capsys):
    try:
        yield
    except BaseException:
        with capsys.disabled():
            print(f"\ncriterion {n}: FAIL")
        raise
    with capsys.disabled():
        print(f"\ncriterion {n}: PASS")


def m(rows):
    return Matrix.from_rows(F4, [[F4.parse(str(x)) for x in row] for row in rows])


def matches(got, expected):
    return all(
        x is None or int(got.a[r, c]) == F4.parse(str(x))
        for r, row in enumerate(expected)
        for c, x in enumerate(row)
    )


@pytest.fixture(scope="module")
def res():
    return resolution(F4, make_q8(), 9)


def test_criterion_01_q8_embedding(capsys):
    with criterion(1, capsys):
        i, j, k = q8_embed(8)
        minus = q8_elements(8)["-1"]
        assert i * i == minus and j * j == minus and k * k == minus
        assert i * j == k
        digits = {
            name: [F4.format(d.residue().value) for d in teichmuller_digits(g, 3)]
            for name, g in zip("ijk", (i, j, k))
        }
        assert digits == {"i": ["1", "1", "w"], "j": ["1", "w2", "w"], "k": ["1", "w", "w"]}


EXPECTED_TABLES = {
    "cone_eta": {"i": [[1, 1], [0, 1]], "j": [[1, "w2"], [0, 1]]},
    "cone_nu": {"i": [[1, 1], [0, 1]], "j": [[1, "w"], [0, 1]]},
    "nu_eta": {"i": [[1, 1, "w"], [0, 1, 1], [0, 0, 1]], "j": [[1, "w", "w"], [0, 1, "w2"], [0, 0, 1]]},
    "cone_sigma": {"i": [[1, 0], [0, 1]], "j": [[1, 0], [0, 1]]},
}
W3_NEW = {"i": [[1, 0, 0], [1, 1, 0], ["w", 1, 1]], "j": [[1, 0, 0], ["w", 1, 0], ["w", "w2", 1]]}


def test_criterion_02_matrix_tables(capsys):
    with criterion(2, capsys):
        for name, table in EXPECTED_TABLES.items():
            mats = coaction_action(builtin_coaction(name), 8, "right")
            for g, exp in table.items():
                assert matches(mats[g], exp), (name, g, mats[g].to_text())
        three_cell = coaction_action(builtin_coaction("nu_eta"), 8, "right")
        for g in ("i", "j"):
            assert three_cell[g] == m(W3_NEW[g]).T


def test_criterion_03_group_action(capsys):
    with criterion(3, capsys):
        q8 = make_q8()
        for name in list(EXPECTED_TABLES) + ["sigma_nu"]:
            spec = builtin_coaction(name)
            assignments = [c.assignment for c in complete_coaction(spec)] if spec.unknown_slots() else [None]
            assert assignments
            for a in assignments:
                left = coaction_action(spec, 8, "left", a)
                pairs = 0
                for g, h in itertools.product(q8.names, repeat=2):
                    gh = q8.names[q8.mul(q8.index(g), q8.index(h))]
                    assert left[g] @ left[h] == left[gh], (name, g, h)
                    pairs += 1
                assert pairs == 64
                assert action_violations(coaction_action(spec, 8, "right", a), "right") == []


def test_criterion_04_endotriviality(capsys):
    with criterion(4, capsys):
        for name in ("W5", "Mprime", "Mdoubleprime"):
            rep = endotrivial_report(builtin(name))
            assert rep.verdict and rep.direct == rep.by_restriction, name
        completions = complete_coaction(builtin_coaction("sigma_nu"))
        assert completions
        for c in completions:
            assert not endotrivial(from_right_action(F4, make_q8(), c.matrices))
        for name in ("W5", "nu_eta"):
            assert endotrivial_truncated(lift_module(builtin(name), m=8, seed=0))


def _witnessed(a, b):
    sa, sb, w = stable_iso_witness(a, b)
    assert w is not None
    assert is_invertible(w) and is_intertwiner(sa.remainder, sb.remainder, w)
    return True


def test_criterion_05_stable_relations(capsys):
    with criterion(5, capsys):
        jp, jpp = builtin("Jprime"), builtin("Jdoubleprime")
        k = trivial_module(F4, make_q8())
        assert stable_iso(tensor(jp, jp), k) and _witnessed(tensor(jp, jp), k)
        assert stable_iso(syzygy_n(jp, 2), jpp) and _witnessed(syzygy_n(jp, 2), jpp)
        assert module_iso(jp, jpp) is None
        assert stable_iso(syzygy_n(k, 4), k) and _witnessed(syzygy_n(k, 4), k)


def test_criterion_06_group_algebra(capsys):
    with criterion(6, capsys):
        words = ["1", "X", "Y", "YX", "XY", "XYX", "YXY", "XYXY"]
        assert rank(hstack([word(w).column() for w in words])) == 8
        x, y = element_X(), element_Y()
        assert x * x == word("YXY") and y * y == word("XYX")
        assert word("XYXY") == GroupAlgebraElement.norm(F4, make_q8())
        for a, b in (("Lprime", "Mprime"), ("Ldoubleprime", "Mdoubleprime")):
            w = module_iso(builtin(a), builtin(b))
            assert w is not None and is_invertible(w) and is_intertwiner(builtin(a), builtin(b), w)


def test_criterion_07_cohomology(res, capsys):
    with criterion(7, capsys):
        assert res.ranks[:9] == [1, 2, 2, 1, 1, 2, 2, 1, 1]
        c = named_classes(res)
        u, v = c["u"], c["v"]
        uu, uv, vv = cup(res, u, u), cup(res, u, v), cup(res, v, v)
        assert (uu + uv + vv).is_zero()
        assert cup(res, uu, u).is_zero() and cup(res, vv, v).is_zero()
        assert (cup(res, uu, v) + cup(res, u, vv)).is_zero()
        hu, hv = hom_identification(res, u), hom_identification(res, v)
        assert (hu["i"], hu["j"], hv["i"], hv["j"]) == (1, 0, 0, 1)


def test_criterion_08_massey(res, capsys):
    from jokerlab.verify import verify_paper

    with criterion(8, capsys):
        c = named_classes(res)
        u, v = c["u"], c["v"]
        w, w2 = 2, 3
        a = u + v.scale(w2)
        b = u + v.scale(w)
        uu, vv = cup(res, u, u), cup(res, v, v)
        assert cup(res, a, b).is_zero() and cup(res, b, a).is_zero()
        mp = massey_triple(res, a, b, a)
        assert mp.contains(uu + vv.scale(w2))
        assert mp.contains(cup(res, b, b))
        ind = mp.indeterminacy_classes()
        target = (uu + vv.scale(w)).column()
        got = hstack([x.column() for x in ind])
        assert rank(got) == 1 and rank(hstack([got, target])) == 1
        for su, sv in itertools.product(ext_basis(res, 1) + [None], repeat=2):
            assert mp.contains(massey_triple(res, a, b, a, shift_u=su, shift_v=sv).representative)
        (display,) = verify_paper("massey.display").checks
        assert display.status == "flagged"


def test_criterion_09_hecke(capsys):
    with criterion(9, capsys):
        s = g24_setup()
        basis = hecke_basis(s)
        assert [b.coeffs for b in basis] == [b.coeffs for b in expected_g24_basis()]
        got = g24_matrices()
        for t in range(4):
            assert got[t] == parse_laurent_matrix(DISPLAYED_G24_MATRICES[t]), t + 1
        # the duplicated displays: each computed matrix must match one of its pair
        for first, second in ((4, 5), (6, 7)):
            shown = {parse_laurent_matrix(DISPLAYED_G24_MATRICES[t]) for t in (first, second)}
            assert got[first] in shown and got[second] in shown
        prods = {(x, y): hecke_mul(basis[x], basis[y]) for x in range(8) for y in range(8)}
        for x, y, z in itertools.product(range(8), repeat=3):
            assert hecke_mul(prods[x, y], basis[z]) == hecke_mul(basis[x], prods[y, z])
        module, fixed = g24_module_and_fixed_points()
        g = s.group
        for name, el in (("1", basis[0]), ("-1", basis[1]), ("i", basis[2]), ("-i", basis[3])):
            for vec in fixed:
                assert double_coset_act(s, g.index(name), vec, module) == hecke_act(el, vec, module)


def test_criterion_10_g24(capsys):
    with criterion(10, capsys):
        st = g24_structure()
        assert [x.dim for x in st.simples] == [1, 1, 1]
        assert [p.dim for p in st.projectives] == [8, 8, 8]
        e = st.idempotents
        for a, b in itertools.product(range(3), repeat=2):
            prod = e[a] * e[b]
            assert prod == e[a] if a == b else prod.is_zero()
        assert e[0] + e[1] + e[2] == GroupAlgebraElement.one(F4, e[0].group)


def test_criterion_11_padic(capsys):
    with criterion(11, capsys):
        s = hensel_sqrt(-7, 8)
        assert s % 8 == 5 and (s * s + 7) % 256 == 0
        elements = q8_elements(8)
        assert len(elements) == 8
        for g in elements.values():
            assert (reconstruct(teichmuller_digits(g, 16)) - g).is_zero_mod_S(16)


def test_criterion_12_property_suites(res, capsys):
    with criterion(12, capsys):
        for field in (F2, F4):
            els = field.elements()
            for a, b, c in itertools.product(els, repeat=3):
                assert (a + b) * c == a * c + b * c
                assert (a * b) * c == a * (b * c)
            for a in els:
                assert a + a == field.zero
                if a:
                    assert a * a.inverse() == field.one
        for name in BUILTIN_NAMES:
            builtin(name).check_action()
        assert res.is_complex() and res.is_exact() and res.is_minimal()
        s = g24_setup()
        basis = hecke_basis(s)
        one = hecke_unit(s)
        for x in basis:
            assert hecke_mul(one, x) == x and hecke_mul(x, one) == x
            for y in basis:
                assert hecke_mul(x, y).is_fixed()
