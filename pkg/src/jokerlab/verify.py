"""Verification suite: every published computation re-derived and compared.

Each check has a unique dotted id, a short anchor naming the claim it tests,
a status (pass / fail / flagged) and free-text details.  ``flagged`` is used
only for two known misprints in the published displays: the degree-1
indeterminacy written for the degree-2 Massey product and the repeated
Hecke matrices.  Those checks still compare the computed values and report
them.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import asdict, dataclass, field
from typing import Callable

from . import __version__
from .cohom import (
    CohomClass,
    cup,
    ext_basis,
    hom_identification,
    massey_triple,
    named_classes,
    resolution,
)
from .exactla import Matrix, column_space, hstack, is_invertible, rank
from .ffield import F4
from .groups import make_q8
from .gmod import (
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
    stable_iso_witness,
    syzygy_n,
    tensor,
    trivial_module,
    word,
)
from .gmod.builtins import BASIS_WORDS, BUILTIN_NAMES
from .hecke import (
    DISPLAYED_G24_MATRICES,
    double_coset_act,
    expected_g24_basis,
    format_laurent_matrix,
    g24_matrices,
    g24_module_and_fixed_points,
    g24_setup,
    hecke_act,
    hecke_basis,
    hecke_mul,
    parse_laurent_matrix,
)
from .morava import (
    action_violations,
    builtin_coaction,
    coaction_action,
    complete_coaction,
    hensel_sqrt,
    q8_elements,
    reconstruct,
    teichmuller_digits,
)

__all__ = ["Check", "VerificationReport", "verify_paper", "CHECK_IDS", "SEED"]

SEED = 0

PASS, FAIL, FLAGGED = "pass", "fail", "flagged"


@dataclass
class Check:
    id: str
    anchor: str
    status: str
    details: str


@dataclass
class VerificationReport:
    checks: list[Check]
    version: str = __version__
    seeds: dict[str, int] = field(default_factory=lambda: {"decompose": SEED, "lift": SEED})
    seconds: float = 0.0

    @property
    def counts(self) -> dict[str, int]:
        out = {PASS: 0, FAIL: 0, FLAGGED: 0}
        for c in self.checks:
            out[c.status] += 1
        return out

    @property
    def ok(self) -> bool:
        return not any(c.status == FAIL for c in self.checks)

    def to_json(self) -> dict:
        return {
            "version": self.version,
            "seeds": self.seeds,
            "summary": self.counts,
            "checks": [asdict(c) for c in self.checks],
        }

    def to_text(self) -> str:
        width = max((len(c.id) for c in self.checks), default=10)
        lines = [f"{c.status.upper():8} {c.id:{width}}  {c.anchor}: {c.details}" for c in self.checks]
        n = self.counts
        lines.append(f"{n[PASS]} passed, {n[FAIL]} failed, {n[FLAGGED]} flagged")
        return "\n".join(lines)


_REGISTRY: list[tuple[str, str, Callable[[], tuple[str, str]]]] = []


def _check(check_id: str, anchor: str):
    def wrap(fn: Callable[[], tuple[str, str]]):
        _REGISTRY.append((check_id, anchor, fn))
        return fn

    return wrap


def _result(ok: bool, details: str) -> tuple[str, str]:
    return (PASS if ok else FAIL, details)


def _m(rows) -> Matrix:
    return Matrix.from_rows(F4, rows)


# ---------------------------------------------------------------------------
# quaternions and digits


@_check("padic.hensel", "square root of -7 in the 2-adic integers")
def _hensel():
    s = hensel_sqrt(-7, 8)
    return _result(s % 8 == 5 and (s * s + 7) % 256 == 0, f"sqrt(-7) = {s} mod 2^8")


@_check("padic.q8-relations", "Q8 inside the maximal order")
def _q8_relations():
    e = q8_elements(8)
    one, minus = e["1"], e["-1"]
    i, j, k = e["i"], e["j"], e["k"]
    ok = i * i == minus and j * j == minus and k * k == minus and i * j == k and j * i == -k and (i**4) == one
    return _result(ok, "i^2 = j^2 = k^2 = -1, ij = k, ji = -k at precision 2^8")


EXPECTED_DIGITS = {"i": ("1", "1", "w"), "j": ("1", "w2", "w"), "k": ("1", "w", "w")}


@_check("padic.q8-digits", "first three Teichmüller digits of i, j, k")
def _q8_digits():
    e = q8_elements(8)
    got = {n: tuple(F4.format(d.residue().value) for d in teichmuller_digits(e[n], 3)) for n in EXPECTED_DIGITS}
    return _result(got == EXPECTED_DIGITS, f"computed {got}")


@_check("padic.reconstruction", "sum of digits a_r S^r recovers g")
def _reconstruction():
    e = q8_elements(8)
    n = 16
    bad = [name for name, g in e.items() if not (reconstruct(teichmuller_digits(g, n)) - g).is_zero_mod_S(n)]
    return _result(not bad, f"all 8 elements agree mod S^{n}" if not bad else f"mismatch for {bad}")


# ---------------------------------------------------------------------------
# coaction matrices

EXPECTED_COACTION = {
    "cone_eta": {"i": [[1, 1], [0, 1]], "j": [[1, "w2"], [0, 1]]},
    "cone_nu": {"i": [[1, 1], [0, 1]], "j": [[1, "w"], [0, 1]]},
    "nu_eta": {"i": [[1, 1, "w"], [0, 1, 1], [0, 0, 1]], "j": [[1, "w", "w"], [0, 1, "w2"], [0, 0, 1]]},
    "cone_sigma": {"i": [[1, 0], [0, 1]], "j": [[1, 0], [0, 1]]},
    # the starred corner entries are left out of the comparison
    "sigma_nu": {"i": [[1, 0, None], [0, 1, 1], [0, 0, 1]], "j": [[1, 0, None], [0, 1, "w"], [0, 0, 1]]},
}

W3_NEW_BASIS = {"i": [[1, 0, 0], [1, 1, 0], ["w", 1, 1]], "j": [[1, 0, 0], ["w", 1, 0], ["w", "w2", 1]]}


def _matches(got: Matrix, expected) -> bool:
    for r, row in enumerate(expected):
        for c, x in enumerate(row):
            if x is not None and got.a[r, c] != F4(x).value:
                return False
    return True


def _coaction_check(name: str):
    def run():
        spec = builtin_coaction(name)
        assignment = None
        if spec.unknown_slots():
            assignment = complete_coaction(spec)[0].assignment
        mats = coaction_action(spec, 8, "right", assignment)
        bad = [g for g, exp in EXPECTED_COACTION[name].items() if not _matches(mats[g], exp)]
        shown = "; ".join(f"{g}: {mats[g].to_text().replace(chr(10), ' / ')}" for g in ("i", "j"))
        return _result(not bad, shown if not bad else f"mismatch at {bad}: {shown}")

    return run


for _name in EXPECTED_COACTION:
    _check(f"coaction.{_name}", f"matrix table for {_name}")(_coaction_check(_name))


@_check("coaction.three-cell-transpose", "three-cell matrices are transposes of the new-basis W3 matrices")
def _three_cell_transpose():
    mats = coaction_action(builtin_coaction("nu_eta"), 8, "right")
    diffs = []
    for g in ("i", "j"):
        want = _m(W3_NEW_BASIS[g]).T
        for r, c in itertools.product(range(3), repeat=2):
            if mats[g].a[r, c] != want.a[r, c]:
                diffs.append(f"{g}[{r},{c}] = {F4.format(int(mats[g].a[r, c]))}, expected {F4.format(int(want.a[r, c]))}")
    if diffs:
        return FAIL, "entrywise differences: " + "; ".join(diffs)
    from .gmod.module import from_right_action

    three_cell = from_right_action(F4, make_q8(), mats, "three-cell")
    iso = module_iso(builtin("W3"), three_cell)
    return _result(iso is not None, "transposes agree and the module is isomorphic to W3")


@_check("coaction.group-law", "evaluated coactions form Q8-actions (all 64 pairs)")
def _group_law():
    details = []
    ok = True
    for name in EXPECTED_COACTION:
        spec = builtin_coaction(name)
        completions = [c.assignment for c in complete_coaction(spec)] if spec.unknown_slots() else [None]
        for assignment in completions:
            right = coaction_action(spec, 8, "right", assignment)
            left = coaction_action(spec, 8, "left", assignment)
            bad = action_violations(right, "right") + action_violations(left, "left")
            ok &= not bad
        details.append(f"{name}: {len(completions)} assignment(s)")
    return _result(ok, "; ".join(details) + "; right law on column matrices, left law on transposes")


# ---------------------------------------------------------------------------
# endotrivial modules


def _endotrivial_check(name: str, expected: bool):
    def run():
        rep = endotrivial_report(builtin(name))
        agree = rep.direct == rep.by_restriction
        return _result(
            agree and rep.verdict == expected,
            f"direct={rep.direct}, elementary abelian restrictions={rep.by_restriction}, free rank={rep.free_rank}",
        )

    return run


for _name, _exp in (("W5", True), ("Mprime", True), ("Mdoubleprime", True), ("Jprime", True), ("Jdoubleprime", True)):
    _check(f"endotrivial.{_name}", f"{_name} is endotrivial")(_endotrivial_check(_name, _exp))


@_check("endotrivial.sigma-nu", "the sigma/nu two-cell complex is not endotrivial")
def _sigma_nu():
    from .gmod.module import from_right_action

    comps = complete_coaction(builtin_coaction("sigma_nu"))
    verdicts = []
    for c in comps:
        mod = from_right_action(F4, make_q8(), c.matrices, "sigma_nu")
        verdicts.append(endotrivial(mod))
    central = all(c.center_trivial for c in comps)
    return _result(
        bool(comps) and not any(verdicts) and central,
        f"{len(comps)} completions, all with -1 acting trivially, none endotrivial",
    )


@_check("endotrivial.truncated", "lift over (Z/2^m)[w] is endotrivial and reduces correctly")
def _truncated():
    out = []
    ok = True
    for name in ("W5", "nu_eta"):
        lifted = lift_module(builtin(name), m=8, seed=SEED)
        res = endotrivial_truncated(lifted)
        ok &= res
        out.append(f"{name}: {res}")
    return _result(ok, ", ".join(out) + " at precision 2^8")


# ---------------------------------------------------------------------------
# stable relations


def _stable_check(m, n, expected: bool, label: str):
    sm, sn, w = stable_iso_witness(m, n, SEED)
    if w is None:
        return _result(not expected, f"{label}: no isomorphism after stripping")
    ok = is_invertible(w) and is_intertwiner(sm.remainder, sn.remainder, w)
    return _result(
        ok and expected,
        f"{label}: free ranks {sm.rank}/{sn.rank}, remainder dim {sm.remainder.dim}, witness intertwines",
    )


@_check("stable.JxJ", "J' ⊗ J' is stably trivial")
def _jj():
    j = builtin("Jprime")
    return _stable_check(tensor(j, j), trivial_module(F4, j.group), True, "J'⊗J' ~ k")


@_check("stable.omega2J", "Ω²J' is stably J''")
def _omega2():
    return _stable_check(syzygy_n(builtin("Jprime"), 2), builtin("Jdoubleprime"), True, "Ω²J' ~ J''")


@_check("stable.omega4k", "Ω⁴k is stably k (periodicity)")
def _omega4():
    k = trivial_module(F4, make_q8())
    return _stable_check(syzygy_n(k, 4), k, True, "Ω⁴k ~ k")


@_check("stable.J-distinct", "J' and J'' are not isomorphic")
def _distinct():
    return _result(module_iso(builtin("Jprime"), builtin("Jdoubleprime")) is None, "no isomorphism exists")


# ---------------------------------------------------------------------------
# the group algebra


@_check("kq8.basis", "the eight words in X, Y form a basis")
def _basis():
    cols = hstack([word(w).column() for w in BASIS_WORDS])
    return _result(rank(cols) == 8, f"rank {rank(cols)} for words {', '.join(BASIS_WORDS)}")


@_check("kq8.relations", "X² = YXY, Y² = XYX, XYXY = YXYX = norm")
def _relations():
    x, y = element_X(), element_Y()
    norm = GroupAlgebraElement.norm(F4, make_q8())
    ok = x * x == word("YXY") and y * y == word("XYX") and word("XYXY") == norm and word("YXYX") == norm
    return _result(ok, "all relations hold in k[Q8]")


@_check("kq8.ideal-quotient-iso", "L' ≅ M' and L'' ≅ M''")
def _ideal_quotient():
    out = []
    ok = True
    for a, b in (("Lprime", "Mprime"), ("Ldoubleprime", "Mdoubleprime")):
        w = module_iso(builtin(a), builtin(b))
        good = w is not None and is_invertible(w) and is_intertwiner(builtin(a), builtin(b), w)
        ok &= good
        out.append(f"{a}≅{b}: {'witness verified' if good else 'missing'}")
    return _result(ok, ", ".join(out))


# ---------------------------------------------------------------------------
# cohomology


def _res():
    return resolution(F4, make_q8(), 9)


@_check("ext.betti", "dimensions of Ext^s in degrees 0..8")
def _betti():
    r = _res()
    got = r.ranks[:9]
    return _result(got == [1, 2, 2, 1, 1, 2, 2, 1, 1] and r.is_exact() and r.is_minimal(), f"ranks {got}")


@_check("ext.relations", "u²+uv+v² = 0, u³ = v³ = 0, u²v + uv² = 0")
def _ext_relations():
    r = _res()
    c = named_classes(r)
    u, v = c["u"], c["v"]
    uu, uv, vv = cup(r, u, u), cup(r, u, v), cup(r, v, v)
    ok = (uu + uv + vv).is_zero()
    ok &= cup(r, uu, u).is_zero() and cup(r, vv, v).is_zero()
    ok &= (cup(r, uu, v) + cup(r, u, vv)).is_zero()
    ok &= cup(r, u, v) == cup(r, v, u)
    return _result(ok, "relations hold; products commute")


@_check("ext.uv-values", "u, v as homomorphisms Q8 -> k")
def _uv():
    r = _res()
    c = named_classes(r)
    hu, hv = hom_identification(r, c["u"]), hom_identification(r, c["v"])
    ok = (hu["i"], hu["j"], hv["i"], hv["j"]) == (1, 0, 0, 1)
    return _result(ok, f"u(i)={hu['i']}, u(j)={hu['j']}, v(i)={hv['i']}, v(j)={hv['j']}")


def _span_equal(classes: list[CohomClass], targets: list[CohomClass]) -> bool:
    a = hstack([c.column() for c in classes], F4, 2) if classes else Matrix.zeros(F4, 2, 0)
    b = hstack([c.column() for c in targets], F4, 2)
    return rank(a) == rank(b) == rank(hstack([a, b]))


def _fmt(c: CohomClass, r) -> str:
    nc = named_classes(r)
    u, v = nc["u"], nc["v"]
    uu, vv = cup(r, u, u), cup(r, v, v)
    # degree-2 classes in the basis u², v²
    m = hstack([uu.column(), vv.column()])
    from .exactla import solve

    x = solve(m, c.column())
    a, b = int(x.a[0, 0]), int(x.a[1, 0])
    parts = []
    if a:
        parts.append("u^2" if a == 1 else f"{F4.format(a)}u^2")
    if b:
        parts.append("v^2" if b == 1 else f"{F4.format(b)}v^2")
    return "+".join(parts) or "0"


def _massey_parts():
    r = _res()
    nc = named_classes(r)
    u, v = nc["u"], nc["v"]
    a1, a2 = nc["alpha1"], nc["alpha1_sq"]
    uu, vv = cup(r, u, u), cup(r, v, v)
    return r, a1, a2, uu, vv


@_check("massey.bracket", "<u+w2v, u+wv, u+w2v> contains u²+w2v², indeterminacy span{u²+wv²}")
def _massey():
    r, a1, a2, uu, vv = _massey_parts()
    m = massey_triple(r, a1, a2, a1)
    contains = m.contains(uu + vv.scale(3))
    ind_ok = _span_equal(m.indeterminacy_classes(), [uu + vv.scale(2)])
    return _result(
        contains and ind_ok,
        f"representative {_fmt(m.representative, r)}, indeterminacy span{{{', '.join(_fmt(c, r) for c in m.indeterminacy_classes())}}}",
    )


@_check("massey.stability", "representative moves inside the indeterminacy when nullhomotopies change")
def _massey_stability():
    r, a1, a2, uu, vv = _massey_parts()
    base = massey_triple(r, a1, a2, a1)
    ok = True
    for su, sv in itertools.product(ext_basis(r, 1) + [None], repeat=2):
        alt = massey_triple(r, a1, a2, a1, shift_u=su, shift_v=sv)
        ok &= base.contains(alt.representative)
    return _result(ok, "9 choices of level-0 nullhomotopy shifts give representatives in one coset")


@_check("massey.companion", "<u+wv, u+w2v, u+wv> contains u²+wv², indeterminacy span{u²+w2v²}")
def _massey_companion():
    r, a1, a2, uu, vv = _massey_parts()
    m = massey_triple(r, a2, a1, a2)
    ok = m.contains(uu + vv.scale(2)) and _span_equal(m.indeterminacy_classes(), [uu + vv.scale(3)])
    return _result(ok, f"representative {_fmt(m.representative, r)}")


@_check("massey.display", "closing display of the Massey product sets")
def _massey_display():
    r, a1, a2, uu, vv = _massey_parts()
    m = massey_triple(r, a1, a2, a1)
    m2 = massey_triple(r, a2, a1, a2)
    return (
        FLAGGED,
        "the displays give degree-1 indeterminacies k{u+wv} and k{u+w2v} for degree-2 brackets; computed sets are "
        f"k{{{_fmt(m.indeterminacy_classes()[0], r)}}}+({_fmt(m.representative, r)}) and "
        f"k{{{_fmt(m2.indeterminacy_classes()[0], r)}}}+({_fmt(m2.representative, r)})",
    )


# ---------------------------------------------------------------------------
# Hecke operators


@_check("hecke.basis", "the eight basis elements of the skew Hecke algebra")
def _hecke_basis():
    got = hecke_basis(g24_setup())
    exp = expected_g24_basis()
    ok = len(got) == 8 and all(a.coeffs == b.coeffs for a, b in zip(got, exp))
    return _result(ok, ", ".join(str(b) for b in exp))


_DUPLICATED = {4, 5, 6, 7}


@_check("hecke.matrices", "action matrices on z0, z4, z6 (distinct displays)")
def _hecke_matrices():
    got = g24_matrices()
    bad = [t + 1 for t in range(8) if t not in _DUPLICATED and got[t] != parse_laurent_matrix(DISPLAYED_G24_MATRICES[t])]
    return _result(not bad, "matrices 1-4 match" if not bad else f"mismatch in matrices {bad}")


@_check("hecke.duplicate-displays", "fifth/sixth and seventh/eighth displayed matrices coincide")
def _hecke_duplicates():
    got = g24_matrices()
    parts = []
    for t in sorted(_DUPLICATED):
        same = got[t] == parse_laurent_matrix(DISPLAYED_G24_MATRICES[t])
        parts.append(f"#{t + 1} {'matches' if same else 'differs'}: {format_laurent_matrix(got[t]).replace(chr(10), ' / ')}")
    return FLAGGED, "; ".join(parts)


@_check("hecke.associative", "Hecke product is associative on all 512 basis triples")
def _hecke_assoc():
    b = hecke_basis(g24_setup())
    prods = {(x, y): hecke_mul(b[x], b[y]) for x in range(8) for y in range(8)}
    bad = sum(
        hecke_mul(prods[x, y], b[z]) != hecke_mul(b[x], prods[y, z])
        for x, y, z in itertools.product(range(8), repeat=3)
    )
    return _result(bad == 0, f"{512 - bad}/512 triples associative")


@_check("hecke.double-coset", "double-coset sum over conjugates equals the fixed-point action")
def _hecke_double():
    s = g24_setup()
    module, basis = g24_module_and_fixed_points()
    b = hecke_basis(s)
    g = s.group
    pairs = [("i", b[2]), ("-i", b[3]), ("-1", b[1]), ("1", b[0])]
    ok = all(double_coset_act(s, g.index(n), v, module) == hecke_act(el, v, module) for n, el in pairs for v in basis)
    return _result(ok, "agrees for n in {1, -1, i, -i} on z0, z4, z6")


# ---------------------------------------------------------------------------
# G24


@_check("g24.simples", "three 1-dimensional simples with 8-dimensional projective covers")
def _g24():
    st = g24_structure()
    dims = [s.dim for s in st.simples]
    pdims = [p.dim for p in st.projectives]
    return _result(dims == [1, 1, 1] and pdims == [8, 8, 8], f"simple dims {dims}, projective dims {pdims}")


@_check("g24.idempotents", "lifted idempotents are exact, orthogonal and sum to 1")
def _g24_idempotents():
    st = g24_structure()
    e = st.idempotents
    ok = all((e[s] * e[t] == e[s]) if s == t else (e[s] * e[t]).is_zero() for s in range(3) for t in range(3))
    total = e[0] + e[1] + e[2]
    ok &= total == GroupAlgebraElement.one(F4, e[0].group)
    return _result(ok, f"radical dim {st.radical_dim}, Loewy length {st.radical_nilpotency - 1}")


# ---------------------------------------------------------------------------
# invariants


@_check("props.module-laws", "every built-in module satisfies the action law")
def _module_laws():
    bad = []
    for n in BUILTIN_NAMES:
        try:
            builtin(n).check_action()
        except ValueError:
            bad.append(n)
    return _result(not bad, f"{len(BUILTIN_NAMES)} modules checked" if not bad else f"failing: {bad}")


@_check("props.resolution", "the minimal resolution is exact and minimal")
def _resolution_props():
    r = _res()
    return _result(r.is_complex() and r.is_exact() and r.is_minimal(), f"length {r.length}")


@_check("props.hecke-closure", "Hecke products stay H-fixed and 1H is a unit")
def _hecke_closure():
    from .hecke import hecke_unit

    s = g24_setup()
    b = hecke_basis(s)
    one = hecke_unit(s)
    ok = all(hecke_mul(x, y).is_fixed() for x in b for y in b)
    ok &= all(hecke_mul(one, x) == x and hecke_mul(x, one) == x for x in b)
    return _result(ok, "64 products fixed, unit laws hold")


CHECK_IDS = tuple(cid for cid, _, _ in _REGISTRY)


def verify_paper(prefix: str | None = None) -> VerificationReport:
    """Run all checks whose id starts with ``prefix`` (all when None)."""
    start = time.perf_counter()
    checks = []
    for cid, anchor, fn in _REGISTRY:
        if prefix and not cid.startswith(prefix):
            continue
        try:
            status, details = fn()
        except Exception as exc:  # a crash is a failed check, reported as data
            status, details = FAIL, f"{type(exc).__name__}: {exc}"
        checks.append(Check(cid, anchor, status, details))
    return VerificationReport(checks, seconds=time.perf_counter() - start)
