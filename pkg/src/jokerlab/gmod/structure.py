"""Radicals, projective covers, syzygies and free summands.

The supported groups are those with a normal Sylow 2-subgroup N whose
quotient is cyclic of order dividing |k^x| (2-groups, and G24 = Q8 ⋊ C3
over F4).  For such groups rad k[G] = k[G]·I(N), and the primitive
idempotents come from characters of the complement, lifted by repeated
squaring.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ..exactla import Matrix, column_space, extend_basis, hstack, kernel, rank, rref, solve, vstack
from ..ffield import FiniteField
from ..groups import FiniteGroup, Subgroup
from .algebra import GroupAlgebraElement
from .module import GModule, ModuleMap, direct_sum, fixed_points, norm_matrix, regular_module, submodule

__all__ = [
    "UnsupportedGroupError",
    "normal_sylow2",
    "radical_basis",
    "socle_basis",
    "lift_idempotent",
    "primitive_idempotents",
    "projective_indecomposable",
    "projective_cover",
    "syzygy",
    "syzygy_n",
    "FreeSplitting",
    "strip_free",
    "zero_module",
]


class UnsupportedGroupError(ValueError):
    pass


def zero_module(field: FiniteField, group: FiniteGroup) -> GModule:
    z = Matrix.zeros(field, 0, 0)
    return GModule(field, group, [z] * group.order, "0", check=False)


def normal_sylow2(group: FiniteGroup) -> Subgroup:
    syl = group.sylow_subgroups(2)
    if len(syl) != 1:
        raise UnsupportedGroupError(f"{group.name} has no normal Sylow 2-subgroup")
    return syl[0]


def _orbit_matrix(m: GModule, v: Matrix) -> Matrix:
    """Columns rho(g) v for g in group order: the map k[G] -> M, 1 -> v."""
    return hstack([r @ v for r in m.rho], m.field, m.dim)


def radical_basis(m: GModule) -> Matrix:
    """rad M = I(N)·M, spanned by the images of rho(n) - 1 for generators n of N."""
    n = normal_sylow2(m.group)
    eye = m.identity_matrix()
    gens = n.generators()
    if not gens or m.dim == 0:
        return Matrix.zeros(m.field, m.dim, 0)
    return column_space(hstack([m.rho[g] + eye for g in gens]))


def socle_basis(m: GModule) -> Matrix:
    """soc M = vectors killed by I(N), i.e. the N-fixed points."""
    n = normal_sylow2(m.group)
    return fixed_points(m, n.generators())


def lift_idempotent(x: GroupAlgebraElement, max_steps: int = 16) -> GroupAlgebraElement:
    """Square until stable; exact when x^2 - x is nilpotent (characteristic 2)."""
    for _ in range(max_steps):
        y = x * x
        if y == x:
            return x
        x = y
    raise ValueError("element does not square to an idempotent: x^2 - x is not nilpotent")


@lru_cache(maxsize=None)
def primitive_idempotents(field: FiniteField, group: FiniteGroup) -> tuple[GroupAlgebraElement, ...]:
    """A complete set of orthogonal primitive idempotents, one per simple module."""
    n = normal_sylow2(group)
    one = GroupAlgebraElement.one(field, group)
    q = group.order // n.order
    if q == 1:
        return (one,)
    comps = [c for c in group.subgroups_of_order(q)]
    cyclic = [c for c in comps if any(group.element_order(x) == q for x in c.members)]
    if not cyclic or (field.order - 1) % q:
        raise UnsupportedGroupError("complement must be cyclic with order dividing |k^x|")
    c = cyclic[0]
    c0 = next(x for x in c.members if group.element_order(x) == q)
    zeta = next(a for a in field.elements()[1:] if _mult_order(a) == q)
    # char-2 orthogonal idempotents of k[C]: e_t = sum_s zeta^(-ts) c0^s  (1/q = 1)
    preimages = []
    for t in range(q):
        terms: dict[int, int] = {}
        for s in range(q):
            terms[group.power(c0, s)] = (zeta ** (-t * s)).value
        preimages.append(GroupAlgebraElement.from_terms(field, group, terms))
    return lift_orthogonal(preimages)


def lift_orthogonal(preimages: list[GroupAlgebraElement]) -> tuple[GroupAlgebraElement, ...]:
    """Lift images of orthogonal idempotents (mod a nilpotent ideal) to orthogonal idempotents."""
    field, group = preimages[0].field, preimages[0].group
    one = GroupAlgebraElement.one(field, group)
    out: list[GroupAlgebraElement] = []
    rest = one
    for x in preimages[:-1]:
        e = lift_idempotent(rest * x * rest)
        out.append(e)
        rest = rest - e
    out.append(rest)
    return tuple(out)


def _mult_order(a) -> int:
    k, x = 1, a
    while x.value != 1:
        x = x * a
        k += 1
    return k


@lru_cache(maxsize=None)
def _pim(field: FiniteField, group: FiniteGroup, t: int) -> tuple[GModule, Matrix]:
    e = primitive_idempotents(field, group)[t]
    reg = regular_module(field, group)
    basis = column_space(_orbit_matrix(reg, e.column()))
    return submodule(reg, basis, f"P{t}"), basis


def projective_indecomposable(field: FiniteField, group: FiniteGroup, t: int) -> GModule:
    """The left ideal k[G]·e_t."""
    return _pim(field, group, t)[0]


def projective_cover(m: GModule) -> tuple[GModule, ModuleMap]:
    """Minimal projective P with a surjection onto ``m``."""
    F, G = m.field, m.group
    if m.dim == 0:
        z = zero_module(F, G)
        return z, ModuleMap(z, m, Matrix.zeros(F, 0, 0))
    span = radical_basis(m)
    pieces: list[GModule] = []
    blocks: list[Matrix] = []
    for t, e in enumerate(primitive_idempotents(F, G)):
        em = column_space(e.matrix_on(m))
        chosen = extend_basis(span, em)
        if not chosen:
            continue
        span = hstack([span, em[:, chosen]], F, m.dim)
        pim, basis = _pim(F, G, t)
        for c in chosen:
            pieces.append(pim)
            blocks.append(_orbit_matrix(m, em[:, [c]]) @ basis)
    if span.cols != m.dim:
        raise AssertionError("top of module not spanned")
    p = direct_sum(*pieces)
    p.name = f"P({m.name})"
    return p, ModuleMap(p, m, hstack(blocks, F, m.dim))


def syzygy(m: GModule) -> GModule:
    """Kernel of the projective cover, with its induced action."""
    p, cover = projective_cover(m)
    ker = kernel(cover.matrix)
    if ker.cols == 0:
        return zero_module(m.field, m.group)
    om = submodule(p, ker, f"Ω({m.name})")
    rad = radical_basis(p)
    if rank(hstack([rad, ker])) != rank(rad):
        raise AssertionError("projective cover is not minimal")
    return om


def syzygy_n(m: GModule, n: int) -> GModule:
    for _ in range(n):
        m = syzygy(m)
    return m


@dataclass
class FreeSplitting:
    """m ≅ k[G]^rank ⊕ remainder, with the maps realizing it.

    ``inclusion``: free part -> m, ``retraction``: m -> free part (a left
    inverse of ``inclusion``) and ``remainder_inclusion``: remainder -> m,
    whose image is the kernel of the retraction.
    """

    rank: int
    remainder: GModule
    free: GModule
    inclusion: ModuleMap
    retraction: ModuleMap
    remainder_inclusion: ModuleMap


def strip_free(m: GModule) -> FreeSplitting:
    G, F = m.group, m.field
    if not G.is_p_group(2):
        raise UnsupportedGroupError("free-summand stripping needs a 2-group")
    nm = norm_matrix(m)
    _, pivots, r = rref(nm)
    free = direct_sum(*[regular_module(F, G)] * r) if r else zero_module(F, G)
    if r == 0:
        eye = m.identity_matrix()
        return FreeSplitting(
            0,
            m,
            free,
            ModuleMap(free, m, Matrix.zeros(F, m.dim, 0)),
            ModuleMap(m, free, Matrix.zeros(F, 0, m.dim)),
            ModuleMap(m, m, eye),
        )
    vs = [Matrix.identity(F, m.dim)[:, [p]] for p in pivots]
    phi = hstack([_orbit_matrix(m, v) for v in vs], F, m.dim)
    n = G.order
    target = np.zeros((r, r * n), dtype=np.uint8)
    for t in range(r):
        target[t, t * n + G.identity] = 1
    # functionals lam with lam(rho(g) v_s) = delta_st delta_{g,1}
    lam = solve(phi.T, Matrix(F, target).T)
    if lam is None:
        raise AssertionError("norm generators do not span a free submodule")
    lam = lam.T
    rows = []
    for t in range(r):
        for g in G.elements():
            rows.append(lam[t : t + 1, :] @ m.rho[G.inv(g)])
    psi = vstack(rows, F, m.dim)
    ker = kernel(psi)
    rem = submodule(m, ker, f"{m.name}/free") if ker.cols else zero_module(F, G)
    return FreeSplitting(
        r,
        rem,
        free,
        ModuleMap(free, m, phi),
        ModuleMap(m, free, psi),
        ModuleMap(rem, m, ker),
    )
