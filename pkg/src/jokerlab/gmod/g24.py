"""Simple and projective modules of F4[G24], G24 = Q8 ⋊ C3."""

from __future__ import annotations

from dataclasses import dataclass

from ..exactla import Matrix, column_space, hstack, rank
from ..ffield import F4
from ..groups import make_g24
from .algebra import GroupAlgebraElement
from .module import GModule, quotient_module, regular_module
from .structure import (
    normal_sylow2,
    primitive_idempotents,
    projective_indecomposable,
    radical_basis,
)

__all__ = ["G24Structure", "g24_structure", "simple_modules_g24", "projective_indecomposables_g24"]


@dataclass
class G24Structure:
    radical_dim: int
    radical_nilpotency: int
    idempotents: tuple[GroupAlgebraElement, ...]
    projectives: list[GModule]
    simples: list[GModule]


def _radical_of_algebra() -> tuple[Matrix, int]:
    """rad F4[G24] = F4[G24]·I(Q8) inside the regular module, and its nilpotency index."""
    g = make_g24().group
    reg = regular_module(F4, g)
    rad = radical_basis(reg)  # I(Q8)·kG = kG·I(Q8) since Q8 is normal
    # nilpotency: rad^t M = 0 for the regular module
    power, t = rad, 1
    n = normal_sylow2(g)
    eye = reg.identity_matrix()
    while power.cols:
        power = column_space(hstack([(reg.rho[x] + eye) @ power for x in n.generators()]))
        t += 1
    return rad, t


def g24_structure() -> G24Structure:
    g = make_g24().group
    rad, nil = _radical_of_algebra()
    ids = primitive_idempotents(F4, g)
    projectives = [projective_indecomposable(F4, g, t) for t in range(len(ids))]
    simples = []
    for t, p in enumerate(projectives):
        s, _ = quotient_module(p, radical_basis(p), name=f"S{t}")
        simples.append(s)
    return G24Structure(rad.cols, nil, ids, projectives, simples)


def simple_modules_g24() -> list[GModule]:
    return g24_structure().simples


def projective_indecomposables_g24() -> list[GModule]:
    return g24_structure().projectives
