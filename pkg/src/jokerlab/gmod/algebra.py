"""Elements of a group algebra k[G] as coefficient vectors."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import numpy as np

from ..exactla import Matrix
from ..ffield import FieldElement, FiniteField
from ..groups import FiniteGroup

__all__ = ["GroupAlgebraElement"]


@dataclass(frozen=True, eq=False)
class GroupAlgebraElement:
    """sum_g c_g g, with ``coeffs[g]`` the field code of c_g."""

    field: FiniteField
    group: FiniteGroup
    coeffs: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=np.uint8).copy()
        if c.shape != (self.group.order,):
            raise ValueError("coefficient vector has the wrong length")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def zero(cls, field: FiniteField, group: FiniteGroup) -> GroupAlgebraElement:
        return cls(field, group, np.zeros(group.order, dtype=np.uint8))

    @classmethod
    def basis(cls, field: FiniteField, group: FiniteGroup, g: int | str) -> GroupAlgebraElement:
        if isinstance(g, str):
            g = group.index(g)
        c = np.zeros(group.order, dtype=np.uint8)
        c[g] = 1
        return cls(field, group, c)

    @classmethod
    def one(cls, field: FiniteField, group: FiniteGroup) -> GroupAlgebraElement:
        return cls.basis(field, group, group.identity)

    @classmethod
    def from_terms(cls, field: FiniteField, group: FiniteGroup, terms: Mapping) -> GroupAlgebraElement:
        """Build from ``{element name or index: coefficient}``."""
        c = np.zeros(group.order, dtype=np.uint8)
        for g, a in terms.items():
            idx = group.index(g) if isinstance(g, str) else int(g)
            code = field(a).value
            c[idx] ^= code
        return cls(field, group, c)

    @classmethod
    def norm(cls, field: FiniteField, group: FiniteGroup, members=None) -> GroupAlgebraElement:
        c = np.zeros(group.order, dtype=np.uint8)
        c[list(group.elements() if members is None else members)] = 1
        return cls(field, group, c)

    @classmethod
    def from_column(cls, field: FiniteField, group: FiniteGroup, v: Matrix) -> GroupAlgebraElement:
        return cls(field, group, v.a[:, 0])

    def _check(self, other: GroupAlgebraElement) -> None:
        if other.field != self.field or other.group != self.group:
            raise ValueError("elements of different group algebras")

    def __add__(self, other: GroupAlgebraElement) -> GroupAlgebraElement:
        self._check(other)
        return GroupAlgebraElement(self.field, self.group, self.coeffs ^ other.coeffs)

    __sub__ = __add__

    def scale(self, c) -> GroupAlgebraElement:
        code = self.field(c).value
        return GroupAlgebraElement(self.field, self.group, self.field.mul_table[code][self.coeffs])

    def __mul__(self, other):
        if isinstance(other, (int, FieldElement)):
            return self.scale(other)
        self._check(other)
        mul = self.field.mul_table
        out = np.zeros(self.group.order, dtype=np.uint8)
        for g in np.nonzero(self.coeffs)[0]:
            # g * h lands at table[g, h]
            np.bitwise_xor.at(out, self.group.table[g], mul[self.coeffs[g]][other.coeffs])
        return GroupAlgebraElement(self.field, self.group, out)

    def __rmul__(self, c) -> GroupAlgebraElement:
        return self.scale(c)

    def __pow__(self, n: int) -> GroupAlgebraElement:
        out = GroupAlgebraElement.one(self.field, self.group)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GroupAlgebraElement)
            and other.field == self.field
            and other.group == self.group
            and bool(np.array_equal(other.coeffs, self.coeffs))
        )

    def __hash__(self) -> int:
        return hash(self.coeffs.tobytes())

    def is_zero(self) -> bool:
        return not self.coeffs.any()

    def augmentation(self) -> FieldElement:
        acc = 0
        for c in self.coeffs:
            acc ^= int(c)
        return FieldElement(self.field, acc)

    def column(self) -> Matrix:
        """Coordinates in the regular module (basis = group elements)."""
        return Matrix(self.field, self.coeffs.reshape(-1, 1))

    def matrix_on(self, module) -> Matrix:
        """Action matrix of this element on a module."""
        out = Matrix.zeros(self.field, module.dim, module.dim)
        for g in np.nonzero(self.coeffs)[0]:
            out = out + module.rho[int(g)].scale(int(self.coeffs[g]))
        return out

    def __str__(self) -> str:
        terms = []
        for g in np.nonzero(self.coeffs)[0]:
            c = int(self.coeffs[g])
            name = self.group.names[int(g)]
            terms.append(name if c == 1 else f"{self.field.format(c)}*{name}")
        return " + ".join(terms) if terms else "0"

    def __repr__(self) -> str:
        return f"GroupAlgebraElement({self})"
