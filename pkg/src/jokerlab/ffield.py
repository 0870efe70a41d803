"""Arithmetic in GF(2^k).

Elements are stored as integers whose bits are the coefficients of the
residue polynomial (bit r is the coefficient of x^r).  Every field carries
full multiplication and inverse tables, which is cheap for k <= 8 and lets
the linear algebra layer vectorise through numpy fancy indexing.

For GF(4) the modulus is x^2 + x + 1 and the class of x is the cube root
of unity ``w``; elements print as ``0, 1, w, w2``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

__all__ = [
    "FiniteField",
    "FieldElement",
    "ReducibleModulusError",
    "make_field",
    "F2",
    "F4",
    "field_by_name",
]


class ReducibleModulusError(ValueError):
    def __init__(self, modulus: int, factor: int):
        self.modulus = modulus
        self.factor = factor
        super().__init__(
            f"modulus {poly_str(modulus)} is reducible: divisible by {poly_str(factor)}"
        )


def poly_str(p: int) -> str:
    if p == 0:
        return "0"
    terms = []
    for r in range(p.bit_length() - 1, -1, -1):
        if (p >> r) & 1:
            terms.append("1" if r == 0 else "x" if r == 1 else f"x^{r}")
    return "+".join(terms)


def _poly_mod(a: int, m: int) -> int:
    dm = m.bit_length() - 1
    while a and a.bit_length() - 1 >= dm:
        a ^= m << (a.bit_length() - 1 - dm)
    return a


def _poly_mulmod(a: int, b: int, m: int) -> int:
    out = 0
    while b:
        if b & 1:
            out ^= a
        b >>= 1
        a <<= 1
    return _poly_mod(out, m)


def _find_factor(modulus: int) -> int | None:
    deg = modulus.bit_length() - 1
    for d in range(1, deg // 2 + 1):
        for p in range(1 << d, 1 << (d + 1)):
            if _poly_mod(modulus, p) == 0:
                return p
    return None


class FiniteField:
    """GF(2^degree) defined by an irreducible ``modulus`` (bit polynomial)."""

    characteristic = 2

    def __init__(self, degree: int, modulus: int):
        if degree < 1:
            raise ValueError("degree must be positive")
        if modulus.bit_length() - 1 != degree:
            raise ValueError(f"modulus {poly_str(modulus)} does not have degree {degree}")
        factor = _find_factor(modulus)
        if factor is not None:
            raise ReducibleModulusError(modulus, factor)
        self.degree = degree
        self.modulus = modulus
        self.order = 1 << degree
        q = self.order
        mul = np.zeros((q, q), dtype=np.uint8)
        for a in range(q):
            for b in range(a, q):
                mul[a, b] = mul[b, a] = _poly_mulmod(a, b, modulus)
        inv = np.zeros(q, dtype=np.uint8)
        for a in range(1, q):
            inv[a] = int(np.nonzero(mul[a] == 1)[0][0])
        mul.setflags(write=False)
        inv.setflags(write=False)
        self.mul_table = mul
        self.inv_table = inv
        self.sq_table = np.array([mul[a, a] for a in range(q)], dtype=np.uint8)

    # value-level helpers used by the matrix code
    def mul(self, a: int, b: int) -> int:
        return int(self.mul_table[a, b])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("division by zero in " + self.name)
        return int(self.inv_table[a])

    @property
    def name(self) -> str:
        return f"F{self.order}"

    def __call__(self, value) -> FieldElement:
        if isinstance(value, FieldElement):
            if value.field is not self:
                raise ValueError("element belongs to a different field")
            return value
        if isinstance(value, str):
            return FieldElement(self, self.parse(value))
        value = int(value)
        if not 0 <= value < self.order:
            raise ValueError(f"{value} is not a valid element code for {self.name}")
        return FieldElement(self, value)

    @property
    def zero(self) -> FieldElement:
        return FieldElement(self, 0)

    @property
    def one(self) -> FieldElement:
        return FieldElement(self, 1)

    @property
    def w(self) -> FieldElement:
        """The cube root of unity (class of x); only defined for GF(4)."""
        if self.degree != 2:
            raise AttributeError("w is only named in GF(4)")
        return FieldElement(self, 2)

    def elements(self) -> list[FieldElement]:
        return [FieldElement(self, a) for a in range(self.order)]

    # textual notation
    def format(self, a: int) -> str:
        if self.degree == 2:
            return ("0", "1", "w", "w2")[a]
        if self.degree == 1:
            return str(a)
        return f"#{a}"

    def parse(self, token: str) -> int:
        t = token.strip()
        if self.degree == 2:
            table = {"0": 0, "1": 1, "w": 2, "w2": 3, "w^2": 3, "w1": 2}
            if t in table:
                return table[t]
        elif self.degree == 1 and t in ("0", "1"):
            return int(t)
        elif t.startswith("#"):
            v = int(t[1:])
            if 0 <= v < self.order:
                return v
        raise ValueError(f"cannot parse {token!r} as an element of {self.name}")

    def __repr__(self) -> str:
        return f"FiniteField({self.name}, modulus={poly_str(self.modulus)})"

    def __eq__(self, other) -> bool:
        return isinstance(other, FiniteField) and other.modulus == self.modulus

    def __hash__(self) -> int:
        return hash(("GF2k", self.modulus))

    def __reduce__(self):
        return (make_field, (self.degree, self.modulus))


@lru_cache(maxsize=None)
def make_field(degree: int, modulus: int) -> FiniteField:
    """Build GF(2^degree); raises ReducibleModulusError naming a factor."""
    return FiniteField(degree, modulus)


@dataclass(frozen=True, slots=True)
class FieldElement:
    field: FiniteField
    value: int

    def _check(self, other) -> FieldElement:
        if isinstance(other, int) and other in (0, 1):
            return FieldElement(self.field, other)
        if not isinstance(other, FieldElement):
            return NotImplemented
        if other.field != self.field:
            raise ValueError(f"mixed fields: {self.field.name} and {other.field.name}")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.field, self.value ^ other.value)

    __radd__ = __add__
    __sub__ = __add__
    __rsub__ = __add__

    def __neg__(self):
        return self

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.field, self.field.mul(self.value, other.value))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.field, self.field.mul(self.value, self.field.inv(other.value)))

    def __rtruediv__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return other / self

    def __pow__(self, n: int):
        if n < 0:
            return (self.inverse()) ** (-n)
        out, base = 1, self.value
        while n:
            if n & 1:
                out = self.field.mul(out, base)
            base = self.field.mul(base, base)
            n >>= 1
        return FieldElement(self.field, out)

    def inverse(self) -> FieldElement:
        return FieldElement(self.field, self.field.inv(self.value))

    def frobenius(self) -> FieldElement:
        """Squaring, the generator of Gal(GF(2^k)/GF(2))."""
        return FieldElement(self.field, int(self.field.sq_table[self.value]))

    def __bool__(self) -> bool:
        return self.value != 0

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self.value == other and other in (0, 1)
        return isinstance(other, FieldElement) and other.field == self.field and other.value == self.value

    def __hash__(self) -> int:
        return hash((self.field.modulus, self.value))

    def __str__(self) -> str:
        return self.field.format(self.value)

    def __repr__(self) -> str:
        return f"{self.field.name}({self})"


def frobenius(a: FieldElement) -> FieldElement:
    return a.frobenius()


F2 = make_field(1, 0b11)
F4 = make_field(2, 0b111)


def field_by_name(name: str) -> FiniteField:
    key = name.strip().lower()
    if key in ("f2", "gf2", "2"):
        return F2
    if key in ("f4", "gf4", "4"):
        return F4
    raise ValueError(f"unknown field {name!r}; expected one of: f2, f4")
