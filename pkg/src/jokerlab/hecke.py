"""Skew group rings and skew Hecke algebras over A = F4[u, u^-1].

G acts on A by ring automorphisms g(c u^e) = s_g(c) chi(g)^e u^e, where
chi: G -> F4^x and s_g is the identity or Frobenius.  The image of G in the
automorphisms of A is abelian.  Right modules twist scalars by
c·g = g^-1(c), which makes (c m)·g = (c·g)(m·g) consistent with the left
action used for the Hecke algebra.

For H <= G the Hecke algebra A^H{H\\G/H} is realised as the H-fixed vectors
sum_x r_x xH of A{G/H} (r_(hx) = h(r_x)), multiplied by

    alpha * beta = sum_(x, y) a_x x(b_y) (xy)H,

and acting on the H-fixed points of a module by m -> sum_x a_x x(m).
Coset representatives default to the least element index in each coset.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from math import lcm
from typing import Iterable, Sequence

from .ffield import F4
from .groups import FiniteGroup, Subgroup, make_g24

__all__ = [
    "LaurentElement",
    "GradedAlgebraAction",
    "SkewGroupElement",
    "skew_product",
    "HeckeSetup",
    "HeckeElement",
    "hecke_basis",
    "hecke_mul",
    "GradedGModule",
    "NotFixedError",
    "hecke_act",
    "hecke_matrix",
    "double_coset_act",
    "g24_action",
    "g24_setup",
    "g24_module_and_fixed_points",
    "G24_BASIS_LABELS",
    "DISPLAYED_G24_MATRICES",
    "parse_laurent",
    "parse_laurent_matrix",
    "format_laurent_matrix",
]

_mul = F4.mul


def _pow(c: int, e: int) -> int:
    if c == 0:
        raise ZeroDivisionError("0 has no powers with negative exponents")
    e %= 3  # |F4^x| = 3
    out = 1
    for _ in range(e):
        out = _mul(out, c)
    return out


@dataclass(frozen=True)
class LaurentElement:
    """Finite sum of c u^e with c in F4 (codes), e in Z; zero terms are dropped."""

    terms: tuple[tuple[int, int], ...] = ()

    @classmethod
    def of(cls, mapping: dict[int, int] | Iterable[tuple[int, int]]) -> LaurentElement:
        acc: dict[int, int] = {}
        items = mapping.items() if isinstance(mapping, dict) else mapping
        for e, c in items:
            acc[e] = acc.get(e, 0) ^ int(c)
        return cls(tuple(sorted((e, c) for e, c in acc.items() if c)))

    @classmethod
    def monomial(cls, coeff: int = 1, exp: int = 0) -> LaurentElement:
        return cls(((exp, coeff),)) if coeff else cls()

    @classmethod
    def zero(cls) -> LaurentElement:
        return cls()

    @classmethod
    def one(cls) -> LaurentElement:
        return cls(((0, 1),))

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __add__(self, other: LaurentElement) -> LaurentElement:
        return LaurentElement.of(list(self.terms) + list(other.terms))

    __sub__ = __add__

    def __mul__(self, other) -> LaurentElement:
        if isinstance(other, int):
            return LaurentElement.of([(e, _mul(c, other)) for e, c in self.terms])
        return LaurentElement.of([(e1 + e2, _mul(c1, c2)) for e1, c1 in self.terms for e2, c2 in other.terms])

    __rmul__ = __mul__

    def exponents(self) -> list[int]:
        return [e for e, _ in self.terms]

    def is_homogeneous(self) -> bool:
        return len(self.terms) <= 1

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.terms:
            coeff = F4.format(c)
            if e == 0:
                parts.append(coeff)
            else:
                mono = "u" if e == 1 else f"u^{e}"
                parts.append(mono if c == 1 else f"{coeff}*{mono}")
        return "+".join(parts)


_TERM = re.compile(r"^(?:(0|1|w2|w)\*?)?(?:u(?:\^(-?\d+))?)?$")


def parse_laurent(text: str) -> LaurentElement:
    """'0', '1', 'w', 'u^3', 'w*u^3', 'w2u^-1', sums joined by '+'."""
    text = text.strip().replace(" ", "")
    if not text:
        raise ValueError("empty entry")
    acc = []
    for part in text.split("+"):
        m = _TERM.match(part)
        if not m or not part:
            raise ValueError(f"cannot parse Laurent term {part!r}")
        coeff_tok, exp_tok = m.group(1), m.group(2)
        has_u = "u" in part
        coeff = F4.parse(coeff_tok) if coeff_tok else 1
        exp = (int(exp_tok) if exp_tok is not None else 1) if has_u else 0
        acc.append((exp, coeff))
    return LaurentElement.of(acc)


LaurentMatrix = tuple[tuple[LaurentElement, ...], ...]


def parse_laurent_matrix(text: str) -> LaurentMatrix:
    rows = [line.split() for line in text.strip().splitlines() if line.strip()]
    return tuple(tuple(parse_laurent(tok) for tok in row) for row in rows)


def format_laurent_matrix(m: LaurentMatrix) -> str:
    return "\n".join(" ".join(str(x) for x in row) for row in m)


# ---------------------------------------------------------------------------
# the action on A


@dataclass(frozen=True)
class GradedAlgebraAction:
    """g(c u^e) = s_g(c) chi(g)^e u^e; ``chi`` codes and ``frobenius`` flags per element."""

    group: FiniteGroup
    chi: tuple[int, ...]
    frobenius: tuple[bool, ...]

    def __post_init__(self):
        g = self.group
        for x in g.elements():
            for y in g.elements():
                xy = g.mul(x, y)
                # g(h(u)) = chi(h)^(s_g) chi(g) u  must equal chi(gh) u
                inner = _mul(self.chi[y], self.chi[y]) if self.frobenius[x] else self.chi[y]
                if _mul(self.chi[x], inner) != self.chi[xy] or (self.frobenius[x] ^ self.frobenius[y]) != self.frobenius[xy]:
                    raise ValueError(f"action data is not a homomorphism at {g.names[x]}*{g.names[y]}")

    @classmethod
    def trivial(cls, group: FiniteGroup) -> GradedAlgebraAction:
        return cls(group, (1,) * group.order, (False,) * group.order)

    @classmethod
    def from_generators(cls, group: FiniteGroup, data: dict[str, tuple[int, bool]]) -> GradedAlgebraAction:
        """Extend generator data {name: (chi code, frobenius?)} along the multiplication table."""
        chi: list[int | None] = [None] * group.order
        frob: list[bool | None] = [None] * group.order
        chi[group.identity], frob[group.identity] = 1, False
        gens = [(group.index(n), c, f) for n, (c, f) in data.items()]
        queue = deque([group.identity])
        while queue:
            x = queue.popleft()
            for s, c, f in gens:
                y = group.mul(s, x)
                inner = _mul(chi[x], chi[x]) if f else chi[x]
                cy, fy = _mul(c, inner), f ^ frob[x]
                if chi[y] is None:
                    chi[y], frob[y] = cy, fy
                    queue.append(y)
                elif (chi[y], frob[y]) != (cy, fy):
                    raise ValueError(f"generator data is inconsistent at {group.names[y]}")
        if any(c is None for c in chi):
            raise ValueError("generators do not generate the group")
        return cls(group, tuple(chi), tuple(frob))  # type: ignore[arg-type]

    def apply(self, g: int, a: LaurentElement) -> LaurentElement:
        out = []
        for e, c in a.terms:
            cc = _mul(c, c) if self.frobenius[g] else c
            out.append((e, _mul(cc, _pow(self.chi[g], e))))
        return LaurentElement.of(out)

    def fixes(self, g: int, a: LaurentElement) -> bool:
        return self.apply(g, a) == a


def g24_action() -> GradedAlgebraAction:
    """Q8 acts trivially on A; w sends u to w^2 u (and u^k to w^(2k) u^k)."""
    g = make_g24().group
    return GradedAlgebraAction.from_generators(g, {"i": (1, False), "j": (1, False), "w": (3, False)})


# ---------------------------------------------------------------------------
# skew group ring


@dataclass(frozen=True)
class SkewGroupElement:
    """sum_g a_g · g in A<G>."""

    action: GradedAlgebraAction
    coeffs: tuple[tuple[int, LaurentElement], ...]

    @classmethod
    def of(cls, action: GradedAlgebraAction, mapping: dict[int, LaurentElement]) -> SkewGroupElement:
        return cls(action, tuple(sorted((g, a) for g, a in mapping.items() if a)))

    def as_dict(self) -> dict[int, LaurentElement]:
        return dict(self.coeffs)

    def __add__(self, other: SkewGroupElement) -> SkewGroupElement:
        acc = self.as_dict()
        for g, a in other.coeffs:
            acc[g] = acc.get(g, LaurentElement()) + a
        return SkewGroupElement.of(self.action, acc)

    def __mul__(self, other: SkewGroupElement) -> SkewGroupElement:
        return skew_product(self, other)


def skew_product(a: SkewGroupElement, b: SkewGroupElement) -> SkewGroupElement:
    """(a g)(b h) = a g(b) (gh), extended bilinearly."""
    if a.action is not b.action and a.action != b.action:
        raise ValueError("elements of different skew group rings")
    act = a.action
    g = act.group
    acc: dict[int, LaurentElement] = {}
    for x, ax in a.coeffs:
        for y, by in b.coeffs:
            xy = g.mul(x, y)
            acc[xy] = acc.get(xy, LaurentElement()) + ax * act.apply(x, by)
    return SkewGroupElement.of(act, acc)


# ---------------------------------------------------------------------------
# Hecke algebras


@dataclass(frozen=True, eq=False)
class HeckeSetup:
    """G, H <= G, the action on A and a complete set of left coset representatives."""

    action: GradedAlgebraAction
    subgroup: Subgroup
    reps: tuple[int, ...]
    complement: Subgroup | None = None

    @classmethod
    def create(
        cls,
        action: GradedAlgebraAction,
        subgroup: Subgroup,
        reps: Sequence[int] | None = None,
        complement: Subgroup | None = None,
    ) -> HeckeSetup:
        g = action.group
        cosets = subgroup.left_cosets()
        if reps is None:
            reps = [min(c) for c in cosets]
        reps = tuple(sorted(reps, key=lambda r: min(_coset(g, subgroup, r))))
        if sorted(min(_coset(g, subgroup, r)) for r in reps) != sorted(min(c) for c in cosets):
            raise ValueError("representatives do not form a complete set for G/H")
        return cls(action, subgroup, reps, complement)

    @property
    def group(self) -> FiniteGroup:
        return self.action.group

    @property
    def size(self) -> int:
        return len(self.reps)

    def coset_of(self, g: int) -> int:
        """Index (into reps) of the coset gH."""
        return self._coset_table()[g]

    def _coset_table(self) -> dict[int, int]:
        table = self.__dict__.get("_table")
        if table is None:
            table = {}
            for t, r in enumerate(self.reps):
                for h in self.subgroup.members:
                    table[self.group.mul(r, h)] = t
            object.__setattr__(self, "_table", table)
        return table

    def coset_name(self, t: int) -> str:
        return f"{self.group.names[self.reps[t]]}H"

    def with_reps(self, reps: Sequence[int]) -> HeckeSetup:
        return HeckeSetup.create(self.action, self.subgroup, reps, self.complement)

    def fixed_ring_period(self) -> int:
        """d with (A)^H = F4[u^d, u^-d]."""
        if any(self.action.frobenius[h] for h in self.subgroup.members):
            raise ValueError("Frobenius-twisted subgroups are not supported by the Hecke basis")
        d = 1
        for h in self.subgroup.members:
            c = self.action.chi[h]
            k, x = 1, c
            while x != 1:
                x = _mul(x, c)
                k += 1
            d = lcm(d, k)
        return d


def _coset(g: FiniteGroup, h: Subgroup, r: int) -> list[int]:
    return [g.mul(r, x) for x in h.members]


class NotFixedError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class HeckeElement:
    """sum_x r_x xH with coefficients indexed by the representatives of ``setup``."""

    setup: HeckeSetup
    coeffs: tuple[LaurentElement, ...]
    label: str = ""

    def __post_init__(self):
        if len(self.coeffs) != self.setup.size:
            raise ValueError("one coefficient per coset is required")

    def is_fixed(self) -> bool:
        s = self.setup
        g = s.group
        for h in s.subgroup.members:
            for t, r in enumerate(s.reps):
                if s.action.apply(h, self.coeffs[t]) != self.coeffs[s.coset_of(g.mul(h, r))]:
                    return False
        return True

    def __eq__(self, other) -> bool:
        return isinstance(other, HeckeElement) and other.setup is self.setup and other.coeffs == self.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __add__(self, other: HeckeElement) -> HeckeElement:
        return HeckeElement(self.setup, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def scale(self, a: LaurentElement) -> HeckeElement:
        """Multiply by an H-fixed scalar of A."""
        return HeckeElement(self.setup, tuple(a * c for c in self.coeffs))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def in_setup(self, other: HeckeSetup) -> HeckeElement:
        """The same vector of A{G/H} written over another representative set."""
        out = [LaurentElement()] * other.size
        for t, r in enumerate(self.setup.reps):
            out[other.coset_of(r)] = self.coeffs[t]
        return HeckeElement(other, tuple(out), self.label)

    def __str__(self) -> str:
        if self.label:
            return self.label
        parts = [f"({c}){self.setup.coset_name(t)}" for t, c in enumerate(self.coeffs) if c]
        return " + ".join(parts) or "0"


def hecke_unit(setup: HeckeSetup) -> HeckeElement:
    coeffs = [LaurentElement()] * setup.size
    coeffs[setup.coset_of(setup.group.identity)] = LaurentElement.one()
    return HeckeElement(setup, tuple(coeffs), "1H")


def _window(d: int) -> list[int]:
    out = [0]
    k = 1
    while len(out) < d:
        out.append(k)
        if len(out) < d:
            out.append(-k)
        k += 1
    return out


def hecke_basis(setup: HeckeSetup) -> list[HeckeElement]:
    """Basis of the H-fixed vectors over the fixed ring (A)^H = F4[u^+-d].

    Exponent-window major (0, 1, -1, 2, ...), then H-orbits on G/H ordered by
    their least coset; the coefficient at the orbit's first coset is u^e.
    """
    g, act, hsub = setup.group, setup.action, setup.subgroup
    d = setup.fixed_ring_period()
    orbits: list[list[int]] = []
    seen: set[int] = set()
    for t in range(setup.size):
        if t in seen:
            continue
        orbit = sorted({setup.coset_of(g.mul(h, setup.reps[t])) for h in hsub.members})
        seen.update(orbit)
        orbits.append(orbit)
    basis = []
    for e in _window(d):
        mono = LaurentElement.monomial(1, e)
        for orbit in orbits:
            first = orbit[0]
            coeffs: list[LaurentElement | None] = [None] * setup.size
            ok = True
            for h in hsub.members:
                t = setup.coset_of(g.mul(h, setup.reps[first]))
                val = act.apply(h, mono)
                if coeffs[t] is None:
                    coeffs[t] = val
                elif coeffs[t] != val:
                    ok = False  # the stabiliser moves u^e
                    break
            if not ok:
                continue
            full = tuple(c if c is not None else LaurentElement() for c in coeffs)
            el = HeckeElement(setup, full)
            object.__setattr__(el, "label", _basis_label(el, e, orbit))
            basis.append(el)
    return basis


def _basis_label(el: HeckeElement, e: int, orbit: list[int]) -> str:
    s = el.setup
    terms = []
    for t in orbit:
        c = el.coeffs[t]
        lead = c.terms[0][1]
        coeff = "" if lead == 1 else F4.format(lead)
        terms.append(f"{coeff}{s.coset_name(t)}")
    body = "+".join(terms)
    if e == 0:
        return body
    mono = "u" if e == 1 else f"u^{e}"
    return f"{mono}({body})"


def hecke_coordinates(el: HeckeElement, basis: Sequence[HeckeElement] | None = None) -> list[LaurentElement]:
    """Coefficients in (A)^H of ``el`` in ``hecke_basis``."""
    basis = list(basis) if basis is not None else hecke_basis(el.setup)
    if not el.is_fixed():
        raise NotFixedError("element is not H-fixed")
    d = el.setup.fixed_ring_period()
    coords = []
    residual = el
    for b in basis:
        lead = next(t for t, c in enumerate(b.coeffs) if c)
        e = b.coeffs[lead].terms[0][0]
        c_lead = b.coeffs[lead].terms[0][1]
        part = [(x - e, _mul(c, F4.inv(c_lead))) for x, c in residual.coeffs[lead].terms if (x - e) % d == 0]
        coeff = LaurentElement.of(part)
        coords.append(coeff)
        residual = residual + b.scale(coeff)
    if not residual.is_zero():
        raise AssertionError("basis does not span the fixed vectors")
    return coords


def hecke_mul(alpha: HeckeElement, beta: HeckeElement) -> HeckeElement:
    """alpha * beta = sum_(x, y) a_x x(b_y) (xy)H."""
    s = alpha.setup
    if beta.setup is not s:
        raise ValueError("elements of different Hecke algebras")
    if not alpha.is_fixed() or not beta.is_fixed():
        raise NotFixedError("Hecke elements must be H-fixed")
    g, act = s.group, s.action
    acc = [LaurentElement()] * s.size
    for tx, x in enumerate(s.reps):
        ax = alpha.coeffs[tx]
        if not ax:
            continue
        for ty, y in enumerate(s.reps):
            by = beta.coeffs[ty]
            if by:
                t = s.coset_of(g.mul(x, y))
                acc[t] = acc[t] + ax * act.apply(x, by)
    out = HeckeElement(s, tuple(acc))
    if not out.is_fixed():
        raise AssertionError("product is not H-fixed: the action on A is inconsistent")
    return out


# ---------------------------------------------------------------------------
# graded modules


Vector = tuple[LaurentElement, ...]


@dataclass(eq=False)
class GradedGModule:
    """Free A-module on named basis vectors with a semilinear G-action.

    ``generator_images[g][b]`` is the image of basis vector b under the
    generator g (a vector of Laurent coefficients); ``side`` says whether
    these are right (b·g) or left (g·b) actions.
    """

    action: GradedAlgebraAction
    names: tuple[str, ...]
    degrees: tuple[int, ...]
    generator_images: dict[str, tuple[Vector, ...]]
    side: str = "right"
    u_degree: int = 2
    images: list[tuple[Vector, ...]] = field(init=False, repr=False)

    def __post_init__(self):
        if self.side not in ("left", "right"):
            raise ValueError("side must be 'left' or 'right'")
        self.images = self._complete()

    @property
    def group(self) -> FiniteGroup:
        return self.action.group

    @property
    def dim(self) -> int:
        return len(self.names)

    def basis_vector(self, b: int) -> Vector:
        return tuple(LaurentElement.one() if t == b else LaurentElement() for t in range(self.dim))

    def scalar(self, g: int, c: LaurentElement) -> LaurentElement:
        """g(c) for left modules; c·g = g^-1(c) for right modules."""
        if self.side == "right":
            return self.action.apply(self.group.inv(g), c)
        return self.action.apply(g, c)

    def _apply_with(self, g: int, images: Sequence[Vector], v: Vector) -> Vector:
        acc = [LaurentElement()] * self.dim
        for b, c in enumerate(v):
            if not c:
                continue
            tc = self.scalar(g, c)
            for t, x in enumerate(images[b]):
                if x:
                    acc[t] = acc[t] + tc * x
        return tuple(acc)

    def _complete(self) -> list[tuple[Vector, ...]]:
        g = self.group
        n = self.dim
        table: list[tuple[Vector, ...] | None] = [None] * g.order
        table[g.identity] = tuple(self.basis_vector(b) for b in range(n))
        gens = [(g.index(name), imgs) for name, imgs in self.generator_images.items()]
        queue = deque([g.identity])
        while queue:
            x = queue.popleft()
            for s, imgs in gens:
                if self.side == "right":  # b·(xs) = (b·x)·s
                    y = g.mul(x, s)
                    cand = tuple(self._apply_with(s, imgs, table[x][b]) for b in range(n))
                else:  # (s x)·b = s·(x·b)
                    y = g.mul(s, x)
                    cand = tuple(self._apply_with(s, imgs, table[x][b]) for b in range(n))
                if table[y] is None:
                    table[y] = cand
                    queue.append(y)
                elif table[y] != cand:
                    raise ValueError(f"action is inconsistent at {g.names[y]}")
        if any(t is None for t in table):
            raise ValueError("generators do not generate the group")
        return table  # type: ignore[return-value]

    def act(self, g: int, v: Vector) -> Vector:
        """v·g for right modules, g·v for left modules."""
        return self._apply_with(g, self.images[g], v)

    def check_action(self) -> list[str]:
        g = self.group
        bad = []
        for x in g.elements():
            for y in g.elements():
                for b in range(self.dim):
                    v = self.basis_vector(b)
                    if self.side == "right":
                        ok = self.act(y, self.act(x, v)) == self.act(g.mul(x, y), v)
                    else:
                        ok = self.act(x, self.act(y, v)) == self.act(g.mul(x, y), v)
                    if not ok:
                        bad.append(f"{g.names[x]}*{g.names[y]}")
                        break
        return bad

    def is_homogeneous(self, v: Vector) -> int | None:
        """Common degree of v (u has degree ``u_degree``), or None if not homogeneous."""
        degs = {self.degrees[b] + self.u_degree * e for b, c in enumerate(v) for e in c.exponents()}
        if len(degs) > 1:
            return None
        return degs.pop() if degs else 0

    def is_fixed(self, members: Iterable[int], v: Vector) -> bool:
        return all(self.act(h, v) == v for h in members)

    def to_left(self) -> GradedGModule:
        """The left module g·m = m·g^-1 (identity for left modules)."""
        if self.side == "left":
            return self
        g = self.group
        gens = {g.names[s]: self.images[g.inv(s)] for s in g.generators}
        return GradedGModule(self.action, self.names, self.degrees, gens, "left", self.u_degree)

    def normalized_matrices(self, members: Iterable[int]) -> dict[str, list[list[int]]] | None:
        """F4 matrices on the normalised basis u^(-deg/u_degree) z, for elements acting
        trivially on A; column c holds the image of basis vector c.  None if an
        entry is not a pure u-power matching the degrees."""
        out = {}
        for x in members:
            mat = [[0] * self.dim for _ in range(self.dim)]
            for c in range(self.dim):
                img = self.images[x][c]
                for r, coeff in enumerate(img):
                    for e, code in coeff.terms:
                        if self.u_degree * e != self.degrees[c] - self.degrees[r]:
                            return None
                        mat[r][c] ^= code
            out[self.group.names[x]] = mat
        return out


def hecke_act(alpha: HeckeElement, m: Vector, module: GradedGModule) -> Vector:
    """alpha * m = sum_x a_x x(m) over the representatives of alpha's setup.

    For a left module x(m) = x·m; for a right module x(m) = m·x, evaluated at
    the chosen representatives.
    """
    s = alpha.setup
    if not module.is_fixed(s.subgroup.members, m):
        raise NotFixedError("vector is not H-fixed")
    acc = [LaurentElement()] * module.dim
    for t, x in enumerate(s.reps):
        a = alpha.coeffs[t]
        if not a:
            continue
        xm = module.act(x, m)
        for b in range(module.dim):
            acc[b] = acc[b] + a * xm[b]
    return tuple(acc)


def hecke_matrix(alpha: HeckeElement, module: GradedGModule, basis: Sequence[Vector]) -> LaurentMatrix:
    """Matrix of alpha on the span of fixed vectors ``basis`` (column c = image of basis[c])."""
    cols = []
    for v in basis:
        img = hecke_act(alpha, v, module)
        cols.append(_coordinates(img, basis))
    n = len(basis)
    return tuple(tuple(cols[c][r] for c in range(n)) for r in range(n))


def _coordinates(v: Vector, basis: Sequence[Vector]) -> list[LaurentElement]:
    """Coordinates of v in basis vectors that are distinct standard vectors."""
    out = []
    for b in basis:
        support = [t for t, c in enumerate(b) if c]
        if len(support) != 1 or b[support[0]] != LaurentElement.one():
            raise ValueError("coordinates are implemented for standard basis vectors")
        out.append(v[support[0]])
    covered = {next(t for t, c in enumerate(b) if c) for b in basis}
    if any(c for t, c in enumerate(v) if t not in covered):
        raise ValueError("vector is not in the span of the basis")
    return out


def double_coset_act(setup: HeckeSetup, n: int, m: Vector, module: GradedGModule) -> Vector:
    """nH * m = sum over the H-conjugates c of n of c(m) (n in a normal complement)."""
    if setup.complement is None or n not in setup.complement.members:
        raise ValueError("n must lie in the normal complement of H")
    g = setup.group
    conj = sorted({g.mul(g.mul(h, n), g.inv(h)) for h in setup.subgroup.members})
    acc = [LaurentElement()] * module.dim
    for c in conj:
        cm = module.act(c, m)
        for b in range(module.dim):
            acc[b] = acc[b] + cm[b]
    return tuple(acc)


def double_coset_element(setup: HeckeSetup, n: int) -> HeckeElement:
    """sum of cH over the H-conjugates c of n, as a Hecke element."""
    g = setup.group
    coeffs = [LaurentElement()] * setup.size
    for c in {g.mul(g.mul(h, n), g.inv(h)) for h in setup.subgroup.members}:
        coeffs[setup.coset_of(c)] = LaurentElement.one()
    return HeckeElement(setup, tuple(coeffs))


# ---------------------------------------------------------------------------
# the G24 computation


G24_BASIS_LABELS = (
    "1H",
    "i^2H",
    "iH+jH+kH",
    "i^3H+j^3H+k^3H",
    "u(iH+w2jH+wkH)",
    "u(i^3H+w2j^3H+wk^3H)",
    "u^-1(iH+wjH+w2kH)",
    "u^-1(i^3H+wj^3H+w2k^3H)",
)

# (exponent, {Q8 element: coefficient}) for the eight quoted basis elements
_G24_BASIS_SPEC = (
    (0, {"1": 1}),
    (0, {"-1": 1}),
    (0, {"i": 1, "j": 1, "k": 1}),
    (0, {"-i": 1, "-j": 1, "-k": 1}),
    (1, {"i": 1, "j": 3, "k": 2}),
    (1, {"-i": 1, "-j": 3, "-k": 2}),
    (-1, {"i": 1, "j": 2, "k": 3}),
    (-1, {"-i": 1, "-j": 2, "-k": 3}),
)

DISPLAYED_G24_MATRICES = (
    "1 0 0\n0 1 0\n0 0 1",
    "1 0 u^3\n0 1 0\n0 0 1",
    "1 0 w*u^3\n0 1 0\n0 0 1",
    "1 0 w2*u^3\n0 1 0\n0 0 1",
    "0 u^3 0\n0 0 0\n0 0 0",
    "0 u^3 0\n0 0 0\n0 0 0",
    "0 0 0\n0 0 1\n0 0 0",
    "0 0 0\n0 0 1\n0 0 0",
)


@lru_cache(maxsize=None)
def g24_setup() -> HeckeSetup:
    data = make_g24()
    return HeckeSetup.create(g24_action(), data.c3, complement=data.q8)


def expected_g24_basis(setup: HeckeSetup | None = None) -> list[HeckeElement]:
    """The eight quoted elements, built directly from their coefficient lists."""
    setup = setup or g24_setup()
    g = setup.group
    out = []
    for label, (e, coeffs) in zip(G24_BASIS_LABELS, _G24_BASIS_SPEC):
        vec = [LaurentElement()] * setup.size
        for name, c in coeffs.items():
            vec[setup.coset_of(g.index(name))] = LaurentElement.monomial(c, e)
        out.append(HeckeElement(setup, tuple(vec), label))
    return out


def g24_module_and_fixed_points() -> tuple[GradedGModule, list[Vector]]:
    """The right G24-action on z0, z4, z6 over F4[u^+-1] and its C3-fixed basis.

    z0·i = z0, z4·i = z4 + u^2 z0, z6·i = z6 + u z4 + w u^3 z0,
    z0·j = z0, z4·j = z4 + w u^2 z0, z6·j = z6 + w^2 u z4 + w u^3 z0,
    and w fixes each z.  Degrees: z_k has degree k, u has degree 2.
    """
    L = LaurentElement.monomial
    Z = LaurentElement()
    one = L(1, 0)
    images = {
        # images of (z0, z4, z6), each as coefficients on (z0, z4, z6)
        "i": ((one, Z, Z), (L(1, 2), one, Z), (L(2, 3), L(1, 1), one)),
        "j": ((one, Z, Z), (L(2, 2), one, Z), (L(2, 3), L(3, 1), one)),
        "w": ((one, Z, Z), (Z, one, Z), (Z, Z, one)),
    }
    module = GradedGModule(g24_action(), ("z0", "z4", "z6"), (0, 4, 6), images, side="right")
    setup = g24_setup()
    basis = [module.basis_vector(b) for b in range(module.dim)]
    for v in basis:
        if not module.is_fixed(setup.subgroup.members, v):
            raise AssertionError("z-basis is not C3-fixed")
    return module, basis


def g24_matrices() -> list[LaurentMatrix]:
    module, basis = g24_module_and_fixed_points()
    return [hecke_matrix(b, module, basis) for b in hecke_basis(g24_setup())]
