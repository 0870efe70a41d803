"""Small finite groups stored as full multiplication tables.

Elements are indices ``0..order-1``; index 0 is always the identity for the
groups built here, though nothing relies on that.  The builders produce Q8
(``±1, ±i, ±j, ±k``), cyclic groups, elementary abelian 2-groups and
G24 = C3 ⋉ Q8 generated by ``i, j, w`` with ``w i w^-1 = j``.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "FiniteGroup",
    "Subgroup",
    "DoubleCoset",
    "GroupLawError",
    "make_q8",
    "make_cyclic",
    "make_c3",
    "make_klein",
    "make_elementary_abelian",
    "make_g24",
    "double_cosets",
    "elementary_abelian_subgroups",
    "group_by_name",
]


class GroupLawError(ValueError):
    pass


_TOKEN = re.compile(r"\s*([^\s\*\^]+)(?:\^(-?\d+))?\s*")


class FiniteGroup:
    def __init__(
        self,
        name: str,
        names: Sequence[str],
        table,
        generators: Sequence[str] = (),
        relators: Sequence[str] = (),
    ):
        T = np.array(table, dtype=np.int64)
        n = len(names)
        if T.shape != (n, n):
            raise GroupLawError(f"table shape {T.shape} does not match {n} names")
        if T.min() < 0 or T.max() >= n:
            raise GroupLawError("table entries out of range")
        ids = [e for e in range(n) if np.array_equal(T[e], np.arange(n)) and np.array_equal(T[:, e], np.arange(n))]
        if len(ids) != 1:
            raise GroupLawError("no two-sided identity")
        e = ids[0]
        inv = np.full(n, -1, dtype=np.int64)
        for a in range(n):
            hits = np.flatnonzero(T[a] == e)
            if hits.size != 1 or T[hits[0], a] != e:
                raise GroupLawError(f"element {names[a]} has no inverse")
            inv[a] = hits[0]
        lhs = T[T]
        rhs = T[np.arange(n)[:, None, None], T[None, :, :]]
        if not np.array_equal(lhs, rhs):
            a, b, c = (int(x[0]) for x in np.nonzero(lhs != rhs))
            raise GroupLawError(f"associativity fails at ({names[a]}, {names[b]}, {names[c]})")
        T.setflags(write=False)
        inv.setflags(write=False)
        self.name = name
        self.names = tuple(names)
        self.table = T
        self.identity = e
        self.inverses = inv
        self._index = {s: i for i, s in enumerate(self.names)}
        self.generators = tuple(self.index(g) for g in generators) or self._greedy_generators(range(n))
        self.relators = tuple(relators)

    # basic access
    @property
    def order(self) -> int:
        return len(self.names)

    def elements(self) -> range:
        return range(self.order)

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inv(self, a: int) -> int:
        return int(self.inverses[a])

    def conj(self, g: int, x: int) -> int:
        """g x g^-1."""
        return self.mul(self.mul(g, x), self.inv(g))

    def power(self, a: int, n: int) -> int:
        if n < 0:
            a, n = self.inv(a), -n
        out = self.identity
        for _ in range(n):
            out = self.mul(out, a)
        return out

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != self.identity:
            x = self.mul(x, a)
            k += 1
        return k

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"{name!r} is not an element of {self.name}; elements: {', '.join(self.names)}") from None

    def word(self, text: str) -> int:
        """Evaluate a word such as ``i*j^-1*w`` (left to right)."""
        out = self.identity
        text = text.strip()
        if text in ("", "1", "e"):
            return self.identity
        for part in text.split("*"):
            m = _TOKEN.fullmatch(part)
            if not m:
                raise ValueError(f"cannot parse word {text!r}")
            x = self.index(m.group(1))
            out = self.mul(out, self.power(x, int(m.group(2) or 1)))
        return out

    def generator_names(self) -> tuple[str, ...]:
        return tuple(self.names[g] for g in self.generators)

    def _greedy_generators(self, members: Iterable[int]) -> tuple[int, ...]:
        members = sorted(members)
        gens: list[int] = []
        span = {self.identity}
        for x in members:
            if x not in span:
                gens.append(x)
                span = set(self.closure(gens))
        return tuple(gens)

    def closure(self, gens: Iterable[int]) -> list[int]:
        span = {self.identity}
        frontier = [self.identity]
        gens = list(gens)
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.mul(x, g)
                    if y not in span:
                        span.add(y)
                        nxt.append(y)
            frontier = nxt
        return sorted(span)

    # subgroups
    def subgroup(self, members: Iterable[int]) -> Subgroup:
        return Subgroup(self, tuple(sorted(set(members))))

    def generate(self, gens: Iterable[int | str]) -> Subgroup:
        gens = [self.index(g) if isinstance(g, str) else g for g in gens]
        return Subgroup(self, tuple(self.closure(gens)))

    def trivial_subgroup(self) -> Subgroup:
        return Subgroup(self, (self.identity,))

    def whole(self) -> Subgroup:
        return Subgroup(self, tuple(self.elements()))

    def center(self) -> Subgroup:
        z = [a for a in self.elements() if all(self.mul(a, b) == self.mul(b, a) for b in self.elements())]
        return Subgroup(self, tuple(z))

    def conjugacy_classes(self) -> list[tuple[int, ...]]:
        seen: set[int] = set()
        out = []
        for x in self.elements():
            if x in seen:
                continue
            cls = tuple(sorted({self.conj(g, x) for g in self.elements()}))
            seen.update(cls)
            out.append(cls)
        return out

    def is_p_group(self, p: int = 2) -> bool:
        n = self.order
        while n % p == 0:
            n //= p
        return n == 1

    def subgroups_of_order(self, order: int) -> list[Subgroup]:
        found: set[tuple[int, ...]] = set()
        elems = [a for a in self.elements() if order % self.element_order(a) == 0]
        for a in elems:
            for b in elems:
                s = tuple(self.closure([a, b]))
                if len(s) == order:
                    found.add(s)
        return [Subgroup(self, s) for s in sorted(found)]

    def sylow_subgroups(self, p: int) -> list[Subgroup]:
        n, pk = self.order, 1
        while n % p == 0:
            n //= p
            pk *= p
        return self.subgroups_of_order(pk)

    def opposite(self) -> FiniteGroup:
        """The group with product a∘b = b·a on the same element names."""
        return FiniteGroup(self.name + "^op", self.names, self.table.T, [self.names[g] for g in self.generators])

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "order": self.order,
            "names": list(self.names),
            "table": self.table.tolist(),
            "generators": list(self.generator_names()),
        }

    @classmethod
    def from_json(cls, data: dict | str) -> FiniteGroup:
        if isinstance(data, str):
            data = json.loads(data)
        if len(data["names"]) != data["order"]:
            raise GroupLawError("order does not match the number of names")
        return cls(data.get("name", "G"), data["names"], data["table"], data.get("generators", ()))

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name}, order={self.order})"

    def __eq__(self, other) -> bool:
        return isinstance(other, FiniteGroup) and self.names == other.names and np.array_equal(self.table, other.table)

    def __hash__(self) -> int:
        return hash((self.names, self.table.tobytes()))


@dataclass(frozen=True)
class Subgroup:
    parent: FiniteGroup
    members: tuple[int, ...]

    def __post_init__(self):
        g = self.parent
        s = set(self.members)
        if g.identity not in s:
            raise GroupLawError("subgroup must contain the identity")
        for a in self.members:
            if g.inv(a) not in s:
                raise GroupLawError(f"{g.names[a]}^-1 missing from subgroup")
            for b in self.members:
                if g.mul(a, b) not in s:
                    raise GroupLawError(f"{g.names[a]}*{g.names[b]} missing from subgroup")

    @property
    def order(self) -> int:
        return len(self.members)

    def __contains__(self, x: int) -> bool:
        return x in self.members

    def __iter__(self):
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def names(self) -> list[str]:
        return [self.parent.names[a] for a in self.members]

    def is_normal(self) -> bool:
        s = set(self.members)
        return all(self.parent.conj(g, x) in s for g in self.parent.elements() for x in self.members)

    def generators(self) -> tuple[int, ...]:
        return self.parent._greedy_generators(self.members)

    def left_cosets(self) -> list[tuple[int, ...]]:
        g = self.parent
        seen: set[int] = set()
        out = []
        for x in g.elements():
            if x in seen:
                continue
            c = tuple(sorted(g.mul(x, h) for h in self.members))
            seen.update(c)
            out.append(c)
        return out

    @cached_property
    def group(self) -> FiniteGroup:
        """This subgroup as a standalone group (element i is ``members[i]``)."""
        g = self.parent
        pos = {a: i for i, a in enumerate(self.members)}
        table = [[pos[g.mul(a, b)] for b in self.members] for a in self.members]
        gens = [g.names[a] for a in self.generators()]
        return FiniteGroup(f"{g.name}>{self.order}", [g.names[a] for a in self.members], table, gens)


@dataclass(frozen=True)
class DoubleCoset:
    representative: int
    members: tuple[int, ...]


def double_cosets(g: FiniteGroup, h: Subgroup) -> list[DoubleCoset]:
    """Partition of g into sets H x H, each represented by its least index."""
    seen: set[int] = set()
    out = []
    for x in g.elements():
        if x in seen:
            continue
        members = tuple(sorted({g.mul(g.mul(a, x), b) for a in h.members for b in h.members}))
        seen.update(members)
        out.append(DoubleCoset(x, members))
    return out


def elementary_abelian_subgroups(g: FiniteGroup, p: int = 2) -> list[Subgroup]:
    """All nontrivial elementary abelian p-subgroups."""
    if p != 2:
        raise ValueError("only p = 2 is supported")
    invol = [a for a in g.elements() if a != g.identity and g.mul(a, a) == g.identity]
    found: set[tuple[int, ...]] = set()
    frontier = {tuple(sorted((g.identity, a))) for a in invol}
    while frontier:
        found |= frontier
        nxt = set()
        for s in frontier:
            for y in invol:
                if y in s or any(g.mul(y, x) != g.mul(x, y) for x in s):
                    continue
                nxt.add(tuple(sorted(set(s) | {g.mul(y, x) for x in s})))
        frontier = nxt - found
    return [Subgroup(g, s) for s in sorted(found, key=lambda s: (len(s), s))]


# builders

_Q8_NAMES = ("1", "-1", "i", "-i", "j", "-j", "k", "-k")
_UNIT_MUL = {
    ("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
    ("i", "1"): (1, "i"), ("i", "i"): (-1, "1"), ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
    ("j", "1"): (1, "j"), ("j", "i"): (-1, "k"), ("j", "j"): (-1, "1"), ("j", "k"): (1, "i"),
    ("k", "1"): (1, "k"), ("k", "i"): (1, "j"), ("k", "j"): (-1, "i"), ("k", "k"): (-1, "1"),
}


def _split_q(name: str) -> tuple[int, str]:
    return (-1, name[1:]) if name.startswith("-") else (1, name)


def _join_q(sign: int, unit: str) -> str:
    return unit if sign > 0 else "-" + unit


def _q8_mul(a: str, b: str) -> str:
    sa, ua = _split_q(a)
    sb, ub = _split_q(b)
    s, u = _UNIT_MUL[(ua, ub)]
    return _join_q(sa * sb * s, u)


Q8_RELATORS = ("i^4", "i^2*j^-2", "i*j*i*j^-1")


def make_q8() -> FiniteGroup:
    pos = {n: t for t, n in enumerate(_Q8_NAMES)}
    table = [[pos[_q8_mul(a, b)] for b in _Q8_NAMES] for a in _Q8_NAMES]
    return FiniteGroup("Q8", _Q8_NAMES, table, ("i", "j"), Q8_RELATORS)


def make_cyclic(n: int, gen: str = "g") -> FiniteGroup:
    names = ["1", gen] + [f"{gen}^{t}" for t in range(2, n)]
    table = [[(a + b) % n for b in range(n)] for a in range(n)]
    return FiniteGroup(f"C{n}", names, table, (gen,) if n > 1 else (), (f"{gen}^{n}",))


def make_c3() -> FiniteGroup:
    table = [[(a + b) % 3 for b in range(3)] for a in range(3)]
    return FiniteGroup("C3", ("1", "w", "w2"), table, ("w",), ("w^3",))


def make_elementary_abelian(rank: int) -> FiniteGroup:
    letters = "abcdefgh"[:rank]
    names = []
    for x in range(1 << rank):
        s = "".join(letters[t] for t in range(rank) if (x >> t) & 1)
        names.append(s or "1")
    table = [[a ^ b for b in range(1 << rank)] for a in range(1 << rank)]
    return FiniteGroup(f"E{1 << rank}", names, table, tuple(letters))


def make_klein() -> FiniteGroup:
    return make_elementary_abelian(2)


_ROTATE = {"1": "1", "i": "j", "j": "k", "k": "i"}


def _rotate(q: str, times: int) -> str:
    s, u = _split_q(q)
    for _ in range(times % 3):
        u = _ROTATE[u]
    return _join_q(s, u)


@dataclass(frozen=True)
class G24Data:
    group: FiniteGroup
    c3: Subgroup
    q8: Subgroup
    q8_embedding: tuple[int, ...] = field(repr=False)


def make_g24() -> G24Data:
    """C3 ⋉ Q8 with w q w^-1 given by i -> j -> k -> i.

    Element q*w^c has index 3*index(q) + c, so the least index in each coset
    qC3 is the Q8 element q itself.
    """
    suffix = ("", "*w", "*w2")
    names = []
    for q in _Q8_NAMES:
        for c in range(3):
            names.append(("w", "w2")[c - 1] if q == "1" and c else q + suffix[c])
    qpos = {n: t for t, n in enumerate(_Q8_NAMES)}

    def mul(x: int, y: int) -> int:
        q1, a = divmod(x, 3)
        q2, b = divmod(y, 3)
        q = _q8_mul(_Q8_NAMES[q1], _rotate(_Q8_NAMES[q2], a))
        return 3 * qpos[q] + (a + b) % 3

    table = [[mul(x, y) for y in range(24)] for x in range(24)]
    g = FiniteGroup("G24", names, table, ("i", "j", "w"))
    emb = tuple(3 * t for t in range(8))
    return G24Data(g, g.subgroup((0, 1, 2)), g.subgroup(emb), emb)


def group_by_name(name: str) -> FiniteGroup:
    key = name.strip().lower()
    if key == "q8":
        return make_q8()
    if key == "c3":
        return make_c3()
    if key == "g24":
        return make_g24().group
    if key in ("klein", "e4", "v4"):
        return make_klein()
    m = re.fullmatch(r"c(\d+)", key)
    if m:
        return make_cyclic(int(m.group(1)))
    raise ValueError(f"unknown group {name!r}; expected one of: q8, c3, g24, klein, c<n>")
