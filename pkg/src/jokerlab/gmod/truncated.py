"""Modules over R<G> = R[G] for the truncated Witt ring R = (Z/2^m)[w].

R carries the trivial G-action (Q8 acts trivially on F4 and hence on its
Witt vectors), so R<Q8> is the ordinary group ring.  A module here is free
over R, given by one matrix over R per group element.  Lifts of F4-modules
are produced by solving the group relators one 2-adic digit at a time.

Endotriviality transfers from the reduction mod 2: if the reduction of an
R-free R<G>-module is endotrivial, so is the module.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..exactla import Matrix, is_invertible, kronecker, solve, kernel, vstack, hstack
from ..ffield import F4
from ..groups import FiniteGroup
from .endotrivial import endotrivial
from .module import GModule

__all__ = [
    "RMatrix",
    "TruncatedModule",
    "LiftingError",
    "lift_module",
    "truncated_regular",
    "truncated_trivial",
    "endotrivial_truncated",
]


class LiftingError(RuntimeError):
    pass


@dataclass(frozen=True, eq=False)
class RMatrix:
    """Matrix over (Z/2^m)[w] stored as integer arrays a + b w."""

    a: np.ndarray
    b: np.ndarray
    m: int

    def __post_init__(self):
        mod = 1 << self.m
        object.__setattr__(self, "a", np.asarray(self.a, dtype=np.int64) % mod)
        object.__setattr__(self, "b", np.asarray(self.b, dtype=np.int64) % mod)

    @classmethod
    def identity(cls, n: int, m: int) -> RMatrix:
        return cls(np.eye(n, dtype=np.int64), np.zeros((n, n), dtype=np.int64), m)

    @classmethod
    def teichmuller(cls, x: Matrix, m: int) -> RMatrix:
        """Entrywise lift of an F4 matrix with codes 0, 1, w, w^2 -> 0, 1, w, -1-w."""
        codes = x.a.astype(np.int64)
        a = np.where(codes == 1, 1, np.where(codes == 3, -1, 0))
        b = np.where(codes == 2, 1, np.where(codes == 3, -1, 0))
        return cls(a, b, m)

    @classmethod
    def digit_lift(cls, x: Matrix, m: int) -> RMatrix:
        """Lift with codes c0 + 2 c1 -> c0 + c1 w (any lift works for corrections)."""
        codes = x.a.astype(np.int64)
        return cls(codes & 1, codes >> 1, m)

    @property
    def shape(self) -> tuple[int, int]:
        return self.a.shape

    def __add__(self, o: RMatrix) -> RMatrix:
        return RMatrix(self.a + o.a, self.b + o.b, self.m)

    def __sub__(self, o: RMatrix) -> RMatrix:
        return RMatrix(self.a - o.a, self.b - o.b, self.m)

    def __matmul__(self, o: RMatrix) -> RMatrix:
        aa, bb = self.a @ o.a, self.b @ o.b
        return RMatrix(aa - bb, self.a @ o.b + self.b @ o.a - bb, self.m)

    def scale_int(self, c: int) -> RMatrix:
        return RMatrix(self.a * c, self.b * c, self.m)

    def reduce(self) -> Matrix:
        """Reduction mod 2 to an F4 matrix."""
        return Matrix(F4, ((self.a & 1) | ((self.b & 1) << 1)).astype(np.uint8))

    def divisible_by(self, power: int) -> bool:
        mod = 1 << power
        return not (self.a % mod).any() and not (self.b % mod).any()

    def shift_down(self, power: int) -> RMatrix:
        """Exact division by 2^power (entries must be divisible)."""
        return RMatrix(self.a >> power, self.b >> power, self.m)

    def inverse(self) -> RMatrix:
        """Newton iteration from the inverse of the reduction."""
        n = self.shape[0]
        from ..exactla import inverse

        t = RMatrix.digit_lift(inverse(self.reduce()), self.m)
        two = RMatrix.identity(n, self.m).scale_int(2)
        for _ in range(self.m + 1):
            t = t @ (two - self @ t)
        if not (self @ t == RMatrix.identity(n, self.m)):
            raise AssertionError("inverse did not converge")
        return t

    def __eq__(self, o) -> bool:
        return isinstance(o, RMatrix) and o.m == self.m and np.array_equal(o.a, self.a) and np.array_equal(o.b, self.b)

    def __hash__(self) -> int:
        return hash((self.a.tobytes(), self.b.tobytes(), self.m))

    def to_text(self) -> str:
        rows = []
        for r in range(self.shape[0]):
            cells = []
            for c in range(self.shape[1]):
                x, y = int(self.a[r, c]), int(self.b[r, c])
                cells.append(str(x) if y == 0 else f"{x}+{y}w")
            rows.append(" ".join(cells))
        return "\n".join(rows)


@dataclass
class TruncatedModule:
    group: FiniteGroup
    rho: tuple[RMatrix, ...]
    m: int
    name: str = ""

    @property
    def rank(self) -> int:
        return self.rho[0].shape[0]

    def check_action(self) -> list[str]:
        """Pairs (g, h) with rho(g) rho(h) != rho(gh) over R."""
        g = self.group
        bad = []
        for x in g.elements():
            for y in g.elements():
                if self.rho[x] @ self.rho[y] != self.rho[g.mul(x, y)]:
                    bad.append(f"{g.names[x]}*{g.names[y]}")
        return bad

    def reduction(self) -> GModule:
        return GModule(F4, self.group, [r.reduce() for r in self.rho], f"{self.name} mod 2")


def _word_letters(group: FiniteGroup, relator: str) -> list[tuple[int, int]]:
    """'i^2*j^-2' -> [(i, +1), (i, +1), (j, -1), (j, -1)]."""
    out = []
    for part in relator.split("*"):
        name, _, exp = part.partition("^")
        e = int(exp) if exp else 1
        g = group.index(name)
        out.extend([(g, 1 if e > 0 else -1)] * abs(e))
    return out


def _evaluate(letters, mats: dict[int, RMatrix], invs: dict[int, RMatrix], n: int, m: int) -> RMatrix:
    out = RMatrix.identity(n, m)
    for g, s in letters:
        out = out @ (mats[g] if s > 0 else invs[g])
    return out


def _complete(group: FiniteGroup, gens: dict[int, RMatrix], m: int) -> tuple[RMatrix, ...]:
    n = next(iter(gens.values())).shape[0]
    rho: list[RMatrix | None] = [None] * group.order
    rho[group.identity] = RMatrix.identity(n, m)
    frontier = [group.identity]
    while frontier:
        nxt = []
        for x in frontier:
            for s, ms in gens.items():
                y = group.mul(x, s)
                cand = rho[x] @ ms
                if rho[y] is None:
                    rho[y] = cand
                    nxt.append(y)
                elif rho[y] != cand:
                    raise LiftingError(f"lifted matrices violate the group law at {group.names[y]}")
        frontier = nxt
    return tuple(rho)  # type: ignore[arg-type]


def lift_module(mod: GModule, m: int = 8, seed: int = 0, max_tries: int = 64) -> TruncatedModule:
    """Lift an F4[G]-module to an R-free R[G]-module, R = (Z/2^m)[w].

    Generator matrices are lifted one power of 2 at a time: writing
    A' = A + 2^n X, every relator r must satisfy r(A') = 1 mod 2^(n+1), a
    linear system over F4 in the corrections X (derivative of the word).
    Solutions are chosen from the affine solution space with a seeded
    generator, backtracking when a later step is obstructed.
    """
    if mod.field != F4:
        raise ValueError("lifting is implemented for F4-modules")
    group = mod.group
    if not group.relators:
        raise ValueError("the group needs a presentation (relators) for lifting")
    gens = list(group.generators)
    d = mod.dim
    relators = [_word_letters(group, r) for r in group.relators]
    rng = np.random.default_rng(seed)
    start = {g: RMatrix.teichmuller(mod.rho[g], m) for g in gens}
    tries = [0]

    def step(mats: dict[int, RMatrix], n: int):
        if n >= m:
            return mats
        invs = {g: mats[g].inverse() for g in gens}
        bars = {g: mats[g].reduce() for g in gens}
        ibars = {g: invs[g].reduce() for g in gens}
        rows, rhs = [], []
        for letters in relators:
            val = _evaluate(letters, mats, invs, d, m) - RMatrix.identity(d, m)
            if not val.divisible_by(n):
                raise AssertionError("relator not satisfied at the current level")
            err = val.shift_down(n).reduce()
            # derivative: sum over positions of prefix * dL * suffix
            blocks = {g: Matrix.zeros(F4, d * d, d * d) for g in gens}
            for pos, (g, s) in enumerate(letters):
                pre = Matrix.identity(F4, d)
                for h, t in letters[:pos]:
                    pre = pre @ (bars[h] if t > 0 else ibars[h])
                suf = Matrix.identity(F4, d)
                for h, t in letters[pos + 1 :]:
                    suf = suf @ (bars[h] if t > 0 else ibars[h])
                if s < 0:  # d(A^-1) = -A^-1 dA A^-1, and -1 = 1 mod 2
                    pre = pre @ ibars[g]
                    suf = ibars[g] @ suf
                blocks[g] = blocks[g] + kronecker(pre, suf.T)
            rows.append(hstack([blocks[g] for g in gens]))
            rhs.append(Matrix(F4, err.a.reshape(-1, 1)))
        system, target = vstack(rows), vstack(rhs)
        part = solve(system, target)
        if part is None:
            return None
        null = kernel(system)
        for attempt in range(max_tries):
            if tries[0] > max_tries * m:
                return None
            tries[0] += 1
            x = part
            if attempt and null.cols:
                coeffs = Matrix(F4, rng.integers(0, 4, size=(null.cols, 1)))
                x = part + null @ coeffs
            new = {}
            for t, g in enumerate(gens):
                corr = Matrix(F4, x.a[t * d * d : (t + 1) * d * d, 0].reshape(d, d))
                new[g] = mats[g] + RMatrix.digit_lift(corr, m).scale_int(1 << n)
            done = step(new, n + 1)
            if done is not None:
                return done
            if not null.cols:
                return None
        return None

    lifted = step(start, 1)
    if lifted is None:
        raise LiftingError(f"could not lift {mod.name or 'module'} to precision 2^{m}")
    rho = _complete(group, lifted, m)
    out = TruncatedModule(group, rho, m, f"{mod.name}~")
    bad = out.check_action()
    if bad:
        raise LiftingError(f"lifted action fails at {bad[0]}")
    if out.reduction().rho != mod.rho:
        raise AssertionError("lift does not reduce to the original module")
    return out


def truncated_regular(group: FiniteGroup, m: int = 8) -> TruncatedModule:
    n = group.order
    rho = []
    for g in group.elements():
        a = np.zeros((n, n), dtype=np.int64)
        a[group.table[g], np.arange(n)] = 1
        rho.append(RMatrix(a, np.zeros_like(a), m))
    return TruncatedModule(group, tuple(rho), m, "R<G>")


def truncated_trivial(group: FiniteGroup, rank: int = 1, m: int = 8) -> TruncatedModule:
    eye = RMatrix.identity(rank, m)
    return TruncatedModule(group, tuple([eye] * group.order), m, f"R^{rank}")


def endotrivial_truncated(mod: TruncatedModule) -> bool:
    """Endotriviality of an R-free R<G>-module via its reduction mod 2.

    Checks the action law over R and that every rho(g) has unit determinant
    (equivalently, an invertible reduction) before testing the reduction.
    """
    bad = mod.check_action()
    if bad:
        raise ValueError(f"not an R<G>-module: action fails at {bad[0]}")
    red = mod.reduction()
    for g, r in zip(mod.group.names, red.rho):
        if not is_invertible(r):
            raise ValueError(f"rho({g}) does not have unit determinant over R")
    return endotrivial(red)
