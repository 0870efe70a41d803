"""Minimal free resolutions over k[G] for 2-groups, Ext, cup and Massey products.

The free module P_s = k[G]^(b_s) has field coordinates indexed by
(t, g) -> t·|G| + g, standing for g·e_t.  A map of free modules is stored as
the field matrix of the k-linear map; it is determined by the images of the
generators e_t, and the column for g·e_t is g applied to the image of e_t.

Because the resolution is minimal, every cochain P_s -> k is a cocycle and
no coboundaries occur, so Ext^s(k, k) = k^(b_s): a class is the vector of its
values on the generators of P_s.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Sequence

import numpy as np

from . import __version__
from .exactla import Matrix, column_space, hstack, kernel, extend_basis, rank, solve
from .ffield import FiniteField, F4, field_by_name
from .groups import FiniteGroup, group_by_name

__all__ = [
    "NonLocalAlgebraError",
    "ResolutionTooShortError",
    "MasseyUndefinedError",
    "FreeResolution",
    "CohomClass",
    "minimal_resolution",
    "resolution",
    "save_resolution",
    "load_resolution",
    "lift_chain_map",
    "cup",
    "ext_basis",
    "hom_identification",
    "generators_uv",
    "named_classes",
    "express",
    "MasseyResult",
    "nullhomotopy",
    "massey_triple",
]

CACHE_VERSION = 1


class NonLocalAlgebraError(ValueError):
    pass


class ResolutionTooShortError(ValueError):
    pass


class MasseyUndefinedError(ValueError):
    pass


@dataclass
class FreeResolution:
    """P_n -> ... -> P_0 -> k; ``differentials[s]`` is d_s: P_s -> P_(s-1), ``differentials[0]`` = augmentation."""

    field: FiniteField
    group: FiniteGroup
    ranks: list[int]
    differentials: list[Matrix]

    @property
    def length(self) -> int:
        return len(self.ranks) - 1

    @property
    def order(self) -> int:
        return self.group.order

    def dim(self, s: int) -> int:
        return self.ranks[s] * self.order

    def generator_column(self, s: int, t: int) -> int:
        return t * self.order + self.group.identity

    def translate(self, s: int, g: int, v: np.ndarray) -> np.ndarray:
        """g · v for a coordinate vector v of P_s."""
        n = self.order
        out = np.zeros_like(v)
        blocks = v.reshape(self.ranks[s], n)
        out.reshape(self.ranks[s], n)[:, self.group.table[g]] = blocks
        return out

    def free_map(self, target: int, images: Sequence[np.ndarray]) -> Matrix:
        """Module map P_? -> P_target sending e_t to images[t]."""
        n = self.order
        cols = np.zeros((self.dim(target), len(images) * n), dtype=np.uint8)
        for t, y in enumerate(images):
            for g in self.group.elements():
                cols[:, t * n + g] = self.translate(target, g, y)
        return Matrix(self.field, cols)

    def augmentation_of(self, v: np.ndarray) -> int:
        """epsilon on P_0 (sum of coefficients)."""
        acc = 0
        for c in v:
            acc ^= int(c)
        return acc

    def is_minimal(self) -> bool:
        """Every component of every d_s(e_t) lies in the augmentation ideal."""
        n = self.order
        for s in range(1, self.length + 1):
            d = self.differentials[s].a
            for t in range(self.ranks[s]):
                col = d[:, self.generator_column(s, t)]
                for u in range(self.ranks[s - 1]):
                    if self.augmentation_of(col[u * n : (u + 1) * n]):
                        return False
        return True

    def is_complex(self) -> bool:
        return all(
            (self.differentials[s - 1] @ self.differentials[s]).is_zero() for s in range(1, self.length + 1)
        )

    def is_exact(self) -> bool:
        """rank d_s + rank d_(s+1) = dim P_s for 0 <= s < length (the augmentation is onto)."""
        ranks = [rank(d) for d in self.differentials]
        if ranks[0] != 1:
            return False
        return all(ranks[s] + ranks[s + 1] == self.dim(s) for s in range(self.length))


def _check_local(field: FiniteField, group: FiniteGroup) -> None:
    if not group.is_p_group(field.characteristic):
        raise NonLocalAlgebraError(f"{field.name}[{group.name}] is not local; minimal resolutions need a 2-group")


def minimal_resolution(field: FiniteField, group: FiniteGroup, length: int) -> FreeResolution:
    _check_local(field, group)
    n = group.order
    aug = Matrix(field, np.ones((1, n), dtype=np.uint8))
    res = FreeResolution(field, group, [1], [aug])
    gens = group.generators
    for s in range(1, length + 1):
        prev = res.differentials[s - 1]
        ker = kernel(prev)  # inside P_(s-1)
        # rad(ker) = I(G)·ker, spanned by (g - 1) v for generators g
        moved = [
            np.stack([res.translate(s - 1, g, ker.a[:, c]) ^ ker.a[:, c] for c in range(ker.cols)], axis=1)
            for g in gens
        ]
        rad = column_space(Matrix(field, np.concatenate(moved, axis=1))) if ker.cols else ker
        chosen = extend_basis(rad, ker)
        images = [ker.a[:, c] for c in chosen]
        res.ranks.append(len(images))
        res.differentials.append(res.free_map(s - 1, images))
    return res


@lru_cache(maxsize=None)
def _resolution_memo(field: FiniteField, group: FiniteGroup, length: int) -> FreeResolution:
    return minimal_resolution(field, group, length)


def save_resolution(res: FreeResolution, path: str | os.PathLike) -> None:
    data = {
        "version": CACHE_VERSION,
        "artifact_version": __version__,
        "group": res.group.name,
        "field": res.field.name,
        "length": res.length,
        "ranks": res.ranks,
        "differentials": [d.to_text() for d in res.differentials],
        "shapes": [list(d.shape) for d in res.differentials],
    }
    Path(path).write_text(json.dumps(data, indent=1))


def load_resolution(path: str | os.PathLike, group: FiniteGroup | None = None) -> FreeResolution:
    data = json.loads(Path(path).read_text())
    if data.get("version") != CACHE_VERSION:
        raise ValueError("resolution cache has an unsupported version")
    fld = field_by_name(data["field"])
    grp = group or group_by_name(data["group"])
    diffs = []
    for text, shape in zip(data["differentials"], data["shapes"]):
        m = Matrix.from_text(fld, text) if shape[0] and shape[1] else Matrix.zeros(fld, *shape)
        if list(m.shape) != shape:
            raise ValueError("resolution cache is corrupt")
        diffs.append(m)
    res = FreeResolution(fld, grp, list(data["ranks"]), diffs)
    if not (res.is_complex() and res.is_exact()):
        raise ValueError("cached resolution fails verification")
    return res


def resolution(
    field: FiniteField = F4,
    group: FiniteGroup | None = None,
    length: int = 8,
    cache_dir: str | os.PathLike | None = None,
) -> FreeResolution:
    """Memoised minimal resolution, optionally persisted under ``cache_dir``."""
    group = group or group_by_name("q8")
    if cache_dir is None:
        return _resolution_memo(field, group, length)
    path = Path(cache_dir) / f"resolution-{group.name}-{field.name}-{length}-v{CACHE_VERSION}-{__version__}.json"
    if path.exists():
        try:
            return load_resolution(path, group)
        except (ValueError, KeyError, json.JSONDecodeError):
            pass
    res = _resolution_memo(field, group, length)
    path.parent.mkdir(parents=True, exist_ok=True)
    save_resolution(res, path)
    return res


# ---------------------------------------------------------------------------
# classes and products


@dataclass(frozen=True)
class CohomClass:
    degree: int
    values: tuple[int, ...]  # field codes on the generators of P_degree
    field: FiniteField = F4

    def __add__(self, other: CohomClass) -> CohomClass:
        if other.degree != self.degree:
            raise ValueError("adding classes of different degrees")
        return CohomClass(self.degree, tuple(a ^ b for a, b in zip(self.values, other.values)), self.field)

    __sub__ = __add__

    def scale(self, c) -> CohomClass:
        code = self.field(c).value
        return CohomClass(self.degree, tuple(self.field.mul(code, v) for v in self.values), self.field)

    def __rmul__(self, c) -> CohomClass:
        return self.scale(c)

    def is_zero(self) -> bool:
        return not any(self.values)

    def column(self) -> Matrix:
        return Matrix(self.field, np.array(self.values, dtype=np.uint8).reshape(-1, 1))

    def __str__(self) -> str:
        return f"[{' '.join(self.field.format(v) for v in self.values)}]_{self.degree}"


def ext_basis(res: FreeResolution, s: int) -> list[CohomClass]:
    b = res.ranks[s]
    return [CohomClass(s, tuple(int(t == u) for u in range(b)), res.field) for t in range(b)]


def _need(res: FreeResolution, top: int) -> None:
    if top > res.length:
        raise ResolutionTooShortError(f"needs the resolution to degree {top}, have {res.length}")


def lift_chain_map(res: FreeResolution, c: CohomClass, levels: int, start: Matrix | None = None) -> list[Matrix]:
    """Chain map C_n: P_(n+deg) -> P_n (n = 0..levels) over the cochain ``c``.

    ``start`` overrides C_0 (it must still satisfy epsilon C_0 = c).
    """
    deg = c.degree
    _need(res, levels + deg)
    F = res.field
    if start is None:
        images = []
        for t in range(res.ranks[deg]):
            y = np.zeros(res.dim(0), dtype=np.uint8)
            y[res.group.identity] = c.values[t]
            images.append(y)
        start = res.free_map(0, images)
    maps = [start]
    for n in range(1, levels + 1):
        d_src = res.differentials[n + deg]
        rhs_all = maps[n - 1] @ d_src
        images = []
        for t in range(res.ranks[n + deg]):
            col = rhs_all[:, [res.generator_column(n + deg, t)]]
            x = solve(res.differentials[n], col)
            if x is None:
                raise AssertionError("resolution is not exact")
            images.append(x.a[:, 0])
        maps.append(res.free_map(n, images))
    return maps


def _evaluate_cochain(res: FreeResolution, level0: Matrix, degree: int) -> CohomClass:
    """epsilon ∘ (map P_degree -> P_0), read off on generators."""
    vals = []
    for t in range(res.ranks[degree]):
        vals.append(res.augmentation_of(level0.a[:, res.generator_column(degree, t)]))
    return CohomClass(degree, tuple(vals), res.field)


def cup(res: FreeResolution, a: CohomClass, b: CohomClass) -> CohomClass:
    """Yoneda product a·b = a ∘ B_(deg a), B a chain lift of b."""
    _need(res, a.degree + b.degree)
    if a.degree == 0:
        return b.scale(a.values[0])
    lift = lift_chain_map(res, b, a.degree)
    level = lift[a.degree]  # P_(p+q) -> P_p
    vals = []
    for t in range(res.ranks[a.degree + b.degree]):
        col = level.a[:, res.generator_column(a.degree + b.degree, t)]
        acc = 0
        blocks = col.reshape(res.ranks[a.degree], res.order)
        for u in range(res.ranks[a.degree]):
            aug = res.augmentation_of(blocks[u])
            acc ^= res.field.mul(a.values[u], aug)
        vals.append(acc)
    return CohomClass(a.degree + b.degree, tuple(vals), res.field)


def unit(res: FreeResolution) -> CohomClass:
    return CohomClass(0, (1,), res.field)


def hom_identification(res: FreeResolution, c: CohomClass) -> dict[str, int]:
    """The homomorphism G -> (k, +) of a degree-1 class: g -> c(x) with d_1 x = g - 1."""
    if c.degree != 1:
        raise ValueError("only degree-1 classes are homomorphisms")
    out = {}
    n = res.order
    for g in res.group.elements():
        target = np.zeros((res.dim(0), 1), dtype=np.uint8)
        target[g, 0] ^= 1
        target[res.group.identity, 0] ^= 1
        x = solve(res.differentials[1], Matrix(res.field, target))
        blocks = x.a[:, 0].reshape(res.ranks[1], n)
        acc = 0
        for t in range(res.ranks[1]):
            acc ^= res.field.mul(c.values[t], res.augmentation_of(blocks[t]))
        out[res.group.names[g]] = acc
    return out


def generators_uv(res: FreeResolution, first: str = "i", second: str = "j") -> tuple[CohomClass, CohomClass]:
    """u, v in Ext^1 with u(i)=1, u(j)=0, v(i)=0, v(j)=1."""
    if res.ranks[1] != 2:
        raise ValueError("expected two degree-1 generators")
    basis = ext_basis(res, 1)
    h = [hom_identification(res, b) for b in basis]
    m = Matrix.from_rows(res.field, [[h[t][first] for t in range(2)], [h[t][second] for t in range(2)]])
    u = solve(m, Matrix.column(res.field, [1, 0]))
    v = solve(m, Matrix.column(res.field, [0, 1]))
    if u is None or v is None:
        raise AssertionError("degree-1 classes do not separate i and j")
    return (
        CohomClass(1, tuple(int(x) for x in u.a[:, 0]), res.field),
        CohomClass(1, tuple(int(x) for x in v.a[:, 0]), res.field),
    )


def named_classes(res: FreeResolution) -> dict[str, CohomClass]:
    """u, v, alpha1 = u + w^2 v, alpha1^2 = u + w v, and the periodicity class w (dual of P_4's generator)."""
    F = res.field
    u, v = generators_uv(res)
    out = {"u": u, "v": v}
    if F.degree == 2:
        out["alpha1"] = u + v.scale(3)
        out["alpha1_sq"] = u + v.scale(2)
    if res.length >= 4 and res.ranks[4] == 1:
        out["w"] = CohomClass(4, (1,), F)
    return out


def express(c: CohomClass, basis: dict[str, CohomClass]) -> dict[str, int] | None:
    """Coefficients of c in the named classes (all of c's degree), or None."""
    names = [n for n, b in basis.items() if b.degree == c.degree]
    if not names:
        return None if not c.is_zero() else {}
    m = hstack([basis[n].column() for n in names])
    x = solve(m, c.column())
    if x is None:
        return None
    return {n: int(x.a[t, 0]) for t, n in enumerate(names)}


# ---------------------------------------------------------------------------
# Massey products


def _compose_levels(a_maps: list[Matrix], b_maps: list[Matrix], p: int, levels: int) -> list[Matrix]:
    """(A∘B)_n = A_n ∘ B_(n+p)."""
    return [a_maps[n] @ b_maps[n + p] for n in range(levels + 1)]


def nullhomotopy(
    res: FreeResolution,
    composite: list[Matrix],
    degree: int,
    levels: int,
    start: Matrix | None = None,
) -> list[Matrix]:
    """U with composite_n = d_(n+1) U_(n+1) + U_n d_(n+degree+1), U_n: P_(n+degree) -> P_n.

    ``degree`` is the degree of U (one less than the composite's).  U_0 is
    zero unless ``start`` is given; higher levels are solved generator by
    generator with the deterministic solver.
    """
    F = res.field
    if start is None:
        start = Matrix.zeros(F, res.dim(0), res.dim(degree))
    maps = [start]
    for n in range(levels):
        rhs = composite[n] + maps[n] @ res.differentials[n + degree + 1]
        images = []
        src = n + degree + 1
        for t in range(res.ranks[src]):
            col = rhs[:, [res.generator_column(src, t)]]
            x = solve(res.differentials[n + 1], col)
            if x is None:
                raise MasseyUndefinedError("product is not null-homotopic: the Massey product is not defined")
            images.append(x.a[:, 0])
        maps.append(res.free_map(n + 1, images))
    return maps


@dataclass
class MasseyResult:
    representative: CohomClass
    indeterminacy: Matrix  # columns span the indeterminacy subspace of Ext^degree
    degree: int
    homotopies: tuple[list[Matrix], list[Matrix]] = field(repr=False, default=None)

    def contains(self, c: CohomClass) -> bool:
        diff = (c - self.representative).column()
        if self.indeterminacy.cols == 0:
            return diff.is_zero()
        return solve(self.indeterminacy, diff) is not None

    def indeterminacy_classes(self) -> list[CohomClass]:
        return [
            CohomClass(self.degree, tuple(int(x) for x in self.indeterminacy.a[:, t]), self.representative.field)
            for t in range(self.indeterminacy.cols)
        ]


def _class_level0(res: FreeResolution, c: CohomClass) -> Matrix:
    return lift_chain_map(res, c, 0)[0]


def massey_triple(
    res: FreeResolution,
    a: CohomClass,
    b: CohomClass,
    c: CohomClass,
    shift_u: CohomClass | None = None,
    shift_v: CohomClass | None = None,
    check_levels: int = 2,
) -> MasseyResult:
    """<a, b, c> via nullhomotopies U of A∘B and V of B∘C: rep = epsilon(U∘C + A∘V).

    ``shift_u`` / ``shift_v`` (classes of degree p+q-1 / q+r-1) re-choose the
    nullhomotopies by adding lifted cycles at level 0; the representative then
    moves by shift_u·c + a·shift_v, inside the indeterminacy.
    """
    p, q, r = a.degree, b.degree, c.degree
    total = p + q + r - 1
    _need(res, total + check_levels + 1)
    if not cup(res, a, b).is_zero() or not cup(res, b, c).is_zero():
        raise MasseyUndefinedError("Massey product not defined: a·b or b·c is nonzero")
    levels_u = max(check_levels, 0)
    levels_v = max(p, check_levels)
    A = lift_chain_map(res, a, levels_v)
    B = lift_chain_map(res, b, max(levels_u + p, levels_v) + r)
    C = lift_chain_map(res, c, max(p + q - 1, levels_v + q))
    AB = _compose_levels(A, B, p, levels_u)
    BC = _compose_levels(B, C, q, levels_v)
    u0 = _class_level0(res, shift_u) if shift_u is not None else None
    v0 = _class_level0(res, shift_v) if shift_v is not None else None
    U = nullhomotopy(res, AB, p + q - 1, levels_u, u0)
    V = nullhomotopy(res, BC, q + r - 1, levels_v, v0)
    level0 = U[0] @ C[p + q - 1] + A[0] @ V[p]
    rep = _evaluate_cochain(res, level0, total)
    spans = [cup(res, a, e).column() for e in ext_basis(res, q + r - 1)]
    spans += [cup(res, e, c).column() for e in ext_basis(res, p + q - 1)]
    ind = column_space(hstack(spans, res.field, res.ranks[total]))
    return MasseyResult(rep, ind, total, (U, V))
