"""Finite-dimensional left modules over group algebras k[G].

A module stores one matrix per group element (``rho[g]``), so the
homomorphism law can be checked exhaustively.  Right actions found in the
literature are converted before they reach this module; see
``from_right_action``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from ..exactla import (
    Matrix,
    extend_basis,
    hstack,
    inverse,
    is_invertible,
    kernel,
    kronecker,
    rank,
    solve,
    vstack,
    block_diag,
)
from ..ffield import FiniteField
from ..groups import FiniteGroup, Subgroup

__all__ = [
    "GModule",
    "ModuleMap",
    "InconsistentActionError",
    "module_from_action",
    "from_right_action",
    "trivial_module",
    "regular_module",
    "change_basis",
    "tensor",
    "dual",
    "hom_module",
    "direct_sum",
    "restrict",
    "submodule",
    "quotient_module",
    "hom_space",
    "fixed_points",
    "norm_matrix",
]


class InconsistentActionError(ValueError):
    """Generator matrices violate a relation of the group."""

    def __init__(self, message: str, relation: str):
        super().__init__(message)
        self.relation = relation


class GModule:
    def __init__(
        self,
        field: FiniteField,
        group: FiniteGroup,
        rho: Sequence[Matrix],
        name: str = "",
        check: bool = True,
    ):
        rho = tuple(rho)
        if len(rho) != group.order:
            raise ValueError(f"need {group.order} matrices, got {len(rho)}")
        dim = rho[0].rows
        for r in rho:
            if r.shape != (dim, dim) or r.field != field:
                raise ValueError("action matrices must be square over the module field")
        self.field = field
        self.group = group
        self.rho = rho
        self.dim = dim
        self.name = name
        if check:
            self.check_action()

    def check_action(self) -> None:
        g = self.group
        if not self.rho[g.identity].is_identity():
            raise InconsistentActionError("identity does not act as I", "1 = 1")
        for a in g.elements():
            ra = self.rho[a]
            for b in g.elements():
                if ra @ self.rho[b] != self.rho[g.mul(a, b)]:
                    rel = f"{g.names[a]}*{g.names[b]} = {g.names[g.mul(a, b)]}"
                    raise InconsistentActionError(f"action fails {rel}", rel)

    def act(self, g: int | str) -> Matrix:
        if isinstance(g, str):
            g = self.group.index(g)
        return self.rho[g]

    def generator_matrices(self) -> dict[str, Matrix]:
        return {self.group.names[g]: self.rho[g] for g in self.group.generators}

    def identity_matrix(self) -> Matrix:
        return Matrix.identity(self.field, self.dim)

    def __repr__(self) -> str:
        label = f" {self.name}" if self.name else ""
        return f"GModule({label.strip() or 'M'}: dim {self.dim} over {self.field.name}[{self.group.name}])"


@dataclass(frozen=True)
class ModuleMap:
    source: GModule
    target: GModule
    matrix: Matrix

    def __post_init__(self):
        if self.matrix.shape != (self.target.dim, self.source.dim):
            raise ValueError("map matrix has the wrong shape")
        if not is_intertwiner(self.source, self.target, self.matrix):
            raise ValueError("matrix does not intertwine the two actions")

    def __matmul__(self, other: ModuleMap) -> ModuleMap:
        return ModuleMap(other.source, self.target, self.matrix @ other.matrix)


def is_intertwiner(src: GModule, tgt: GModule, f: Matrix) -> bool:
    return all(f @ src.rho[g] == tgt.rho[g] @ f for g in src.group.elements())


def _same_context(m: GModule, n: GModule) -> None:
    if m.field != n.field or m.group != n.group:
        raise ValueError("modules over different fields or groups")


def _complete(field: FiniteField, group: FiniteGroup, gens: dict[int, Matrix]) -> list[Matrix]:
    """Extend generator matrices along the Cayley graph, reporting clashes."""
    n = group.order
    dim = next(iter(gens.values())).rows
    rho: list[Matrix | None] = [None] * n
    word: list[str] = [""] * n
    rho[group.identity] = Matrix.identity(field, dim)
    word[group.identity] = "1"
    frontier = [group.identity]
    while frontier:
        nxt = []
        for x in frontier:
            for s, ms in gens.items():
                y = group.mul(x, s)
                cand = rho[x] @ ms
                w = group.names[s] if word[x] == "1" else f"{word[x]}*{group.names[s]}"
                if rho[y] is None:
                    rho[y] = cand
                    word[y] = w
                    nxt.append(y)
                elif rho[y] != cand:
                    rel = f"{w} = {word[y]}"
                    raise InconsistentActionError(f"generator matrices violate the relation {rel}", rel)
        frontier = nxt
    if any(r is None for r in rho):
        raise ValueError("the given generators do not generate the group")
    return rho  # type: ignore[return-value]


def module_from_action(
    field: FiniteField,
    group: FiniteGroup,
    generators: Mapping[str, Matrix | Sequence[Sequence]],
    name: str = "",
) -> GModule:
    """Build a module from matrices for a generating set of ``group``."""
    gens: dict[int, Matrix] = {}
    for key, mat in generators.items():
        if not isinstance(mat, Matrix):
            mat = Matrix.from_rows(field, mat)
        if not is_invertible(mat):
            raise InconsistentActionError(f"matrix for {key} is singular", f"{key} invertible")
        gens[group.index(key)] = mat
    dims = {m.rows for m in gens.values()}
    if len(dims) != 1:
        raise ValueError("generator matrices of different sizes")
    rho = _complete(field, group, gens)
    return GModule(field, group, rho, name)


def from_right_action(
    field: FiniteField,
    group: FiniteGroup,
    right_matrices: Mapping[str, Matrix],
    name: str = "",
    via: str = "transpose",
) -> GModule:
    """Left module from right-action matrices R with R(gh) = R(h) R(g).

    ``via="transpose"`` gives g -> R(g)^T (the dual basis, adjoint action);
    ``via="inverse"`` gives g -> R(g^-1) on the same basis.
    """
    if via == "transpose":
        return module_from_action(field, group, {k: m.T for k, m in right_matrices.items()}, name)
    if via == "inverse":
        return module_from_action(field, group, {k: inverse(m) for k, m in right_matrices.items()}, name)
    raise ValueError("via must be 'transpose' or 'inverse'")


def trivial_module(field: FiniteField, group: FiniteGroup, dim: int = 1) -> GModule:
    eye = Matrix.identity(field, dim)
    return GModule(field, group, [eye] * group.order, "k" if dim == 1 else f"k^{dim}", check=False)


def regular_module(field: FiniteField, group: FiniteGroup) -> GModule:
    """k[G] with basis the group elements and g . e_h = e_{gh}."""
    n = group.order
    rho = []
    for g in group.elements():
        a = np.zeros((n, n), dtype=np.uint8)
        a[group.table[g], np.arange(n)] = 1
        rho.append(Matrix(field, a))
    return GModule(field, group, rho, "regular", check=False)


def change_basis(m: GModule, p: Matrix) -> GModule:
    """Conjugate the action: ``p`` sends old coordinates to new coordinates."""
    pinv = inverse(p)
    return GModule(m.field, m.group, [p @ r @ pinv for r in m.rho], m.name, check=False)


def tensor(m: GModule, n: GModule) -> GModule:
    _same_context(m, n)
    return GModule(m.field, m.group, [kronecker(a, b) for a, b in zip(m.rho, n.rho)], f"({m.name}⊗{n.name})", check=False)


def dual(m: GModule) -> GModule:
    g = m.group
    return GModule(m.field, g, [m.rho[g.inv(x)].T for x in g.elements()], f"{m.name}*", check=False)


def hom_module(m: GModule, n: GModule) -> GModule:
    """Hom_k(m, n) = m* ⊗ n with the conjugation action."""
    return tensor(dual(m), n)


def direct_sum(*mods: GModule) -> GModule:
    first = mods[0]
    for x in mods[1:]:
        _same_context(first, x)
    rho = [block_diag([x.rho[g] for x in mods], first.field) for g in first.group.elements()]
    return GModule(first.field, first.group, rho, "⊕".join(x.name for x in mods), check=False)


def restrict(m: GModule, h: Subgroup) -> GModule:
    """Restriction to ``h``, as a module over the standalone group ``h.group``."""
    if h.parent != m.group:
        raise ValueError("not a subgroup of the module's group")
    return GModule(m.field, h.group, [m.rho[x] for x in h.members], f"{m.name}|{h.order}", check=False)


def _action_on(m: GModule, basis: Matrix) -> list[Matrix]:
    out = []
    for r in m.rho:
        x = solve(basis, r @ basis)
        if x is None:
            raise ValueError("subspace is not invariant under the group")
        out.append(x)
    return out


def submodule(m: GModule, basis: Matrix, name: str = "") -> GModule:
    """The submodule spanned by the (independent) columns of ``basis``."""
    if rank(basis) != basis.cols:
        raise ValueError("basis columns are dependent")
    return GModule(m.field, m.group, _action_on(m, basis), name, check=False)


def quotient_module(m: GModule, sub: Matrix, reps: Matrix | None = None, name: str = "") -> tuple[GModule, Matrix]:
    """``m / span(sub)``; returns the quotient and the projection matrix.

    ``reps`` are vectors whose classes form the quotient basis; by default the
    standard basis vectors completing ``sub`` are used.
    """
    F = m.field
    for r in m.rho:
        if solve(sub, r @ sub) is None:
            raise ValueError("subspace is not a submodule")
    if reps is None:
        idx = extend_basis(sub, Matrix.identity(F, m.dim))
        reps = Matrix.identity(F, m.dim)[:, idx]
    full = hstack([reps, sub])
    if rank(full) != m.dim or sub.cols + reps.cols != m.dim:
        raise ValueError("representatives do not complete the submodule to a basis")
    full_inv = inverse(full)
    proj = full_inv[: reps.cols, :]
    rho = [proj @ r @ reps for r in m.rho]
    return GModule(F, m.group, rho, name, check=False), proj


def hom_space(m: GModule, n: GModule) -> list[Matrix]:
    """Basis of Hom_G(m, n) as (n.dim x m.dim) matrices."""
    _same_context(m, n)
    F = m.field
    dm, dn = m.dim, n.dim
    if dm == 0 or dn == 0:
        return []
    eqs = []
    Im, In = Matrix.identity(F, dm), Matrix.identity(F, dn)
    for g in m.group.generators:
        eqs.append(kronecker(n.rho[g], Im) + kronecker(In, m.rho[g].T))
    K = kernel(vstack(eqs))
    return [Matrix(F, K.a[:, t].reshape(dn, dm)) for t in range(K.cols)]


def fixed_points(m: GModule, members: Sequence[int] | None = None) -> Matrix:
    """Basis (as columns) of the vectors fixed by the given elements (default: generators)."""
    gens = m.group.generators if members is None else members
    if not gens:
        return Matrix.identity(m.field, m.dim)
    eye = m.identity_matrix()
    return kernel(vstack([m.rho[g] + eye for g in gens]))


def norm_matrix(m: GModule) -> Matrix:
    out = Matrix.zeros(m.field, m.dim, m.dim)
    for r in m.rho:
        out = out + r
    return out


def element_matrix(m: GModule, coeffs: Mapping[int, int] | Sequence[int]) -> Matrix:
    """Action of the group algebra element sum c_g g (coefficients as codes)."""
    items = coeffs.items() if isinstance(coeffs, Mapping) else enumerate(coeffs)
    out = Matrix.zeros(m.field, m.dim, m.dim)
    for g, c in items:
        if c:
            out = out + m.rho[g].scale(int(c))
    return out
