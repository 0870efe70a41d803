"""Direct-sum decomposition and isomorphism testing.

Decomposition splits a module with the Fitting decomposition of f(φ) for
endomorphisms φ drawn from a per-call seeded generator and small irreducible
polynomials f.  A module is declared indecomposable only with a certificate:
either End(M) = k·1 + N with N a nilpotent ideal, or (for small End) an
exhaustive search that finds no nontrivial idempotent.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from ..exactla import Matrix, column_space, hstack, inverse, is_invertible, kernel, rank
from ..ffield import FiniteField
from .module import GModule, hom_space, is_intertwiner, submodule
from .structure import strip_free

__all__ = [
    "Summand",
    "endomorphism_basis",
    "local_certificate",
    "decompose",
    "is_indecomposable",
    "module_iso",
    "stable_iso",
    "stable_iso_witness",
]

EXHAUSTIVE_LIMIT = 4096


@dataclass
class Summand:
    module: GModule
    basis: Matrix  # columns: the summand's basis in the ambient coordinates


def endomorphism_basis(m: GModule) -> list[Matrix]:
    return hom_space(m, m)


def _is_nilpotent(a: Matrix) -> bool:
    p = a
    for _ in range(max(1, a.rows.bit_length())):
        p = p @ p
    return p.is_zero()


def local_certificate(m: GModule, basis: list[Matrix] | None = None) -> bool:
    """True if End(m) = k·1 + N with N a nilpotent two-sided ideal (hence local)."""
    F = m.field
    basis = endomorphism_basis(m) if basis is None else basis
    eye = m.identity_matrix()
    shifted = []
    for e in basis:
        for lam in range(F.order):
            c = e + eye.scale(lam)
            if _is_nilpotent(c):
                shifted.append(c)
                break
        else:
            return False
    if not shifted:
        return True
    n_space = _span(shifted)
    if n_space.cols != len(basis) - 1:
        return False
    # powers of the subspace N must reach zero
    power = n_space
    for _ in range(m.dim + 1):
        prods = [_vec(a @ b) for a in _unvec_all(n_space, m.dim) for b in _unvec_all(power, m.dim)]
        power = _span_vecs(prods, m.field, m.dim)
        if power.cols == 0:
            return True
    return False


def _vec(a: Matrix) -> Matrix:
    return Matrix(a.field, a.a.reshape(-1, 1))


def _span(mats: list[Matrix]) -> Matrix:
    return _span_vecs([_vec(a) for a in mats], mats[0].field, mats[0].rows)


def _span_vecs(vecs: list[Matrix], field: FiniteField, dim: int) -> Matrix:
    if not vecs:
        return Matrix.zeros(field, dim * dim, 0)
    return column_space(hstack(vecs))


def _unvec_all(space: Matrix, dim: int) -> list[Matrix]:
    return [Matrix(space.field, space.a[:, t].reshape(dim, dim)) for t in range(space.cols)]


def _poly_eval(coeffs: tuple[int, ...], a: Matrix) -> Matrix:
    """coeffs[0] + coeffs[1] a + ... (Horner)."""
    out = Matrix.zeros(a.field, a.rows, a.cols)
    eye = Matrix.identity(a.field, a.rows)
    for c in reversed(coeffs):
        out = out @ a + eye.scale(c)
    return out


def _monic_polys(field: FiniteField, degree: int):
    for tail in itertools.product(range(field.order), repeat=degree):
        yield tuple(tail) + (1,)


def _fitting_split(m: GModule, phi: Matrix, max_degree: int = 2):
    d = m.dim
    for deg in range(1, max_degree + 1):
        for f in _monic_polys(m.field, deg):
            a = _poly_eval(f, phi)
            ad = a ** d
            k = kernel(ad)
            if 0 < k.cols < d:
                return column_space(ad), k
    return None


def _idempotent_search(m: GModule, basis: list[Matrix]):
    F = m.field
    for coeffs in itertools.product(range(F.order), repeat=len(basis)):
        e = Matrix.zeros(F, m.dim, m.dim)
        for c, b in zip(coeffs, basis):
            if c:
                e = e + b.scale(c)
        if e.is_zero() or e.is_identity():
            continue
        if e @ e == e:
            return column_space(e), kernel(e)
    return None


def _split(m: GModule, rng: np.random.Generator, attempts: int = 24):
    basis = endomorphism_basis(m)
    if len(basis) <= 1 or local_certificate(m, basis):
        return None
    F = m.field
    for _ in range(attempts):
        coeffs = rng.integers(0, F.order, size=len(basis))
        phi = Matrix.zeros(F, m.dim, m.dim)
        for c, b in zip(coeffs, basis):
            phi = phi + b.scale(int(c))
        parts = _fitting_split(m, phi)
        if parts is not None:
            return parts
    if F.order ** len(basis) <= EXHAUSTIVE_LIMIT:
        return _idempotent_search(m, basis)
    raise RuntimeError(f"could not decide decomposability of a {m.dim}-dimensional module")


def decompose(m: GModule, seed: int = 0) -> list[Summand]:
    """Krull–Schmidt decomposition into indecomposable summands."""
    if m.dim == 0:
        return []
    rng = np.random.default_rng(seed)
    out: list[Summand] = []
    stack = [Summand(m, m.identity_matrix())]
    while stack:
        s = stack.pop()
        parts = _split(s.module, rng)
        if parts is None:
            out.append(s)
            continue
        for b in parts:
            sub = submodule(s.module, b)
            stack.append(Summand(sub, s.basis @ b))
    out.sort(key=lambda s: s.module.dim)
    return out


def is_indecomposable(m: GModule, seed: int = 0) -> bool:
    return m.dim > 0 and len(decompose(m, seed)) == 1


def _iso_indecomposable(m: GModule, n: GModule) -> Matrix | None:
    # For indecomposable m, n some Hom basis element is invertible iff m ≅ n.
    if m.dim != n.dim:
        return None
    for f in hom_space(m, n):
        if is_invertible(f):
            return f
    return None


def module_iso(m: GModule, n: GModule, seed: int = 0) -> Matrix | None:
    """An invertible intertwiner ``f`` with f·rho_m(g) = rho_n(g)·f, or None."""
    if m.field != n.field or m.group != n.group:
        raise ValueError("modules over different fields or groups")
    if m.dim != n.dim:
        return None
    if m.dim == 0:
        return Matrix.zeros(m.field, 0, 0)
    direct = _iso_indecomposable(m, n)
    if direct is not None:
        return direct
    ms, ns = decompose(m, seed), decompose(n, seed)
    if len(ms) != len(ns):
        return None
    if len(ms) == 1:
        return None
    used = [False] * len(ns)
    pieces = []
    for a in ms:
        for j, b in enumerate(ns):
            if used[j]:
                continue
            f = _iso_indecomposable(a.module, b.module)
            if f is not None:
                used[j] = True
                pieces.append((a, b, f))
                break
        else:
            return None
    src = inverse(hstack([a.basis for a, _, _ in pieces]))
    w = Matrix.zeros(m.field, n.dim, m.dim)
    row = 0
    for a, b, f in pieces:
        proj = src[row : row + a.module.dim, :]
        row += a.module.dim
        w = w + b.basis @ f @ proj
    if not (is_invertible(w) and is_intertwiner(m, n, w)):
        raise AssertionError("assembled isomorphism failed verification")
    return w


def stable_iso_witness(m: GModule, n: GModule, seed: int = 0):
    """Strip free summands from both sides; return (split_m, split_n, witness or None)."""
    sm, sn = strip_free(m), strip_free(n)
    return sm, sn, module_iso(sm.remainder, sn.remainder, seed)


def stable_iso(m: GModule, n: GModule, seed: int = 0) -> bool:
    return stable_iso_witness(m, n, seed)[2] is not None
