"""Truncated 2-adic arithmetic for the height-2 maximal order.

* ``Z4Element``: (Z/2^m)[w]/(w^2 + w + 1), the Witt vectors of F4 mod 2^m.
* ``O2Element``: x + yS with x, y in Z4, S^2 = 2 and S z = sigma(z) S, where
  sigma(a + b w) = (a - b) - b w lifts Frobenius.  Working mod 2^m in both
  coordinates is working mod S^(2m).
* Teichmüller digits: every unit is sum_r a_r S^r with a_r in {0, 1, w, w^2}
  (digits on the left of the powers of S).
* Coaction evaluation: a coaction psi(x_c) = sum alpha-monomial ⊗ x_r is
  evaluated at a group element g to give the matrix whose column c lists the
  coefficients of psi(x_c).  These matrices form a *right* action:
  M(gh) = M(h) M(g).
"""

from __future__ import annotations

import itertools
import json
import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .exactla import Matrix, is_invertible
from .ffield import F4, FieldElement

__all__ = [
    "DEFAULT_PRECISION",
    "Z4Element",
    "O2Element",
    "hensel_sqrt",
    "q8_embed",
    "q8_elements",
    "teichmuller_lift",
    "teichmuller_digits",
    "reconstruct",
    "alpha_eval",
    "Term",
    "CoactionSpec",
    "CoactionSpecError",
    "parse_coaction_spec",
    "coaction_matrix",
    "coaction_action",
    "complete_coaction",
    "action_violations",
    "Completion",
    "BUILTIN_COACTIONS",
    "builtin_coaction",
]

DEFAULT_PRECISION = 8


# ---------------------------------------------------------------------------
# Z4 = W(F4) mod 2^m


@dataclass(frozen=True)
class Z4Element:
    """a + b w modulo 2^m."""

    a: int
    b: int
    m: int = DEFAULT_PRECISION

    def __post_init__(self):
        mod = 1 << self.m
        object.__setattr__(self, "a", self.a % mod)
        object.__setattr__(self, "b", self.b % mod)

    @classmethod
    def of(cls, x, m: int = DEFAULT_PRECISION) -> Z4Element:
        if isinstance(x, Z4Element):
            return x
        return cls(int(x), 0, m)

    @classmethod
    def omega(cls, m: int = DEFAULT_PRECISION) -> Z4Element:
        return cls(0, 1, m)

    def _coerce(self, other) -> Z4Element:
        if isinstance(other, Z4Element):
            if other.m != self.m:
                raise ValueError("mixed precisions")
            return other
        if isinstance(other, int):
            return Z4Element(other, 0, self.m)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Z4Element(self.a + o.a, self.b + o.b, self.m)

    __radd__ = __add__

    def __neg__(self):
        return Z4Element(-self.a, -self.b, self.m)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        # w^2 = -1 - w
        a, b, c, d = self.a, self.b, o.a, o.b
        return Z4Element(a * c - b * d, a * d + b * c - b * d, self.m)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> Z4Element:
        if n < 0:
            return self.inverse() ** (-n)
        out, base = Z4Element(1, 0, self.m), self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def sigma(self) -> Z4Element:
        """Frobenius lift: w -> w^2 = -1 - w."""
        return Z4Element(self.a - self.b, -self.b, self.m)

    def norm(self) -> int:
        return (self.a * self.a - self.a * self.b + self.b * self.b) % (1 << self.m)

    def is_unit(self) -> bool:
        return self.norm() % 2 == 1

    def inverse(self) -> Z4Element:
        n = self.norm()
        if n % 2 == 0:
            raise ZeroDivisionError("not a unit in Z4")
        ninv = pow(n, -1, 1 << self.m)
        return self.sigma() * ninv

    def residue(self) -> FieldElement:
        return FieldElement(F4, (self.a & 1) | ((self.b & 1) << 1))

    def valuation(self) -> int:
        """2-adic valuation (m when zero at this precision)."""
        v = 0
        a, b = self.a, self.b
        while v < self.m and a % 2 == 0 and b % 2 == 0:
            a //= 2
            b //= 2
            v += 1
        return v

    def __str__(self) -> str:
        if self.b == 0:
            return str(self.a)
        return f"{self.a}+{self.b}w"


def teichmuller_lift(x: FieldElement, m: int = DEFAULT_PRECISION) -> Z4Element:
    """The unique lift t of x with t^4 = t: one of 0, 1, w, -1-w."""
    return {0: Z4Element(0, 0, m), 1: Z4Element(1, 0, m), 2: Z4Element(0, 1, m), 3: Z4Element(-1, -1, m)}[x.value]


def hensel_sqrt(target: int = -7, m: int = DEFAULT_PRECISION, seed: int = 5) -> int:
    """The 2-adic square root of ``target`` congruent to ``seed`` mod 8, reduced mod 2^m.

    Lifts one bit at a time: if s^2 = target mod 2^k then s or s + 2^(k-1)
    squares to target mod 2^(k+1); the 2-adic root is fixed mod 2^(k-1), so
    computing two extra bits makes the returned residue the true truncation.
    """
    if m < 3:
        raise ValueError("precision must be at least 3")
    if (seed * seed - target) % 8:
        raise ValueError("seed is not a square root mod 8")
    s = seed % 8
    for k in range(3, m + 2):
        mod = 1 << (k + 1)
        if (s * s - target) % mod:
            s += 1 << (k - 1)
        if (s * s - target) % mod:
            raise AssertionError("Hensel step failed")
    return s % (1 << m)


# ---------------------------------------------------------------------------
# O2 = Z4<S>/(S^2 - 2)


@dataclass(frozen=True)
class O2Element:
    """x + y S with x, y in Z4 mod 2^m (so the element is known mod S^(2m))."""

    x: Z4Element
    y: Z4Element

    @property
    def m(self) -> int:
        return self.x.m

    @classmethod
    def of(cls, x, m: int = DEFAULT_PRECISION) -> O2Element:
        if isinstance(x, O2Element):
            return x
        return cls(Z4Element.of(x, m), Z4Element(0, 0, m))

    @classmethod
    def S(cls, m: int = DEFAULT_PRECISION) -> O2Element:
        return cls(Z4Element(0, 0, m), Z4Element(1, 0, m))

    def _coerce(self, other) -> O2Element:
        if isinstance(other, O2Element):
            return other
        if isinstance(other, (int, Z4Element)):
            return O2Element(Z4Element.of(other, self.m), Z4Element(0, 0, self.m))
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return O2Element(self.x + o.x, self.y + o.y)

    __radd__ = __add__

    def __neg__(self):
        return O2Element(-self.x, -self.y)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        # (x + yS)(z + wS) = (xz + 2 y sigma(w)) + (xw + y sigma(z)) S
        x, y, z, w = self.x, self.y, o.x, o.y
        return O2Element(x * z + y * w.sigma() * 2, x * w + y * z.sigma())

    def __rmul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self

    def __pow__(self, n: int) -> O2Element:
        if n < 0:
            return self.inverse() ** (-n)
        out, base = O2Element.of(1, self.m), self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def is_unit(self) -> bool:
        return self.x.is_unit()

    def inverse(self) -> O2Element:
        """Newton iteration t <- t(2 - g t) from the inverse of the residue."""
        if not self.is_unit():
            raise ZeroDivisionError("not a unit in O2")
        t = O2Element(self.x.inverse(), Z4Element(0, 0, self.m))
        for _ in range(2 * self.m + 2):
            t = t * (O2Element.of(2, self.m) - self * t)
        if self * t != O2Element.of(1, self.m):
            raise AssertionError("inverse did not converge")
        return t

    def residue(self) -> FieldElement:
        return self.x.residue()

    def is_zero_mod_S(self, n: int) -> bool:
        """True if the element lies in S^n O2."""
        return 2 * self.x.valuation() >= n and 2 * self.y.valuation() + 1 >= n

    def __eq__(self, other) -> bool:
        return isinstance(other, O2Element) and self.x == other.x and self.y == other.y

    def __hash__(self) -> int:
        return hash((self.x, self.y))

    def __str__(self) -> str:
        return f"({self.x}) + ({self.y})S"


@lru_cache(maxsize=None)
def q8_embed(m: int = DEFAULT_PRECISION) -> tuple[O2Element, O2Element, O2Element]:
    """i, j, k as (1/3)(1 + 2w^2)(1 - a c S) with c = 1, w^2, w and a = (1 - 2w)/sqrt(-7)."""
    s = hensel_sqrt(-7, m)
    w = Z4Element.omega(m)
    one = Z4Element(1, 0, m)
    a = (one - w * 2) * pow(s, -1, 1 << m)
    third = pow(3, -1, 1 << m)
    front = O2Element.of((one + (w * w) * 2) * third, m)
    S = O2Element.S(m)
    out = []
    for c in (one, w * w, w):
        out.append(front * (O2Element.of(1, m) - O2Element.of(a * c, m) * S))
    return tuple(out)  # type: ignore[return-value]


@lru_cache(maxsize=None)
def q8_elements(m: int = DEFAULT_PRECISION) -> dict[str, O2Element]:
    """All eight elements of Q8 in O2, keyed by the names used in ``groups``."""
    i, j, k = q8_embed(m)
    one = O2Element.of(1, m)
    base = {"1": one, "i": i, "j": j, "k": k}
    out = {}
    for name, g in base.items():
        out[name] = g
        out["-1" if name == "1" else "-" + name] = -g
    return out


# ---------------------------------------------------------------------------
# Teichmüller digits


def teichmuller_digits(g: O2Element, n: int) -> list[Z4Element]:
    """Digits a_0..a_(n-1) with g = sum a_r S^r mod S^n (a_r Teichmüller)."""
    if not g.is_unit():
        raise ValueError("digit extraction needs a unit")
    if n > 2 * g.m:
        raise ValueError(f"at most {2 * g.m} digits are determined at precision {g.m}")
    m = g.m
    digits = []
    x, y = g.x, g.y  # raw representatives; low bits stay exact
    xa, xb, ya, yb = x.a, x.b, y.a, y.b
    for _ in range(n):
        t = teichmuller_lift(FieldElement(F4, (xa & 1) | ((xb & 1) << 1)), m)
        digits.append(t)
        # g - t = h S with h = y + ((x - t)/2) S
        da, db = xa - t.a, xb - t.b
        xa, xb, ya, yb = ya, yb, da // 2, db // 2
    return digits


def reconstruct(digits: Sequence[Z4Element], m: int | None = None) -> O2Element:
    m = digits[0].m if m is None else m
    S = O2Element.S(m)
    out = O2Element.of(0, m)
    power = O2Element.of(1, m)
    for d in digits:
        out = out + O2Element.of(d, m) * power
        power = power * S
    return out


def alpha_eval(k: int, g: O2Element) -> FieldElement:
    """alpha_k(g): residue of the k-th Teichmüller digit."""
    return teichmuller_digits(g, k + 1)[k].residue()


# ---------------------------------------------------------------------------
# coaction specifications


class CoactionSpecError(ValueError):
    pass


@dataclass(frozen=True)
class Term:
    """coeff · prod alpha_k^alpha[k] · u^u ⊗ target; ``coeff`` None marks an unknown slot."""

    alpha: tuple[int, ...]
    target: str
    u: int = 0
    coeff: int | None = 1

    def monomial_text(self) -> str:
        parts = []
        for k, e in enumerate(self.alpha):
            if e == 1:
                parts.append(f"a{k}")
            elif e:
                parts.append(f"a{k}^{e}")
        return " ".join(parts) or "1"

    def evaluate(self, digits: Sequence[FieldElement], coeff: int | None = None) -> FieldElement:
        c = self.coeff if coeff is None else coeff
        if c is None:
            raise CoactionSpecError("unknown coefficient must be assigned before evaluation")
        out = FieldElement(F4, c)
        for k, e in enumerate(self.alpha):
            if e:
                out = out * digits[k] ** e
        return out


@dataclass(frozen=True)
class CoactionSpec:
    names: tuple[str, ...]
    degrees: tuple[int, ...]
    coaction: tuple[tuple[Term, ...], ...]  # per source, in basis order
    label: str = ""

    def __post_init__(self):
        if len(set(self.names)) != len(self.names):
            raise CoactionSpecError("duplicate basis names")
        pos = {n: t for t, n in enumerate(self.names)}
        if len(self.coaction) != len(self.names):
            raise CoactionSpecError("one coaction entry per basis element is required")
        for c, terms in enumerate(self.coaction):
            for term in terms:
                if term.target not in pos:
                    raise CoactionSpecError(f"unknown target {term.target!r}")
                if pos[term.target] > c:
                    raise CoactionSpecError(
                        f"coaction of {self.names[c]} reaches {term.target}: basis must be triangular"
                    )
                if any(e < 0 for e in term.alpha):
                    raise CoactionSpecError("negative alpha exponent")

    @property
    def dim(self) -> int:
        return len(self.names)

    def max_alpha(self) -> int:
        return max((len(t.alpha) for terms in self.coaction for t in terms), default=1)

    def unknown_slots(self) -> list[tuple[int, int]]:
        return [(c, n) for c, terms in enumerate(self.coaction) for n, t in enumerate(terms) if t.coeff is None]

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "basis": [{"name": n, "degree": d} for n, d in zip(self.names, self.degrees)],
            "coaction": [
                {
                    "source": self.names[c],
                    "terms": [
                        {
                            "alpha": t.monomial_text(),
                            "u": t.u,
                            "target": t.target,
                            **({"coeff": "*"} if t.coeff is None else {"coeff": F4.format(t.coeff)}),
                        }
                        for t in terms
                    ],
                }
                for c, terms in enumerate(self.coaction)
            ],
        }


_ALPHA = re.compile(r"^(?:a|alpha)(\d+)(?:\^(\d+))?$")


def _parse_monomial(text) -> tuple[tuple[int, ...], int]:
    """'w a0^2 a1' -> ((2, 1), code of w); exponent lists are also accepted."""
    if isinstance(text, (list, tuple)):
        return tuple(int(e) for e in text), 1
    exps: dict[int, int] = {}
    coeff = 1
    for tok in str(text).replace("*", " ").split():
        mt = _ALPHA.match(tok)
        if mt:
            k = int(mt.group(1))
            exps[k] = exps.get(k, 0) + int(mt.group(2) or 1)
            continue
        try:
            coeff = F4.mul(coeff, F4.parse(tok))
        except ValueError:
            raise CoactionSpecError(f"cannot parse monomial token {tok!r}") from None
    n = max(exps, default=-1) + 1
    return tuple(exps.get(k, 0) for k in range(n)), coeff


def parse_coaction_spec(data, label: str = "") -> CoactionSpec:
    """Read the JSON form: {"basis": [...], "coaction": [{"source", "terms"}]} or a bare list.

    A bare list gives basis names in order of appearance with degree 0.
    Each term is {"alpha": monomial, "u": power, "target": name, "coeff": scalar or "*"}.
    """
    if isinstance(data, str):
        data = json.loads(data)
    if isinstance(data, list):
        entries = data
        basis = [{"name": e["source"], "degree": e.get("degree", 0)} for e in entries]
    elif isinstance(data, dict):
        entries = data.get("coaction")
        basis = data.get("basis")
        label = data.get("label", label)
        if entries is None or basis is None:
            raise CoactionSpecError("spec needs 'basis' and 'coaction'")
    else:
        raise CoactionSpecError("spec must be a JSON object or list")
    try:
        names = tuple(b["name"] if isinstance(b, dict) else str(b) for b in basis)
        degrees = tuple(int(b.get("degree", 0)) if isinstance(b, dict) else 0 for b in basis)
        by_source = {}
        for e in entries:
            terms = []
            for t in e.get("terms", []):
                alpha, c = _parse_monomial(t.get("alpha", "1"))
                raw = t.get("coeff")
                if raw == "*":
                    coeff = None
                elif raw is None:
                    coeff = c
                else:
                    coeff = F4.mul(c, F4.parse(str(raw)))
                terms.append(Term(alpha, t["target"], int(t.get("u", 0)), coeff))
            if e["source"] in by_source:
                raise CoactionSpecError(f"duplicate source {e['source']!r}")
            by_source[e["source"]] = tuple(terms)
    except (KeyError, TypeError) as exc:
        raise CoactionSpecError(f"malformed spec: {exc}") from None
    missing = [n for n in names if n not in by_source]
    if missing or len(by_source) != len(names):
        raise CoactionSpecError(f"sources and basis disagree (missing: {missing})")
    return CoactionSpec(names, degrees, tuple(by_source[n] for n in names), label)


def _digits(g: O2Element, count: int) -> list[FieldElement]:
    return [d.residue() for d in teichmuller_digits(g, count)]


def coaction_matrix(
    spec: CoactionSpec,
    g: O2Element,
    convention: str = "right",
    assignment: Mapping[tuple[int, int], int] | None = None,
) -> Matrix:
    """Evaluate the coaction at g: column c holds the coefficients of psi(x_c).

    ``convention="right"`` returns these right-action matrices;
    ``convention="left"`` returns their transposes (the adjoint action on
    the dual basis, a left action).
    """
    if convention not in ("right", "left"):
        raise ValueError("convention must be 'right' or 'left'")
    digits = _digits(g, max(spec.max_alpha(), 1))
    pos = {n: t for t, n in enumerate(spec.names)}
    out = [[0] * spec.dim for _ in range(spec.dim)]
    for c, terms in enumerate(spec.coaction):
        for s, term in enumerate(terms):
            coeff = None
            if term.coeff is None:
                if assignment is None or (c, s) not in assignment:
                    raise CoactionSpecError("spec has unknown coefficients; use complete_coaction")
                coeff = assignment[(c, s)]
            r = pos[term.target]
            out[r][c] ^= term.evaluate(digits, coeff).value
    mat = Matrix.from_rows(F4, out)
    return mat.T if convention == "left" else mat


def coaction_action(
    spec: CoactionSpec,
    m: int = DEFAULT_PRECISION,
    convention: str = "right",
    assignment: Mapping[tuple[int, int], int] | None = None,
) -> dict[str, Matrix]:
    """Matrices for all eight elements of Q8."""
    return {name: coaction_matrix(spec, g, convention, assignment) for name, g in q8_elements(m).items()}


def action_violations(mats: Mapping[str, Matrix], convention: str = "right") -> list[str]:
    """Pairs (g, h) where the matrices fail the action law for the convention."""
    from .groups import make_q8

    q8 = make_q8()
    bad = []
    for a in q8.names:
        for b in q8.names:
            ab = q8.names[q8.mul(q8.index(a), q8.index(b))]
            lhs = mats[b] @ mats[a] if convention == "right" else mats[a] @ mats[b]
            if lhs != mats[ab]:
                bad.append(f"{a}*{b}")
    return bad


@dataclass
class Completion:
    assignment: dict[tuple[int, int], int]
    spec: CoactionSpec
    matrices: dict[str, Matrix]
    center_trivial: bool

    def describe(self) -> str:
        parts = []
        for (c, s), v in sorted(self.assignment.items()):
            t = self.spec.coaction[c][s]
            parts.append(f"{F4.format(v)}·{t.monomial_text()}⊗{t.target} in ψ({self.spec.names[c]})")
        return ", ".join(parts) or "(no unknowns)"


def complete_coaction(spec: CoactionSpec, m: int = DEFAULT_PRECISION) -> list[Completion]:
    """All F4 assignments of the unknown slots that give a right Q8-action.

    Returns the completions sorted by assignment; an empty list means the
    known entries already violate the group law.
    """
    slots = spec.unknown_slots()
    out = []
    for values in itertools.product(range(F4.order), repeat=len(slots)):
        assignment = dict(zip(slots, values))
        mats = coaction_action(spec, m, "right", assignment)
        if not all(is_invertible(x) for x in mats.values()):
            continue
        if action_violations(mats, "right"):
            continue
        centre = mats["-1"].is_identity()
        out.append(Completion(assignment, spec, mats, centre))
    return out


# ---------------------------------------------------------------------------
# built-in coactions for the iterated mapping cones


def _t(alpha: str, target: str, u: int = 0, coeff: int | None = 1) -> Term:
    a, c = _parse_monomial(alpha)
    return Term(a, target, u, c if coeff == 1 else coeff)


def _spec(label: str, basis: Sequence[tuple[str, int]], rows: Sequence[Sequence[Term]]) -> CoactionSpec:
    return CoactionSpec(tuple(n for n, _ in basis), tuple(d for _, d in basis), tuple(tuple(r) for r in rows), label)


BUILTIN_COACTIONS: dict[str, CoactionSpec] = {
    "cone_eta": _spec(
        "cone(eta)",
        [("x0", 0), ("x2", 2)],
        [[_t("1", "x0")], [_t("a1", "x0", 1), _t("a0", "x2")]],
    ),
    "cone_nu": _spec(
        "cone(nu)",
        [("y0", 0), ("y4", 4)],
        [[_t("1", "y0")], [_t("a1^2", "y0", 2), _t("a0^2", "y4")]],
    ),
    "nu_eta": _spec(
        "S^0 u_nu e^4 u_eta e^6",
        [("z0", 0), ("z4", 4), ("z6", 6)],
        [
            [_t("1", "z0")],
            [_t("a1^2", "z0", 2), _t("a0^2", "z4")],
            [_t("a2", "z0", 3), _t("a0^2 a1", "z4", 1), _t("1", "z6")],
        ],
    ),
    # mod (2, v1) the x0-coefficient is v2 t1 + t1^4, i.e. alpha1 + alpha1^4
    "cone_sigma": _spec(
        "cone(sigma)",
        [("x0", 0), ("x8", 8)],
        [[_t("1", "x0")], [_t("a1^4", "x0", 4), _t("a1", "x0", 4), _t("a0", "x8")]],
    ),
    # the x0-coefficient of z12 is unknown: an F4-combination of candidate monomials
    "sigma_nu": _spec(
        "S^0 u_sigma e^8 u_nu e^12",
        [("z0", 0), ("z8", 8), ("z12", 12)],
        [
            [_t("1", "z0")],
            [_t("a0", "z8")],
            [
                _t("a1", "z0", 6, None),
                _t("a1^2", "z0", 6, None),
                _t("a2", "z0", 6, None),
                _t("a1^3", "z0", 6, None),
                _t("a1^2", "z8", 2),
                _t("a0^2", "z12"),
            ],
        ],
    ),
}


def builtin_coaction(name: str) -> CoactionSpec:
    try:
        return BUILTIN_COACTIONS[name]
    except KeyError:
        raise KeyError(f"unknown coaction {name!r}; expected one of: {', '.join(sorted(BUILTIN_COACTIONS))}") from None
