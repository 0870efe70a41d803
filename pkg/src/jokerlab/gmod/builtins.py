"""Named modules over F4[Q8].

Group algebra elements X = w i + w^2 j + k and Y = w^2 i + w j + k generate
the augmentation ideal; the ideals and quotients below are built from them
inside the regular module.
"""

from __future__ import annotations

from functools import lru_cache

from ..exactla import Matrix, column_space, hstack
from ..ffield import F4
from ..groups import make_q8
from .algebra import GroupAlgebraElement
from .module import GModule, direct_sum, from_right_action, module_from_action, quotient_module, regular_module, submodule, trivial_module
from .structure import syzygy

__all__ = [
    "BUILTIN_NAMES",
    "builtin",
    "element_X",
    "element_Y",
    "word",
    "BASIS_WORDS",
    "left_ideal",
    "W3_MATRICES",
]

Q8 = make_q8()

# action on w1, w2, w3 (columns are images of basis vectors)
W3_MATRICES = {
    "i": [[1, 0, 0], [1, 1, 0], [0, 1, 1]],
    "j": [[1, 0, 0], ["w", 1, 0], [0, "w2", 1]],
}

BASIS_WORDS = ("1", "X", "Y", "YX", "XY", "XYX", "YXY", "XYXY")


def element_X() -> GroupAlgebraElement:
    return GroupAlgebraElement.from_terms(F4, Q8, {"i": "w", "j": "w2", "k": "1"})


def element_Y() -> GroupAlgebraElement:
    return GroupAlgebraElement.from_terms(F4, Q8, {"i": "w2", "j": "w", "k": "1"})


def word(text: str) -> GroupAlgebraElement:
    """A word in X and Y such as 'XYX' ('1' is the unit)."""
    out = GroupAlgebraElement.one(F4, Q8)
    for ch in text if text != "1" else "":
        if ch == "X":
            out = out * element_X()
        elif ch == "Y":
            out = out * element_Y()
        else:
            raise ValueError(f"words use the letters X and Y, got {text!r}")
    return out


def left_ideal(a: GroupAlgebraElement) -> Matrix:
    """Basis (regular-module coordinates) of k[G]·a."""
    reg = regular_module(a.field, a.group)
    return column_space(hstack([r @ a.column() for r in reg.rho]))


def _span_words(words) -> Matrix:
    return hstack([word(w).column() for w in words])


def _w3() -> GModule:
    return module_from_action(F4, Q8, W3_MATRICES, "W3")


def _ideal_module(gen: str, name: str) -> GModule:
    reg = regular_module(F4, Q8)
    return submodule(reg, left_ideal(word(gen)), name)


def _quotient(gen: str, reps: tuple[str, ...], name: str) -> GModule:
    reg = regular_module(F4, Q8)
    q, _ = quotient_module(reg, left_ideal(word(gen)), _span_words(reps), name)
    return q


def _coaction_module(key: str, name: str) -> GModule:
    from ..morava import builtin_coaction, coaction_action, complete_coaction

    spec = builtin_coaction(key)
    if spec.unknown_slots():
        mats = complete_coaction(spec)[0].matrices
    else:
        mats = coaction_action(spec)
    return from_right_action(F4, Q8, {"i": mats["i"], "j": mats["j"]}, name, via="transpose")


_BUILDERS = {
    "k": lambda: trivial_module(F4, Q8),
    "regular": lambda: regular_module(F4, Q8),
    "W3": _w3,
    "W5": lambda: _rename(syzygy(_w3()), "W5"),
    # cyclic quotients k[Q8]/k[Q8]X and k[Q8]/k[Q8]Y with representatives 1, Y, XY and 1, X, YX
    "Mprime": lambda: _quotient("X", ("1", "Y", "XY"), "M'"),
    "Mdoubleprime": lambda: _quotient("Y", ("1", "X", "YX"), "M''"),
    "Lprime": lambda: _ideal_module("XY", "L'"),
    "Ldoubleprime": lambda: _ideal_module("YX", "L''"),
    "Jprime": lambda: _quotient("XY", ("1", "X", "Y", "YX", "XYX"), "J'"),
    "Jdoubleprime": lambda: _quotient("YX", ("1", "X", "Y", "XY", "YXY"), "J''"),
    # left modules from the evaluated coactions (adjoint of the right action)
    "cone_eta": lambda: _coaction_module("cone_eta", "cone_eta"),
    "cone_nu": lambda: _coaction_module("cone_nu", "cone_nu"),
    "nu_eta": lambda: _coaction_module("nu_eta", "nu_eta"),
    "sigma_nu": lambda: _coaction_module("sigma_nu", "sigma_nu"),
}

BUILTIN_NAMES = tuple(_BUILDERS)


def _rename(m: GModule, name: str) -> GModule:
    m.name = name
    return m


@lru_cache(maxsize=None)
def builtin(name: str) -> GModule:
    try:
        build = _BUILDERS[name]
    except KeyError:
        raise KeyError(f"unknown module {name!r}; expected one of: {', '.join(BUILTIN_NAMES)}") from None
    return build()
