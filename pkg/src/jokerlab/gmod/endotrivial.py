"""Endotriviality: End_k(M) ≅ k ⊕ (projective).

Two independent tests are provided and compared:

* direct (2-groups): strip the free summands of M* ⊗ M and check that what
  remains is the trivial module;
* detection on elementary abelian subgroups: apply the direct test to the
  restriction of M to every nontrivial elementary abelian 2-subgroup.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..groups import elementary_abelian_subgroups
from .iso import module_iso
from .module import GModule, hom_module, restrict, trivial_module
from .structure import normal_sylow2, strip_free

__all__ = ["EndotrivialReport", "endotrivial_direct", "endotrivial_by_restriction", "endotrivial_report", "endotrivial"]


@dataclass
class EndotrivialReport:
    direct: bool | None
    by_restriction: bool
    free_rank: int | None
    restrictions: dict[str, bool] = field(default_factory=dict)

    @property
    def verdict(self) -> bool:
        return self.by_restriction if self.direct is None else self.direct


def _direct(m: GModule) -> tuple[bool, int]:
    split = strip_free(hom_module(m, m))
    rem = split.remainder
    ok = rem.dim == 1 and module_iso(rem, trivial_module(m.field, m.group)) is not None
    return ok, split.rank


def endotrivial_direct(m: GModule) -> bool:
    """Direct test over a 2-group."""
    return _direct(m)[0]


def endotrivial_by_restriction(m: GModule) -> tuple[bool, dict[str, bool]]:
    """Restrict to each nontrivial elementary abelian 2-subgroup and test there."""
    results: dict[str, bool] = {}
    for e in elementary_abelian_subgroups(m.group, 2):
        if e.order == 1:
            continue
        label = "{" + ",".join(e.names()) + "}"
        results[label] = endotrivial_direct(restrict(m, e))
    return all(results.values()) and m.dim > 0, results


def endotrivial_report(m: GModule) -> EndotrivialReport:
    by_res, details = endotrivial_by_restriction(m)
    if m.group.is_p_group(2):
        direct, rank = _direct(m)
    else:
        direct, rank = _direct(restrict(m, normal_sylow2(m.group)))
    if direct != by_res:
        raise RuntimeError(
            f"endotriviality tests disagree on {m.name or 'module'}: direct={direct}, restriction={by_res}"
        )
    return EndotrivialReport(direct, by_res, rank, details)


def endotrivial(m: GModule) -> bool:
    """Endotriviality verdict; both methods are run and must agree."""
    return endotrivial_report(m).verdict
