"""Modules over group algebras k[G] in characteristic 2."""

from .algebra import GroupAlgebraElement
from .builtins import BASIS_WORDS, BUILTIN_NAMES, builtin, element_X, element_Y, left_ideal, word
from .endotrivial import (
    EndotrivialReport,
    endotrivial,
    endotrivial_by_restriction,
    endotrivial_direct,
    endotrivial_report,
)
from .g24 import g24_structure, projective_indecomposables_g24, simple_modules_g24
from .iso import decompose, is_indecomposable, local_certificate, module_iso, stable_iso, stable_iso_witness
from .module import (
    GModule,
    InconsistentActionError,
    ModuleMap,
    change_basis,
    direct_sum,
    dual,
    fixed_points,
    from_right_action,
    hom_module,
    hom_space,
    is_intertwiner,
    module_from_action,
    norm_matrix,
    quotient_module,
    regular_module,
    restrict,
    submodule,
    tensor,
    trivial_module,
)
from .structure import (
    FreeSplitting,
    UnsupportedGroupError,
    lift_idempotent,
    lift_orthogonal,
    primitive_idempotents,
    projective_cover,
    projective_indecomposable,
    radical_basis,
    socle_basis,
    strip_free,
    syzygy,
    syzygy_n,
    zero_module,
)
from .truncated import (
    LiftingError,
    RMatrix,
    TruncatedModule,
    endotrivial_truncated,
    lift_module,
    truncated_regular,
    truncated_trivial,
)

__all__ = [name for name in dir() if not name.startswith("_")]
