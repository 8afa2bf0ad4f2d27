"""Exact combinatorics of level-k Verlinde rings.

Root data, the shifted affine Weyl action, classical weight combinatorics,
fusion rings, the skew-symmetrized chain complex over the faces of the
alcove with Smith-normal-form homology and certified cycle reduction, and a
window model of the formal Verlinde module.
"""

from .rootdata import LieType, RootSystem, build_root_system, coroot_pairing, inner_product, positive_roots
from .affine import (
    INFINITE,
    LengthUndetermined,
    ReductionResult,
    StarContext,
    enumerate_subgroup,
    length_between,
    length_of_weight,
    reduce_to_alcove,
    skew_symmetrize,
    star_reflect,
)
from .weights import (
    alcove_weights,
    character_value,
    freudenthal_multiplicities,
    tensor_decompose,
)
from .fusion import (
    FusionTable,
    build_fusion_table,
    character_at_special_point,
    fusion_ideal_member,
    fusion_product,
)
from .chain import (
    BoundaryWitness,
    ChainElement,
    HomologyReport,
    Truncation,
    canonical_basis,
    differential,
    homology_snf,
    reduce_cycle,
    verify_witness,
)
from .formal import (
    WindowVector,
    formal_reduce,
    invariant_extension,
    module_action,
    top_degree_cycle_check,
)
from .errors import (
    AntiInvarianceError,
    InsufficientWindowError,
    InvalidTypeError,
    LabelError,
    NotACycleError,
    NotDominantError,
    ResourceLimitError,
    SingularPointError,
    VerlindeError,
)

__version__ = "0.1.0"
