"""Non-abelian tensor squares, coset enumeration, and linearity criteria."""

from .abelian import (
    FinGenAbelian,
    IntegerMatrix,
    abelian_from_relations,
    format_abelian,
    gamma,
    iso_eq,
    parse_abelian,
    smith_normal_form,
    tensor_z,
)
from .actions import (
    CompatiblePair,
    CompatibilityViolation,
    GroupAction,
    check_compatible,
    conjugation_action,
    conjugation_pair,
    derived_subgroup_dh,
    trivial_action,
    trivial_pair,
)
from .catalog import (
    CATALOG_ORDERS,
    braid3_presentation,
    catalog_group,
    catalog_presentation,
    pure_braid3_words,
)
from .errors import (
    BudgetExceeded,
    EnumerationCancelled,
    IncompatibleActions,
    InternalInvariantError,
    NotInvertibleInRing,
    ParseError,
)
from .fp import (
    DEFAULT_BUDGET,
    CosetTable,
    FiniteGroupRealization,
    FpPresentation,
    coset_enumerate,
    format_word,
    parse_presentation,
    parse_word,
    realize,
)
from .linearity import (
    INFINITE,
    UNBOUNDED,
    ButtonFamily,
    ButtonVariant,
    PrimeTorsion,
    TorsionDescriptor,
    bryukhanov_sum_descriptor,
    button_family,
    button_three_abelianization_descriptor,
    button_two_abelianization_descriptor,
    format_torsion_descriptor,
    k2_rationals_descriptor,
    malcev_char0,
    malcev_charp,
    parse_torsion_descriptor,
)
from .polymat import (
    MultiPoly,
    PolyMatrix,
    PolyRing,
    poly_matrix_inv_special,
    poly_matrix_mul,
)
from .reps import (
    RepPackage,
    free_embedding,
    left_normed_commutator,
    matrix_commutator,
    random_reduced_words,
    rep_z_m_times_f_k,
    sanov_f2,
    tensor_square_rep_nilpotent,
    unitriangular_nilpotent_rep,
)
from .simplify import tietze_reduce
from .tensor import (
    PeifferGroup,
    TensorGroup,
    act_on_tensor,
    exterior_square,
    j2_subgroup,
    kappa,
    peiffer_presentation,
    peiffer_product,
    psi_map,
    tensor_presentation,
    tensor_product,
    tensor_square,
)

__all__ = [
    "FinGenAbelian",
    "IntegerMatrix",
    "abelian_from_relations",
    "format_abelian",
    "gamma",
    "iso_eq",
    "parse_abelian",
    "smith_normal_form",
    "tensor_z",
    "CompatiblePair",
    "CompatibilityViolation",
    "GroupAction",
    "check_compatible",
    "conjugation_action",
    "conjugation_pair",
    "derived_subgroup_dh",
    "trivial_action",
    "trivial_pair",
    "CATALOG_ORDERS",
    "braid3_presentation",
    "catalog_group",
    "catalog_presentation",
    "pure_braid3_words",
    "BudgetExceeded",
    "EnumerationCancelled",
    "IncompatibleActions",
    "InternalInvariantError",
    "NotInvertibleInRing",
    "ParseError",
    "DEFAULT_BUDGET",
    "CosetTable",
    "FiniteGroupRealization",
    "FpPresentation",
    "coset_enumerate",
    "format_word",
    "parse_presentation",
    "parse_word",
    "realize",
    "INFINITE",
    "UNBOUNDED",
    "ButtonFamily",
    "ButtonVariant",
    "PrimeTorsion",
    "TorsionDescriptor",
    "bryukhanov_sum_descriptor",
    "button_family",
    "button_three_abelianization_descriptor",
    "button_two_abelianization_descriptor",
    "format_torsion_descriptor",
    "k2_rationals_descriptor",
    "malcev_char0",
    "malcev_charp",
    "parse_torsion_descriptor",
    "MultiPoly",
    "PolyMatrix",
    "PolyRing",
    "poly_matrix_inv_special",
    "poly_matrix_mul",
    "RepPackage",
    "free_embedding",
    "left_normed_commutator",
    "matrix_commutator",
    "random_reduced_words",
    "rep_z_m_times_f_k",
    "sanov_f2",
    "tensor_square_rep_nilpotent",
    "unitriangular_nilpotent_rep",
    "tietze_reduce",
    "PeifferGroup",
    "TensorGroup",
    "act_on_tensor",
    "exterior_square",
    "j2_subgroup",
    "kappa",
    "peiffer_presentation",
    "peiffer_product",
    "psi_map",
    "tensor_presentation",
    "tensor_product",
    "tensor_square",
]

__version__ = "0.1.0"
