"""Picard groups of tame stacky curves as presented abelian groups."""

from .errors import (
    DuplicateLabel,
    ElementGroupMismatch,
    EnumerationTooLarge,
    GroupMismatch,
    IllDefined,
    KernelMismatch,
    SpecError,
    SpecSyntaxError,
    StackyPicError,
    UnresolvedLabel,
    BadInteger,
)
from .gerbe import (
    BandData,
    GerbePicard,
    LiftRelation,
    ObstructionData,
    build_pic_gerbe,
    character_group,
    compose_full,
    enumerate_extensions,
    obstruction_kernel,
    obstruction_map,
)
from .groups import (
    INFINITE,
    ExactnessReport,
    GroupElement,
    Homomorphism,
    InvariantFactorDecomposition,
    PresentedGroup,
    check_short_exact,
    cokernel,
    cyclic_sum,
    decompose,
    direct_sum,
    element_eq,
    element_order,
    free_group,
    identity_hom,
    image,
    is_exact_at,
    is_injective,
    is_surjective,
    kernel,
    make_hom,
    pushout,
    trivial_group,
    zero_hom,
)
from .matrix import IntegerMatrix, smith_normal_form
from .rigidified import (
    CoarsePicard,
    RigidifiedPicard,
    StackyPointSpec,
    build_pic_rigidified,
    chi_residues,
    normal_form,
)

__version__ = "0.1.0"

__all__ = [
    "BadInteger",
    "BandData",
    "CoarsePicard",
    "DuplicateLabel",
    "ElementGroupMismatch",
    "EnumerationTooLarge",
    "ExactnessReport",
    "GerbePicard",
    "GroupElement",
    "GroupMismatch",
    "Homomorphism",
    "INFINITE",
    "IllDefined",
    "IntegerMatrix",
    "InvariantFactorDecomposition",
    "KernelMismatch",
    "LiftRelation",
    "ObstructionData",
    "PresentedGroup",
    "RigidifiedPicard",
    "SpecError",
    "SpecSyntaxError",
    "StackyPicError",
    "StackyPointSpec",
    "UnresolvedLabel",
    "build_pic_gerbe",
    "build_pic_rigidified",
    "character_group",
    "check_short_exact",
    "chi_residues",
    "cokernel",
    "compose_full",
    "cyclic_sum",
    "decompose",
    "direct_sum",
    "element_eq",
    "element_order",
    "enumerate_extensions",
    "free_group",
    "identity_hom",
    "image",
    "is_exact_at",
    "is_injective",
    "is_surjective",
    "kernel",
    "make_hom",
    "normal_form",
    "obstruction_kernel",
    "obstruction_map",
    "pushout",
    "smith_normal_form",
    "trivial_group",
    "zero_hom",
]
