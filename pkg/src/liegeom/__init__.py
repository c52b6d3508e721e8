"""Exact verification of invariant affine, Hessian, complex and contact
structures on finite-dimensional real Lie algebras."""
from .affine import (
    AffineRep,
    Connection,
    ProjectiveHessianData,
    check_flat,
    check_lsa,
    check_projective,
    check_radiant,
    check_torsion,
    etale_rep,
    exp_linear_part,
)
from .catalog import Bundle, load_example
from .complexstruct import ComplexStructure, check_complex_structure, nijenhuis, rmap_complex_structure
from .contact import (
    LEE_SIGN,
    LcsData,
    SemiContactData,
    check_lck,
    check_lcs,
    check_semicontact,
    check_semisasakian,
    lcs_of_semicontact,
    split_lcs,
)
from .hessian import (
    check_hessian_cone,
    check_hessian_metric,
    kahler_from_hessian,
    semisasakian_from_projective_hessian,
)
from .liecore import (
    AltForm,
    LieAlgebra,
    abelian,
    ce_d,
    semidirect,
    semidirect_aff,
    semidirect_der,
    structure_invariants,
    validate_lie,
    wedge,
)
from .report import (
    CheckReport,
    DimensionError,
    DomainError,
    HessianConeViolation,
    LieGeomError,
    PipelineStageError,
    PreconditionError,
    StructureError,
    UnknownExample,
)

__version__ = "0.1.0"
