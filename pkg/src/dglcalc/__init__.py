"""Exact rational-homotopy invariants of free DGL models.

The package computes homology of derivation complexes, adjoint maps,
evaluation and Gottlieb subgroups, Whitehead centers, relative evaluation
subgroups, the G-sequence with its omega-homology, product models with wedges
of spheres, and DGL cylinder objects, entirely over exact rationals.
"""

from .errors import (
    DglError,
    InternalError,
    ParseError,
    PreconditionError,
    TruncationError,
    ValidationError,
)
from .lie import DegreeBasis, FreeLieAlgebra, Generator, LieElement, coordinates
from .model import DglModel, DglMorphism, ValidationReport, zero_morphism
from .derivations import (
    DerComplex,
    GenDerivation,
    adjoint,
    der_bracket,
    der_homology,
    extend_derivation,
    induced_derivation,
)
from .complexes import DglComplex, HomologyReport
from .relative import (
    LesReport,
    RelComplex,
    assemble_les,
    assemble_les_of_chain_map,
    rel_of_adjoint,
    rel_of_chain_map,
    rel_of_morphism,
    rel_of_morphism_star,
)
from .subgroups import (
    CoformalReport,
    EvaluationContext,
    GSequenceReport,
    GvpReport,
    SubspaceReport,
    coformal_bounding_derivation,
    coformal_check,
    evaluation_subgroup,
    g_sequence,
    g_vs_p,
    gottlieb,
    omega_homology,
    rel_evaluation_subgroup,
    whitehead_center,
)
from .constructions import (
    CylinderModel,
    HomotopyReport,
    LinearizationReport,
    ProductModel,
    cylinder,
    linearization,
    product_model,
    sphere_wedge_model,
    verify_homotopy,
)
from .modelfile import SuspensionMap, Workspace, parse_workspace, print_workspace

__all__ = [
    "DglError",
    "InternalError",
    "ParseError",
    "PreconditionError",
    "TruncationError",
    "ValidationError",
    "DegreeBasis",
    "FreeLieAlgebra",
    "Generator",
    "LieElement",
    "coordinates",
    "DglModel",
    "DglMorphism",
    "ValidationReport",
    "zero_morphism",
    "DerComplex",
    "GenDerivation",
    "adjoint",
    "der_bracket",
    "der_homology",
    "extend_derivation",
    "induced_derivation",
    "DglComplex",
    "HomologyReport",
    "LesReport",
    "RelComplex",
    "assemble_les",
    "assemble_les_of_chain_map",
    "rel_of_adjoint",
    "rel_of_chain_map",
    "rel_of_morphism",
    "rel_of_morphism_star",
    "CoformalReport",
    "EvaluationContext",
    "GSequenceReport",
    "GvpReport",
    "SubspaceReport",
    "coformal_bounding_derivation",
    "coformal_check",
    "evaluation_subgroup",
    "g_sequence",
    "g_vs_p",
    "gottlieb",
    "omega_homology",
    "rel_evaluation_subgroup",
    "whitehead_center",
    "CylinderModel",
    "HomotopyReport",
    "LinearizationReport",
    "ProductModel",
    "cylinder",
    "linearization",
    "product_model",
    "sphere_wedge_model",
    "verify_homotopy",
    "SuspensionMap",
    "Workspace",
    "parse_workspace",
    "print_workspace",
]
