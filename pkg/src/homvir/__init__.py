"""homvir: exact verification kernel for q-deformed Witt Hom-Lie
superalgebras and their Virasoro-type central extensions.

Everything is computed over the field of rational functions in q^(1/2) with
structural (normal-form) equality, so every identity check is exact: algebra
axioms, cocycle conditions, derivation systems, window cohomology
dimensions, extension equivalences and truncated formal deformations.
"""

__version__ = "1.0.0"

from .qfield import HalfInt, LaurentPoly, QRat, b_coefficient, q_number, q_power
from .superalg import (
    AlgebraSpec,
    BasisVector,
    Element,
    IndexWindow,
    LinearMap,
    Report,
    algebra_by_name,
    check_hom_jacobi,
    check_representation,
    check_skew,
    neveu_schwarz,
    ramond,
    ramond_to_ns_iso_check,
    special_ramond,
    trivial_virasoro,
    witt_q,
)
from .cochain import (
    Cochain,
    coboundary_solve,
    cocycle_check,
    cohomology_window_dims,
    delta1_adjoint,
    delta2_adjoint,
    delta_trivial,
    derivation_solve,
    lift_scalar_cochain,
    make_phi0,
    make_phi1,
    recurrence_check,
    recurrence_solve,
    standard_derivations,
    structure_system_check,
)
from .extension import (
    ExtensionSpec,
    build_extension,
    check_extension_theorem,
    check_graded_extension,
    equivalence_from_h,
)
from .deform import (
    FormalAutomorphism,
    FormalBracket,
    deformation_check,
    equivalence_check,
    m2_deformation,
    m3_deformation,
    transport,
)
