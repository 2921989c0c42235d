"""First cohomology and polynomial deformations of Lie algebra homomorphisms, in exact arithmetic."""

from .cohomology import (
    Cochain,
    CohomologyReport,
    coboundaries,
    coboundary_preimage,
    cocycles,
    cohomology,
    delta,
    delta_matrix,
    parse_cochain,
)
from .deformation import (
    DeformationSeries,
    GuardExceeded,
    ObstructionReport,
    apply,
    cup,
    extend_order,
    gauge,
    integrate,
    mc_residual,
    mc_rhs,
    order_difference_class,
    specialize,
)
from .exact import ParamPoly, QMatrix, SubspaceBasis, kernel_basis, rref, solve_particular
from .instances import load_instance
from .lie import (
    GlElement,
    LieAlgebra,
    LinearEmbedding,
    algebra_from_matrices,
    check_homomorphism,
    commutator,
    elementary,
    gl,
)

__version__ = "0.1.0"
