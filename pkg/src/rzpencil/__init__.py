"""Real zero polynomials, spectrahedra and determinantal representations."""

from .catalog import get as example
from .clifford import brauer_weyl, construct_quadratic, relations_check, unitary_equiv_test
from .errors import (
    BlockStructureError,
    ConeNotWitnessed,
    DimensionError,
    DomainError,
    FormatError,
    ImaginaryResidueError,
    ParseError,
    PreconditionError,
    RzPencilError,
    SizeCapError,
)
from .formats import dump_pencil, dump_poly, load_pencil, load_poly
from .obstruction import (
    check_compact,
    compact_counterexample,
    meshulam_alpha,
    min_size_bound,
    nonexistence_report,
)
from .pencil import (
    Pencil,
    det_poly,
    double_to_symmetric,
    eigen_root_check,
    make_monic,
    membership,
    verify_identity,
)
from .polynomial import Poly, format_poly, homogenize, parse, shifted_homogenize
from .realzero import is_real_zero, real_roots, rigid_membership
from .reduction import common_kernel_reduce, cone_reduce, rank_profile

__version__ = "0.1.0"
