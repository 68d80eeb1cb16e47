"""Special instanton monads on odd-dimensional projective space, in exact arithmetic."""

from .cohomology import CohomologyTable, natural_cohomology_table
from .forms import BinaryForm, DualBinaryForm, GroupPair
from .linalg import LinearMatrix, RationalMatrix
from .moduli import GrassPoint2, Member, NotMember, membership, moduli_dimension
from .monad import Monad, SubspaceU, build_A, build_B, build_monad, verify_monad

__version__ = "0.1.0"

__all__ = [
    "BinaryForm",
    "CohomologyTable",
    "DualBinaryForm",
    "GrassPoint2",
    "GroupPair",
    "LinearMatrix",
    "Member",
    "Monad",
    "NotMember",
    "RationalMatrix",
    "SubspaceU",
    "build_A",
    "build_B",
    "build_monad",
    "membership",
    "moduli_dimension",
    "natural_cohomology_table",
    "verify_monad",
]
