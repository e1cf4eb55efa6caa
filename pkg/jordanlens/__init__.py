"""Two subspaces of C^n in canonical position: principal angles, Jordan frames,
spectra of projection combinations and their numerical ranges."""

__version__ = "1.0.0"

from jordanlens.equivalence import build_swap_unitary, complement_pair, decide_equivalent
from jordanlens.exceptions import DimensionMismatchError, InputError, JordanLensError, ParseError, PreconditionError
from jordanlens.models import (
    AngleDecomposition,
    ConvexRegion,
    EigenPair,
    EllipticDisk,
    FivePartDecomposition,
    JordanFrame,
    OperatorKind,
    ProjectorPair,
    Subspace,
)
from jordanlens.numrange import (
    hausdorff_distance,
    offdiag_ellipse,
    operator_norm_identities,
    product_disks,
    product_range,
    sum_range,
    support_oracle,
)
from jordanlens.principal import complement_angle_relation, greedy_angle_oracle, jordan_frames, principal_angles
from jordanlens.spectra import analytic_eigenpairs, build_operator
from jordanlens.subspace import (
    complement,
    five_part_decompose,
    intersect,
    is_generalized_generic,
    is_generic_position,
    orthonormalize,
    projector,
    synthesize_pair,
)
