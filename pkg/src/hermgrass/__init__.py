"""Line Hermitian Grassmann codes over GF(q^2).

Build the projective system of totally isotropic lines of a Hermitian
polar space under the Pluecker embedding, compute codeword weights by
three independent routes, scan weight spectra exhaustively or by
seeded sampling, and certify minimum-weight codewords and their
structure.
"""

from .classify import (
    BoundRow,
    BoundTable,
    ClassificationReport,
    bound_table,
    check_min_weight_profile,
    classify_points,
    cone_count_max,
    fixed_point_count,
    make_permutable_form,
    make_rank2_cone_form,
    point_classes,
    polar_image,
    rank2_cone_weight,
    stratum_weight_bound,
    weight_from_class_counts,
    zero_class_bound,
)
from .code import (
    AlternatingForm,
    CodeParams,
    Codeword,
    SpectrumReport,
    code_params,
    codeword,
    evaluate,
    form_from_index,
    form_to_index,
    min_distance,
    point_weight,
    point_weight_values,
    point_weights,
    read_form_json,
    spectrum,
    weight_direct,
    weight_recursive,
    write_form_json,
)
from .ff import SUPPORTED_Q, FieldCtx, frobenius, hermitian_norm, make_field
from .linalg import Subspace, kernel, rank, rref, solve_membership
from .pluecker import ProjectiveSystem, build_system, pair_indices, pluecker_point
from .polar import (
    HermitianSpace,
    IsotropicLine,
    ProjectivePoint,
    RadicalProfile,
    cone_point_count,
    enumerate_lines,
    enumerate_points,
    isotropic_point_count,
    line_count,
    perp,
    radical_profile,
)

__version__ = "0.1.0"
