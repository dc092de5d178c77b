"""Sign matrices with certified spectral-norm bounds via interlacing families."""

__version__ = "0.1.0"

from .errors import (
    CapacityError,
    CertificationError,
    DimensionError,
    DomainError,
    MatsignError,
    ParseError,
)
from .expected import PartialSigning, conditional_expected_charpoly, fixed_background_matrix
from .linalg import (
    char_poly,
    dilate,
    dilation_bound,
    hadamard,
    linf_l2_norm,
    operator_norm,
    principal_submatrix,
)
from .matching import (
    DimerArrangement,
    dimer_partition,
    enumerate_dimer_arrangements,
    matched_weight_table,
    matching_polynomial,
)
from .oracle import (
    brute_force_min_lambda_max,
    brute_force_min_norm,
    exact_average_charpoly,
    exact_conditional_average,
)
from .polynomial import (
    Polynomial,
    common_interlacing_witness,
    convex_combination,
    is_real_rooted,
    largest_real_root,
    real_root_count,
)
from .search import (
    SigningCertificate,
    audit,
    certify,
    descend,
    greedy_symmetric_signing,
    heilmann_lieb_bound,
    sign_rectangular,
    verify_schur_identity,
)
