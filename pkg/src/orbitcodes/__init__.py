"""Cyclic orbit subspace codes over finite field towers.

Exact tools for building F_q-subspaces of F_{q^n}, sweeping their cyclic
orbits for distance and intersection distributions, translating those into
linear-set weight data, and classifying the twisted-embedding family
U_{s,gamma} up to shifts and Frobenius isometries.
"""

__version__ = "0.1.0"

from .field import (
    TABLE_LIMIT,
    ZERO,
    Field,
    arith,
    build_field,
    default_modulus,
    frobenius,
    rel_trace_norm,
    subfield_test,
    theta_membership,
)
from .subspace import (
    Subspace,
    intersect,
    intersect_dim,
    orthogonal_complement,
    scalar_shift,
    span,
    span_canonical,
    subspace_distance,
)
from .orbit import (
    OrbitProfile,
    classify_code,
    classify_dim3,
    dim3_signatures,
    fractions_oracle,
    intersection_histogram,
    orbit_profile,
    q2_shift_count,
    sidon_test,
    verify_structure,
)
from .linear_set import (
    UxUWeightDistribution,
    fU_from_linear_set,
    linear_set_bounds,
    uxu_weight_distribution,
)
from .usg import (
    BudgetExceededError,
    UsGammaParams,
    census,
    classify_usg_by_norm,
    closed_form_counts,
    construct_quasi_optimal,
    contains_q2_shift,
    enumerate_representatives,
    falpha_kernel_dim,
    make_usg,
    split_prime_power,
)
from .equivalence import (
    FrobeniusReport,
    aut_group,
    frobenius_isometry_test,
    frobenius_structure,
    galois_action_oracle,
    orbit_canon_set,
    orbit_equal_test,
    orbit_member,
)

__all__ = [
    "__version__",
    "TABLE_LIMIT",
    "ZERO",
    "Field",
    "arith",
    "build_field",
    "default_modulus",
    "frobenius",
    "rel_trace_norm",
    "subfield_test",
    "theta_membership",
    "Subspace",
    "intersect",
    "intersect_dim",
    "orthogonal_complement",
    "scalar_shift",
    "span",
    "span_canonical",
    "subspace_distance",
    "OrbitProfile",
    "classify_code",
    "classify_dim3",
    "dim3_signatures",
    "fractions_oracle",
    "intersection_histogram",
    "orbit_profile",
    "q2_shift_count",
    "sidon_test",
    "verify_structure",
    "UxUWeightDistribution",
    "fU_from_linear_set",
    "linear_set_bounds",
    "uxu_weight_distribution",
    "BudgetExceededError",
    "UsGammaParams",
    "census",
    "classify_usg_by_norm",
    "closed_form_counts",
    "construct_quasi_optimal",
    "contains_q2_shift",
    "enumerate_representatives",
    "falpha_kernel_dim",
    "make_usg",
    "split_prime_power",
    "FrobeniusReport",
    "aut_group",
    "frobenius_isometry_test",
    "frobenius_structure",
    "galois_action_oracle",
    "orbit_canon_set",
    "orbit_equal_test",
    "orbit_member",
]
