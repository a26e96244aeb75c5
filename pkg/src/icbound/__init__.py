"""Exact lower bounds on the index-coding broadcast rate.

The package solves a subset-lattice LP with an exact rational simplex,
verifies sparse dual certificates, combines certificates across
lexicographic products, and builds characteristic-specific constraint
schemas from one tightened matroid inequality per parity. Everything
numeric is a rational; nothing is trusted without re-verification.
"""

from icbound.errors import (
    CertificateInvalid,
    InputError,
    ResourceCapError,
    VerificationError,
)
from icbound.groundset import GroundSet, LatticeHom, SetVector
from icbound.instance import ClosureMode, IndexCodingInstance, cycle_instance
from icbound.schema import (
    HomExtRow,
    HomExtSchema,
    SideRow,
    SubmodRow,
    SubmodSchema,
    UnionSchema,
)
from icbound.lp import bound_b, bound_with_schema, build_problem, solve_problem
from icbound.certificate import (
    DualCertificate,
    c5_certificate,
    certificate_from_solution,
    combine_certificates,
    verify_certificate,
)
from icbound.matroid import (
    Matroid,
    addineq_certificate,
    fano,
    nonfano,
    rank_from_matrix,
    to_index_coding,
    uniform_matroid,
)
from icbound.tighten import (
    SubspaceTuple,
    dimension_vector,
    fano_alpha,
    fano_schema,
    lambda_even,
    lambda_odd,
    project_tuple,
    quotient_tuple,
    random_subspace_tuple,
    schema_with_submod,
    tighten_apply,
    tighten_transpose_apply,
)
from icbound.lincode import (
    ScalarLinearCode,
    TableCode,
    code_entropy_vector,
    concatenate_codes,
    is_valid_code,
    is_valid_table_code,
    min_scalar_linear_rate,
    underrep_check,
    underrep_to_code,
)

__version__ = "0.1.0"

__all__ = [
    "CertificateInvalid",
    "InputError",
    "ResourceCapError",
    "VerificationError",
    "GroundSet",
    "LatticeHom",
    "SetVector",
    "ClosureMode",
    "IndexCodingInstance",
    "cycle_instance",
    "HomExtRow",
    "HomExtSchema",
    "SideRow",
    "SubmodRow",
    "SubmodSchema",
    "UnionSchema",
    "bound_b",
    "bound_with_schema",
    "build_problem",
    "solve_problem",
    "DualCertificate",
    "c5_certificate",
    "certificate_from_solution",
    "combine_certificates",
    "verify_certificate",
    "Matroid",
    "addineq_certificate",
    "fano",
    "nonfano",
    "rank_from_matrix",
    "to_index_coding",
    "uniform_matroid",
    "SubspaceTuple",
    "dimension_vector",
    "fano_alpha",
    "fano_schema",
    "lambda_even",
    "lambda_odd",
    "project_tuple",
    "quotient_tuple",
    "random_subspace_tuple",
    "schema_with_submod",
    "tighten_apply",
    "tighten_transpose_apply",
    "ScalarLinearCode",
    "TableCode",
    "code_entropy_vector",
    "concatenate_codes",
    "is_valid_code",
    "is_valid_table_code",
    "min_scalar_linear_rate",
    "underrep_check",
    "underrep_to_code",
    "__version__",
]
