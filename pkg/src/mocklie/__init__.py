"""Exact computations with mock-Lie algebras.

Mock-Lie algebras are commutative algebras satisfying the Jacobi identity.
The package builds them from structure constants or as capped free quotients,
checks polynomial identities, computes universal enveloping algebras through
noncommutative Groebner bases, and studies modules and antiderivations.
"""

__version__ = "0.1.0"

from .field import GF, QQ, parse_field
from .linalg import Matrix
from .algebra import (
    AlgebraTable,
    Subspace,
    abelian,
    center,
    direct_sum,
    ideal_generated_by,
    is_commutative,
    is_engel3,
    is_jordan,
    is_mock_lie,
    is_nil3,
    lower_central_series,
    nil_index,
    power,
    quotient,
)
from .free import build_free_quotient
from .identities import builtin_identity, eval_identity, holds_identically, linearize, parse_identity
from .enveloping import (
    BudgetExhausted,
    dim_u,
    enveloping_basis,
    is_special,
    kernel_degree_bound,
    kernel_of_iota,
)
from .representations import (
    adjoint_module,
    antiderivations,
    faithful_from_nondegenerate,
    tensor_extension,
    trivial_module,
    truncated_poly_algebra,
)
from .catalog import get_algebra, read_algebra_file, write_algebra_file

__all__ = [
    "GF", "QQ", "parse_field", "Matrix",
    "AlgebraTable", "Subspace", "abelian", "center", "direct_sum", "ideal_generated_by",
    "is_commutative", "is_engel3", "is_jordan", "is_mock_lie", "is_nil3",
    "lower_central_series", "nil_index", "power", "quotient",
    "build_free_quotient",
    "builtin_identity", "eval_identity", "holds_identically", "linearize", "parse_identity",
    "BudgetExhausted", "dim_u", "enveloping_basis", "is_special", "kernel_degree_bound",
    "kernel_of_iota",
    "adjoint_module", "antiderivations", "faithful_from_nondegenerate", "tensor_extension",
    "trivial_module", "truncated_poly_algebra",
    "get_algebra", "read_algebra_file", "write_algebra_file",
]
