"""Exact subalgebra membership for noncommutative polynomials.

Certificates ``h`` with ``h(f) == g`` prove membership; matrix witnesses
with a jointly invariant subspace that ``g(X)`` does not preserve prove
non-membership.  All arithmetic is over the rationals.
"""

from .exactla import RatMatrix, in_column_space, rank, rref, solve_linear
from .fock import FockSpace, FockVector, apply_at_creation, creation_matrix, fock_basis
from .freealg import (
    NOT_HOMOGENEOUS,
    ZERO,
    MatTuple,
    NcPoly,
    evaluate_at_matrices,
    homogeneous_degree,
    poly_add,
    poly_mul,
    substitute,
    truncate,
)
from .invariant import KrylovClosure, is_invariant_subspace, is_joint_invariant, krylov_closure
from .membership import (
    Member,
    MembershipCertificate,
    NonMember,
    Unknown,
    decide,
    decide_homogeneous_direct,
    decide_homogeneous_fock,
    decide_single_generator,
    degree_filter,
    semidecide_membership,
    verify_certificate,
)
from .polytext import PolySyntaxError, format_poly, parse_poly
from .witness import (
    SearchConfig,
    Witness,
    search_witness,
    search_witness_random,
    search_witness_structured,
    verify_witness,
)

__version__ = "0.1.0"
