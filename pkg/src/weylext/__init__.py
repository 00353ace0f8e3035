"""Exact integral Ext groups between hook Weyl modules over the Schur algebra."""
from .combinatorics import Hook
from .extcalc import CertificateError, ExtQuery, ExtResult, expected_ext2, expected_skew_ext, ext
from .resolution import Report, block_check, differential_matrix, hom_basis, verify_complex
from .tableaux import Skew, Weyl, straighten
from .zlinalg import AbelianGroup, IntMatrix, Lattice, cokernel, rank_mod_p, smith_normal_form

__all__ = [
    "AbelianGroup",
    "CertificateError",
    "ExtQuery",
    "ExtResult",
    "Hook",
    "IntMatrix",
    "Lattice",
    "Report",
    "Skew",
    "Weyl",
    "block_check",
    "cokernel",
    "differential_matrix",
    "expected_ext2",
    "expected_skew_ext",
    "ext",
    "hom_basis",
    "rank_mod_p",
    "smith_normal_form",
    "straighten",
    "verify_complex",
]
