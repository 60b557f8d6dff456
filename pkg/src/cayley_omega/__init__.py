"""Exact verification of Cayley's Omega-process identity by brute-force polynomial arithmetic."""

from .lab import (
    CayleyCase,
    SuiteConfig,
    VerificationReport,
    run_suite,
    verify_cayley,
    verify_laplace,
    verify_showthis,
    verify_vivanti,
)
from .matrices import MinorSpec, SymbolicMatrix, apply_omega_det, cominor, determinant, minor
from .perms import (
    IndexSet,
    PartialPermutation,
    PartitionedPermutation,
    PartitionScheme,
    Permutation,
    signsumset,
)
from .poly import Polynomial, format_polynomial, parse_polynomial

__version__ = "0.1.0"
