from .problem import TlsProblem
from .svd import SvdBundle, compute_svd_bundle
from .solver import (
    GenericityReport, PInverseFactors, PInverseMethod, TlsSolution,
    check_genericity, solve_tls, apply_p_inverse
)

__all__ = [
    'TlsProblem',
    'SvdBundle',
    'compute_svd_bundle',
    'GenericityReport',
    'PInverseFactors',
    'PInverseMethod',
    'TlsSolution',
    'check_genericity',
    'solve_tls',
    'apply_p_inverse'
]
