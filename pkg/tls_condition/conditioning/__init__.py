from .selection import Selection
from .sensitivity import (
    SensitivityCore, build_sensitivity_core, tls_weight_matrix,
    frechet_apply, frechet_adjoint
)
from .condition_numbers import (
    ConditionReport, componentwise_max, componentwise_sensitivity, mixed_sensitivity,
    normwise_cond, mixed_cond, comp_cond, two_norm_bound, upper_bounds, condition_report
)
from .oracles import explicit_sensitivity, zhou_oracle, vec

__all__ = [
    'Selection',
    'SensitivityCore', 'build_sensitivity_core', 'tls_weight_matrix',
    'frechet_apply', 'frechet_adjoint',
    'ConditionReport', 'componentwise_max', 'componentwise_sensitivity', 'mixed_sensitivity',
    'normwise_cond', 'mixed_cond', 'comp_cond', 'two_norm_bound', 'upper_bounds',
    'condition_report',
    'explicit_sensitivity', 'zhou_oracle', 'vec'
]
