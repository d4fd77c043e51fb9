from .structure import (
    LinearStructure, StructuredCoordinates,
    toeplitz_structure, full_structure, diagonal_structure, assemble, decompose
)
from .structured_conditioning import (
    StructuredSensitivity, StructuredConditionReport, structured_sensitivity,
    structured_frechet, structured_frechet_adjoint,
    structured_mixed_cond, structured_comp_cond, structured_condition_report,
    li_jia_oracle
)

__all__ = [
    'LinearStructure', 'StructuredCoordinates',
    'toeplitz_structure', 'full_structure', 'diagonal_structure', 'assemble', 'decompose',
    'StructuredSensitivity', 'StructuredConditionReport', 'structured_sensitivity',
    'structured_frechet', 'structured_frechet_adjoint',
    'structured_mixed_cond', 'structured_comp_cond', 'structured_condition_report',
    'li_jia_oracle'
]
