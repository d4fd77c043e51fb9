"""
Run Configuration - everything one CLI invocation needs
"""
import json
from dataclasses import dataclass, field, fields, replace
from pathlib import Path
from typing import Any, Dict, List, Optional

from ..numeric_config import (DEFAULT_EPSILON, DEFAULT_GENERICITY_TOL, DEFAULT_TRIALS,
                              EXAMPLE_DEFAULTS, OUTPUT_FORMATS, get_default_seed)

COMMANDS = ('solve', 'cond', 'scond', 'experiment', 'example')


@dataclass(frozen=True)
class RunConfig:
    """
    Problem source (matrix + vector files, or a named example generator),
    the selections and the numeric settings of one run.
    """
    command: str
    matrix: Optional[str] = None
    vector: Optional[str] = None
    structure: Optional[str] = None
    selections: List[str] = field(default_factory=lambda: ['identity'])
    epsilon: float = DEFAULT_EPSILON
    seed: int = field(default_factory=get_default_seed)
    trials: int = DEFAULT_TRIALS
    tol: float = DEFAULT_GENERICITY_TOL
    output_format: str = 'table'
    out: Optional[str] = None
    example: Optional[str] = None
    example_params: Dict[str, Any] = field(default_factory=dict)
    workers: int = 1
    verbose: bool = False

    @property
    def uses_example(self) -> bool:
        return self.example is not None

    def validate(self) -> 'RunConfig':
        """Check the invariants of a run; raises ValueError on the first violation"""
        if self.command not in COMMANDS:
            raise ValueError(f"Unknown command {self.command!r}; expected one of {', '.join(COMMANDS)}")

        has_files = self.matrix is not None or self.vector is not None
        if has_files and self.uses_example:
            raise ValueError("Give either --matrix/--vector or --example, not both")
        if not has_files and not self.uses_example:
            raise ValueError("A problem source is required: --matrix and --vector, or --example")
        if has_files and (self.matrix is None or self.vector is None):
            raise ValueError("--matrix and --vector must be given together")

        if self.uses_example:
            if self.example not in EXAMPLE_DEFAULTS:
                raise ValueError(f"Unknown example {self.example!r}")
            unknown = set(self.example_params) - set(EXAMPLE_DEFAULTS[self.example])
            if unknown:
                raise ValueError(f"Parameters {sorted(unknown)} do not apply to {self.example}")
        if self.command == 'example':
            if not self.uses_example:
                raise ValueError("The example command needs --example")
            if self.out is None:
                raise ValueError("The example command needs --out (output directory)")
        if self.command == 'scond' and self.structure is None and self.example != 'example3':
            raise ValueError("scond needs --structure (or --example example3)")

        if not self.selections:
            raise ValueError("At least one --L selection is required")
        if not self.epsilon > 0:
            raise ValueError(f"--eps must be positive, got {self.epsilon}")
        if not 0 <= self.seed < 2 ** 64:
            raise ValueError(f"--seed must be a 64-bit unsigned integer, got {self.seed}")
        if self.trials < 1:
            raise ValueError(f"--trials must be at least 1, got {self.trials}")
        if not self.tol > 0:
            raise ValueError(f"--tol must be positive, got {self.tol}")
        if self.workers < 1:
            raise ValueError(f"--workers must be at least 1, got {self.workers}")
        if self.output_format not in OUTPUT_FORMATS:
            raise ValueError(f"--format must be one of {', '.join(OUTPUT_FORMATS)}")
        return self

    def merged(self, **overrides) -> 'RunConfig':
        """Copy with every override that is not None applied"""
        return replace(self, **{k: v for k, v in overrides.items() if v is not None})

    @classmethod
    def from_dict(cls, values: Dict[str, Any]) -> 'RunConfig':
        known = {f.name for f in fields(cls)}
        unknown = set(values) - known
        if unknown:
            raise ValueError(f"Unknown config keys: {', '.join(sorted(unknown))}")
        values = dict(values)
        if isinstance(values.get('selections'), str):
            values['selections'] = [values['selections']]
        return cls(**values)

    @classmethod
    def from_json(cls, path, **overrides) -> 'RunConfig':
        """Load a JSON config file; overrides (e.g. command line flags) win"""
        with open(Path(path)) as f:
            values = json.load(f)
        if not isinstance(values, dict):
            raise ValueError(f"{path}: config must be a JSON object")
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls.from_dict(values)
