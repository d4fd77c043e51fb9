"""TLS Condition - total least squares solver and condition number diagnostics"""

import argparse
import logging
import sys
from typing import List, Optional

from tls_condition import __version__
from tls_condition.cli_io import COMMANDS, RunConfig, run
from tls_condition.numeric_config import (
    DEFAULT_EPSILON, DEFAULT_GENERICITY_TOL, DEFAULT_TRIALS, EXAMPLE_DEFAULTS, EXIT_CODES,
    OUTPUT_FORMATS, SEED_ENV_VAR, get_default_seed
)

# flag name -> example parameter name
EXAMPLE_FLAGS = {
    'delta': 'delta',
    'ep': 'e_p',
    'm': 'm',
    'n': 'n',
    'alpha': 'alpha',
    'omega': 'omega',
    'gamma': 'gamma',
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description="Total least squares solver with normwise, mixed, componentwise "
                    "and structured condition numbers")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")

    common = argparse.ArgumentParser(add_help=False)
    source = common.add_argument_group("problem source")
    source.add_argument("--matrix", type=str, help="Matrix Market file holding A")
    source.add_argument("--vector", type=str, help="b: one number per line or a Matrix Market array")
    source.add_argument("--example", type=str, choices=sorted(EXAMPLE_DEFAULTS),
        help="Generate a built-in example problem instead of reading files")
    source.add_argument("--delta", type=float, help="example1: size of the small entries")
    source.add_argument("--ep", type=float, help="example2: gap e_p below the unit singular value")
    source.add_argument("--m", type=int, help="example2/example3: number of rows")
    source.add_argument("--n", type=int, help="example2: number of columns")
    source.add_argument("--alpha", type=float, help="example3: Gaussian kernel width")
    source.add_argument("--omega", type=int, help="example3: kernel half bandwidth")
    source.add_argument("--gamma", type=float, help="example3: relative size of the noise")

    common.add_argument("--structure", type=str,
        help="toeplitz | full | diagonal | directory of .mtx basis matrices")
    common.add_argument("--L", dest="selections", action="append",
        help="identity | rows=i,j | index=i | max | min | standard (1-based, repeatable)")
    common.add_argument("--eps", type=float, dest="epsilon", help=f"Perturbation size (default {DEFAULT_EPSILON})")
    common.add_argument("--seed", type=int, help=f"Base seed (default ${SEED_ENV_VAR} or built-in)")
    common.add_argument("--trials", type=int, help=f"Perturbation trials (default {DEFAULT_TRIALS})")
    common.add_argument("--tol", type=float, help=f"Genericity tolerance (default {DEFAULT_GENERICITY_TOL})")
    common.add_argument("--workers", type=int, help="Threads for the perturbation trials")
    common.add_argument("--format", type=str, dest="output_format", choices=OUTPUT_FORMATS,
        help="Output format (default table)")
    common.add_argument("--out", type=str, help="Write the report to this file (example: output directory)")
    common.add_argument("--config", type=str, help="JSON config file; flags override its values")
    common.add_argument("--verbose", action="store_true", help="Debug logging")

    commands = parser.add_subparsers(dest="command", required=True)
    helps = {
        'solve': "Solve the TLS problem and report genericity",
        'cond': "Normwise, mixed and componentwise condition numbers of L x",
        'scond': "Structured condition numbers next to the unstructured ones",
        'experiment': "Compare condition numbers with errors under random perturbations",
        'example': "Write a generated example problem to files",
    }
    for name in COMMANDS:
        commands.add_parser(name, parents=[common], help=helps[name])
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    example_params = {param: getattr(args, flag) for flag, param in EXAMPLE_FLAGS.items()
                      if getattr(args, flag) is not None}
    overrides = dict(
        command=args.command,
        matrix=args.matrix,
        vector=args.vector,
        structure=args.structure,
        selections=args.selections,
        epsilon=args.epsilon,
        seed=args.seed,
        trials=args.trials,
        tol=args.tol,
        output_format=args.output_format,
        out=args.out,
        example=args.example,
        example_params=example_params or None,
        workers=args.workers,
        verbose=args.verbose or None,
    )
    if args.config:
        return RunConfig.from_json(args.config, **overrides)
    return RunConfig(command=args.command, seed=get_default_seed()).merged(**overrides)


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s")

    try:
        config = config_from_args(args)
    except (OSError, ValueError, TypeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CODES['USAGE']

    result = run(config)
    if not result.ok:
        print(f"error: {result.error}", file=sys.stderr)
        return result.exit_code

    if config.out is None or config.command == 'example':
        print(result.text)
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
