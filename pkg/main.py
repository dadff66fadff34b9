#!/usr/bin/env python3
"""
Residue Cover Toolkit - CLI Interface
Classify expressions, build and verify maps, assemble sets with A − A = Z_Q
and a small lA² + kA, estimate feasibility, run the minimum-image experiment
"""

import argparse
import json
import logging
import sys

from src.commands import (
    AssembleCommand, ClassifyCommand, ConstructCommand, EstimateCommand, ExperimentCommand,
    RunConfig, VerifyCommand,
)
from src.commands.common import exit_code_for, failure_section, report_store
from src.core.settings import ExitCodes, get_settings

logger = logging.getLogger(__name__)

COMMANDS = {
    'construct': ConstructCommand,
    'verify': VerifyCommand,
    'assemble': AssembleCommand,
    'estimate': EstimateCommand,
    'experiment': ExperimentCommand,
}


def configure_logging(settings):
    """Root logging from LOG_* settings"""
    handlers = [logging.StreamHandler()]
    if settings.logging.file:
        handlers.append(logging.FileHandler(settings.logging.file))
    logging.basicConfig(level=settings.logging.level, format=settings.logging.format, handlers=handlers)


class Application:
    """Main application with standardized configuration"""

    def __init__(self):
        """Initialize application with Pydantic settings"""
        self.settings = get_settings()

        # Validate configuration on startup
        try:
            self.settings.validate_config()
        except ValueError as e:
            logger.error(f"Configuration validation failed: {e}")
            raise

    def _failed(self, name, error, config=None):
        """Log, print and (when possible) write the failure section; returns the exit code"""
        section = failure_section(error)
        logger.error(f"{name} failed: {error}")
        print(f"\n✗ {name} failed: {error}")
        print(json.dumps({'failure': section}, indent=2, ensure_ascii=False, default=str))
        if config is not None and not isinstance(error, FileExistsError):
            try:
                store = report_store(config, self.settings, name=f"{config.command}_failure")
                store.write({'config': config.to_report(), 'failure': section, 'pass': False})
            except Exception as e:
                logger.warning(f"could not write failure report: {e}")
        return section['exit_code']

    def handle_classify(self, args):
        """Handle classify command"""
        try:
            command = ClassifyCommand(self.settings)
            results = command.execute(args.expr)
            command.display_results(results)
            return ExitCodes.SUCCESS if results['supported'] else ExitCodes.USAGE_ERROR
        except Exception as e:
            return self._failed('Classify command', e)

    def handle_run(self, args):
        """Handle construct, verify, assemble, estimate and experiment"""
        name = f"{args.mode.capitalize()} command"
        config = None
        try:
            config = RunConfig.from_args(args, self.settings)
            command = COMMANDS[args.mode](self.settings)
            results = command.execute(config)
            command.display_results(results)
            if results['pass']:
                return ExitCodes.SUCCESS
            return ExitCodes.INFEASIBLE if args.mode == 'estimate' else ExitCodes.CHECK_FAILURE
        except Exception as e:
            return self._failed(name, e, config)


def _add_common(parser, seed=True, out=True):
    if seed:
        parser.add_argument('--seed', type=int, help='Seed for every random choice (default: RANDOM_SEED)')
    if out:
        parser.add_argument('--out', help='Report path (default: results/<command>_<name>.json)')
        parser.add_argument('--force', action='store_true', help='Overwrite an existing report')


def _add_primes(parser):
    group = parser.add_mutually_exclusive_group()
    group.add_argument('--primes', help='Comma-separated primes, e.g. 17,19,23,29,31')
    group.add_argument('--prime-window', help='All primes in lo:hi')


def _add_verification(parser):
    parser.add_argument('--mode', dest='check', choices=['auto', 'exhaustive', 'sampled'], default='auto',
                        help='Image check (auto: exhaustive, sampled when over budget)')
    parser.add_argument('--samples', type=int, help='Sampled points (default: VERIFY_SAMPLES)')
    parser.add_argument('--budget', type=int, help='Footprint point budget (default: VERIFY_BUDGET)')
    parser.add_argument('--workers', type=int, help='Enumeration processes (default: VERIFY_WORKERS)')


def _add_assembly(parser, default_mode=None):
    parser.add_argument('--l', type=int, required=True, help='Quadratic summands (0..3)')
    parser.add_argument('--k', type=int, required=True, help='Linear summands')
    parser.add_argument('--epsilon', type=float, help='Density target (default: ASSEMBLY_EPSILON)')
    parser.add_argument('--base-primes', help='Stage-one primes (default: ASSEMBLY_BASE_PRIMES)')
    mode = parser.add_mutually_exclusive_group()
    mode.add_argument('--strict', dest='assembly_mode', action='store_const', const='strict',
                      help='Enforce the ε schedule')
    mode.add_argument('--relaxed', dest='assembly_mode', action='store_const', const='relaxed',
                      help='Build anyway and report the bound')
    parser.add_argument('--schedule', choices=['linear', 'fitted'],
                        help='ε split over stages (default: ASSEMBLY_SCHEDULE)')
    parser.set_defaults(assembly_mode=default_mode)


def create_parser():
    """Create argument parser with standardized commands"""
    parser = argparse.ArgumentParser(
        description='Residue Cover Toolkit',
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  python main.py classify --expr "a(x)*b(y) + a(x) + x + b(y) + y"
  python main.py construct --expr "a(x)*a(x) + a(x) + x" --prime-window 100:200
  python main.py construct --expr "a(x)*(b(y)+y) + b(y)*(c(z)+z) + c(z)*a(x)" --primes 17,19,23,29,31 --seed 7
  python main.py verify --set 0,1,3 --q 7 --l 0 --k 2
  python main.py assemble --l 0 --k 2 --epsilon 0.2 --seed 1
  python main.py estimate --l 1 --k 0
  python main.py experiment --p 2 --q 3

Exit codes:
  0 pass, 1 check failure, 2 infeasible, 3 usage error
        """
    )

    subparsers = parser.add_subparsers(dest='mode', help='Available commands')

    classify_parser = subparsers.add_parser('classify', help='Canonical form, graph and case of an expression')
    classify_parser.add_argument('--expr', required=True, help='Expression text')

    construct_parser = subparsers.add_parser('construct', help='Build maps for one expression and verify them')
    construct_parser.add_argument('--expr', required=True, help='Expression text')
    _add_primes(construct_parser)
    _add_verification(construct_parser)
    _add_common(construct_parser)

    verify_parser = subparsers.add_parser('verify', help='Check an explicit set, or re-verify a construction')
    target = verify_parser.add_mutually_exclusive_group(required=True)
    target.add_argument('--expr', help='Expression to build and verify three ways')
    target.add_argument('--set', help='Explicit set, comma-separated residues (needs --q)')
    verify_parser.add_argument('--q', type=int, help='Modulus of --set')
    verify_parser.add_argument('--l', type=int, help='Quadratic summands for --set (default 0)')
    verify_parser.add_argument('--k', type=int, help='Linear summands for --set (default 1)')
    verify_parser.add_argument('--epsilon', type=float, help='Density target for --set')
    _add_primes(verify_parser)
    _add_verification(verify_parser)
    _add_common(verify_parser)

    assemble_parser = subparsers.add_parser('assemble', help='Assemble a set for lA² + kA')
    _add_assembly(assemble_parser)
    assemble_parser.add_argument('--samples', type=int, help='Witnesses and sum elements checked (default 1000)')
    assemble_parser.add_argument('--workers', type=int, help='Processes for per-case constructions')
    _add_common(assemble_parser)

    estimate_parser = subparsers.add_parser('estimate', help='Predict the cost of an assembly (strict by default)')
    _add_assembly(estimate_parser, default_mode='strict')
    _add_common(estimate_parser, seed=False)

    experiment_parser = subparsers.add_parser('experiment', help='Minimum image of a(x)*b(y) + x + y on Z_pq')
    experiment_parser.add_argument('--p', type=int, required=True, help='Prime')
    experiment_parser.add_argument('--q', type=int, required=True, help='Prime, pq ≤ 6')
    _add_common(experiment_parser, seed=False)

    return parser


def main():
    """Main entry point with standardized error handling"""
    parser = create_parser()
    try:
        args = parser.parse_args()
    except SystemExit as e:
        sys.exit(ExitCodes.USAGE_ERROR if e.code else ExitCodes.SUCCESS)

    if not args.mode:
        parser.print_help()
        sys.exit(ExitCodes.SUCCESS)

    # Initialize application
    try:
        app = Application()
    except ValueError as e:
        print(f"Configuration error: {str(e)}")
        print("\nPlease check your config/.env file")
        sys.exit(ExitCodes.USAGE_ERROR)
    configure_logging(app.settings)

    # Route to appropriate handler
    try:
        if args.mode == 'classify':
            exit_code = app.handle_classify(args)
        elif args.mode in COMMANDS:
            exit_code = app.handle_run(args)
        else:
            parser.print_help()
            exit_code = ExitCodes.USAGE_ERROR
    except KeyboardInterrupt:
        print("\n\nInterrupted by user")
        exit_code = ExitCodes.INTERRUPTED
    except Exception as e:
        logger.error(f"Unexpected error: {str(e)}", exc_info=True)
        print(f"\nUnexpected error: {str(e)}")
        exit_code = exit_code_for(e)

    sys.exit(int(exit_code))


if __name__ == '__main__':
    main()
