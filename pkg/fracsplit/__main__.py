# encoding: utf-8
""" fracsplit command line.

Exit codes: 0 success or equivalent, 1 not equivalent, 2 usage error, 3 series
did not converge, 4 construction error, 5 inconclusive.
"""
from __future__ import print_function

import argparse
import json
import os
import sys
import uuid

import structlog

from fracsplit import __VERSION__ as VERSION
from fracsplit import init_config, init_logging
from fracsplit import counterexamples
from fracsplit.errors import (EXIT_INCONCLUSIVE, EXIT_NOT_EQUIVALENT, EXIT_OK,
                              FracsplitError, UsageError, signal_error)
from fracsplit.mlf import (EvalControl, MLSpec, ml1, ml2, ml_multi,
                           ml_prabhakar)
from fracsplit.problem import (build_system, dump_problem, dump_system,
                               load_problem)
from fracsplit.rational import to_fraction
from fracsplit.solver import (EQUIVALENT, NOT_EQUIVALENT, abm_solve,
                              closed_form_solve, verify_equivalence,
                              write_csv)
from fracsplit.splitter import KIND_2M1, KINDS
from fracsplit.template import render


log = structlog.get_logger('fracsplit.cli')

VERDICT_EXIT_CODES = {
    EQUIVALENT: EXIT_OK,
    NOT_EQUIVALENT: EXIT_NOT_EQUIVALENT,
}


def readable_file_type(path):
    """ Validate and normalize path. """
    abspath = os.path.abspath(os.path.expanduser(path))
    if not os.path.exists(abspath):
        raise argparse.ArgumentTypeError("No file {!s}".format(path))
    if not os.path.isfile(abspath):
        raise argparse.ArgumentTypeError("{!s} is not a file".format(path))
    if not os.access(abspath, os.R_OK):
        raise argparse.ArgumentTypeError("Unable to read {!s}".format(path))
    return abspath


def rational_type(value):
    """ Exact rational argument (``3/2``, ``0.25``, ``4``). """
    try:
        return to_fraction(value)
    except ValueError:
        raise argparse.ArgumentTypeError(
            "{!r} is not a rational number".format(value))


def _control(config, args):
    if getattr(args, 'rtol', None) is not None:
        config['RTOL'] = args.rtol
    if getattr(args, 'k_max', None) is not None:
        config['K_MAX'] = args.k_max
    return EvalControl.from_config(config)


def _print_rows(header, rows):
    print(','.join(header))
    for row in rows:
        print(','.join('{:.17g}'.format(float(v)) for v in row))


def cmd_ml(config, args):
    """ Evaluate a Mittag-Leffler function. """
    ctrl = _control(config, args)
    if args.family == 'multi':
        if not args.a or not args.scales:
            raise UsageError("multi needs --a and --scales")
        spec = MLSpec(args.a, args.beta, args.scales,
                      power_exponents=args.power_exponents,
                      gamma=args.gamma)
        rows = [(t, ml_multi(spec, t, ctrl,
                             warn_args=config['ML_MULTI_WARN_ARGS']))
                for t in args.t]
        _print_rows(['t', 'value'], rows)
        return EXIT_OK

    if args.family == 'ml1':
        func = lambda z: ml1(args.alpha, z, ctrl)
    elif args.family == 'ml2':
        func = lambda z: ml2(args.alpha, args.beta, z, ctrl)
    else:
        func = lambda z: ml_prabhakar(args.alpha, args.beta, args.gamma, z,
                                      ctrl)
    _print_rows(['z', 'value'], [(z, func(z)) for z in args.z])
    return EXIT_OK


def cmd_split(config, args):
    """ Print a split system as JSON. """
    problem = load_problem(args.problem)
    system = _system(problem, args)
    print(json.dumps({'problem': dump_problem(problem),
                      'system': dump_system(system)}, indent=2))
    return EXIT_OK


def _grid(config, args):
    t_end = args.t_end if args.t_end is not None else config['T_END']
    steps = args.steps if args.steps is not None else config['STEPS']
    return float(t_end), int(steps)


def _system(problem, args, default=None):
    """ The split system, ``--kind`` taking precedence over the file. """
    if args.kind:
        problem = problem._replace(split=dict(problem.split or {},
                                              kind=args.kind))
    return build_system(problem, default)


def cmd_verify(config, args):
    """ Compare an equation with its split, print the report as JSON. """
    problem = load_problem(args.problem)
    system = _system(problem, args)
    t_end, steps = _grid(config, args)
    tol = args.tol if args.tol is not None else config['VERIFY_TOL']
    report = verify_equivalence(problem.fde, system, t_end, steps, tol,
                                ctrl=EvalControl.from_config(config))
    print(json.dumps(report.to_dict(), indent=2))
    return VERDICT_EXIT_CODES.get(report.verdict, EXIT_INCONCLUSIVE)


def cmd_solve(config, args):
    """ Solve a split system and write the trajectory as CSV. """
    problem = load_problem(args.problem)
    system = _system(problem, args, default=KIND_2M1)
    t_end, steps = _grid(config, args)
    trajectory = abm_solve(system, t_end, steps)
    reference = None
    if args.compare:
        reference = closed_form_solve(problem.fde, trajectory.t,
                                      EvalControl.from_config(config))
    if args.out in (None, '-'):
        write_csv(sys.stdout, trajectory, reference)
    else:
        with open(args.out, 'w') as f:
            write_csv(f, trajectory, reference)
    return EXIT_OK


def cmd_counterexample(config, args):
    """ Run a named counterexample. """
    report = counterexamples.run_counterexample(args.name)
    print(report.render(), end='')
    return EXIT_OK


def list_counterexamples(config, args):
    """ Print the counterexample names. """
    for name, entry in counterexamples.COUNTEREXAMPLES.items():
        print("{!s}\t{!s}".format(name, entry.title))
    return EXIT_OK


def show_config(config, args):
    """ Print config. """
    print("Settings:")
    print(render('config.tpl', settings=dict(config)), end='')
    return EXIT_OK


def _add_problem_args(parser, grid=True):
    parser.add_argument(
        'problem',
        metavar='FILE',
        type=readable_file_type,
        help="problem file (json or yaml)")
    parser.add_argument(
        '--kind',
        choices=KINDS,
        default=None,
        help="split kind (default: the problem's split block)")
    if grid:
        parser.add_argument(
            '--t-end',
            metavar='T',
            type=float,
            default=None,
            help="end time (default: T_END setting)")
        parser.add_argument(
            '--steps',
            metavar='N',
            type=int,
            default=None,
            help="number of steps (default: STEPS setting)")


def build_parser():
    parser = argparse.ArgumentParser(prog='fracsplit', description=__doc__)

    # common args

    parser.add_argument(
        '-v', '--version',
        action='version',
        version='%(prog)s version {:s}'.format(VERSION),
        help="show version number and exit")
    parser.add_argument(
        '-c', '--config',
        metavar='FILE',
        default=None,
        type=readable_file_type,
        help="use config from %(metavar)s")

    commands = parser.add_subparsers(help='Valid commands', dest='name_')
    commands.required = True

    # ml
    ml_parser = commands.add_parser("ml", help="evaluate a Mittag-Leffler "
                                               "function")
    ml_parser.add_argument(
        '--family',
        choices=('ml1', 'ml2', 'multi', 'prabhakar'),
        default='ml1')
    ml_parser.add_argument('--alpha', type=rational_type, default=1)
    ml_parser.add_argument('--beta', '--b', dest='beta', type=rational_type,
                           default=1)
    ml_parser.add_argument('--gamma', type=rational_type, default=1)
    ml_parser.add_argument('--z', metavar='Z', type=float, nargs='+',
                           default=[0.0])
    ml_parser.add_argument('--a', metavar='A', type=rational_type, nargs='+',
                           help="inner orders (multi)")
    ml_parser.add_argument('--scales', metavar='C', type=rational_type,
                           nargs='+', help="argument scales (multi)")
    ml_parser.add_argument('--power-exponents', metavar='P',
                           type=rational_type, nargs='+', default=None,
                           help="powers of t (multi, default: --a)")
    ml_parser.add_argument('--t', metavar='T', type=float, nargs='+',
                           default=[1.0], help="times (multi)")
    ml_parser.add_argument('--rtol', type=float, default=None,
                           help="truncation tolerance (default: RTOL)")
    ml_parser.add_argument('--k-max', type=int, default=None,
                           help="term cap (default: K_MAX)")
    ml_parser.set_defaults(command=cmd_ml)

    # split
    split_parser = commands.add_parser("split", help="print a split system")
    _add_problem_args(split_parser, grid=False)
    split_parser.set_defaults(command=cmd_split)

    # verify
    verify_parser = commands.add_parser(
        "verify", help="check an equation against its split")
    _add_problem_args(verify_parser)
    verify_parser.add_argument(
        '--tol', type=float, default=None,
        help="numeric tolerance (default: VERIFY_TOL)")
    verify_parser.set_defaults(command=cmd_verify)

    # solve
    solve_parser = commands.add_parser("solve", help="solve a split system")
    _add_problem_args(solve_parser)
    solve_parser.add_argument(
        '--out', metavar='FILE', default=None,
        help="write CSV to %(metavar)s (default: stdout)")
    solve_parser.add_argument(
        '--compare', action='store_true', default=False,
        help="add the closed form solution")
    solve_parser.set_defaults(command=cmd_solve)

    # counterexample
    ce_parser = commands.add_parser("counterexample",
                                    help="run a named counterexample")
    ce_parser.add_argument('name', metavar='NAME')
    ce_parser.set_defaults(command=cmd_counterexample)

    # list-counterexamples
    list_parser = commands.add_parser("list-counterexamples")
    list_parser.set_defaults(command=list_counterexamples)

    # show-config
    show_conf_parser = commands.add_parser("show-config")
    show_conf_parser.set_defaults(command=show_config)

    return parser


def run(args):
    """ Run a parsed command, mapping errors to exit codes. """
    config = init_config(args.config)
    init_logging(config)
    structlog.contextvars.clear_contextvars()
    structlog.contextvars.bind_contextvars(run_id=str(uuid.uuid4()))
    log.debug('command', name=args.name_)
    try:
        return args.command(config, args)
    except FracsplitError as e:
        log.info('command-failed', error=e.error_type,
                 exit_code=e.exit_code)
        signal_error.send(type(e), exception=e)
        print(json.dumps(e.to_dict(), default=str), file=sys.stderr)
        return e.exit_code
    finally:
        structlog.contextvars.clear_contextvars()


def main(args=None):
    parser = build_parser()
    args = parser.parse_args(args)
    raise SystemExit(run(args))


if __name__ == '__main__':
    main()
