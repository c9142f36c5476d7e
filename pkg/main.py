"""
Command-line entry point

    qclab verify-identity | verify-qcong | verify-intcong | conjectures | f-table | all
    qclab resolve | history

Exit codes: 0 when every theorem, lemma and integer check passes (failing
conjecture rows are flagged but do not fail the run), 1 when one fails,
2 on a usage error.
"""

import argparse
import logging
import os
import sys

from classical import INTEGER_CANDIDATES
from config import Config, RunConfig
from conjectures import F_TABLE_ID, check_f_recurrence, check_f_symmetry, entry_result, f_table, published_table
from displays import CANDIDATES
from errors import ConfigError, QCLabError, UnknownCheckId
from pipeline import COMMAND_GROUPS, VerificationPipeline
from reports import write_f_table, write_report, write_runs
from storage import load_runs, save_run
from utils import parse_id_list, parse_int_list, parse_pairs, setup_logging
from verifier import expand_ids, resolve_display

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

COMMANDS = list(COMMAND_GROUPS) + ['f-table', 'resolve', 'history']


def _positive(value):
    try:
        number = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {value!r}") from None
    if number < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {number}")
    return number


def _nonnegative(value):
    number = int(value)
    if number < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {number}")
    return number


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    output = common.add_argument_group('output')
    output.add_argument('--format', dest='fmt', choices=['text', 'json', 'csv'], default='text',
                        help='report format (default: text)')
    output.add_argument('--output', '-o', help="report file; '-' or omitted for stdout")
    output.add_argument('--timings', action='store_true', help='fill elapsed_ms in reports')
    output.add_argument('--store', help='SQLAlchemy URL of the run store (default: $QCLAB_DATABASE_URL)')
    output.add_argument('--profile', default=os.environ.get('QCLAB_PROFILE', 'default'),
                        help='grid profile: development, quick, testing (default: $QCLAB_PROFILE or default)')
    output.add_argument('--threads', type=_positive, help='worker processes (default: $QCLAB_THREADS)')
    output.add_argument('-v', '--verbose', action='store_true', help='debug logging')
    output.add_argument('-q', '--quiet', action='store_true', help='warnings and errors only')

    grid = common.add_argument_group('grid')
    grid.add_argument('--ids', help='comma separated check ids (family aliases thm2.3, thm2.7 allowed)')
    grid.add_argument('--primes', help='primes for q-congruences, e.g. 3,5,7')
    grid.add_argument('--prime-max', type=_positive, help='largest prime for integer congruences')
    grid.add_argument('--n-max', type=_positive, help='largest n for identities')
    grid.add_argument('--m-max', type=_positive, help='largest m')
    grid.add_argument('--r-max', type=_positive, help='largest r')
    grid.add_argument('--s-max', type=_nonnegative, help='largest s')
    grid.add_argument('--pairs', help='exponent-table groups m:r-list separated by ;, e.g. "2:1,3,5;3:1-8"')

    parser = argparse.ArgumentParser(prog='qclab', description='Exact verification of q-supercongruences')
    sub = parser.add_subparsers(dest='command', required=True)
    helps = {
        'verify-identity': 'exact rational-function identities',
        'verify-qcong': 'congruences modulo powers of [p], with q -> 1 consistency rows',
        'verify-intcong': 'integer supercongruences modulo p and p^2',
        'conjectures': 'conjecture scans and the exponent table',
        'all': 'every group above',
        'f-table': 'solve the exponent table',
        'resolve': 'compare the candidate readings of ambiguous displays',
        'history': 'list stored runs',
    }
    for name in COMMANDS:
        sub.add_parser(name, parents=[common], help=helps[name])
    return parser


def make_run_config(args):
    primes = parse_int_list(args.primes)
    overrides = dict(
        fmt=args.fmt,
        output=args.output,
        threads=args.threads,
        store=args.store,
        timings=args.timings,
        ids=parse_id_list(args.ids),
        prime_max=args.prime_max,
        n_max=args.n_max,
        m_max=args.m_max,
        r_max=args.r_max,
        s_max=args.s_max,
        pairs=parse_pairs(args.pairs) if args.pairs else None,
    )
    if primes:
        overrides.update(primes=primes, int_primes=primes, conjecture_primes=primes)
    return RunConfig.from_profile(args.command, args.profile, **overrides)


def _validate_ids(run_config):
    special = {F_TABLE_ID} | set(CANDIDATES) | set(INTEGER_CANDIDATES)
    expand_ids([i for i in run_config.ids if i not in special])


def _run_verification(run_config):
    pipeline = VerificationPipeline(run_config)
    rows = pipeline.run(run_config.command)
    code = pipeline.exit_code(rows)
    write_report(rows, run_config.fmt, run_config.output, run_config.timings, pipeline.affected)
    pipeline.persist(run_config.command, rows, code)
    return code


def _run_f_table(run_config):
    if run_config.pairs:
        entries = f_table(run_config.conjecture_primes, run_config.pairs, run_config.f_s_range, run_config.threads)
    else:
        entries = published_table(run_config.threads, run_config.f_s_range)
    write_f_table(entries, run_config.fmt, run_config.output)
    if run_config.store:
        rows = [entry_result(e) for e in entries]
        rows += [check_f_symmetry(entries), check_f_recurrence(entries)]
        save_run(run_config.store, 'f-table', rows, EXIT_OK, run_config.profile, run_config.threads, entries)
    return EXIT_OK


def _run_resolve(run_config):
    ids = run_config.ids or sorted(set(CANDIDATES) | set(INTEGER_CANDIDATES))
    rows = []
    for check_id in ids:
        if check_id in INTEGER_CANDIDATES:
            bounds = {'primes': run_config.int_primes} if run_config.int_primes else {'prime_max': 50}
        elif check_id == 'lemma4.4':
            bounds = {'n_max': run_config.n_max_for(check_id)}
        else:
            bounds = {'primes': run_config.primes, 'm_max': run_config.m_max}
        rows.extend(resolve_display(check_id, bounds=bounds))
    write_report(rows, run_config.fmt, run_config.output, run_config.timings)
    return EXIT_OK


def _run_history(run_config):
    if not run_config.store:
        raise ConfigError("history needs --store or QCLAB_DATABASE_URL")
    write_runs(load_runs(run_config.store), run_config.fmt, run_config.output)
    return EXIT_OK


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code not in (0, None) else EXIT_OK

    level = Config.LOG_LEVEL
    if args.verbose:
        level = 'DEBUG'
    elif args.quiet:
        level = 'WARNING'
    setup_logging(level)

    try:
        run_config = make_run_config(args)
        _validate_ids(run_config)
    except (ConfigError, UnknownCheckId) as e:
        logger.error(f"Usage error: {str(e)}")
        return EXIT_USAGE

    try:
        if run_config.command == 'f-table':
            return _run_f_table(run_config)
        if run_config.command == 'resolve':
            return _run_resolve(run_config)
        if run_config.command == 'history':
            return _run_history(run_config)
        return _run_verification(run_config)
    except (ConfigError, UnknownCheckId, OSError) as e:
        logger.error(f"Usage error: {str(e)}")
        return EXIT_USAGE
    except QCLabError as e:
        logger.error(f"Verification error: {str(e)}")
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
