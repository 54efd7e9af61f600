# Licensed to the White Turing under one or more
# contributor license agreements.  See the NOTICE file
# distributed with this work for additional information
# regarding copyright ownership.  The SFC licenses this file
# to you under the Apache License, Version 2.0 (the
# "License"); you may not use this file except in compliance
# with the License.  You may obtain a copy of the License at
#
#   http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing,
# software distributed under the License is distributed on an
# "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
# KIND, either express or implied.  See the License for the
# specific language governing permissions and limitations
# under the License.

"""The straus command line."""

import argparse
import json
import logging
import sys
from typing import Any, Callable, Dict, List, Optional, Sequence, TextIO

from . import __version__, appd, arith, ed1, ed2, lattice, xform
from .config import FORMATS, SolveConfig
from .decomp import Decomposition, verify
from .exceptions import (BudgetExceededException, DomainException,
                         RecordFormatException, StrausException,
                         VerificationException)
from .records import ResultRecord, read_records, write_records
from .report import (DENSITY_HEADER, HITBOX_HEADER, RECORD_HEADER,
                     ROUNDTRIP_HEADER, TABLE_1_HEADER, TABLE_2_HEADER,
                     density_rows, golden_rows, hitbox_rows, open_output,
                     record_rows, roundtrip_rows, table_1_rows, table_2_rows,
                     write_csv)
from .solver import Solver
from .tags import ExitCode, Policy, Status, Strategy
from .utils import parse_decimal, to_decimal

logger = logging.getLogger(__name__)

_CONFIG_KEYS = {
    'delta_max': 'delta_max',
    'gamma_max': 'gamma_max',
    'r_max': 'r_max',
    's_max': 's_max',
    'alpha': 'alphas',
    'strategy': 'strategies',
    'stop_after': 'stop_after',
    'trial_bound': 'trial_bound',
    'budget': 'budget',
    'workers': 'workers',
    'seed': 'seed',
    'format': 'fmt',
    'out': 'out',
    'timing': 'timing',
}

_STATUS_CODES = {Status.SOLVED: ExitCode.OK, Status.EXHAUSTED: ExitCode.EXHAUSTED, Status.BUDGET: ExitCode.BUDGET}


class _Parser(argparse.ArgumentParser):
    '''Usage errors exit with 64.'''

    def error(self, message: str) -> None:
        self.print_usage(sys.stderr)
        self.exit(ExitCode.USAGE, f'{self.prog}: error: {message}\n')


def _decimal(text: str) -> int:
    return parse_decimal(text)


_decimal.__name__ = 'decimal'


def _positive(text: str) -> int:
    value = parse_decimal(text)
    if value < 1:
        raise ValueError(text)
    return value


_positive.__name__ = 'positive decimal'


def _common() -> argparse.ArgumentParser:
    common = _Parser(add_help=False, argument_default=argparse.SUPPRESS)
    common.add_argument('--delta-max', type=_positive)
    common.add_argument('--gamma-max', type=_positive)
    common.add_argument('--r-max', type=_positive)
    common.add_argument('--s-max', type=_positive)
    common.add_argument('--alpha', type=_positive, action='append', help='repeat for several values')
    common.add_argument('--strategy', choices=Strategy.DEFAULT, action='append', help='repeat to set the order')
    common.add_argument('--stop-after', type=_positive)
    common.add_argument('--trial-bound', type=_positive)
    common.add_argument('--budget', type=_positive, help='rho steps per factorization; ESD_BUDGET wins')
    common.add_argument('--workers', type=_positive)
    common.add_argument('--seed', type=_decimal)
    common.add_argument('--format', choices=FORMATS)
    common.add_argument('--out', metavar='FILE')
    common.add_argument('--timing', action='store_true')
    common.add_argument('-v', '--verbose', action='count')
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog='straus', description='Decompositions 4/P = 1/A + 1/B + 1/C.', parents=[common])
    parser.add_argument('--version', action='version', version=f'%(prog)s {__version__}')
    verbs = parser.add_subparsers(dest='verb', metavar='VERB')
    verbs.required = True

    def verb(name: str, handler: Callable, help_: str) -> argparse.ArgumentParser:
        sub = verbs.add_parser(name, parents=[common], help=help_)
        sub.set_defaults(handler=handler)
        return sub

    sub = verb('solve', cmd_solve, 'run the strategy chain on one prime')
    sub.add_argument('P', type=_decimal)

    sub = verb('sweep', cmd_sweep, 'solve every prime in [LOW, HIGH]')
    sub.add_argument('low', type=_decimal)
    sub.add_argument('high', type=_decimal)

    sub = verb('table', cmd_table, 'print table 1 (ED1), 2 (ED2) or the round-trip table as CSV')
    sub.add_argument('which', choices=('1', '2', 'roundtrip'))
    sub.add_argument('P', type=_decimal)
    sub.add_argument('--golden', action='store_true', help='compare with the published rows')

    sub = verb('verify', cmd_verify, 're-verify a JSONL file of records')
    sub.add_argument('file')

    sub = verb('density', cmd_density, 'lattice point counts in Type-I boxes')
    sub.add_argument('--moduli', type=_positive, nargs='+', required=True)
    sub.add_argument('--residues', type=_decimal, nargs='+')
    sub.add_argument('--T', dest='T_list', type=_decimal, nargs='+', required=True)

    sub = verb('hitbox', cmd_hitbox, 'randomized hit-the-box trials')
    sub.add_argument('--trials', type=_decimal, default=1000)
    sub.add_argument('--g-max', type=_positive, default=50)
    sub.add_argument('--literal', action='store_true', help="boxes of d' x d'; misses are reported, not failures")

    sub = verb('convolve', cmd_convolve, 'ED2 triple to ED1 quad')
    for name in ('P', 'delta', 'b', 'c'):
        sub.add_argument(name, type=_decimal)
    sub.add_argument('--policy', default=Policy.MINIMAL, help='minimal, canonical or an explicit y')

    sub = verb('anticonvolve', cmd_anticonvolve, 'ED1 quad to A modulo m*o')
    for name in ('P', 'gamma', 'c', 'u', 'v'):
        sub.add_argument(name, type=_decimal)
    sub.add_argument('--m', type=_positive, required=True)
    sub.add_argument('--o', type=_positive, required=True)
    sub.add_argument('--strict', action='store_true')

    sub = verb('direct', cmd_direct, 'direct grid search over (r, s)')
    sub.add_argument('P', type=_decimal)
    sub.add_argument('--complete', action='store_true', help='ignore --r-max/--s-max and walk the complete grid')

    sub = verb('back', cmd_back, 'back search over (u, v)')
    sub.add_argument('P', type=_decimal)
    sub.add_argument('A', type=_decimal, nargs='?')
    sub.add_argument('--scan', choices=('complete', 'bounded'), default='complete')

    sub = verb('ed1', cmd_ed1, 'enumerate ED1 quads')
    sub.add_argument('P', type=_decimal)
    sub.add_argument('--allow-equal', action='store_true', help='keep u = v = c')

    sub = verb('ed2', cmd_ed2, 'enumerate ED2 triples')
    sub.add_argument('P', type=_decimal)
    sub.add_argument('--counters', action='store_true', help='per-delta status and progression counters as CSV')
    return parser


def config_from_args(args: argparse.Namespace, environ=None) -> SolveConfig:
    overrides: Dict[str, Any] = {}
    for option, key in _CONFIG_KEYS.items():
        if hasattr(args, option):
            value = getattr(args, option)
            overrides[key] = tuple(value) if isinstance(value, list) else value
    return SolveConfig.from_env(environ, **overrides)


def _emit(config: SolveConfig, records: Sequence[ResultRecord], stream: TextIO) -> None:
    if config.fmt == 'csv':
        write_csv(stream, RECORD_HEADER, record_rows(records))
    else:
        write_records(records, stream, config.timing)


def _records(decompositions: Sequence[Decomposition], strategy: str) -> List[ResultRecord]:
    return [ResultRecord(d, strategy) for d in decompositions]


def _require_prime(P: int) -> None:
    if not arith.is_prime(P):
        raise DomainException(f'{P} is not a prime.')


def cmd_solve(args: argparse.Namespace, config: SolveConfig, stream: TextIO) -> int:
    outcome = Solver(config, dev=(getattr(args, 'verbose', 0) or 0) >= 2).solve(args.P)
    _emit(config, outcome.records, stream)
    print(f'P={outcome.P} {outcome.status}({outcome.solved})', file=sys.stderr)
    return _STATUS_CODES[outcome.status]


def cmd_sweep(args: argparse.Namespace, config: SolveConfig, stream: TextIO) -> int:
    summary = Solver(config).sweep(args.low, args.high)
    _emit(config, summary.records, stream)
    print(f'[{summary.low}, {summary.high}] primes={len(summary.outcomes)} solved={len(summary.solved)} '
          f'exhausted={summary.exhausted} budget={summary.budget}', file=sys.stderr)
    if summary.exhausted:
        return ExitCode.EXHAUSTED
    if summary.budget:
        return ExitCode.BUDGET
    return ExitCode.OK


def cmd_table(args: argparse.Namespace, config: SolveConfig, stream: TextIO) -> int:
    P = args.P
    _require_prime(P)
    if args.golden and args.which == 'roundtrip':
        raise DomainException('The round-trip table has no published rows.')
    if args.which == '1':
        gamma_max = config.gamma_max
        if gamma_max is None and args.golden:
            gamma_max = max(int(row[1]) for row in golden_rows(1, P))
        quads = ed1.enumerate_ed1(P, gamma_max or config.gamma_max_for(P), trial_bound=config.trial_bound,
                                  budget=config.budget, seed=config.seed)
        header, rows = TABLE_1_HEADER, table_1_rows(quads)
    elif args.which == '2':
        triples = ed2.enumerate_ed2(P, config.delta_max_for(P), config.trial_bound, config.budget, config.seed)
        header, rows = TABLE_2_HEADER, table_2_rows(triples)
    else:
        triples = ed2.enumerate_ed2(P, config.delta_max_for(P), config.trial_bound, config.budget, config.seed)
        header, rows = ROUNDTRIP_HEADER, roundtrip_rows(xform.roundtrip_report(P, triples, config.trial_bound, config.budget))
    write_csv(stream, header, rows)
    if args.golden:
        expected = list(golden_rows(int(args.which), P))
        if rows != expected:
            print(f'Table {args.which} for P={P} differs from the published rows.', file=sys.stderr)
            return ExitCode.VERIFICATION_FAILURE
    return ExitCode.OK


def cmd_verify(args: argparse.Namespace, config: SolveConfig, stream: TextIO) -> int:
    count = failures = 0
    with open(args.file, encoding='utf-8') as lines:
        for number, parsed in read_records(lines):
            count += 1
            if isinstance(parsed, RecordFormatException):
                failures += 1
                print(f'line {number}: {parsed}', file=sys.stderr)
                continue
            d = verify(parsed['p'], parsed['a'], parsed['b'], parsed['c'])
            if not d.ok:
                failures += 1
                print(f'line {number}: {d.check}: {d.message}', file=sys.stderr)
    stream.write(json.dumps({'records': str(count), 'failures': str(failures)}) + '\n')
    return ExitCode.VERIFICATION_FAILURE if failures else ExitCode.OK


def cmd_density(args: argparse.Namespace, config: SolveConfig, stream: TextIO) -> int:
    residues = args.residues or [0] * len(args.moduli)
    lat = lattice.AffineLattice(tuple(args.moduli), tuple(residues))
    write_csv(stream, DENSITY_HEADER, density_rows(lattice.density_experiment(lat, args.T_list)))
    return ExitCode.OK


def cmd_hitbox(args: argparse.Namespace, config: SolveConfig, stream: TextIO) -> int:
    summary = lattice.hit_box_trials(args.trials, args.g_max, config.seed, args.literal)
    write_csv(stream, HITBOX_HEADER, hitbox_rows(summary))
    return ExitCode.VERIFICATION_FAILURE if summary.failures else ExitCode.OK


def _policy(text: str):
    if text in (Policy.MINIMAL, Policy.CANONICAL):
        return text
    try:
        return parse_decimal(text, '--policy')
    except ValueError:
        raise DomainException(f'--policy must be minimal, canonical or a decimal y, got {text!r}.') from None


def cmd_convolve(args: argparse.Namespace, config: SolveConfig, stream: TextIO) -> int:
    triple = ed2.triple_from(args.delta, args.b, args.c, args.P, trial_bound=config.trial_bound, budget=config.budget)
    if not triple.ok:
        print(f'Not an ED2 triple: {triple.check}: {triple.message}', file=sys.stderr)
        return ExitCode.VERIFICATION_FAILURE
    result = xform.convolve(triple, _policy(args.policy), config.trial_bound, config.budget)
    if config.fmt == 'csv':
        report = xform.RoundtripReport(args.P, (xform.RoundtripRow(triple, result),), 1, int(result.ok))
        write_csv(stream, ROUNDTRIP_HEADER, roundtrip_rows(report))
    else:
        data = {'p': args.P, 'policy': result.policy, 'y': result.y, 'p2': result.P2, 'reason': result.reason,
                'message': result.message, 'quad': result.quad.decomposition.to_record() if result.ok else None}
        stream.write(json.dumps(to_decimal(data), separators=(',', ':')) + '\n')
    return ExitCode.OK


def cmd_anticonvolve(args: argparse.Namespace, config: SolveConfig, stream: TextIO) -> int:
    quad = ed1.quad_from(args.gamma, args.c, args.u, args.v, args.P)
    if not quad.ok:
        print(f'Not an admissible ED1 quad: {quad.check}: {quad.message}', file=sys.stderr)
        return ExitCode.VERIFICATION_FAILURE
    result = xform.anticonvolve(quad, xform.canon_context(args.m, args.o, args.gamma), args.strict)
    data = {'p': args.P, 'a_residue': result.A_residue, 'modulus': result.context.modulus, 'd': result.context.d,
            'canonical': result.canonical, 'violations': list(result.violations),
            'triple': result.triple.decomposition.to_record() if result.triple is not None else None,
            'diagnostic': result.diagnostic}
    stream.write(json.dumps(to_decimal(data), separators=(',', ':')) + '\n')
    return ExitCode.OK


def cmd_direct(args: argparse.Namespace, config: SolveConfig, stream: TextIO) -> int:
    _require_prime(args.P)
    r_max, s_max = (None, None) if args.complete else (config.r_max, config.s_max)
    found = []
    for alpha in config.alphas:
        found.extend(hit.decomposition for hit in appd.direct_search(args.P, alpha, r_max, s_max))
    _emit(config, _records(found, Strategy.DIRECT), stream)
    return ExitCode.OK


def cmd_back(args: argparse.Namespace, config: SolveConfig, stream: TextIO) -> int:
    _require_prime(args.P)
    low, high = appd.window(args.P)
    values = [args.A] if args.A is not None else range(low, high + 1)
    found = []
    for A in values:
        for alpha in config.alphas:
            if A % alpha == 0:
                found.extend(hit.decomposition for hit in appd.back_search(args.P, alpha, A, args.scan))
    _emit(config, _records(found, Strategy.BACK), stream)
    return ExitCode.OK


def cmd_ed1(args: argparse.Namespace, config: SolveConfig, stream: TextIO) -> int:
    _require_prime(args.P)
    quads = ed1.enumerate_ed1(args.P, config.gamma_max_for(args.P), not args.allow_equal,
                              config.trial_bound, config.budget, config.seed)
    _emit(config, _records([q.decomposition for q in quads], Strategy.ED1), stream)
    return ExitCode.OK


def cmd_ed2(args: argparse.Namespace, config: SolveConfig, stream: TextIO) -> int:
    _require_prime(args.P)
    result = ed2.sweep_delta(args.P, config.delta_max_for(args.P), None, counters=args.counters,
                             trial_bound=config.trial_bound, budget=config.budget, seed=config.seed)
    if args.counters:
        rows = [(str(r.delta), r.status, str(r.hits), str(r.counters.S if r.counters else ''),
                 str(r.counters.U if r.counters else '')) for r in result.diagnostics]
        write_csv(stream, ('delta', 'status', 'hits', 'S', 'U'), rows)
    else:
        _emit(config, _records([t.decomposition for t in result.triples], Strategy.ED2), stream)
    return ExitCode.BUDGET if result.budget_exceeded else ExitCode.OK


def _configure_logging(verbose: int) -> None:
    level = logging.WARNING if verbose == 0 else logging.INFO if verbose == 1 else logging.DEBUG
    logging.basicConfig(level=level, stream=sys.stderr, format='%(asctime)s %(name)s %(levelname)s %(message)s')


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _configure_logging(getattr(args, 'verbose', 0) or 0)
    try:
        config = config_from_args(args)
        with open_output(config.out) as stream:
            return args.handler(args, config, stream)
    except DomainException as exc:
        print(f'straus: error: {exc}', file=sys.stderr)
        return ExitCode.USAGE
    except BudgetExceededException as exc:
        print(f'straus: budget: {exc}', file=sys.stderr)
        return ExitCode.BUDGET
    except VerificationException as exc:
        print(f'straus: verification failed: {exc}', file=sys.stderr)
        return ExitCode.VERIFICATION_FAILURE
    except OSError as exc:
        print(f'straus: error: {exc}', file=sys.stderr)
        return ExitCode.USAGE
    except StrausException as exc:
        print(f'straus: error: {exc}', file=sys.stderr)
        return ExitCode.VERIFICATION_FAILURE
