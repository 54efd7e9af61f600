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

'''The Solver implementation.'''

import logging
from contextlib import contextmanager
from dataclasses import dataclass, field
from multiprocessing import Pool
from typing import AbstractSet, Iterator, List, Optional, Tuple

from sympy import primerange

from . import arith
from .config import SolveConfig
from .decomp import Key
from .exceptions import DomainException
from .records import ResultRecord
from .strategies import Strategies
from .tags import Status

logger = logging.getLogger(__name__)


@dataclass
class SolveOutcome(object):
    P: int
    status: str
    records: List[ResultRecord] = field(default_factory=list)
    bounds: dict = field(default_factory=dict)

    @property
    def solved(self) -> int:
        return len(self.records)


@dataclass
class SweepSummary(object):
    low: int
    high: int
    outcomes: List[SolveOutcome] = field(default_factory=list)

    @property
    def solved(self) -> List[int]:
        return [outcome.P for outcome in self.outcomes if outcome.status == Status.SOLVED]

    @property
    def exhausted(self) -> List[int]:
        return [outcome.P for outcome in self.outcomes if outcome.status == Status.EXHAUSTED]

    @property
    def budget(self) -> List[int]:
        return [outcome.P for outcome in self.outcomes if outcome.status == Status.BUDGET]

    @property
    def records(self) -> List[ResultRecord]:
        return [record for outcome in self.outcomes for record in outcome.records]


class BaseSolver(Strategies):
    '''Runs the strategy chain on one prime.'''

    def solve(self, P: int = None) -> SolveOutcome:
        '''Runs the strategies in order until stop_after decompositions verify.

        Args:
            P: A prime; defaults to config.P.

        Returns:
            SOLVED with at least one record, BUDGET when nothing was found and
            some factorization ran out of budget, EXHAUSTED otherwise.
        '''

        P = self.config.P if P is None else P
        if P is None or not arith.is_prime(P):
            raise DomainException(f'{P!r} is not a prime.')
        outcome = SolveOutcome(P, Status.EXHAUSTED)
        seen = set()
        budget_exceeded = False
        for name in self.config.strategies:
            remaining = self.config.stop_after - len(outcome.records)
            result = self._execute(name, P, remaining, frozenset(seen))
            budget_exceeded = budget_exceeded or result.budget_exceeded
            outcome.bounds[name] = result.diagnostics
            for d in result.decompositions:
                if d.key in seen or len(outcome.records) >= self.config.stop_after:
                    continue
                seen.add(d.key)
                outcome.records.append(ResultRecord(d, name, result.elapsed, result.diagnostics))
            if len(outcome.records) >= self.config.stop_after:
                break
        if outcome.records:
            outcome.status = Status.SOLVED
        elif budget_exceeded:
            outcome.status = Status.BUDGET
        if outcome.status != Status.SOLVED:
            logger.warning('P=%d finished %s', P, outcome.status)
        else:
            logger.info('P=%d solved with %d records', P, outcome.solved)
        return outcome

    def _execute(self, name: str, P: int, limit: Optional[int], known: AbstractSet[Key]):
        return self.execute(name, P, limit, known)


@contextmanager
def debug_logging(enabled: bool) -> Iterator[None]:
    """Package logger at DEBUG inside the block, restored on exit."""
    package_logger = logging.getLogger(__package__)
    previous = package_logger.level
    if enabled:
        package_logger.setLevel(logging.DEBUG)
    try:
        yield
    finally:
        package_logger.setLevel(previous)


def _solve_one(job: Tuple[SolveConfig, int, bool]) -> SolveOutcome:
    config, P, dev = job
    return Solver(config, dev=dev).solve(P)


class Solver(BaseSolver):
    '''Solves single primes and prime ranges.'''

    def __init__(self, config: SolveConfig = None, dev: bool = False) -> None:
        '''Creates a new instance of the Solver.

        Args:
            config: Bounds, budgets and the worker count.
            dev: Log every strategy run at debug level.
        '''

        self._dev = dev
        super(Solver, self).__init__(config)

    def solve(self, P: int = None) -> SolveOutcome:
        with debug_logging(self._dev):
            return super(Solver, self).solve(P)

    def _execute(self, name: str, P: int, limit: Optional[int], known: AbstractSet[Key]):
        result = self.execute(name, P, limit, known)
        if self._dev:
            logger.debug('Strategy %r on P=%d: %d found in %.3fs, diagnostics %r',
                         name, P, len(result.decompositions), result.elapsed, result.diagnostics)
        return result

    def sweep(self, low: int = None, high: int = None) -> SweepSummary:
        '''Solves every prime in [low, high].

        Workers take primes independently; outcomes come back in ascending P
        whatever the worker count.
        '''

        if low is None or high is None:
            if self.config.P_range is None:
                raise DomainException('No prime range given.')
            low, high = self.config.P_range
        if low < 2 or high < 2:
            raise DomainException(f'Range bounds must be >= 2, got [{low}, {high}].')
        summary = SweepSummary(low, high)
        primes = [int(P) for P in primerange(low, high + 1)]
        if not primes:
            return summary
        jobs = [(self.config, P, self._dev) for P in primes]
        if self.config.workers == 1:
            summary.outcomes = [self.solve(P) for P in primes]
        else:
            with Pool(self.config.workers) as pool:
                summary.outcomes = list(pool.imap(_solve_one, jobs, chunksize=max(1, len(jobs) // (4 * self.config.workers))))
        if summary.exhausted:
            logger.warning('Exhausted primes in [%d, %d]: %r', low, high, summary.exhausted)
        logger.info('Sweep [%d, %d]: %d primes, %d solved', low, high, len(primes), len(summary.solved))
        return summary
