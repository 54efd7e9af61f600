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

import logging
import time
from dataclasses import dataclass, field
from typing import AbstractSet, Any, Callable, Dict, List, Optional

from . import appd, decomp, ed1, ed2
from .config import SolveConfig
from .decomp import Decomposition, Key
from .exceptions import BudgetExceededException, DomainException
from .tags import Strategy

logger = logging.getLogger(__name__)


@dataclass
class StrategyOutcome(object):
    strategy: str
    P: int
    decompositions: List[Decomposition] = field(default_factory=list)
    budget_exceeded: bool = False
    diagnostics: Dict[str, Any] = field(default_factory=dict)
    elapsed: float = 0.0
    known: AbstractSet[Key] = frozenset()

    def add(self, d: Decomposition, limit: Optional[int]) -> bool:
        """Keeps d unless known or already present; True once limit is reached."""
        if d.key not in self.known and all(d.key != kept.key for kept in self.decompositions):
            self.decompositions.append(d)
        return limit is not None and len(self.decompositions) >= limit


class Strategies(object):
    '''Defines execution for the standard strategies.'''

    def __init__(self, config: SolveConfig = None) -> None:
        '''Creates a new instance of the Strategies.

        Args:
            config: Bounds and budgets. The default is SolveConfig().
        '''

        self.config = config or SolveConfig()
        self._runners: Dict[str, Callable[[int, Optional[int], StrategyOutcome], None]] = {
            Strategy.EXPLICIT: self._explicit,
            Strategy.ED2: self._ed2,
            Strategy.DIRECT: self._direct,
            Strategy.BACK: self._back,
            Strategy.ED1: self._ed1,
        }

    def execute(self, name: str, P: int, limit: Optional[int] = None, known: AbstractSet[Key] = frozenset()) -> StrategyOutcome:
        '''Runs one strategy on P and stops once limit new decompositions are found.

        Decompositions whose key is in known are dropped before they count.
        '''
        runner = self._runners.get(name)
        if runner is None:
            raise DomainException(f'There is no strategy named: {name!r}.')
        outcome = StrategyOutcome(name, P, known=frozenset(known))
        start = time.perf_counter()
        runner(P, limit, outcome)
        outcome.elapsed = time.perf_counter() - start
        return outcome

    def _explicit(self, P: int, limit: Optional[int], outcome: StrategyOutcome) -> None:
        if P == 2:
            outcome.add(decomp.explicit_2(), limit)
        elif P % 4 == 3:
            for d in decomp.explicit_3mod4(P):
                if outcome.add(d, limit):
                    break

    def _ed2(self, P: int, limit: Optional[int], outcome: StrategyOutcome) -> None:
        if P < 3:
            return
        config = self.config
        result = ed2.sweep_delta(P, config.delta_max_for(P), limit, trial_bound=config.trial_bound,
                                 budget=config.budget, seed=config.seed, skip=outcome.known)
        for triple in result.triples:
            outcome.add(triple.decomposition, None)
        if result.budget_exceeded:
            outcome.budget_exceeded = True
            outcome.diagnostics['budget_exceeded'] = result.budget_exceeded
        outcome.diagnostics['delta_max'] = result.delta_max

    def _direct(self, P: int, limit: Optional[int], outcome: StrategyOutcome) -> None:
        if P < 5:
            return
        for alpha in self.config.alphas:
            for hit in appd.direct_search(P, alpha, self.config.r_max, self.config.s_max):
                if outcome.add(hit.decomposition, limit):
                    return

    def _back(self, P: int, limit: Optional[int], outcome: StrategyOutcome) -> None:
        if P < 5:
            return
        low, high = appd.window(P)
        for A in range(low, high + 1):
            for alpha in self.config.alphas:
                if A % alpha:
                    continue
                for hit in appd.back_search(P, alpha, A):
                    if outcome.add(hit.decomposition, limit):
                        return

    def _ed1(self, P: int, limit: Optional[int], outcome: StrategyOutcome) -> None:
        if P < 5:
            return
        config = self.config
        try:
            quads = ed1.enumerate_ed1(P, config.gamma_max_for(P), trial_bound=config.trial_bound,
                                      budget=config.budget, seed=config.seed)
        except BudgetExceededException as exc:
            logger.warning('ED1 for P=%d stopped: %s', P, exc)
            logger.debug('Backtrace', exc_info=True)
            outcome.budget_exceeded = True
            outcome.diagnostics['budget_exceeded'] = str(exc)
            return
        for quad in quads:
            if outcome.add(quad.decomposition, limit):
                return
