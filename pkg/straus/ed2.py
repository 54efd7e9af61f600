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

"""ED2: solutions with two denominators divisible by P.

A triple (delta, b, c) with 4bc - b - c = P*delta and delta | bc gives
A = bc/delta, B = b*P and C = c*P. Writing delta = alpha*d'**2 with alpha
squarefree, g = alpha*d' divides both b and c, and with b = g*b', c = g*c'
the triple is read off a factor pair X*Y = N of N = 4*alpha*P*d'**2 + 1 via
X = 4*alpha*d'*b' - 1 and Y = 4*alpha*d'*c' - 1.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import AbstractSet, Any, Dict, List, Mapping, Optional, Tuple, Union

from . import arith
from .decomp import Decomposition, Key, Rejection, Verified, verify
from .exceptions import BudgetExceededException, DomainException, VerificationException
from .tags import Check, DeltaStatus, Method
from .utils import ceil_log2, merge_dict

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Ed2Triple(object):
    '''A verified (delta, b, c) for P with the split delta = alpha*d'**2.'''

    P: int
    delta: int
    b: int
    c: int
    alpha: int
    dprime: int
    decomposition: Optional[Decomposition] = field(default=None, compare=False, repr=False)

    ok = True

    @property
    def t(self) -> int:
        return 4 * self.b * self.c - self.b - self.c

    @property
    def g(self) -> int:
        return self.alpha * self.dprime

    @property
    def bprime(self) -> int:
        return self.b // self.g

    @property
    def cprime(self) -> int:
        return self.c // self.g

    @property
    def X(self) -> int:
        return 4 * self.g * self.bprime - 1

    @property
    def Y(self) -> int:
        return 4 * self.g * self.cprime - 1

    @property
    def N(self) -> int:
        return 4 * self.alpha * self.P * self.dprime ** 2 + 1

    @property
    def A(self) -> int:
        return self.b * self.c // self.delta

    @property
    def B(self) -> int:
        return self.b * self.P

    @property
    def C(self) -> int:
        return self.c * self.P

    @property
    def primitive(self) -> bool:
        """gcd(b', c') = 1."""
        return math.gcd(self.bprime, self.cprime) == 1

    def to_params(self) -> Dict[str, int]:
        return {'delta': self.delta, 'b': self.b, 'c': self.c, 'alpha': self.alpha,
                'dprime': self.dprime, 'x': self.X, 'y': self.Y, 'n': self.N}


@dataclass(frozen=True)
class TkPair(object):
    '''(t, k) with D = tk - 1 dividing P + t and kP + 1.'''

    P: int
    t: int
    k: int
    D: int
    delta: int
    a: int


@dataclass(frozen=True)
class NormalizedPair(object):
    d: int
    dprime: int
    bprime: int
    cprime: int
    coprime: bool


@dataclass(frozen=True)
class ProgressionCounters(object):
    '''S counts primes a <= X**2 with a = -1 (mod delta); U also needs a | P + delta.'''

    delta: int
    X: int
    S: int
    U: int


@dataclass
class DeltaReport(object):
    delta: int
    status: str
    hits: int = 0
    counters: Optional[ProgressionCounters] = None


@dataclass
class SweepResult(object):
    P: int
    delta_max: int
    stop_after: Optional[int]
    triples: List[Ed2Triple] = field(default_factory=list)
    diagnostics: List[DeltaReport] = field(default_factory=list)
    stopped_early: bool = False

    @property
    def budget_exceeded(self) -> List[int]:
        return [report.delta for report in self.diagnostics if report.status == DeltaStatus.BUDGET_EXCEEDED]


def default_delta_max(P: int) -> int:
    """max(64, ceil(log2 P)**3)."""
    return max(64, ceil_log2(P) ** 3)


def split_delta(delta: int, trial_bound: int = arith.DEFAULT_TRIAL_BOUND, budget: Optional[int] = arith.DEFAULT_BUDGET) -> Tuple[int, int]:
    """(alpha, d') with delta = alpha*d'**2 and alpha squarefree."""
    if delta < 1:
        raise DomainException(f'delta must be positive, got {delta}.')
    alpha, dprime = 1, 1
    for prime, exponent in arith.factorize(delta, trial_bound, budget).factors:
        alpha *= prime ** (exponent % 2)
        dprime *= prime ** (exponent // 2)
    return alpha, dprime


def triple_from(delta: int, b: int, c: int, P: int, alpha: int = None, dprime: int = None,
                method: str = Method.ED2, params: Mapping[str, Any] = None,
                trial_bound: int = arith.DEFAULT_TRIAL_BOUND, budget: Optional[int] = arith.DEFAULT_BUDGET) -> Union[Ed2Triple, Rejection]:
    """Checks the ED2 relations of (delta, b, c) and verifies the denominators.

    A known split (alpha, d') of delta can be passed in, in which case delta
    is not factored.
    """
    if min(delta, b, c) < 1:
        return Rejection(Check.POSITIVE, f'delta, b, c must be positive: {(delta, b, c)!r}.')
    if 4 * b * c - b - c != P * delta:
        return Rejection(Check.ED2_RELATION, f't = {4 * b * c - b - c} != {P}*{delta}.')
    if (b * c) % delta:
        return Rejection(Check.DIVISIBILITY, f'{delta} does not divide {b}*{c}.')
    if b > c:
        return Rejection(Check.ORDERING, f'b={b} > c={c}.')
    A = b * c // delta
    if A > b * P:
        return Rejection(Check.ORDERING, f'A={A} > b*P={b * P}.')
    if alpha is None or dprime is None:
        alpha, dprime = split_delta(delta, trial_bound, budget)
    g = alpha * dprime
    if alpha * dprime * dprime != delta or b % g or c % g:
        return Rejection(Check.SPLIT, f'g={g} from delta={alpha}*{dprime}**2 does not divide b={b}, c={c}.')
    total = b // g + c // g
    if total % dprime or (total // dprime + P) % 4:
        return Rejection(Check.SPLIT, f"(b'+c')/d' is not -P modulo 4 for b'+c'={total}, d'={dprime}.")
    triple = Ed2Triple(P, delta, b, c, alpha, dprime)
    d = verify(P, A, b * P, c * P, method, merge_dict(triple.to_params(), params or {}))
    if not d.ok:
        return d
    return Ed2Triple(P, delta, b, c, alpha, dprime, d)


def build_from_triple(delta: int, b: int, c: int, P: int, method: str = Method.ED2,
                      params: Mapping[str, Any] = None, alpha: int = None, dprime: int = None) -> Verified:
    """The verified Decomposition (A, bP, cP), or the first failed relation."""
    triple = triple_from(delta, b, c, P, alpha, dprime, method, params)
    return triple.decomposition if triple.ok else triple


def hits_for_delta(P: int, delta: int, trial_bound: int = arith.DEFAULT_TRIAL_BOUND,
                   budget: Optional[int] = arith.DEFAULT_BUDGET, seed: int = 0) -> List[Ed2Triple]:
    """Triples for one delta, ascending in X."""
    alpha, dprime = split_delta(delta, trial_bound, budget)
    q = 4 * alpha * dprime
    N = q * P * dprime + 1
    triples = []
    for X in arith.divisors(arith.factorize(N, trial_bound, budget, seed)):
        Y = N // X
        if X > Y:
            break
        if (X + 1) % q or (Y + 1) % q:
            continue
        g = alpha * dprime
        triple = triple_from(delta, g * (X + 1) // q, g * (Y + 1) // q, P, alpha, dprime)
        if not triple.ok:
            logger.debug('P=%d delta=%d X=%d rejected: %s', P, delta, X, triple.message)
            continue
        triples.append(triple)
    return triples


def progression_counters(P: int, delta: int, X: int = None, trial_bound: int = arith.DEFAULT_TRIAL_BOUND,
                         budget: Optional[int] = arith.DEFAULT_BUDGET) -> ProgressionCounters:
    """S(delta; X) and U(delta; X); X defaults to isqrt(P)."""
    if X is None:
        X = math.isqrt(P)
    residue = (-1) % delta
    S = arith.primes_in_progression(X * X, delta, residue).count
    U = sum(1 for a in arith.factorize(P + delta, trial_bound, budget).primes if a <= X * X and a % delta == residue)
    return ProgressionCounters(delta, X, S, U)


def sweep_delta(P: int, delta_max: int, stop_after: Optional[int] = 2, counters: bool = False, X: int = None,
                trial_bound: int = arith.DEFAULT_TRIAL_BOUND, budget: Optional[int] = arith.DEFAULT_BUDGET,
                seed: int = 0, skip: AbstractSet[Key] = frozenset()) -> SweepResult:
    """Enumerates delta = 1, 2, ... and stops after stop_after triples.

    A delta whose factorization runs out of budget is skipped and reported
    with status budget-exceeded. stop_after=None runs the whole range.
    Triples whose decomposition key is in skip are left out and do not
    count toward stop_after.
    """
    if delta_max < 1:
        raise DomainException(f'delta_max must be positive, got {delta_max}.')
    if stop_after is not None and stop_after < 1:
        raise DomainException(f'stop_after must be positive, got {stop_after}.')
    result = SweepResult(P, delta_max, stop_after)
    for delta in range(1, delta_max + 1):
        try:
            triples = hits_for_delta(P, delta, trial_bound, budget, seed)
        except BudgetExceededException:
            logger.warning('P=%d delta=%d skipped: factorization budget exceeded', P, delta)
            logger.debug('Backtrace', exc_info=True)
            result.diagnostics.append(DeltaReport(delta, DeltaStatus.BUDGET_EXCEEDED))
            continue
        report = DeltaReport(delta, DeltaStatus.HIT if triples else DeltaStatus.NO_FACTOR_PAIR, len(triples))
        if counters:
            report.counters = progression_counters(P, delta, X, trial_bound, budget)
        result.diagnostics.append(report)
        result.triples.extend(triple for triple in triples if triple.decomposition.key not in skip)
        if stop_after is not None and len(result.triples) >= stop_after:
            del result.triples[stop_after:]
            result.stopped_early = True
            break
    logger.debug('ED2 sweep P=%d: %d triples over %d deltas', P, len(result.triples), len(result.diagnostics))
    return result


def enumerate_ed2(P: int, delta_max: int, trial_bound: int = arith.DEFAULT_TRIAL_BOUND,
                  budget: Optional[int] = arith.DEFAULT_BUDGET, seed: int = 0) -> List[Ed2Triple]:
    """All triples with delta <= delta_max, ascending in (delta, X)."""
    return sweep_delta(P, delta_max, None, trial_bound=trial_bound, budget=budget, seed=seed).triples


def tk_parameterize(P: int, t: int, k: int) -> Optional[TkPair]:
    """delta = (P + t)/D and a = (kP + 1)/D for D = tk - 1, when both divide."""
    if t < 1 or k < 1 or t * k <= 1:
        raise DomainException(f'(t, k) = ({t}, {k}) needs t, k >= 1 and tk > 1.')
    D = t * k - 1
    if (P + t) % D or (k * P + 1) % D:
        return None
    delta, a = (P + t) // D, (k * P + 1) // D
    if P + delta != t * a or a != k * delta - 1:
        raise VerificationException(f'(t, k) = ({t}, {k}) breaks P + delta = t*a for P={P}.')
    return TkPair(P, t, k, D, delta, a)


def enumerate_tk(P: int, t_max: int, k_max: int) -> List[TkPair]:
    """Every TkPair over 1 <= t <= t_max, 1 <= k <= k_max, ascending in (t, k)."""
    pairs = []
    for t in range(1, t_max + 1):
        for k in range(1, k_max + 1):
            if t * k > 1:
                pair = tk_parameterize(P, t, k)
                if pair is not None:
                    pairs.append(pair)
    return pairs


def normalize_pair(b_raw: int, c_raw: int, a: int) -> NormalizedPair:
    """d = gcd(b, c), d' = d/a, and the pair divided by d'."""
    if a < 1:
        raise DomainException(f'a must be positive, got {a}.')
    d = math.gcd(b_raw, c_raw)
    if d % a:
        raise DomainException(f'{a} does not divide gcd({b_raw}, {c_raw}) = {d}.')
    dprime = d // a
    bprime, cprime = b_raw // dprime, c_raw // dprime
    coprime = math.gcd(bprime, cprime) == 1
    if not coprime:
        logger.debug('Normalized pair (%d, %d) is not coprime', bprime, cprime)
    return NormalizedPair(d, dprime, bprime, cprime, coprime)
