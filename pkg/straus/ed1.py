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

"""ED1: solutions with one denominator divisible by P.

The parameters are (gamma, c, u, v) with 4c - 1 = gamma*P and u*v = c**2;
the denominators are A = (u + c)/gamma, B = (v + c)/gamma and C = c*P.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Union

from . import arith
from .decomp import Decomposition, Rejection, Verified, verify
from .exceptions import BudgetExceededException, DomainException
from .tags import Check, Method
from .utils import ceil_log2

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Ed1Quad(object):
    '''An admissible (gamma, c, u, v) for P with its denominators.'''

    P: int
    gamma: int
    c: int
    u: int
    v: int
    A: int
    B: int
    C: int
    decomposition: Optional[Decomposition] = field(default=None, compare=False, repr=False)

    ok = True

    def identity_holds(self) -> bool:
        """(gamma*A - c)(gamma*B - c) = c**2."""
        return (self.gamma * self.A - self.c) * (self.gamma * self.B - self.c) == self.c * self.c

    def to_params(self) -> Dict[str, int]:
        return {'gamma': self.gamma, 'c': self.c, 'u': self.u, 'v': self.v}


def gamma_min(P: int) -> int:
    """Smallest gamma >= 3 with gamma*P = -1 (mod 4)."""
    if P < 3 or P % 2 == 0:
        raise DomainException(f'gamma_min needs an odd prime, got {P}.')
    gamma = 3
    while (gamma * P) % 4 != 3:
        gamma += 1
    return gamma


def c_of(gamma: int, P: int) -> int:
    """c = (gamma*P + 1)/4."""
    if (gamma * P + 1) % 4:
        raise DomainException(f'4 does not divide {gamma}*{P} + 1.')
    return (gamma * P + 1) // 4


def default_gamma_max(P: int) -> int:
    """4*ceil(log2 P) - 1, moved up into the residue class of gamma_min(P)."""
    gamma = max(4 * ceil_log2(P) - 1, gamma_min(P))
    while (gamma * P) % 4 != 3:
        gamma += 1
    return gamma


def _reject(gamma: int, c: int, u: int, v: int, P: int) -> Optional[Rejection]:
    if 4 * c - 1 != gamma * P:
        return Rejection(Check.ED1_RELATION, f'4*{c} - 1 != {gamma}*{P}.')
    if arith.gcd(gamma, c) != 1:
        return Rejection(Check.GCD, f'gcd({gamma}, {c}) != 1.')
    if u < 1 or u * v != c * c:
        return Rejection(Check.SQUARE, f'{u}*{v} != {c}**2.')
    if u > v:
        return Rejection(Check.ORDER, f'u={u} > v={v}.')
    if (u + c) % gamma or (v + c) % gamma:
        return Rejection(Check.CONGRUENCE, f'u={u} or v={v} is not -{c} modulo {gamma}.')
    if (u + c) % P == 0:
        return Rejection(Check.P_CONGRUENCE, f'u={u} is -{c} modulo {P}.')
    return None


def quad_from(gamma: int, c: int, u: int, v: int, P: int) -> Union[Ed1Quad, Rejection]:
    """Checks the ED1 invariants in order and verifies the denominators."""
    rejection = _reject(gamma, c, u, v, P)
    if rejection is not None:
        return rejection
    A, B, C = (u + c) // gamma, (v + c) // gamma, c * P
    d = verify(P, A, B, C, Method.ED1, {'gamma': gamma, 'c': c, 'u': u, 'v': v})
    if not d.ok:
        return d
    return Ed1Quad(P, gamma, c, u, v, A, B, C, d)


def build_from_quad(gamma: int, c: int, u: int, v: int, P: int) -> Verified:
    """The verified Decomposition of an ED1 quad, or the first failed invariant."""
    quad = quad_from(gamma, c, u, v, P)
    return quad.decomposition if quad.ok else quad


def enumerate_ed1(P: int, gamma_max: int = None, require_distinct: bool = True,
                  trial_bound: int = arith.DEFAULT_TRIAL_BOUND, budget: Optional[int] = arith.DEFAULT_BUDGET,
                  seed: int = 0) -> List[Ed1Quad]:
    """All admissible quads with gamma <= gamma_max, ascending in (gamma, u).

    Args:
        P: An odd prime.
        gamma_max: Largest gamma; defaults to default_gamma_max(P).
        require_distinct: Drop u = v = c, which gives A = B.
        trial_bound, budget, seed: Passed to the factorization of c.

    Raises:
        BudgetExceededException: Factoring some c ran out of budget; the
            message names the gamma.
    """
    first = gamma_min(P)
    if gamma_max is None:
        gamma_max = default_gamma_max(P)
    if gamma_max < first:
        raise DomainException(f'gamma_max={gamma_max} is below gamma_min={first}.')
    quads, seen = [], set()
    for gamma in range(first, gamma_max + 1, 4):
        c = c_of(gamma, P)
        if arith.gcd(gamma, c) != 1:
            continue
        try:
            square = arith.factorize(c, trial_bound, budget, seed).power(2)
        except BudgetExceededException as exc:
            raise BudgetExceededException(f'gamma={gamma}: {exc}', exc.number, exc.partial, exc.cofactors) from exc
        # u <= ((3*gamma - 1)*P - 1)/4 is the cutoff for large divisors.
        cutoff = (3 * gamma - 1) * P - 1
        for u in arith.divisors(square):
            if u > c:
                break
            if require_distinct and u == c:
                continue
            if (u + c) % gamma or (u + c) % P == 0 or 4 * u >= cutoff:
                continue
            quad = quad_from(gamma, c, u, c * c // u, P)
            if not quad.ok:
                logger.debug('gamma=%d u=%d rejected: %s', gamma, u, quad.message)
                continue
            if quad.decomposition.key in seen:
                continue
            seen.add(quad.decomposition.key)
            quads.append(quad)
    logger.info('ED1 for P=%d up to gamma=%d: %d quads', P, gamma_max, len(quads))
    return quads


def count_admissible_pairs(c: int, m: int, a: int, n: int, b: int,
                           trial_bound: int = arith.DEFAULT_TRIAL_BOUND, budget: Optional[int] = arith.DEFAULT_BUDGET) -> int:
    """Number of u | c**2 with u = a (mod m) and u = b^-1 * c**2 (mod n); 0 when gcd(b, n) > 1."""
    if m < 1 or n < 1:
        raise DomainException(f'Moduli must be positive, got m={m}, n={n}.')
    if arith.gcd(b, n) != 1:
        return 0
    target = arith.mod_inverse(b, n) * c * c % n
    square = arith.factorize(c, trial_bound, budget).power(2)
    return sum(1 for u in arith.divisors(square) if u % m == a % m and u % n == target)
