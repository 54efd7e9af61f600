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

"""Exact integer kernel: primality, factorization, divisors and symbols.

Everything here is a pure function of its arguments. Randomized splitting is
seeded from the number being split, so a factorization is reproducible.
"""

import logging
import math
import random
from dataclasses import dataclass
from itertools import count
from typing import Dict, List, Optional, Tuple

from sympy import sieve

from .exceptions import BudgetExceededException, DomainException

logger = logging.getLogger(__name__)

SMALL_PRIMES = (3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59)

# (bound, bases): the strong-pseudoprime test to these bases is exact below bound.
_WITNESS_SETS = (
    (2047, (2,)),
    (1373653, (2, 3)),
    (9080191, (31, 73)),
    (25326001, (2, 3, 5)),
    (3215031751, (2, 3, 5, 7)),
    (4759123141, (2, 7, 61)),
    (1122004669633, (2, 13, 23, 1662803)),
    (2152302898747, (2, 3, 5, 7, 11)),
    (3474749660383, (2, 3, 5, 7, 11, 13)),
    (341550071728321, (2, 3, 5, 7, 11, 13, 17)),
    (3825123056546413051, (2, 3, 5, 7, 11, 13, 17, 19, 23)),
    (18446744073709551616, (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)),
    (3317044064679887385961981, (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)),
)

DEFAULT_TRIAL_BOUND = 1000
DEFAULT_BUDGET = 200000


@dataclass(frozen=True)
class Factorization(object):
    '''Prime factorization of base as increasing (prime, exponent) pairs.'''

    base: int
    factors: Tuple[Tuple[int, int], ...] = ()

    def __post_init__(self) -> None:
        product = 1
        previous = 1
        for prime, exponent in self.factors:
            if prime <= previous or exponent < 1:
                raise DomainException(f'Malformed factorization of {self.base}: {self.factors!r}.')
            previous = prime
            product *= prime ** exponent
        if product != self.base:
            raise DomainException(f'Factors {self.factors!r} do not multiply to {self.base}.')

    @classmethod
    def from_dict(cls, base: int, exponents: Dict[int, int]) -> 'Factorization':
        return cls(base, tuple(sorted((p, e) for p, e in exponents.items() if e)))

    @property
    def primes(self) -> List[int]:
        return [prime for prime, _ in self.factors]

    def as_dict(self) -> Dict[int, int]:
        return dict(self.factors)

    def divisor_count(self) -> int:
        """tau(base), the number of divisors."""
        result = 1
        for _, exponent in self.factors:
            result *= exponent + 1
        return result

    def power(self, k: int) -> 'Factorization':
        """Factorization of base**k without factoring again."""
        return Factorization(self.base ** k, tuple((p, e * k) for p, e in self.factors))


class _BudgetSpent(Exception):
    pass


class _Budget(object):
    '''Counts rho iterations against a cap shared by all cofactors of one call.'''

    def __init__(self, limit: Optional[int]) -> None:
        self.limit = limit
        self.spent = 0

    def spend(self, steps: int) -> None:
        self.spent += steps
        if self.limit is not None and self.spent > self.limit:
            raise _BudgetSpent()


def gcd(a: int, b: int) -> int:
    """Greatest common divisor; gcd(0, 0) = 0."""
    return math.gcd(a, b)


def mod_inverse(a: int, modulus: int) -> int:
    """Inverse of a modulo modulus. Every residue is 0 modulo 1."""
    if modulus < 1:
        raise DomainException(f'Modulus must be positive, got {modulus}.')
    if modulus == 1:
        return 0
    try:
        return pow(a, -1, modulus)
    except ValueError:
        raise DomainException(f'{a} is not invertible modulo {modulus}.') from None


def is_square(n: int) -> bool:
    if n < 0:
        return False
    root = math.isqrt(n)
    return root * root == n


def _strong_probable_prime(n: int, base: int) -> bool:
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    x = pow(base, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = pow(x, 2, n)
        if x == n - 1:
            return True
    return False


def _strong_lucas_probable_prime(n: int) -> bool:
    if is_square(n):
        return False
    # Selfridge parameters: first D in 5, -7, 9, -11, ... with (D/n) = -1.
    for D in count(5, 4):
        j = jacobi(D, n)
        if j == 0:
            return D == n
        if j == -1:
            break
        D = -2 - D
        j = jacobi(D, n)
        if j == 0:
            return -D == n
        if j == -1:
            break
    Q = (1 - D) // 4
    if 1 < math.gcd(n, abs(Q)) < n:
        return False
    d, s = n + 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    # U_k, V_k and Q^k by binary ladder, with P = 1.
    U, V, Qk = 1, 1, Q % n
    inverse_two = (n + 1) // 2
    for bit in bin(d)[3:]:
        U, V = (U * V) % n, (V * V - 2 * Qk) % n
        Qk = (Qk * Qk) % n
        if bit == '1':
            U, V = ((U + V) * inverse_two) % n, ((D * U + V) * inverse_two) % n
            Qk = (Qk * Q) % n
    if U == 0 or V == 0:
        return True
    for _ in range(s - 1):
        V = (V * V - 2 * Qk) % n
        if V == 0:
            return True
        Qk = (Qk * Qk) % n
    return False


def is_prime(n: int) -> bool:
    """Exact primality.

    Below 3317044064679887385961981 a strong-pseudoprime test with a witness
    set proven exhaustive for that range decides. Above it the Baillie-PSW
    test (base-2 strong test plus strong Lucas test) decides; no composite
    passing it is known.
    """
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for p in SMALL_PRIMES:
        if n % p == 0:
            return n == p
    if n < 61 * 61:
        return True
    for bound, bases in _WITNESS_SETS:
        if n < bound:
            return all(_strong_probable_prime(n, a) for a in bases)
    return _strong_probable_prime(n, 2) and _strong_lucas_probable_prime(n)


def _pollard_brent(n: int, rng: random.Random, budget: _Budget) -> int:
    '''A nontrivial factor of the odd composite n.'''
    while True:
        y, c = rng.randrange(1, n), rng.randrange(1, n)
        batch = rng.randrange(1, min(n, 128))
        g, r, q = 1, 1, 1
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            budget.spend(r)
            k = 0
            while k < r and g == 1:
                ys = y
                steps = min(batch, r - k)
                for _ in range(steps):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                budget.spend(steps)
                g = math.gcd(q, n)
                k += batch
            r *= 2
        if g == n:
            while True:
                ys = (ys * ys + c) % n
                budget.spend(1)
                g = math.gcd(abs(x - ys), n)
                if g > 1:
                    break
        if g != n:
            return g
        logger.debug('Brent cycle closed on %d, retrying with a new constant', n)


def factorize(n: int, trial_bound: int = DEFAULT_TRIAL_BOUND, budget: Optional[int] = DEFAULT_BUDGET, seed: int = 0) -> Factorization:
    """Complete prime factorization of n.

    Args:
        n: A positive integer.
        trial_bound: Trial division runs over the primes up to this bound.
        budget: Cap on Pollard-Brent iterations for the whole call, None for no cap.
        seed: Mixed with n to seed the splitter.

    Returns:
        The Factorization of n; factorize(1) has no factors.

    Raises:
        BudgetExceededException: The cap was hit. The exception carries the
            factorization of the part split so far and the unsplit cofactors.
    """
    if n < 1:
        raise DomainException(f'Only positive integers can be factored, got {n}.')
    exponents: Dict[int, int] = {}
    rest = n
    for p in map(int, sieve.primerange(2, max(trial_bound, 2) + 1)):
        if p * p > rest:
            break
        while rest % p == 0:
            exponents[p] = exponents.get(p, 0) + 1
            rest //= p
    pending = [rest] if rest > 1 else []
    rng = random.Random(n * 1000003 + seed)
    meter = _Budget(budget)
    try:
        while pending:
            m = pending.pop()
            if is_prime(m):
                exponents[m] = exponents.get(m, 0) + 1
                continue
            root = math.isqrt(m)
            if root * root == m:
                pending.extend((root, root))
                continue
            d = 2 if m % 2 == 0 else _pollard_brent(m, rng, meter)
            pending.extend((d, m // d))
    except _BudgetSpent:
        done = 1
        for p, e in exponents.items():
            done *= p ** e
        partial = Factorization.from_dict(done, exponents)
        raise BudgetExceededException(
            f'Factorization of {n} exceeded {budget} rho steps.', number=n, partial=partial, cofactors=sorted(pending + [m])) from None
    return Factorization.from_dict(n, exponents)


def divisors(f: Factorization) -> List[int]:
    """All divisors of f.base in increasing order."""
    result = [1]
    for prime, exponent in f.factors:
        result = [d * prime ** k for d in result for k in range(exponent + 1)]
    return sorted(result)


def jacobi(a: int, n: int) -> int:
    """The Jacobi symbol (a/n) for odd positive n."""
    if n < 1 or n % 2 == 0:
        raise DomainException(f'The Jacobi symbol needs an odd positive modulus, got {n}.')
    a, result = a % n, 1
    while a != 0:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


@dataclass(frozen=True)
class ProgressionCount(object):
    '''Primes p <= x_max with p = residue (mod modulus).'''

    x_max: int
    modulus: int
    residue: int
    count: int
    primes: Optional[Tuple[int, ...]] = None


def primes_in_progression(x_max: int, modulus: int, residue: int, listing: bool = False) -> ProgressionCount:
    """Counts (and optionally lists) primes up to x_max in one residue class."""
    if modulus < 1:
        raise DomainException(f'Modulus must be positive, got {modulus}.')
    if not 0 <= residue < modulus:
        raise DomainException(f'Residue {residue} is not reduced modulo {modulus}.')
    found = [p for p in map(int, sieve.primerange(2, x_max + 1)) if p % modulus == residue] if x_max >= 2 else []
    return ProgressionCount(x_max, modulus, residue, len(found), tuple(found) if listing else None)


def check_unit_fraction_identity(P: int, A: int, B: int, C: int) -> bool:
    """True iff 4/P = 1/A + 1/B + 1/C, by integer cross-multiplication."""
    return 4 * A * B * C == P * (B * C + A * C + A * B)
