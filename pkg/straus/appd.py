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

"""Factorization-free engines over the target window of the minimal denominator.

With m = 4A - P and M = A/alpha, a solution with two multiples of P is a
pair (b', c') with b'c' = M and b' + c' = m*d'. The direct engine walks a
grid of (r, s) = (d', b') and tests one congruence per cell; the back engine
walks points (u, v) = (b' + c', b' - c') with m | u and u**2 - v**2 = 4M.
Both hand their hits to the ED2 verifier with the split already known.
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Optional, Set, Tuple

from . import arith, ed2
from .decomp import Decomposition
from .exceptions import DomainException, VerificationException
from .tags import Method

logger = logging.getLogger(__name__)

DEFAULT_GRID = 8

Node = Tuple[int, int, int]


@dataclass(frozen=True)
class WindowParams(object):
    '''The quantities attached to one A of the window.'''

    P: int
    A: int
    alpha: int
    m: int
    M: int
    L: Fraction
    U: Fraction
    L_int: int
    U_int: int
    T: int

    @property
    def in_window(self) -> bool:
        return self.L_int <= self.A <= self.U_int


@dataclass(frozen=True)
class WindowCount(object):
    P: int
    enumerated: int
    formula: int
    mismatch: bool


@dataclass(frozen=True)
class LeftParam(object):
    '''A(P) = lam*P + mu on the cell (r, s), valid when M_rs | 4*alpha*s**2 + P.'''

    r: int
    s: int
    alpha: int
    M_rs: int
    lam: Fraction
    mu: Fraction

    def A_at(self, P: int) -> Fraction:
        return self.lam * P + self.mu


@dataclass(frozen=True)
class UvPoint(object):
    u: int
    v: int
    m: int

    @property
    def S(self) -> int:
        return self.u

    @property
    def Delta(self) -> int:
        return self.v * self.v

    @property
    def bprime(self) -> int:
        return (self.u + self.v) // 2

    @property
    def cprime(self) -> int:
        return (self.u - self.v) // 2

    @property
    def dprime(self) -> int:
        return self.u // self.m


@dataclass(frozen=True)
class DirectHit(object):
    left: LeftParam
    m: int
    decomposition: Decomposition


@dataclass(frozen=True)
class BackHit(object):
    A: int
    point: UvPoint
    decomposition: Decomposition


@dataclass(frozen=True)
class CoverageVerdict(object):
    covered: bool
    targets: int
    hits: int
    uncovered: Tuple[Node, ...]


def window(P: int) -> Tuple[int, int]:
    """Integer endpoints of [P/4 + 3/4, 3P/4 - 3/4]; empty for P = 3."""
    if P < 3 or P % 2 == 0:
        raise DomainException(f'The window is defined for odd P >= 3, got {P}.')
    return -(-(P + 3) // 4), (3 * P - 3) // 4


def window_count(P: int) -> WindowCount:
    """Enumerated size of the window against floor(P/2)."""
    low, high = window(P)
    enumerated = max(0, high - low + 1)
    result = WindowCount(P, enumerated, P // 2, enumerated != P // 2)
    if result.mismatch:
        logger.warning('Window of P=%d holds %d integers, floor(P/2) = %d', P, enumerated, P // 2)
    return result


def scan_bound(A: int) -> int:
    """T(A) = isqrt(2A), plus one when 2A is a square."""
    T = math.isqrt(2 * A)
    return T + 1 if T * T == 2 * A else T


def window_params(P: int, A: int, alpha: int = 1) -> WindowParams:
    if alpha < 1 or A % alpha:
        raise DomainException(f'alpha={alpha} does not divide A={A}.')
    if 4 * A <= P:
        raise DomainException(f'm = 4*{A} - {P} is not positive.')
    low, high = window(P)
    return WindowParams(P, A, alpha, 4 * A - P, A // alpha, Fraction(P + 3, 4), Fraction(3 * P - 3, 4),
                        low, high, scan_bound(A))


def prod_sum_equiv(alpha: int, dprime: int, bprime: int, cprime: int, P: int) -> bool:
    """(4a d' b' - 1)(4a d' c' - 1) = 4a P d'**2 + 1, cross-checked against b' + c' = m d'."""
    product = (4 * alpha * dprime * bprime - 1) * (4 * alpha * dprime * cprime - 1) == 4 * alpha * P * dprime ** 2 + 1
    m = 4 * alpha * bprime * cprime - P
    sum_product = bprime + cprime == m * dprime
    if product != sum_product:
        raise VerificationException(f'Product and sum forms disagree on {(alpha, dprime, bprime, cprime, P)!r}.')
    return product


def quadratic_roots(S: int, M: int) -> Optional[Tuple[int, int]]:
    """Integer roots (larger first) of x**2 - S x + M, if any."""
    if S < 0 or M < 0:
        raise DomainException(f'S and M must be non-negative, got S={S}, M={M}.')
    disc = S * S - 4 * M
    if disc < 0:
        return None
    root = math.isqrt(disc)
    if root * root != disc or (S + root) % 2:
        return None
    return (S + root) // 2, (S - root) // 2


def disc_lower_bound(A: int, alpha: int, P: int) -> int:
    """Smallest d' >= 1 with (4A - P) d' >= 2 sqrt(A/alpha), decided on squares."""
    m = 4 * A - P
    if m <= 0:
        raise DomainException(f'4*{A} must exceed {P}.')
    if alpha < 1 or A % alpha:
        raise DomainException(f'alpha={alpha} does not divide A={A}.')
    target = 4 * (A // alpha)
    d = max(1, math.isqrt(target) // m)
    while d > 1 and (m * (d - 1)) ** 2 >= target:
        d -= 1
    while (m * d) ** 2 < target:
        d += 1
    return d


def affine_coeffs(alpha: int, r: int, s: int) -> Tuple[Fraction, Fraction]:
    """(lam, mu) of A(P) = lam*P + mu; 1/4 < lam <= 1/3."""
    if min(alpha, r, s) < 1:
        raise DomainException(f'alpha, r, s must be positive, got {(alpha, r, s)!r}.')
    M_rs = 4 * alpha * s * r - 1
    lam = Fraction(alpha * s * r, M_rs)
    mu = alpha * s * (Fraction(4 * alpha * r * s * s, M_rs) - s)
    if not Fraction(1, 4) < lam <= Fraction(1, 3):
        raise VerificationException(f'Slope {lam} of cell {(alpha, r, s)!r} leaves (1/4, 1/3].')
    return lam, mu


def left_param(alpha: int, r: int, s: int) -> LeftParam:
    lam, mu = affine_coeffs(alpha, r, s)
    return LeftParam(r, s, alpha, 4 * alpha * s * r - 1, lam, mu)


def _reconstruct(P: int, alpha: int, dprime: int, bprime: int, cprime: int, m: int, A: int,
                 path: str, method: str) -> Decomposition:
    g = alpha * dprime
    b, c = sorted((g * bprime, g * cprime))
    params = {'alpha': alpha, 'dprime': dprime, 'bprime': bprime, 'cprime': cprime, 'm': m, 'A': A, 'path': path}
    d = ed2.build_from_triple(alpha * dprime * dprime, b, c, P, method, params, alpha, dprime)
    if not d.ok:
        raise VerificationException(f'{path} hit {params!r} for P={P} failed {d.check}: {d.message}', d)
    return d


def _cell(P: int, alpha: int, r: int, s: int, low: int, high: int) -> Optional[DirectHit]:
    left = left_param(alpha, r, s)
    if not low <= left.A_at(P) <= high:
        return None
    numerator = 4 * alpha * s * s + P
    if numerator % left.M_rs:
        return None
    m = numerator // left.M_rs
    cprime = m * r - s
    A = alpha * s * cprime
    if A != left.A_at(P) or (P + 4 * alpha * s * s) % left.M_rs:
        raise VerificationException(f'Cell {(alpha, r, s)!r} for P={P} broke its affine form.')
    if not prod_sum_equiv(alpha, r, s, cprime, P):
        raise VerificationException(f'Cell {(alpha, r, s)!r} for P={P} fails the product identity.')
    return DirectHit(left, m, _reconstruct(P, alpha, r, s, cprime, m, A, 'direct', Method.DIRECT))


def direct_search(P: int, alpha: int = 1, r_max: Optional[int] = DEFAULT_GRID, s_max: Optional[int] = DEFAULT_GRID) -> List[DirectHit]:
    """Walks the (r, s) grid and keeps the cells whose congruence holds.

    r_max=None and s_max=None select the complete grid: s <= U_int/alpha,
    and for each s, r <= (4 alpha s**2 + P + 1)/(4 alpha s), beyond which
    m < 1.
    """
    if alpha < 1:
        raise DomainException(f'alpha must be positive, got {alpha}.')
    low, high = window(P)
    s_limit = high // alpha if s_max is None else s_max
    hits = []
    for s in range(1, s_limit + 1):
        r_limit = (4 * alpha * s * s + P + 1) // (4 * alpha * s) if r_max is None else r_max
        for r in range(1, r_limit + 1):
            hit = _cell(P, alpha, r, s, low, high)
            if hit is not None:
                hits.append(hit)
    hits.sort(key=lambda hit: (hit.left.r, hit.left.s))
    logger.debug('Direct search P=%d alpha=%d: %d hits', P, alpha, len(hits))
    return hits


def candidate_set_F(P: int, alpha: int, bound: int) -> List[Tuple[int, int]]:
    """Cells (r, s) <= bound with A in the window and the congruence holding."""
    low, high = window(P)
    cells = []
    for r in range(1, bound + 1):
        for s in range(1, bound + 1):
            left = left_param(alpha, r, s)
            if low <= left.A_at(P) <= high and (P + 4 * alpha * s * s) % left.M_rs == 0:
                cells.append((r, s))
    return cells


def divisor_constructor(P: int, alpha: int, s: int, trial_bound: int = arith.DEFAULT_TRIAL_BOUND,
                        budget: Optional[int] = arith.DEFAULT_BUDGET, seed: int = 0) -> List[DirectHit]:
    """Column s of the direct grid read off the divisors of 4 alpha s**2 + P.

    A divisor d = -1 (mod 4 alpha s) is the cell modulus of r = (d + 1)/(4 alpha s).
    Raises BudgetExceededException when the factorization runs out of steps.
    """
    if alpha < 1 or s < 1:
        raise DomainException(f'alpha and s must be positive, got {(alpha, s)!r}.')
    low, high = window(P)
    step = 4 * alpha * s
    hits = []
    for d in arith.divisors(arith.factorize(step * s + P, trial_bound, budget, seed)):
        if (d + 1) % step:
            continue
        hit = _cell(P, alpha, (d + 1) // step, s, low, high)
        if hit is not None:
            hits.append(hit)
    logger.debug('Divisor constructor P=%d alpha=%d s=%d: %d hits', P, alpha, s, len(hits))
    return hits


def back_search(P: int, alpha: int, A: int, scan: str = 'complete') -> List[BackHit]:
    """Points (u, v), v >= 0, with m | u, u = v (mod 2) and u**2 - v**2 = 4M.

    scan='complete' runs u over the multiples of m up to M + 1, past which
    c' < 1; scan='bounded' stops at T(A). Nothing on this path factors.
    """
    params = window_params(P, A, alpha)
    if not params.in_window:
        raise DomainException(f'A={A} lies outside [{params.L_int}, {params.U_int}] for P={P}.')
    if scan == 'complete':
        limit = params.M + 1
    elif scan == 'bounded':
        limit = params.T
    else:
        raise DomainException(f'There is no scan named: {scan!r}.')
    m, M = params.m, params.M
    hits = []
    for u in range(m, limit + 1, m):
        rest = u * u - 4 * M
        if rest < 0:
            continue
        v = math.isqrt(rest)
        if v * v != rest or (u - v) % 2 or v >= u:
            continue
        point = UvPoint(u, v, m)
        d = _reconstruct(P, alpha, point.dprime, point.bprime, point.cprime, m, A, 'back', Method.BACK)
        hits.append(BackHit(A, point, d))
    return hits


def back_nodes(P: int, alpha: int, A_values: Iterable[int]) -> Set[Node]:
    """(A, u, v) nodes reached by the back engine inside the T(A) boxes."""
    nodes = set()
    for A in A_values:
        if A % alpha:
            continue
        for hit in back_search(P, alpha, A, scan='bounded'):
            nodes.add((A, hit.point.u, hit.point.v))
    return nodes


def target_nodes(P: int, A_values: Iterable[int]) -> Set[Node]:
    """Nodes (A, u, v) the bounded back scan visits: m | u, 0 <= v < u <= T(A), u = v (mod 2)."""
    nodes = set()
    for A in A_values:
        m, T = 4 * A - P, scan_bound(A)
        if m <= 0:
            continue
        for u in range(m, T + 1, m):
            for v in range(u % 2, u, 2):
                nodes.add((A, u, v))
    return nodes


def counting_criterion(P: int, A_values: Iterable[int], hits: Iterable[Node]) -> CoverageVerdict:
    """Coverage holds when the hit nodes are at least as many as the target nodes."""
    low, high = window(P)
    A_values = [A for A in A_values if low <= A <= high]
    targets = target_nodes(P, A_values)
    reached = set(hits)
    if not reached <= targets:
        raise DomainException(f'Hits {sorted(reached - targets)[:5]!r} are not target nodes.')
    covered = len(reached) >= len(targets)
    uncovered = () if covered else tuple(sorted(targets - reached))
    return CoverageVerdict(covered, len(targets), len(reached), uncovered)


def bezout_parity(a: int, b: int) -> Optional[Tuple[int, int]]:
    """(p, q) with p*a + q*b = 1 and p odd, or None when gcd(a, b) > 1."""
    old_r, r, old_p, p = a, b, 1, 0
    while r:
        quotient = old_r // r
        old_r, r = r, old_r - quotient * r
        old_p, p = p, old_p - quotient * p
    if abs(old_r) != 1:
        return None
    p = old_p * old_r
    if p % 2 == 0:
        if b % 2 == 0:
            return None
        p += b
    q = (1 - p * a) // b if b else 0
    if p * a + q * b != 1:
        raise VerificationException(f'Bezout pair {(p, q)!r} fails for {(a, b)!r}.')
    return p, q
