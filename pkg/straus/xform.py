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

"""Transitions between the two parameterizations.

Convolution takes an ED2 triple to an ED1 quad at the prime P'' = (4c - 1)/y
for a divisor y = 3 (mod 4) of 4c - 1. Anticonvolution recovers the minimal
denominator of an ED1 quad modulo m*o from d = y^-1 (mod m*o).
"""

import logging
import math
from dataclasses import dataclass, replace
from typing import Any, Iterable, List, Optional, Tuple, Union

from . import arith, ed1, ed2
from .exceptions import DomainException, VerificationException
from .tags import Check, Policy, Reason

logger = logging.getLogger(__name__)

_REASONS = {
    Check.GCD: Reason.GCD_FAILURE,
    Check.SQUARE: Reason.U_NOT_DIVISOR,
    Check.ED1_RELATION: Reason.IDENTITY_FAILURE,
    Check.IDENTITY: Reason.IDENTITY_FAILURE,
}


@dataclass(frozen=True)
class ConvolutionResult(object):
    source: Any
    policy: Union[str, int]
    y: Optional[int] = None
    P2: Optional[int] = None
    quad: Optional[ed1.Ed1Quad] = None
    reason: Optional[str] = None
    message: str = ''

    @property
    def ok(self) -> bool:
        return self.quad is not None


@dataclass(frozen=True)
class CanonContext(object):
    m: int
    o: int
    y: int
    d: int

    @property
    def modulus(self) -> int:
        return self.m * self.o


@dataclass(frozen=True)
class AnticonvolutionResult(object):
    quad: ed1.Ed1Quad
    context: CanonContext
    A_residue: int
    canonical: bool
    violations: Tuple[str, ...] = ()
    triple: Optional[ed2.Ed2Triple] = None
    diagnostic: str = ''


@dataclass(frozen=True)
class RoundtripRow(object):
    triple: ed2.Ed2Triple
    result: ConvolutionResult


@dataclass(frozen=True)
class RoundtripReport(object):
    P: int
    rows: Tuple[RoundtripRow, ...] = ()
    sources: int = 0
    images: int = 0

    @property
    def compression(self) -> bool:
        return self.images < self.sources

    @property
    def expansion(self) -> bool:
        return self.images > self.sources


def _select(triple: ed2.Ed2Triple, s: int, policy: Union[str, int], trial_bound: int, budget: Optional[int]) -> Tuple[Optional[int], str]:
    if isinstance(policy, int) and not isinstance(policy, bool):
        if policy < 1 or s % policy or policy % 4 != 3:
            return None, f'y={policy} is not a divisor of {s} that is 3 modulo 4.'
        return policy, ''
    if policy == Policy.CANONICAL:
        if s % triple.P:
            return None, f'P={triple.P} does not divide 4c - 1 = {s}.'
        return s // triple.P, ''
    if policy == Policy.MINIMAL:
        for y in arith.divisors(arith.factorize(s, trial_bound, budget)):
            if y % 4 == 3:
                return y, ''
        return None, f'No divisor of {s} is 3 modulo 4.'
    raise DomainException(f'There is no convolution policy: {policy!r}.')


def _admissible(source: Any, policy: Union[str, int], y: int, c: int, u: int, P2: int) -> ConvolutionResult:
    """Runs the ED1 admissibility of (y, c, u, c**2/u) at modulus P2."""
    if u < 1 or (c * c) % u:
        return ConvolutionResult(source, policy, y, P2, reason=Reason.U_NOT_DIVISOR, message=f'u={u} does not divide {c}**2.')
    u, v = sorted((u, c * c // u))
    quad = ed1.quad_from(y, c, u, v, P2)
    if not quad.ok:
        reason = _REASONS.get(quad.check, Reason.CONGRUENCE_FAILURE)
        return ConvolutionResult(source, policy, y, P2, reason=reason, message=quad.message)
    return ConvolutionResult(source, policy, y, P2, quad)


def convolve(triple: ed2.Ed2Triple, policy: Union[str, int] = Policy.MINIMAL,
             trial_bound: int = arith.DEFAULT_TRIAL_BOUND, budget: Optional[int] = arith.DEFAULT_BUDGET) -> ConvolutionResult:
    """ED2 triple to ED1 quad at P'' = (4c - 1)/y.

    The policy is 'minimal' (least y = 3 mod 4 dividing 4c - 1), 'canonical'
    (y = (4c - 1)/P, no fallback) or an explicit y. After selection the
    checks run in a fixed order: P'' prime, gcd(y, c) = 1, u | c**2, then
    the remaining congruences. The first failure is the reason.
    """
    s = 4 * triple.c - 1
    y, message = _select(triple, s, policy, trial_bound, budget)
    if y is None:
        return ConvolutionResult(triple, policy, reason=Reason.CONGRUENCE_FAILURE, message=message)
    P2 = s // y
    if not arith.is_prime(P2):
        return ConvolutionResult(triple, policy, y, P2, reason=Reason.P2_NOT_PRIME, message=f"P''={P2} is not prime.")
    if math.gcd(y, triple.c) != 1:
        return ConvolutionResult(triple, policy, y, P2, reason=Reason.GCD_FAILURE, message=f'gcd({y}, {triple.c}) != 1.')
    return _admissible(triple, policy, y, triple.c, y * triple.A - triple.c, P2)


def convolve_from_ed1_origin(source: Any, u: int = None) -> ConvolutionResult:
    """Reads an ED1 quad off a solution with P | C and P | 4c - 1, c = C/P.

    source is anything with P, A, B and C. When u is given (or source has
    one) it must equal gamma*A - c.
    """
    P, A, B, C = source.P, source.A, source.B, source.C
    if C % P or (4 * (C // P) - 1) % P:
        return ConvolutionResult(source, Policy.CANONICAL, reason=Reason.CONGRUENCE_FAILURE,
                                 message=f'P={P} does not divide C={C} and 4c - 1.')
    c = C // P
    gamma = (4 * c - 1) // P
    expected = gamma * A - c
    if u is None:
        u = getattr(source, 'u', expected)
    if u != expected or (gamma * A - c) * (gamma * B - c) != c * c:
        return ConvolutionResult(source, Policy.CANONICAL, gamma, P, reason=Reason.IDENTITY_FAILURE,
                                 message=f'(gamma*A - c)(gamma*B - c) = c**2 fails for u={u}.')
    if math.gcd(gamma, c) != 1:
        return ConvolutionResult(source, Policy.CANONICAL, gamma, P, reason=Reason.GCD_FAILURE, message=f'gcd({gamma}, {c}) != 1.')
    if gamma % 4 != 3:
        return ConvolutionResult(source, Policy.CANONICAL, gamma, P, reason=Reason.CONGRUENCE_FAILURE, message=f'gamma={gamma} is not 3 modulo 4.')
    return _admissible(source, Policy.CANONICAL, gamma, c, u, P)


def canon_context(m: int, o: int, y: int) -> CanonContext:
    if m < 1 or o < 1 or math.gcd(m, o) != 1:
        raise DomainException(f'm={m} and o={o} must be coprime.')
    if math.gcd(y, m * o) != 1:
        raise DomainException(f'gcd(y={y}, m*o={m * o}) is not 1.')
    return CanonContext(m, o, y, arith.mod_inverse(y, m * o))


def _canon_violations(quad: ed1.Ed1Quad, ctx: CanonContext) -> List[str]:
    conditions = (
        ('gcd(y, c) = 1', math.gcd(ctx.y, quad.c) == 1),
        ('gcd(u, v) = 1', math.gcd(quad.u, quad.v) == 1),
        ('u < v', quad.u < quad.v),
        ('u = -c (mod y)', (quad.u + quad.c) % ctx.y == 0),
        ('0 < c < min(m, o)', 0 < quad.c < min(ctx.m, ctx.o)),
    )
    return [name for name, holds in conditions if not holds]


def anticonvolve(quad: ed1.Ed1Quad, ctx: CanonContext, strict: bool = False) -> AnticonvolutionResult:
    """A = d*(u + c) (mod m*o), and the ED2 triple when P | B.

    The congruence needs only y = gamma and gcd(y, m*o) = 1. Membership of
    the canonical subclass is reported; strict=True raises on the first
    violated condition instead.
    """
    if ctx.y != quad.gamma:
        raise DomainException(f'Context y={ctx.y} differs from gamma={quad.gamma}.')
    violations = _canon_violations(quad, ctx)
    if strict and violations:
        raise DomainException(f'Canonical condition {violations[0]} fails for {quad!r}.')
    residue = ctx.d * (quad.u + quad.c) % ctx.modulus
    if residue != quad.A % ctx.modulus:
        raise VerificationException(f'd*(u + c) = {residue} differs from A={quad.A} modulo {ctx.modulus}.')
    result = AnticonvolutionResult(quad, ctx, residue, not violations, tuple(violations))
    if quad.B % quad.P:
        return replace(result, diagnostic=f'P={quad.P} does not divide B={quad.B}.')
    b, c = sorted((quad.B // quad.P, quad.C // quad.P))
    if (b * c) % quad.A:
        return replace(result, diagnostic=f'A={quad.A} does not divide b*c={b * c}.')
    triple = ed2.triple_from(b * c // quad.A, b, c, quad.P)
    if not triple.ok:
        return replace(result, diagnostic=triple.message)
    return replace(result, triple=triple)


def roundtrip_report(P: int, triples: Iterable[ed2.Ed2Triple],
                     trial_bound: int = arith.DEFAULT_TRIAL_BOUND, budget: Optional[int] = arith.DEFAULT_BUDGET) -> RoundtripReport:
    """Every policy on every triple: minimal, canonical and each explicit y."""
    rows, sources, images = [], 0, set()
    for triple in triples:
        sources += 1
        s = 4 * triple.c - 1
        explicit = [y for y in arith.divisors(arith.factorize(s, trial_bound, budget)) if y % 4 == 3]
        for policy in [Policy.MINIMAL, Policy.CANONICAL] + explicit:
            result = convolve(triple, policy, trial_bound, budget)
            rows.append(RoundtripRow(triple, result))
            if result.ok:
                images.add(result.quad.decomposition.key)
    report = RoundtripReport(P, tuple(rows), sources, len(images))
    logger.info('Round trip P=%d: %d sources, %d images', P, report.sources, report.images)
    return report
