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

"""Decomposition records, the exact verifier and the explicit formulas."""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, Mapping, Optional, Tuple, Union

from . import arith
from .exceptions import DomainException, VerificationException
from .tags import Check, Method, Profile
from .utils import to_decimal

logger = logging.getLogger(__name__)

Key = Tuple[int, int, int, int]


@dataclass(frozen=True)
class Rejection(object):
    '''The first check a candidate failed.'''

    check: str
    message: str

    ok = False

    def __bool__(self) -> bool:
        return False


@dataclass(frozen=True)
class MultiplicityProfile(object):
    '''Which denominators P divides, and the class that pattern belongs to.'''

    flags: Tuple[bool, bool, bool]
    kind: str


@dataclass(frozen=True)
class Decomposition(object):
    '''A verified 4/P = 1/A + 1/B + 1/C with A <= B <= C.

    Equality and hashing use (P, A, B, C) only, so records found by
    different methods compare equal.
    '''

    P: int
    A: int
    B: int
    C: int
    method: Optional[str] = field(default=None, compare=False)
    params: Mapping[str, Any] = field(default_factory=dict, compare=False)
    profile: Optional[MultiplicityProfile] = field(default=None, compare=False)

    ok = True

    @property
    def key(self) -> Key:
        return (self.P, self.A, self.B, self.C)

    @property
    def denominators(self) -> Tuple[int, int, int]:
        return (self.A, self.B, self.C)

    def to_record(self) -> Dict[str, Any]:
        """JSON record, integers as decimal strings."""
        return {
            'p': str(self.P),
            'a': str(self.A),
            'b': str(self.B),
            'c': str(self.C),
            'method': self.method or '',
            'params': to_decimal(dict(self.params)),
        }


Verified = Union[Decomposition, Rejection]


def bounds_check(P: int, A: int) -> bool:
    """P < 4A < 3P for the minimal denominator A."""
    return P < 4 * A < 3 * P


def _profile(P: int, A: int, B: int, C: int) -> MultiplicityProfile:
    flags = (A % P == 0, B % P == 0, C % P == 0)
    if flags == (False, False, True):
        kind = Profile.SINGLE_C
    elif flags == (False, True, True):
        kind = Profile.DOUBLE_BC
    else:
        kind = Profile.INVALID
    return MultiplicityProfile(flags, kind)


def verify(P: int, A: int, B: int, C: int, method: Optional[str] = None, params: Mapping[str, Any] = None) -> Verified:
    """The single gate every emitted decomposition passes.

    Denominators may come in any order; they are stored ascending. Checks
    run in a fixed order and the first failure is reported:
    prime, positive, identity, bounds (skipped for P <= 3), profile.
    """
    if not arith.is_prime(P):
        return Rejection(Check.PRIME, f'{P} is not prime.')
    if min(A, B, C) < 1:
        return Rejection(Check.POSITIVE, f'Denominators must be positive: {(A, B, C)!r}.')
    A, B, C = sorted((A, B, C))
    if not arith.check_unit_fraction_identity(P, A, B, C):
        return Rejection(Check.IDENTITY, f'4/{P} != 1/{A} + 1/{B} + 1/{C}.')
    if P > 3 and not bounds_check(P, A):
        return Rejection(Check.BOUNDS, f'{P} < 4*{A} < 3*{P} fails.')
    profile = _profile(P, A, B, C)
    if profile.kind == Profile.INVALID:
        return Rejection(Check.PROFILE, f'Divisibility pattern {profile.flags!r} contradicts the multiplicity lemmas.')
    return Decomposition(P, A, B, C, method, dict(params or {}), profile)


def verified(P: int, A: int, B: int, C: int, method: Optional[str] = None, params: Mapping[str, Any] = None) -> Decomposition:
    """Like verify, but a rejection raises VerificationException."""
    result = verify(P, A, B, C, method, params)
    if not result.ok:
        raise VerificationException(f'({P}; {A}, {B}, {C}) rejected at {result.check}: {result.message}', result)
    return result


def classify_multiplicity(d: Decomposition) -> MultiplicityProfile:
    profile = _profile(d.P, d.A, d.B, d.C)
    if profile.kind == Profile.INVALID:
        raise VerificationException(f'Divisibility pattern {profile.flags!r} of {d.key!r} contradicts the multiplicity lemmas.')
    return profile


def explicit_3mod4(P: int) -> Tuple[Decomposition, Decomposition]:
    """The two closed forms for P = 4P' + 3.

    The first form has B = C = 2(P'+1)P, the second has distinct
    denominators except when P = 3, where both forms give (1, 6, 6).
    """
    if P % 4 != 3:
        raise DomainException(f'{P} is not 3 modulo 4.')
    k = (P - 3) // 4
    first = verified(P, k + 1, 2 * (k + 1) * P, 2 * (k + 1) * P, Method.EXPLICIT_3MOD4, {'pprime': k, 'form': 1})
    second = verified(P, k + 1, (k + 2) * P, (k + 1) * (k + 2) * P, Method.EXPLICIT_3MOD4, {'pprime': k, 'form': 2})
    if first.key == second.key:
        logger.warning('Both closed forms coincide for P=%d: %r', P, first.denominators)
    return first, second


def explicit_2() -> Decomposition:
    """4/2 = 1/1 + 1/2 + 1/2."""
    return verified(2, 1, 2, 2, Method.EXPLICIT_2)


def check_b_multiple_impossible(P: int, gamma: int) -> bool:
    """True when B = bP cannot occur in an ED1 solution, which needs 3*gamma*P <= 5."""
    return 3 * gamma * P > 5
