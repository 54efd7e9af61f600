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

"""The tags implementation."""


class Method(object):
    """Set of provenance tags carried by a decomposition."""

    ED1 = 'ED1'
    ED2 = 'ED2'
    DIRECT = 'DIRECT'
    BACK = 'BACK'
    EXPLICIT_3MOD4 = 'EXPLICIT_3MOD4'
    EXPLICIT_2 = 'EXPLICIT_2'
    TRANSFORM = 'TRANSFORM'

    ALL = (ED1, ED2, DIRECT, BACK, EXPLICIT_3MOD4, EXPLICIT_2, TRANSFORM)


class Profile(object):
    """Set of multiplicity classes."""

    SINGLE_C = 'SINGLE_C'
    DOUBLE_BC = 'DOUBLE_BC'
    INVALID = 'INVALID'


class Check(object):
    """Set of checks a rejection can name."""

    # Decomposition
    PRIME = 'prime'
    POSITIVE = 'positive'
    IDENTITY = 'identity'
    BOUNDS = 'bounds'
    PROFILE = 'profile'

    # ED1
    ED1_RELATION = 'ed1_relation'
    GCD = 'gcd'
    SQUARE = 'square'
    ORDER = 'order'
    CONGRUENCE = 'congruence'
    P_CONGRUENCE = 'p_congruence'

    # ED2
    ED2_RELATION = 'ed2_relation'
    DIVISIBILITY = 'divisibility'
    SPLIT = 'split'
    ORDERING = 'ordering'


class Reason(object):
    """Set of convolution rejection reasons."""

    P2_NOT_PRIME = 'P2_not_prime'
    U_NOT_DIVISOR = 'u_not_divisor'
    CONGRUENCE_FAILURE = 'congruence_failure'
    GCD_FAILURE = 'gcd_failure'
    IDENTITY_FAILURE = 'identity_failure'


class Policy(object):
    """Set of divisor selection policies for convolution."""

    MINIMAL = 'minimal'
    CANONICAL = 'canonical'
    EXPLICIT = 'explicit'


class DeltaStatus(object):
    """Set of per-delta outcomes of a sweep."""

    HIT = 'hit'
    NO_FACTOR_PAIR = 'no-factor-pair'
    BUDGET_EXCEEDED = 'budget-exceeded'


class Status(object):
    """Set of solve outcomes."""

    SOLVED = 'SOLVED'
    EXHAUSTED = 'EXHAUSTED'
    BUDGET = 'BUDGET'


class Strategy(object):
    """Set of solve strategies."""

    EXPLICIT = 'explicit'
    ED2 = 'ed2'
    DIRECT = 'direct'
    BACK = 'back'
    ED1 = 'ed1'

    DEFAULT = (EXPLICIT, ED2, DIRECT, BACK, ED1)


class HitBox(object):
    """Set of hit-box diagnostics."""

    LITERAL = 'literal'
    DIAGONAL_MISS_CORRECTED = 'diagonal_miss_corrected'
    DIAGONAL_MISS = 'diagonal_miss'


class ExitCode(object):
    """Set of process exit codes."""

    OK = 0
    VERIFICATION_FAILURE = 2
    EXHAUSTED = 3
    BUDGET = 4
    USAGE = 64
