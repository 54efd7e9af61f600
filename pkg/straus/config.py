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

"""Solve configuration."""

import os
from dataclasses import asdict, dataclass, fields
from typing import Any, Optional, Tuple

from . import ed1, ed2
from .arith import DEFAULT_BUDGET, DEFAULT_TRIAL_BOUND
from .exceptions import DomainException
from .tags import Strategy
from .utils import merge_dict, parse_decimal

FORMATS = ('jsonl', 'csv')


@dataclass(frozen=True)
class SolveConfig(object):
    '''Bounds, strategy order and output settings of a solve or sweep.

    delta_max and gamma_max left as None are derived from P; r_max and
    s_max as None select the complete direct grid.
    '''

    P: Optional[int] = None
    P_range: Optional[Tuple[int, int]] = None
    strategies: Tuple[str, ...] = Strategy.DEFAULT
    delta_max: Optional[int] = None
    gamma_max: Optional[int] = None
    r_max: Optional[int] = 8
    s_max: Optional[int] = 8
    alphas: Tuple[int, ...] = (1, 2, 3)
    stop_after: int = 2
    trial_bound: int = DEFAULT_TRIAL_BOUND
    budget: int = DEFAULT_BUDGET
    seed: int = 0
    workers: int = 1
    fmt: str = 'jsonl'
    out: Optional[str] = None
    timing: bool = False

    def __post_init__(self):
        for name in ('delta_max', 'gamma_max', 'r_max', 's_max'):
            value = getattr(self, name)
            if value is not None and value < 1:
                raise DomainException(f'{name} must be positive, got {value}.')
        for name in ('stop_after', 'trial_bound', 'budget', 'workers'):
            if getattr(self, name) < 1:
                raise DomainException(f'{name} must be positive, got {getattr(self, name)}.')
        if not self.strategies:
            raise DomainException('The strategy list is empty.')
        unknown = [name for name in self.strategies if name not in Strategy.DEFAULT]
        if unknown:
            raise DomainException(f'Unknown strategies: {unknown!r}.')
        if not self.alphas or min(self.alphas) < 1:
            raise DomainException(f'alphas must be positive, got {self.alphas!r}.')
        if self.fmt not in FORMATS:
            raise DomainException(f'Unknown format {self.fmt!r}, expected one of {FORMATS!r}.')
        if self.P_range is not None and (len(self.P_range) != 2 or min(self.P_range) < 2):
            raise DomainException(f'Prime range bounds must be >= 2, got {self.P_range!r}.')

    @classmethod
    def from_env(cls, environ=None, **overrides: Any) -> 'SolveConfig':
        """Explicit overrides, then ESD_BUDGET on top."""
        environ = os.environ if environ is None else environ
        from_env = {}
        if environ.get('ESD_BUDGET'):
            try:
                from_env['budget'] = parse_decimal(environ['ESD_BUDGET'], 'ESD_BUDGET')
            except ValueError as exc:
                raise DomainException(str(exc)) from exc
        known = {item.name for item in fields(cls)}
        unknown = set(overrides) - known
        if unknown:
            raise DomainException(f'Unknown configuration keys: {sorted(unknown)!r}.')
        return cls(**merge_dict(overrides, from_env))

    def replace(self, **changes: Any) -> 'SolveConfig':
        return type(self)(**merge_dict(asdict(self), changes))

    def delta_max_for(self, P: int) -> int:
        return self.delta_max if self.delta_max is not None else ed2.default_delta_max(P)

    def gamma_max_for(self, P: int) -> int:
        return self.gamma_max if self.gamma_max is not None else ed1.default_gamma_max(P)
