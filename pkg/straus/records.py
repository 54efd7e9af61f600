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

"""JSONL records of solved decompositions."""

import json
from typing import Any, Dict, Iterable, Iterator, Mapping, Optional, Tuple, Union

from .decomp import Decomposition, verify
from .exceptions import RecordFormatException, VerificationException
from .utils import merge_dict, parse_decimal, to_decimal

Parsed = Dict[str, Any]


class ResultRecord(object):
    '''Represents a decomposition found by a strategy.'''

    def __init__(self, decomposition: Decomposition, strategy: str, elapsed: float = None, diagnostics: Mapping[str, Any] = None) -> None:
        self._decomposition = decomposition
        self._strategy = strategy
        self._elapsed = elapsed
        self._diagnostics = dict(diagnostics or {})

    def __repr__(self):
        return '<{0.__module__}.{0.__name__} (P="{1}", denominators="{2}", strategy="{3}")>'.format(
            type(self), self.P, self.denominators, self._strategy)

    def __eq__(self, other):
        return isinstance(other, ResultRecord) and self.to_dict() == other.to_dict()

    @property
    def decomposition(self) -> Decomposition:
        """The verified decomposition."""
        return self._decomposition

    @property
    def P(self) -> int:
        return self._decomposition.P

    @property
    def denominators(self) -> Tuple[int, int, int]:
        return self._decomposition.denominators

    @property
    def method(self) -> str:
        """The engine that produced the decomposition."""
        return self._decomposition.method

    @property
    def strategy(self) -> str:
        """The strategy that succeeded."""
        return self._strategy

    @property
    def elapsed(self) -> Optional[float]:
        """Seconds spent in the strategy."""
        return self._elapsed

    @property
    def diagnostics(self) -> Dict[str, Any]:
        return self._diagnostics

    def to_dict(self, timing: bool = False) -> Dict[str, Any]:
        record = merge_dict(self._decomposition.to_record(),
                            {'strategy': self._strategy, 'diagnostics': to_decimal(self._diagnostics)})
        if timing and self._elapsed is not None:
            record['elapsed'] = f'{self._elapsed:.6f}'
        return record

    def to_json(self, timing: bool = False) -> str:
        """One JSON line; stable key order so equal records give equal bytes."""
        return json.dumps(self.to_dict(timing), separators=(',', ':'))

    @classmethod
    def from_json(cls, text: str) -> 'ResultRecord':
        """Parses and re-verifies one line.

        Raises:
            RecordFormatException: The line is not a record.
            VerificationException: The denominators fail verification.
        """
        parsed = parse_record(text)
        d = verify(parsed['p'], parsed['a'], parsed['b'], parsed['c'], parsed['method'] or None, parsed['params'])
        if not d.ok:
            raise VerificationException(f"Record for P={parsed['p']} rejected at {d.check}: {d.message}", d)
        return cls(d, parsed['strategy'], diagnostics=parsed['diagnostics'])


def parse_record(text: str) -> Parsed:
    """A record line as integers p, a, b, c plus method, params, strategy, diagnostics."""
    try:
        data = json.loads(text)
    except ValueError as exc:
        raise RecordFormatException(f'Not JSON: {exc}') from exc
    if not isinstance(data, dict):
        raise RecordFormatException(f'Expected an object, got {type(data).__name__}.')
    parsed = {}
    for key in ('p', 'a', 'b', 'c'):
        if key not in data:
            raise RecordFormatException(f'Missing field {key!r}.')
        if not isinstance(data[key], str):
            raise RecordFormatException(f'Field {key!r} must be a decimal string.')
        try:
            parsed[key] = parse_decimal(data[key], key)
        except ValueError as exc:
            raise RecordFormatException(str(exc)) from exc
    params = data.get('params', {})
    if not isinstance(params, dict):
        raise RecordFormatException('Field params must be an object.')
    parsed['method'] = data.get('method', '')
    parsed['params'] = params
    parsed['strategy'] = data.get('strategy', '')
    parsed['diagnostics'] = data.get('diagnostics', {})
    return parsed


def read_records(lines: Iterable[str]) -> Iterator[Tuple[int, Union[Parsed, RecordFormatException]]]:
    """(line number, parsed record or the parse error) for every non-blank line."""
    for number, line in enumerate(lines, 1):
        if not line.strip():
            continue
        try:
            yield number, parse_record(line)
        except RecordFormatException as exc:
            yield number, exc


def write_records(records: Iterable[ResultRecord], stream, timing: bool = False) -> int:
    count = 0
    for record in records:
        stream.write(record.to_json(timing) + '\n')
        count += 1
    return count
