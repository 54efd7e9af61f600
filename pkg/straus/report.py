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

"""CSV writers and the golden tables."""

import csv
import json
import sys
from contextlib import contextmanager
from typing import Iterable, Iterator, List, Sequence, TextIO, Tuple

from . import ed1, ed2, lattice, xform
from .exceptions import DomainException
from .records import ResultRecord

Row = Tuple[str, ...]

TABLE_1_HEADER = ('#', 'gamma', 'A', 'B', 'C', 'c', 'u', 'v', 'uv=c^2', 'congr')
TABLE_2_HEADER = ('#', 'alpha', 'bprime', 'cprime', 'g', 'b', 'c', 'delta', 'X', 'Y', 'N', 'A', 'B', 'C', 'dprime', 'OK')
ROUNDTRIP_HEADER = ('P', 'A', 'B', 'C', 'y', 'c', "P'", "A'", "B'", "C'", 'invariants', 'success', 'policy', 'reason')
DENSITY_HEADER = ('T', 'exact', 'predicted', 'abs_error')
HITBOX_HEADER = ('trials', 'literal', 'corrected', 'misses', 'failures')
RECORD_HEADER = ('p', 'a', 'b', 'c', 'method', 'strategy', 'params')

# Row 4 carries u = 13851; 13851 * 35131 = 22059**2.
_GOLDEN_TABLE_1 = {
    2521: (
        ('1', '15', '638', '51997', '23833534', '9454', '116', '770501', 'OK', 'OK'),
        ('2', '15', '652', '18908', '23833534', '9454', '326', '274166', 'OK', 'OK'),
        ('3', '27', '748', '4004', '42899857', '17017', '3179', '91091', 'OK', 'OK'),
        ('4', '35', '1026', '1634', '55610739', '22059', '13851', '35131', 'OK', 'OK'),
        ('5', '83', '636', '69748', '131876031', '52311', '477', '5736773', 'OK', 'OK'),
        ('6', '83', '658', '14946', '131876031', '52311', '2303', '1188207', 'OK', 'OK'),
    ),
}

_GOLDEN_TABLE_2 = {
    2521: (
        ('1', '1', '4', '161', '3', '12', '483', '9', '47', '1931', '90757', '644', '30252', '1217643', '3', 'OK'),
        ('2', '2', '2', '159', '14', '28', '2226', '98', '111', '8903', '988233', '636', '70588', '5611746', '7', 'OK'),
        ('3', '11', '2', '29', '11', '22', '319', '11', '87', '1275', '110925', '638', '55462', '804199', '1', 'OK'),
    ),
    3529: (
        ('1', '1', '5', '186', '1', '5', '186', '1', '19', '743', '14117', '930', '17645', '656394', '1', 'OK'),
        ('2', '1', '3', '307', '2', '6', '614', '4', '23', '2455', '56465', '921', '21174', '2166806', '2', 'OK'),
        ('3', '1', '3', '296', '13', '39', '3848', '169', '155', '15391', '2385605', '888', '137631', '13579592', '13', 'OK'),
        ('4', '2', '4', '111', '10', '40', '1110', '50', '159', '4439', '705801', '888', '141160', '3917190', '5', 'OK'),
        ('5', '5', '1', '181', '10', '10', '1810', '20', '39', '7239', '282321', '905', '35290', '6387490', '2', 'OK'),
        ('6', '13', '4', '17', '39', '156', '663', '117', '623', '2651', '1651573', '884', '550524', '2339727', '3', 'OK'),
        ('7', '17', '2', '26', '68', '136', '1768', '272', '543', '7071', '3839553', '884', '479944', '6239272', '4', 'OK'),
        ('8', '26', '1', '34', '130', '130', '4420', '650', '519', '17679', '9175401', '884', '458770', '15598180', '5', 'OK'),
    ),
}


def _ok(flag: bool) -> str:
    return 'OK' if flag else 'FAIL'


def golden_rows(which: int, P: int) -> Tuple[Row, ...]:
    """The published rows of table 1 or 2 for P, as decimal strings."""
    tables = {1: _GOLDEN_TABLE_1, 2: _GOLDEN_TABLE_2}
    if which not in tables:
        raise DomainException(f'There is no table {which!r}.')
    if P not in tables[which]:
        raise DomainException(f'Table {which} has no golden rows for P={P}.')
    return tables[which][P]


def table_1_rows(quads: Sequence[ed1.Ed1Quad]) -> List[Row]:
    rows = []
    for n, q in enumerate(quads, 1):
        congr = (q.u + q.c) % q.gamma == 0 and (q.v + q.c) % q.gamma == 0
        rows.append(tuple(str(x) for x in (n, q.gamma, q.A, q.B, q.C, q.c, q.u, q.v))
                    + (_ok(q.u * q.v == q.c * q.c), _ok(congr)))
    return rows


def table_2_rows(triples: Sequence[ed2.Ed2Triple]) -> List[Row]:
    """One row per triple, ordered by (alpha, delta)."""
    rows = []
    ordered = sorted(triples, key=lambda t: (t.alpha, t.delta, t.b))
    for n, t in enumerate(ordered, 1):
        ok = t.X * t.Y == t.N and t.decomposition is not None
        rows.append(tuple(str(x) for x in (n, t.alpha, t.bprime, t.cprime, t.g, t.b, t.c, t.delta,
                                           t.X, t.Y, t.N, t.A, t.B, t.C, t.dprime)) + (_ok(ok),))
    return rows


def roundtrip_rows(report: xform.RoundtripReport) -> List[Row]:
    rows = []
    for row in report.rows:
        t, r = row.triple, row.result
        head = (str(t.P), str(t.A), str(t.B), str(t.C), '' if r.y is None else str(r.y), str(t.c))
        if r.ok:
            q = r.quad
            invariants = 'A,c' if q.A == t.A else 'c'
            tail = (str(r.P2), str(q.A), str(q.B), str(q.C), invariants, 'OK')
        else:
            tail = ('' if r.P2 is None else str(r.P2), '', '', '', '', 'FAIL')
        rows.append(head + tail + (str(r.policy), r.reason or ''))
    return rows


def density_rows(rows: Iterable[lattice.DensityRow]) -> List[Row]:
    return [(str(r.T), str(r.exact), str(r.predicted), str(r.abs_error)) for r in rows]


def hitbox_rows(summary: lattice.HitBoxSummary) -> List[Row]:
    return [tuple(str(x) for x in (summary.trials, summary.literal, summary.corrected, summary.misses, summary.failures))]


def record_rows(records: Iterable[ResultRecord]) -> List[Row]:
    rows = []
    for record in records:
        data = record.to_dict()
        rows.append((data['p'], data['a'], data['b'], data['c'], data['method'], data['strategy'],
                     json.dumps(data['params'], separators=(',', ':'))))
    return rows


def write_csv(stream: TextIO, header: Sequence[str], rows: Iterable[Sequence[str]]) -> None:
    writer = csv.writer(stream, lineterminator='\n')
    writer.writerow(header)
    writer.writerows(rows)


@contextmanager
def open_output(path: str = None) -> Iterator[TextIO]:
    """The file at path, or stdout."""
    if path is None or path == '-':
        yield sys.stdout
        return
    with open(path, 'w', encoding='utf-8', newline='') as stream:
        yield stream
