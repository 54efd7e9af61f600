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

"""Axis-aligned affine lattices, Type-I boxes and the diagonal kernel lattice."""

import logging
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple

from . import ed2
from .decomp import Decomposition
from .exceptions import DomainException, VerificationException
from .tags import HitBox

logger = logging.getLogger(__name__)

Point = Tuple[int, ...]


@dataclass(frozen=True)
class AffineLattice(object):
    '''Points x with x_i = residues_i (mod moduli_i) on every axis.'''

    moduli: Tuple[int, ...]
    residues: Tuple[int, ...]

    def __post_init__(self):
        if len(self.moduli) != len(self.residues) or not self.moduli:
            raise DomainException(f'Moduli {self.moduli!r} and residues {self.residues!r} do not match.')
        for modulus, residue in zip(self.moduli, self.residues):
            if modulus < 1 or not 0 <= residue < modulus:
                raise DomainException(f'Residue {residue} is not reduced modulo {modulus}.')

    @property
    def k(self) -> int:
        return len(self.moduli)

    @property
    def index(self) -> int:
        return math.prod(self.moduli)

    def contains(self, point: Sequence[int]) -> bool:
        return len(point) == self.k and all(x % m == r for x, m, r in zip(point, self.moduli, self.residues))


@dataclass(frozen=True)
class BoxSpec(object):
    '''Per-axis half-open ranges [lower_i, lower_i + extents_i).'''

    lower: Tuple[int, ...]
    extents: Tuple[int, ...]

    @classmethod
    def type_one(cls, T: int, k: int) -> 'BoxSpec':
        """The cube 1 <= u_i <= T."""
        return cls((1,) * k, (T,) * k)


@dataclass(frozen=True)
class DensityRow(object):
    T: int
    exact: int
    predicted: Fraction
    abs_error: Fraction


@dataclass(frozen=True)
class DiagonalLattice(object):
    '''L = {(u, v): u*b' + v*c' = 0 (mod g)}, spanned by (c', -b') and (d', d').'''

    g: int
    bprime: int
    cprime: int
    alpha_diag: int
    dprime: int

    @property
    def v1(self) -> Tuple[int, int]:
        return self.cprime, -self.bprime

    @property
    def v2(self) -> Tuple[int, int]:
        return self.dprime, self.dprime

    def contains(self, u: int, v: int) -> bool:
        return (u * self.bprime + v * self.cprime) % self.g == 0


@dataclass(frozen=True)
class HitResult(object):
    point: Optional[Tuple[int, int]]
    diagnostic: str
    start: Tuple[int, int]
    steps: int


@dataclass(frozen=True)
class HitBoxSummary(object):
    trials: int
    literal: int
    corrected: int
    misses: int
    failures: int


@dataclass
class BoxSearchResult(object):
    P: int
    T: int
    g: int
    m3: int
    nodes: int = 0
    first_hit: Optional[int] = None
    hits: List[Decomposition] = field(default_factory=list)


@dataclass(frozen=True)
class IterationRow(object):
    P: int
    T: int
    first_hit: Optional[int]


@dataclass(frozen=True)
class IterationReport(object):
    kappa: float
    rows: Tuple[IterationRow, ...]
    mean: Optional[float]
    monotone: bool


def _axis_count(lower: int, extent: int, modulus: int, residue: int) -> int:
    if extent <= 0:
        return 0
    return (lower + extent - 1 - residue) // modulus - (lower - 1 - residue) // modulus


def count_points(lat: AffineLattice, box: BoxSpec) -> int:
    """Exact number of lattice points in the box, one axis at a time."""
    if len(box.lower) != lat.k or len(box.extents) != lat.k:
        raise DomainException(f'Box {box!r} does not have dimension {lat.k}.')
    if any(extent < 0 for extent in box.extents):
        raise DomainException(f'Box extents must be non-negative: {box.extents!r}.')
    return math.prod(_axis_count(lower, extent, modulus, residue)
                     for lower, extent, modulus, residue in zip(box.lower, box.extents, lat.moduli, lat.residues))


def density_experiment(lat: AffineLattice, T_list: Iterable[int]) -> List[DensityRow]:
    """Exact counts of Type-I boxes against T**k/index.

    The error is bounded by 3 * max(moduli) * T**(k - 1).
    """
    constant = 3 * max(lat.moduli)
    rows = []
    for T in T_list:
        exact = count_points(lat, BoxSpec.type_one(T, lat.k))
        predicted = Fraction(T ** lat.k, lat.index)
        error = abs(exact - predicted)
        if error > constant * T ** (lat.k - 1):
            raise VerificationException(f'Count {exact} for T={T} is {error} away from {predicted}.')
        rows.append(DensityRow(T, exact, predicted, error))
    return rows


def ed2_lattice(P: int, g: int, m3: int, delta: int) -> AffineLattice:
    """The class delta (mod m3), b = c = 0 (mod g), of index m3*g**2."""
    if m3 < 1 or m3 % 2 == 0:
        raise DomainException(f'm3={m3} is not odd.')
    if g < 1 or g % m3:
        raise DomainException(f'm3={m3} does not divide g={g}.')
    if math.gcd(m3, P) != 1:
        raise DomainException(f'gcd(m3={m3}, P={P}) is not 1.')
    return AffineLattice((m3, g, g), (delta % m3, 0, 0))


def diagonal_lattice(g: int, bprime: int, cprime: int) -> DiagonalLattice:
    if g < 1 or bprime < 1 or cprime < 1:
        raise DomainException(f"g, b', c' must be positive: {(g, bprime, cprime)!r}.")
    if math.gcd(bprime, g) != 1 or math.gcd(cprime, g) != 1:
        raise DomainException(f"b'={bprime} and c'={cprime} must be prime to g={g}.")
    alpha_diag = math.gcd(g, bprime + cprime)
    dl = DiagonalLattice(g, bprime, cprime, alpha_diag, g // alpha_diag)
    if not dl.contains(*dl.v1) or not dl.contains(*dl.v2):
        raise VerificationException(f'Generators of {dl!r} are not in the lattice.')
    return dl


def unique_representative(x0: int, H: int, modulus: int, residue: int) -> int:
    """The u in [x0, x0 + modulus) with u = residue (mod modulus); needs H >= modulus."""
    if modulus < 1 or H < modulus:
        raise DomainException(f'H={H} is shorter than the modulus {modulus}.')
    return x0 + (residue - x0) % modulus


def hit_box(dl: DiagonalLattice, x0: int, H: int, y0: int, W: int) -> HitResult:
    """A point of L in [x0, x0 + H) x [y0, y0 + W).

    The first coordinate is placed by translating (c', -b') along (d', d').
    When the second coordinate falls outside and W >= g, it is moved along
    the vertical period (0, g).
    """
    if H < dl.dprime or W < dl.dprime:
        raise DomainException(f"The box {H}x{W} is smaller than d'={dl.dprime}.")
    start = dl.v1
    u = unique_representative(x0, H, dl.dprime, start[0])
    steps = (u - start[0]) // dl.dprime
    v = start[1] + steps * dl.dprime
    if not dl.contains(u, v):
        raise VerificationException(f'Diagonal translate {(u, v)!r} left {dl!r}.')
    if y0 <= v < y0 + W:
        return HitResult((u, v), HitBox.LITERAL, start, steps)
    if W >= dl.g:
        v = unique_representative(y0, W, dl.g, v)
        if not dl.contains(u, v):
            raise VerificationException(f'Vertical translate {(u, v)!r} left {dl!r}.')
        return HitResult((u, v), HitBox.DIAGONAL_MISS_CORRECTED, start, steps)
    logger.warning('Diagonal construction misses the box at (%d, %d) for %r', x0, y0, dl)
    return HitResult(None, HitBox.DIAGONAL_MISS, start, steps)


def hit_box_trials(trials: int, g_max: int, seed: int = 0, literal: bool = False, span: int = 1000) -> HitBoxSummary:
    """Random lattices with g <= g_max, b', c' <= 100 and boxes of width d' x d' (or d' x g).

    A failure is a point outside L or the box, a literal point off the
    diagonal coset of the start, or no point when the box is wide enough.
    """
    if trials < 0 or g_max < 1:
        raise DomainException(f'trials={trials} and g_max={g_max} are out of range.')
    rng = random.Random(seed)
    counts = {HitBox.LITERAL: 0, HitBox.DIAGONAL_MISS_CORRECTED: 0, HitBox.DIAGONAL_MISS: 0}
    failures = 0
    for _ in range(trials):
        g = rng.randint(1, g_max)
        bprime, cprime = rng.randint(1, 100), rng.randint(1, 100)
        while math.gcd(bprime, g) != 1:
            bprime = rng.randint(1, 100)
        while math.gcd(cprime, g) != 1:
            cprime = rng.randint(1, 100)
        dl = diagonal_lattice(g, bprime, cprime)
        H = dl.dprime
        W = dl.dprime if literal else max(dl.dprime, dl.g)
        x0, y0 = rng.randint(-span, span), rng.randint(-span, span)
        result = hit_box(dl, x0, H, y0, W)
        counts[result.diagnostic] += 1
        if result.point is None:
            if not literal:
                failures += 1
            continue
        u, v = result.point
        inside = x0 <= u < x0 + H and y0 <= v < y0 + W and dl.contains(u, v)
        if result.diagnostic == HitBox.LITERAL:
            du, dv = u - result.start[0], v - result.start[1]
            inside = inside and du == dv and du % dl.dprime == 0
        if not inside:
            logger.warning('Hit-box failure for %r in box (%d, %d, %d, %d): %r', dl, x0, H, y0, W, result)
            failures += 1
    return HitBoxSummary(trials, counts[HitBox.LITERAL], counts[HitBox.DIAGONAL_MISS_CORRECTED],
                         counts[HitBox.DIAGONAL_MISS], failures)


def box_search(P: int, T: int, alpha: int = 1, dprime: int = 1, m3: int = 1) -> BoxSearchResult:
    """Walks the (delta, b) nodes of the ED2 class in [1, T]**2 and solves for c.

    Nodes run over delta = 0 (mod m3) and b = 0 (mod g), g = alpha*d',
    ascending in (delta, b); c = (P*delta + b)/(4b - 1) is kept when it is
    a multiple of g inside the box.
    """
    g = alpha * dprime
    lat = ed2_lattice(P, g, m3, 0)
    result = BoxSearchResult(P, T, g, m3)
    for delta in range(m3, T + 1, m3):
        for b in range(g, T + 1, g):
            result.nodes += 1
            numerator = P * delta + b
            if numerator % (4 * b - 1):
                continue
            c = numerator // (4 * b - 1)
            if c > T or b > c or not lat.contains((delta, b, c)) or (b * c) % delta:
                continue
            if (b * c // delta) % P == 0:
                continue
            d = ed2.build_from_triple(delta, b, c, P)
            if not d.ok:
                logger.debug('Box node (%d, %d, %d) for P=%d rejected: %s', delta, b, c, P, d.message)
                continue
            result.hits.append(d)
            if result.first_hit is None:
                result.first_hit = result.nodes
    return result


def iteration_report(primes: Iterable[int], kappa: float = 2.0, alpha: int = 1, dprime: int = 1, m3: int = 1) -> IterationReport:
    """First-hit node counts of box_search with T = ceil((ln P)**kappa)."""
    rows = []
    for P in primes:
        T = max(1, math.ceil(math.log(P) ** kappa))
        rows.append(IterationRow(P, T, box_search(P, T, alpha, dprime, m3).first_hit))
    counts = [row.first_hit for row in rows if row.first_hit is not None]
    mean = sum(counts) / len(counts) if counts else None
    monotone = all(a <= b for a, b in zip(counts, counts[1:]))
    logger.info('Box search kappa=%s: %d of %d primes hit, mean first hit %s, monotone %s',
                kappa, len(counts), len(rows), mean, monotone)
    return IterationReport(kappa, tuple(rows), mean, monotone)
