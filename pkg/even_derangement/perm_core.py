"""Permutation arithmetic and indexed enumeration of S_n, A_n and E_n.

Points are 1-based at the public surface (``Permutation.from_images``,
``Permutation.from_cycles``, ``Permutation.image``) and 0-based inside
``Permutation.table``. Products use the right action: the point ``i`` moves
under ``compose(p, q)`` to ``(i^p)^q``.
"""

from __future__ import annotations

import itertools
import logging
import re
from dataclasses import dataclass
from enum import StrEnum
from functools import cache, cached_property
from typing import TYPE_CHECKING, NewType

import numpy as np

from .const import MAX_DEGREE, MIN_DEGREE
from .exceptions import DegreeMismatchError, GuardError, IndexRangeError

if TYPE_CHECKING:
    from collections.abc import Iterable

_LOGGER = logging.getLogger(__name__)

ElementIndex = NewType("ElementIndex", int)

_CYCLE_RE = re.compile(r"\(([^()]*)\)")


class Parity(StrEnum):
    """Sign of a permutation."""

    EVEN = "even"
    ODD = "odd"


@dataclass(frozen=True)
class Permutation:
    """A bijection of {1..n}, stored as a 0-based image table."""

    table: tuple[int, ...]

    def __post_init__(self) -> None:
        """Reject tables that are not bijections."""
        if len(self.table) < MIN_DEGREE:
            msg = "a permutation needs at least one point"
            raise IndexRangeError(msg)
        if sorted(self.table) != list(range(len(self.table))):
            msg = f"image table {self.table} is not a bijection"
            raise IndexRangeError(msg)

    @classmethod
    def identity(cls, degree: int) -> Permutation:
        """Return the identity of the given degree."""
        return cls(tuple(range(degree)))

    @classmethod
    def from_images(cls, images: Iterable[int]) -> Permutation:
        """Build from a 1-based image list, images[i-1] = i^p."""
        return cls(tuple(int(i) - 1 for i in images))

    @classmethod
    def from_cycles(cls, cycles: str, degree: int) -> Permutation:
        """Parse cycle notation such as ``"(1 2 3)(4 5)"``."""
        table = list(range(degree))
        for body in _CYCLE_RE.findall(cycles):
            points = [int(tok) for tok in body.replace(",", " ").split()]
            if any(not 1 <= p <= degree for p in points):
                msg = f"cycle {body!r} leaves the points 1..{degree}"
                raise IndexRangeError(msg)
            for a, b in itertools.pairwise([*points, points[0]] if points else []):
                table[a - 1] = b - 1
        return cls(tuple(table))

    @property
    def degree(self) -> int:
        """Number of points."""
        return len(self.table)

    @property
    def images(self) -> tuple[int, ...]:
        """1-based image table."""
        return tuple(i + 1 for i in self.table)

    def image(self, point: int) -> int:
        """Return point^p for a 1-based point."""
        if not 1 <= point <= self.degree:
            msg = f"point {point} outside 1..{self.degree}"
            raise IndexRangeError(msg)
        return self.table[point - 1] + 1

    def cycles(self) -> list[tuple[int, ...]]:
        """Return the non-trivial cycles, 1-based, each starting at its least point."""
        seen = [False] * self.degree
        result = []
        for start in range(self.degree):
            if seen[start]:
                continue
            cycle = []
            point = start
            while not seen[point]:
                seen[point] = True
                cycle.append(point + 1)
                point = self.table[point]
            if len(cycle) > 1:
                result.append(tuple(cycle))
        return result

    def cycle_type(self) -> tuple[int, ...]:
        """Cycle lengths including fixed points, in decreasing order."""
        lengths = [len(c) for c in self.cycles()]
        fixed = self.degree - sum(lengths)
        return tuple(sorted(lengths, reverse=True)) + (1,) * fixed

    def __mul__(self, other: Permutation) -> Permutation:
        """Right-action product, self first."""
        return compose(self, other)

    def __str__(self) -> str:
        """Cycle notation; the identity prints as ``()``."""
        return "".join(f"({' '.join(map(str, c))})" for c in self.cycles()) or "()"

    def to_json(self) -> list[int]:
        """1-based image table for JSON export."""
        return list(self.images)


def _check_degrees(p: Permutation, q: Permutation) -> None:
    if p.degree != q.degree:
        msg = f"degree mismatch: {p.degree} != {q.degree}"
        raise DegreeMismatchError(msg)


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Apply p then q."""
    _check_degrees(p, q)
    return Permutation(tuple(q.table[i] for i in p.table))


def inverse(p: Permutation) -> Permutation:
    """Return the inverse permutation."""
    table = [0] * p.degree
    for i, image in enumerate(p.table):
        table[image] = i
    return Permutation(tuple(table))


def parity(p: Permutation) -> Parity:
    """Sign from the cycle decomposition: n minus the number of cycles."""
    nontrivial = p.cycles()
    cycle_count = len(nontrivial) + p.degree - sum(len(c) for c in nontrivial)
    return Parity.EVEN if (p.degree - cycle_count) % 2 == 0 else Parity.ODD


def is_derangement(p: Permutation) -> bool:
    """True iff p has no fixed point."""
    return all(image != i for i, image in enumerate(p.table))


def conjugate(p: Permutation, t: Permutation) -> Permutation:
    """Return t^-1 p t, i.e. p relabelled by t."""
    _check_degrees(p, t)
    return compose(compose(inverse(t), p), t)


def _check_guard(n: int, low: int = MIN_DEGREE) -> None:
    if not low <= n <= MAX_DEGREE:
        msg = f"degree {n} outside the supported range {low}..{MAX_DEGREE}"
        raise GuardError(msg)


def enumerate_symmetric(n: int) -> list[Permutation]:
    """All n! permutations in lexicographic order of image tables."""
    _check_guard(n)
    return [Permutation(t) for t in itertools.permutations(range(n))]


def enumerate_alternating(n: int) -> list[Permutation]:
    """All even permutations of degree n, lexicographic; list position is the ElementIndex."""
    _check_guard(n)
    return [p for p in enumerate_symmetric(n) if parity(p) is Parity.EVEN]


def enumerate_even_derangements(n: int) -> list[Permutation]:
    """The connection set E_n, lexicographic."""
    _check_guard(n, low=2)
    return [p for p in enumerate_alternating(n) if is_derangement(p)]


def derangement_count(n: int) -> int:
    """|D_n| by the recurrence d_n = (n - 1)(d_{n-1} + d_{n-2})."""
    a, b = 1, 0
    for m in range(2, n + 1):
        a, b = b, (m - 1) * (a + b)
    return b if n >= 1 else a


def even_derangement_count(n: int) -> int:
    """|E_n| = (d_n + (-1)^(n-1) (n-1)) / 2."""
    return (derangement_count(n) + (-1) ** (n - 1) * (n - 1)) // 2


def long_cycle(n: int) -> Permutation:
    """The n-cycle (1 2 ... n)."""
    return Permutation(tuple((i + 1) % n for i in range(n)))


def alternating_generators(n: int) -> list[Permutation]:
    """Two generators of A_n: (1 2 3) with (1 2 ... n) or (2 3 ... n)."""
    if n < 3:
        return [Permutation.identity(n)]
    three = Permutation.from_cycles("(1 2 3)", n)
    if n == 3:
        return [three]
    if n % 2:
        return [three, long_cycle(n)]
    rest = "(" + " ".join(str(i) for i in range(2, n + 1)) + ")"
    return [three, Permutation.from_cycles(rest, n)]


@dataclass(frozen=True)
class AlternatingGroup:
    """Lookup tables for A_n indexed by ElementIndex."""

    degree: int
    elements: tuple[Permutation, ...]

    @classmethod
    def build(cls, n: int) -> AlternatingGroup:
        """Enumerate A_n and wrap it."""
        return cls(degree=n, elements=tuple(enumerate_alternating(n)))

    @property
    def order(self) -> int:
        """|A_n|."""
        return len(self.elements)

    @cached_property
    def images(self) -> np.ndarray:
        """(order, n) array of 0-based image tables."""
        arr = np.array([p.table for p in self.elements], dtype=np.int64)
        arr.flags.writeable = False
        return arr

    @cached_property
    def _weights(self) -> np.ndarray:
        return self.degree ** np.arange(self.degree - 1, -1, -1, dtype=np.int64)

    @cached_property
    def codes(self) -> np.ndarray:
        """Base-n codes of the image tables; sorted because enumeration is lexicographic."""
        return self.images @ self._weights

    def index_of_tables(self, tables: np.ndarray) -> np.ndarray:
        """ElementIndex of each 0-based image table in the last axis of ``tables``."""
        codes = np.asarray(tables, dtype=np.int64) @ self._weights
        idx = np.searchsorted(self.codes, codes)
        idx = np.minimum(idx, self.order - 1)
        if not np.array_equal(self.codes[idx], codes):
            msg = "image table is not an even permutation of the right degree"
            raise IndexRangeError(msg)
        return idx

    def index_of(self, p: Permutation) -> ElementIndex:
        """ElementIndex of an even permutation."""
        if p.degree != self.degree:
            msg = f"degree {p.degree} != {self.degree}"
            raise DegreeMismatchError(msg)
        return ElementIndex(int(self.index_of_tables(np.array(p.table))))

    def element(self, index: int) -> Permutation:
        """Permutation with the given ElementIndex."""
        if not 0 <= index < self.order:
            msg = f"element index {index} outside 0..{self.order - 1}"
            raise IndexRangeError(msg)
        return self.elements[index]

    @cached_property
    def multiplication_table(self) -> np.ndarray:
        """table[a, b] = index of compose(a, b)."""
        table = np.empty((self.order, self.order), dtype=np.int32)
        images = self.images
        for a in range(self.order):
            # row a: image tables of compose(a, b) for every b
            table[a] = self.index_of_tables(images[:, images[a]])
        table.flags.writeable = False
        _LOGGER.debug("Built multiplication table of A_%d", self.degree)
        return table

    @cached_property
    def inverse_table(self) -> np.ndarray:
        """inverse_table[a] = index of inverse(a)."""
        table = self.index_of_tables(np.argsort(self.images, axis=1))
        table.flags.writeable = False
        return table

    @cached_property
    def derangement_mask(self) -> np.ndarray:
        """Boolean mask of the fixed-point-free elements, i.e. of E_n."""
        mask = np.all(self.images != np.arange(self.degree), axis=1)
        mask.flags.writeable = False
        return mask

    def fixes_mask(self, point: int, image: int) -> np.ndarray:
        """Mask of elements mapping the 1-based point to the 1-based image."""
        return self.images[:, point - 1] == image - 1

    def conjugation_table(self, t: Permutation) -> np.ndarray:
        """Index of t^-1 a t for every a."""
        table = np.asarray(t.table)
        table_inv = np.argsort(table)
        return self.index_of_tables(table[self.images[:, table_inv]])


@cache
def alternating_group(n: int) -> AlternatingGroup:
    """Memoized AlternatingGroup for degree n."""
    _check_guard(n)
    return AlternatingGroup.build(n)
