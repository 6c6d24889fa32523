"""Permutation groups on {0..N-1}: Schreier-Sims stabilizer chains, orders, orbits.

The chain is first grown from seeded random elements, then closed by a
deterministic pass that sifts every Schreier generator of every level,
deepest level first. A group order is only reported after that pass.
"""

from __future__ import annotations

import json
import logging
import math
import random
from collections import deque
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from .const import DEFAULT_RANDOM_SIFTS, DEFAULT_SEED
from .exceptions import DomainMismatchError, IndexRangeError, PreconditionError

if TYPE_CHECKING:
    from collections.abc import Iterable, Sequence

_LOGGER = logging.getLogger(__name__)

_POINT_DTYPE = np.int32
_MIN_POOL = 10
_SCRAMBLE_STEPS = 50


class PointPermutation:
    """Immutable bijection of {0..N-1}, composed with the right action."""

    __slots__ = ("_images",)

    def __init__(self, images: Iterable[int] | np.ndarray) -> None:
        """Validate and freeze an image table."""
        arr = np.array(images, dtype=_POINT_DTYPE)
        if arr.ndim != 1 or not np.array_equal(
            np.sort(arr), np.arange(arr.size, dtype=_POINT_DTYPE)
        ):
            msg = "image table is not a bijection of 0..N-1"
            raise IndexRangeError(msg)
        arr.flags.writeable = False
        self._images = arr

    @classmethod
    def _wrap(cls, arr: np.ndarray) -> PointPermutation:
        """Wrap an array already known to be a bijection."""
        obj = cls.__new__(cls)
        arr = np.ascontiguousarray(arr, dtype=_POINT_DTYPE)
        arr.flags.writeable = False
        obj._images = arr
        return obj

    @classmethod
    def identity(cls, domain_size: int) -> PointPermutation:
        """Identity on domain_size points."""
        return cls._wrap(np.arange(domain_size, dtype=_POINT_DTYPE))

    @property
    def domain_size(self) -> int:
        """Number of points N."""
        return int(self._images.size)

    @property
    def images(self) -> np.ndarray:
        """Read-only image array."""
        return self._images

    def _check(self, other: PointPermutation) -> None:
        if other.domain_size != self.domain_size:
            msg = f"domain mismatch: {self.domain_size} != {other.domain_size}"
            raise DomainMismatchError(msg)

    def compose(self, other: PointPermutation) -> PointPermutation:
        """Apply self then other."""
        self._check(other)
        return PointPermutation._wrap(other._images[self._images])

    __mul__ = compose

    def inverse(self) -> PointPermutation:
        """Inverse permutation."""
        inv = np.empty_like(self._images)
        inv[self._images] = np.arange(self.domain_size, dtype=_POINT_DTYPE)
        return PointPermutation._wrap(inv)

    def is_identity(self) -> bool:
        """True iff every point is fixed."""
        return bool(np.all(self._images == np.arange(self.domain_size)))

    def __call__(self, point: int) -> int:
        """Image of a point."""
        return int(self._images[point])

    def __eq__(self, other: object) -> bool:
        """Equal image tables."""
        if not isinstance(other, PointPermutation):
            return NotImplemented
        return np.array_equal(self._images, other._images)

    def __hash__(self) -> int:
        """Hash of the image bytes."""
        return hash(self._images.tobytes())

    def __repr__(self) -> str:
        """Short representation."""
        return f"PointPermutation(N={self.domain_size})"

    def to_list(self) -> list[int]:
        """Image table as a list of ints."""
        return self._images.tolist()


def generators_to_json(generators: Sequence[PointPermutation]) -> str:
    """Serialize a generator set as a JSON list of image tables."""
    return json.dumps([g.to_list() for g in generators])


def generators_from_json(text: str) -> list[PointPermutation]:
    """Inverse of generators_to_json."""
    return [PointPermutation(table) for table in json.loads(text)]


def _check_domains(generators: Sequence[PointPermutation]) -> int:
    if not generators:
        msg = "at least one generator is required"
        raise PreconditionError(msg)
    sizes = {g.domain_size for g in generators}
    if len(sizes) != 1:
        msg = f"generators act on different domain sizes {sorted(sizes)}"
        raise DomainMismatchError(msg)
    return sizes.pop()


def orbit(generators: Sequence[PointPermutation], point: int) -> frozenset[int]:
    """Smallest set containing point that every generator maps into itself."""
    degree = _check_domains(generators)
    if not 0 <= point < degree:
        msg = f"point {point} outside 0..{degree - 1}"
        raise IndexRangeError(msg)
    tables = [g.images for g in generators]
    seen = {point}
    queue = deque([point])
    while queue:
        a = queue.popleft()
        for table in tables:
            b = int(table[a])
            if b not in seen:
                seen.add(b)
                queue.append(b)
    return frozenset(seen)


def orbits(generators: Sequence[PointPermutation]) -> list[list[int]]:
    """Orbit decomposition, each orbit sorted, orbits ordered by least point."""
    degree = _check_domains(generators)
    label = np.full(degree, -1, dtype=np.int64)
    result = []
    for start in range(degree):
        if label[start] >= 0:
            continue
        members = sorted(orbit(generators, start))
        label[members] = len(result)
        result.append(members)
    return result


@dataclass(frozen=True)
class Transversal:
    """Orbit of one base point with coset representatives and their inverses."""

    base_point: int
    orbit: np.ndarray
    position: np.ndarray
    representatives: tuple[np.ndarray, ...]
    inverses: tuple[np.ndarray, ...]

    @property
    def size(self) -> int:
        """Orbit length."""
        return int(self.orbit.size)


@dataclass(frozen=True)
class BSGS:
    """Base and strong generating set with a verified stabilizer chain."""

    domain_size: int
    base: tuple[int, ...]
    strong_generators: tuple[PointPermutation, ...]
    transversals: tuple[Transversal, ...]

    @property
    def order(self) -> int:
        """Exact group order as a Python integer."""
        return math.prod(t.size for t in self.transversals)

    def sift(self, p: PointPermutation) -> tuple[np.ndarray, int]:
        """Strip p through the chain; returns the residue and the level reached."""
        if p.domain_size != self.domain_size:
            msg = f"domain mismatch: {p.domain_size} != {self.domain_size}"
            raise DomainMismatchError(msg)
        return _sift(p.images, self.transversals, 0)

    def contains(self, p: PointPermutation) -> bool:
        """Membership test."""
        residue, _ = self.sift(p)
        return bool(np.all(residue == np.arange(self.domain_size)))

    def random_element(self, rng: random.Random) -> PointPermutation:
        """Uniform random element as a product of one representative per level."""
        g = np.arange(self.domain_size, dtype=_POINT_DTYPE)
        for transversal in reversed(self.transversals):
            g = transversal.representatives[rng.randrange(transversal.size)][g]
        return PointPermutation._wrap(g)


def _sift(
    g: np.ndarray, levels: Sequence[Transversal | _Level], start: int
) -> tuple[np.ndarray, int]:
    for depth in range(start, len(levels)):
        level = levels[depth]
        pos = int(level.position[g[level.base_point]])
        if pos < 0:
            return g, depth
        g = level.inverses[pos][g]
    return g, len(levels)


class _Level:
    """Mutable stabilizer-chain level used while the chain is being built."""

    def __init__(self, base_point: int, degree: int) -> None:
        self.base_point = base_point
        self.points = np.arange(degree, dtype=_POINT_DTYPE)
        self.generators: list[np.ndarray] = []
        self.orbit = [base_point]
        self.position = np.full(degree, -1, dtype=np.int64)
        self.position[base_point] = 0
        self.representatives = [self.points]
        self.inverses = [self.points]

    def add_generator(self, s: np.ndarray) -> None:
        """Add s to the level and extend the orbit and transversal."""
        self.generators.append(s)
        known = len(self.orbit)
        for pos in range(known):
            self._visit(pos, s)
        pos = known
        while pos < len(self.orbit):
            for gen in self.generators:
                self._visit(pos, gen)
            pos += 1

    def _visit(self, pos: int, s: np.ndarray) -> None:
        b = int(s[self.orbit[pos]])
        if self.position[b] >= 0:
            return
        rep = s[self.representatives[pos]]
        inv = np.empty_like(rep)
        inv[rep] = self.points
        self.position[b] = len(self.orbit)
        self.orbit.append(b)
        self.representatives.append(rep)
        self.inverses.append(inv)

    def freeze(self) -> Transversal:
        orbit_arr = np.array(self.orbit, dtype=np.int64)
        orbit_arr.flags.writeable = False
        position = self.position.copy()
        position.flags.writeable = False
        for arr in self.representatives + self.inverses:
            arr.flags.writeable = False
        return Transversal(
            base_point=self.base_point,
            orbit=orbit_arr,
            position=position,
            representatives=tuple(self.representatives),
            inverses=tuple(self.inverses),
        )


class _ChainBuilder:
    """Grows a stabilizer chain for the group generated by the inputs."""

    def __init__(self, generators: Sequence[PointPermutation], degree: int) -> None:
        self.degree = degree
        self.identity = np.arange(degree, dtype=_POINT_DTYPE)
        self.inputs = [g.images for g in generators if not g.is_identity()]
        self.levels: list[_Level] = []
        self.strong: list[np.ndarray] = []
        if not self.inputs:
            return
        # greedy first base point: least point of a largest orbit
        first = max(orbits(generators), key=lambda o: (len(o), -o[0]))[0]
        self.levels.append(_Level(first, degree))
        for g in self.inputs:
            self.add_strong(g, self._fixed_prefix(g))

    def _fixed_prefix(self, g: np.ndarray) -> int:
        depth = 0
        while depth < len(self.levels) and g[self.levels[depth].base_point] == (
            self.levels[depth].base_point
        ):
            depth += 1
        return depth

    def _new_base_point(self, h: np.ndarray) -> int:
        # least point on a longest cycle of h
        best_point, best_len = -1, 0
        seen = np.zeros(self.degree, dtype=bool)
        for start in np.flatnonzero(h != self.identity):
            if seen[start]:
                continue
            length = 0
            point = int(start)
            while not seen[point]:
                seen[point] = True
                point = int(h[point])
                length += 1
            if length > best_len:
                best_point, best_len = int(start), length
        return best_point

    def is_identity(self, g: np.ndarray) -> bool:
        return bool(np.array_equal(g, self.identity))

    def add_strong(self, h: np.ndarray, depth: int) -> None:
        """Add h, which fixes the first depth base points, as a strong generator."""
        if depth == len(self.levels):
            level = _Level(self._new_base_point(h), self.degree)
            base = [lv.base_point for lv in self.levels]
            for s in self.strong:
                if all(s[b] == b for b in base):
                    level.add_generator(s)
            self.levels.append(level)
            _LOGGER.debug("Extended base with point %d", level.base_point)
        self.strong.append(h)
        for level in self.levels[: depth + 1]:
            level.add_generator(h)

    def random_phase(self, seed: int) -> None:
        """Sift product-replacement elements until enough consecutive ones strip."""
        rng = random.Random(seed)
        pool = [self.inputs[i % len(self.inputs)] for i in range(max(_MIN_POOL, len(self.inputs)))]
        accumulator = self.identity

        def shake() -> np.ndarray:
            nonlocal accumulator
            i, j = rng.sample(range(len(pool)), 2)
            if rng.random() < 0.5:
                pool[i] = pool[j][pool[i]]
            else:
                pool[i] = pool[i][pool[j]]
            accumulator = pool[i][accumulator]
            return accumulator

        for _ in range(_SCRAMBLE_STEPS):
            shake()
        trivial = 0
        while trivial < DEFAULT_RANDOM_SIFTS:
            residue, depth = _sift(shake(), self.levels, 0)
            if depth == len(self.levels) and self.is_identity(residue):
                trivial += 1
            else:
                trivial = 0
                self.add_strong(residue, depth)

    def _failing_schreier_generator(self, index: int) -> tuple[np.ndarray, int] | None:
        level = self.levels[index]
        # <S_0> equals the input group, so the inputs suffice at the top level
        gens = self.inputs if index == 0 else level.generators
        for pos, a in enumerate(level.orbit):
            rep = level.representatives[pos]
            for s in gens:
                b = int(s[a])
                schreier = level.inverses[int(level.position[b])][s[rep]]
                residue, depth = _sift(schreier, self.levels, index + 1)
                if depth < len(self.levels) or not self.is_identity(residue):
                    return residue, depth
        return None

    def verify(self) -> None:
        """Deterministic closure: every Schreier generator must strip to the identity."""
        index = len(self.levels) - 1
        while index >= 0:
            failure = self._failing_schreier_generator(index)
            if failure is None:
                index -= 1
                continue
            self.add_strong(*failure)
            index = len(self.levels) - 1

    def freeze(self) -> BSGS:
        return BSGS(
            domain_size=self.degree,
            base=tuple(level.base_point for level in self.levels),
            strong_generators=tuple(PointPermutation._wrap(s) for s in self.strong),
            transversals=tuple(level.freeze() for level in self.levels),
        )


def schreier_sims(
    generators: Sequence[PointPermutation],
    seed: int = DEFAULT_SEED,
    *,
    randomized: bool = True,
) -> BSGS:
    """Build a verified BSGS for the group generated by ``generators``."""
    degree = _check_domains(generators)
    builder = _ChainBuilder(generators, degree)
    if builder.levels:
        if randomized:
            builder.random_phase(seed)
        builder.verify()
    bsgs = builder.freeze()
    _LOGGER.debug(
        "BSGS on %d points: base length %d, %d strong generators, order %d",
        degree,
        len(bsgs.base),
        len(bsgs.strong_generators),
        bsgs.order,
    )
    return bsgs


def group_order(bsgs: BSGS) -> int:
    """Exact order of the group described by bsgs."""
    return bsgs.order


def membership(bsgs: BSGS, p: PointPermutation) -> bool:
    """True iff p lies in the group described by bsgs."""
    return bsgs.contains(p)
