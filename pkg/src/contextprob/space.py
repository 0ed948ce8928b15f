"""Finite contextual probability spaces.

A model is a finite set of sample points carrying strictly positive weights
that sum to one.  Contexts and events are subsets of the sample points,
canonicalised as bitmasks over the fixed point ordering so that all set
algebra is exact (Python integers make the bitmask representation unbounded).
Random variables are total real-valued maps on the points; a reference pair
of variables induces the two partitions (value preimages) that the
representation machinery conditions on.

Zero-weight points are rejected at construction: every construction downstream
divides by cell probabilities, and null atoms add nothing but spurious
degeneracy.

Everything in this module is immutable after construction and all operations
are pure functions, so values can be shared freely across threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Mapping

import numpy as np

from .errors import (
    DegenerateCell,
    InvariantViolation,
    ZeroConditioningContext,
)

WEIGHT_TOL = 1e-12      # point weights must sum to one within this
IDENTITY_TOL = 1e-12    # residue allowed on exact algebraic identities
PREDICATE_TOL = 1e-10   # structural predicates (double stochasticity, symmetry)


@dataclass(frozen=True)
class Event:
    """A subset of sample points, stored as a bitmask over the point ordering.

    ``size`` is the number of points in the ambient space; bit ``i`` set means
    point ``i`` belongs to the event.  Set operations are exact.
    """

    mask: int
    size: int

    def __post_init__(self) -> None:
        if self.mask < 0 or self.mask >> self.size:
            raise ValueError("event mask lies outside the sample space")

    def _check(self, other: "Event") -> None:
        if self.size != other.size:
            raise ValueError("events from different sample spaces")

    def intersect(self, other: "Event") -> "Event":
        self._check(other)
        return Event(self.mask & other.mask, self.size)

    def union(self, other: "Event") -> "Event":
        self._check(other)
        return Event(self.mask | other.mask, self.size)

    def difference(self, other: "Event") -> "Event":
        self._check(other)
        return Event(self.mask & ~other.mask, self.size)

    def complement(self) -> "Event":
        return Event(~self.mask & ((1 << self.size) - 1), self.size)

    __and__ = intersect
    __or__ = union
    __sub__ = difference

    def issubset(self, other: "Event") -> bool:
        self._check(other)
        return self.mask & ~other.mask == 0

    def is_empty(self) -> bool:
        return self.mask == 0

    def __len__(self) -> int:
        return self.mask.bit_count()

    def indices(self) -> Iterator[int]:
        mask = self.mask
        while mask:
            low = mask & -mask
            yield low.bit_length() - 1
            mask ^= low


@dataclass(frozen=True)
class FiniteKolmogorovSpace:
    """Ordered sample points with strictly positive weights summing to one."""

    points: tuple[str, ...]
    weights: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.points) != len(self.weights):
            raise ValueError("points and weights must have equal length")
        if len(set(self.points)) != len(self.points):
            raise ValueError("point identifiers must be unique")
        if not self.points:
            raise ValueError("sample space must be nonempty")
        for p, w in zip(self.points, self.weights):
            if not (w > 0.0):
                raise ValueError(f"point {p!r} has nonpositive weight {w!r}")
        total = math.fsum(self.weights)
        if abs(total - 1.0) > WEIGHT_TOL:
            raise ValueError(f"weights sum to {total!r}, not 1")

    @property
    def n(self) -> int:
        return len(self.points)

    def index(self, point: str) -> int:
        try:
            return self.points.index(point)
        except ValueError:
            raise KeyError(f"unknown point {point!r}") from None

    def event(self, members: Iterable[str]) -> Event:
        mask = 0
        for point in members:
            mask |= 1 << self.index(point)
        return Event(mask, self.n)

    def event_from_indices(self, indices: Iterable[int]) -> Event:
        mask = 0
        for i in indices:
            if not 0 <= i < self.n:
                raise ValueError(f"point index {i} out of range")
            mask |= 1 << i
        return Event(mask, self.n)

    def full_event(self) -> Event:
        return Event((1 << self.n) - 1, self.n)

    def empty_event(self) -> Event:
        return Event(0, self.n)

    def members(self, e: Event) -> tuple[str, ...]:
        return tuple(self.points[i] for i in e.indices())

    def probability(self, e: Event) -> float:
        """Measure of an event: the sum of its point weights."""
        if e.size != self.n:
            raise ValueError("event does not belong to this space")
        return math.fsum(self.weights[i] for i in e.indices())

    def conditional(self, b: Event, c: Event) -> float:
        """Conditional probability of ``b`` given the context ``c``."""
        pc = self.probability(c)
        if pc == 0.0:
            raise ZeroConditioningContext("conditioning context has probability zero")
        return self.probability(b & c) / pc


def probability(space: FiniteKolmogorovSpace, e: Event) -> float:
    return space.probability(e)


def conditional_probability(space: FiniteKolmogorovSpace, b: Event, c: Event) -> float:
    return space.conditional(b, c)


@dataclass(frozen=True)
class RandomVariable:
    """A total real-valued map on the sample points (aligned to point order)."""

    name: str
    values: tuple[float, ...]

    @classmethod
    def from_mapping(
        cls, space: FiniteKolmogorovSpace, name: str, mapping: Mapping[str, float]
    ) -> "RandomVariable":
        missing = [p for p in space.points if p not in mapping]
        if missing:
            raise ValueError(f"variable {name!r} misses points {missing}")
        extra = [p for p in mapping if p not in space.points]
        if extra:
            raise ValueError(f"variable {name!r} names unknown points {extra}")
        return cls(name, tuple(float(mapping[p]) for p in space.points))

    def distinct_values(self) -> tuple[float, ...]:
        """Distinct values in order of first occurrence over the point order."""
        seen: list[float] = []
        for v in self.values:
            if v not in seen:
                seen.append(v)
        return tuple(seen)

    def preimage(self, value: float, size: int) -> Event:
        mask = 0
        for i, v in enumerate(self.values):
            if v == value:
                mask |= 1 << i
        return Event(mask, size)


@dataclass(frozen=True)
class ReferencePair:
    """Two random variables with their value sets and induced partitions.

    Value sets are ordered by first occurrence over the point ordering; the
    partitions are the value preimages, which are disjoint covers of the
    sample space by construction.
    """

    a: RandomVariable
    b: RandomVariable
    a_values: tuple[float, ...]
    b_values: tuple[float, ...]
    a_partition: tuple[Event, ...]
    b_partition: tuple[Event, ...]

    @classmethod
    def from_variables(
        cls, space: FiniteKolmogorovSpace, a: RandomVariable, b: RandomVariable
    ) -> "ReferencePair":
        if len(a.values) != space.n or len(b.values) != space.n:
            raise ValueError("variables not defined over this space")
        a_values = a.distinct_values()
        b_values = b.distinct_values()
        a_partition = tuple(a.preimage(y, space.n) for y in a_values)
        b_partition = tuple(b.preimage(x, space.n) for x in b_values)
        return cls(a, b, a_values, b_values, a_partition, b_partition)

    def a_index(self, y: float) -> int:
        try:
            return self.a_values.index(y)
        except ValueError:
            raise KeyError(f"{y!r} is not a value of {self.a.name!r}") from None

    def b_index(self, x: float) -> int:
        try:
            return self.b_values.index(x)
        except ValueError:
            raise KeyError(f"{x!r} is not a value of {self.b.name!r}") from None


@dataclass(frozen=True, eq=False)
class TransitionMatrix:
    """Matrix of transition probabilities between the two partitions.

    ``direction == "b/a"`` means entry (i, j) is the probability of the j-th
    b-outcome conditioned on the i-th a-outcome; rows sum to one.
    """

    entries: np.ndarray
    direction: str
    row_values: tuple[float, ...]
    col_values: tuple[float, ...]

    def __post_init__(self) -> None:
        if self.direction not in ("b/a", "a/b"):
            raise ValueError(f"unknown direction {self.direction!r}")
        self.entries.setflags(write=False)
        row_sums = self.entries.sum(axis=1)
        if np.max(np.abs(row_sums - 1.0)) > IDENTITY_TOL:
            raise InvariantViolation("transition matrix rows do not sum to one")


def transition_matrix(
    space: FiniteKolmogorovSpace, pair: ReferencePair, direction: str = "b/a"
) -> TransitionMatrix:
    """Transition probabilities of one reference variable conditioned on the
    other; raises :class:`DegenerateCell` if a conditioning cell is null.

    Results are memoised: all inputs are immutable and the matrix is context
    independent, while the callers recompute it per context.
    """
    return _transition_matrix_cached(space, pair, direction)


@lru_cache(maxsize=256)
def _transition_matrix_cached(
    space: FiniteKolmogorovSpace, pair: ReferencePair, direction: str
) -> TransitionMatrix:
    if direction == "b/a":
        rows, cols = pair.a_partition, pair.b_partition
        row_values, col_values = pair.a_values, pair.b_values
    elif direction == "a/b":
        rows, cols = pair.b_partition, pair.a_partition
        row_values, col_values = pair.b_values, pair.a_values
    else:
        raise ValueError(f"unknown direction {direction!r}")
    entries = np.empty((len(rows), len(cols)))
    for i, row in enumerate(rows):
        p_row = space.probability(row)
        if p_row == 0.0:
            raise DegenerateCell(
                f"conditioning cell {row_values[i]!r} has probability zero"
            )
        for j, col in enumerate(cols):
            entries[i, j] = space.probability(row & col) / p_row
    return TransitionMatrix(entries, direction, row_values, col_values)


def is_nondegenerate(
    space: FiniteKolmogorovSpace, context: Event, v: RandomVariable
) -> bool:
    """True iff the context meets every value preimage of ``v`` with positive
    probability."""
    if space.probability(context) == 0.0:
        raise ZeroConditioningContext("context has probability zero")
    for value in v.distinct_values():
        if space.probability(v.preimage(value, space.n) & context) == 0.0:
            return False
    return True


def are_incompatible(space: FiniteKolmogorovSpace, pair: ReferencePair) -> bool:
    """True iff every joint cell of the two partitions has positive probability."""
    for ay in pair.a_partition:
        for bx in pair.b_partition:
            if space.probability(ay & bx) == 0.0:
                return False
    return True


@dataclass(frozen=True)
class IncompatibilityStructure:
    cell_nonempty: bool
    no_inclusions: bool


def check_incompatibility_structure(
    space: FiniteKolmogorovSpace, pair: ReferencePair
) -> IncompatibilityStructure:
    """Report whether all joint cells are nonempty and whether no cell of one
    partition is contained in a cell of the other.

    Nonempty cells imply no inclusions; for two dichotomous partitions the
    conditions are equivalent.  Both implications are forced by set algebra,
    so a violation raises instead of being reported.
    """
    cell_nonempty = all(
        not (ay & bx).is_empty()
        for ay in pair.a_partition
        for bx in pair.b_partition
    )
    no_inclusions = not any(
        ay.issubset(bx) or bx.issubset(ay)
        for ay in pair.a_partition
        for bx in pair.b_partition
    )
    if cell_nonempty and not no_inclusions:
        raise InvariantViolation("nonempty cells must forbid inclusions")
    if (
        len(pair.a_partition) == 2
        and len(pair.b_partition) == 2
        and no_inclusions != cell_nonempty
    ):
        raise InvariantViolation(
            "for dichotomous partitions the two conditions must coincide"
        )
    return IncompatibilityStructure(cell_nonempty, no_inclusions)


def classical_total_probability(
    space: FiniteKolmogorovSpace, pair: ReferencePair, context: Event
) -> dict[float, float]:
    """Exact decomposition of each b-outcome probability over the a-partition,
    conditioning the transition factor on the context as well.

    This is an identity of the measure; the result is checked against the
    direct conditional probability before returning.
    """
    pc = space.probability(context)
    if pc == 0.0:
        raise ZeroConditioningContext("context has probability zero")
    out: dict[float, float] = {}
    for j, bx in enumerate(pair.b_partition):
        total = 0.0
        for i, ay in enumerate(pair.a_partition):
            cell = ay & context
            p_cell = space.probability(cell)
            if p_cell == 0.0:
                raise DegenerateCell(
                    f"cell for a={pair.a_values[i]!r} within the context is null"
                )
            total += (p_cell / pc) * (space.probability(bx & cell) / p_cell)
        direct = space.conditional(bx, context)
        if abs(total - direct) > IDENTITY_TOL:
            raise InvariantViolation(
                "total probability decomposition drifted from the direct value"
            )
        out[pair.b_values[j]] = total
    return out


def dispersion(
    space: FiniteKolmogorovSpace, v: RandomVariable, context: Event
) -> float:
    """Conditional variance of ``v`` given the context."""
    pc = space.probability(context)
    if pc == 0.0:
        raise ZeroConditioningContext("context has probability zero")
    idx = list(context.indices())
    mean = math.fsum(space.weights[i] * v.values[i] for i in idx) / pc
    return math.fsum(space.weights[i] * (v.values[i] - mean) ** 2 for i in idx) / pc


def is_double_stochastic(m: TransitionMatrix, tol: float = PREDICATE_TOL) -> bool:
    """True iff every column also sums to one (rows always do)."""
    if m.entries.shape[0] != m.entries.shape[1]:
        return False
    col_sums = m.entries.sum(axis=0)
    return bool(np.max(np.abs(col_sums - 1.0)) <= tol)


def is_symmetrically_conditioned(
    space: FiniteKolmogorovSpace, pair: ReferencePair, tol: float = PREDICATE_TOL
) -> bool:
    """True iff conditioning either way gives the same transition probabilities.

    For an incompatible dichotomous pair this is equivalent to both
    transition matrices being double stochastic, and to both marginals being
    uniform; the three readings are cross-checked because the algebra forces
    them to agree.
    """
    m_ba = transition_matrix(space, pair, "b/a")
    m_ab = transition_matrix(space, pair, "a/b")
    if m_ba.entries.shape[0] != m_ba.entries.shape[1]:
        raise ValueError("symmetric conditioning needs equal value-set sizes")
    symmetric = bool(np.max(np.abs(m_ba.entries - m_ab.entries.T)) <= tol)
    # the three readings coincide only for incompatible pairs: a perfectly
    # correlated pair has identity transition matrices but free marginals
    if len(pair.a_values) == 2 and are_incompatible(space, pair):
        both_ds = is_double_stochastic(m_ba, tol) and is_double_stochastic(m_ab, tol)
        uniform = all(
            abs(space.probability(e) - 0.5) <= tol
            for e in (*pair.a_partition, *pair.b_partition)
        )
        if not (symmetric == both_ds == uniform):
            raise InvariantViolation(
                "symmetry, double stochasticity and uniform marginals disagree"
            )
    return symmetric
