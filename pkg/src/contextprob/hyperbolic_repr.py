"""Hyperbolic-module representation of hyperbolic contexts.

Contexts whose incompatibility coefficients all have magnitude at least one
map to state vectors over the hyperbolic numbers: each component is a
positive square root plus a signed unit-norm exponential times another, and
the signed squared norms reproduce the conditional b-outcome probabilities.
Under a double stochastic transition matrix the two rapidities coincide, an
orthonormal a-basis exists in the module, and the probability rule holds for
both reference variables.

Unlike the complex case the probabilistic reading of coordinates is not
automatic: a coordinate with negative squared norm refuses interpretation,
and a change of basis can destroy positivity.  Decomposability checks are
therefore reports, not exceptions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .errors import (
    InvariantViolation,
    MixedContext,
    NonUnitaryBasis,
    OutOfRangeProbability,
    PhaseInconsistency,
    TrigonometricContext,
)
from .hyperbolic import HyperbolicNumber, ZERO, exp_j
from .interference import (
    ContextClass,
    assign_phases,
    classify_context,
    interference_coefficients,
)
from .space import (
    Event,
    FiniteKolmogorovSpace,
    IDENTITY_TOL,
    ReferencePair,
    TransitionMatrix,
    is_double_stochastic,
    transition_matrix,
)

BORN_TOL = 1e-10
GRAM_TOL = 1e-10


@dataclass(frozen=True)
class HyperbolicAmplitude:
    """State vector over the b-outcomes with hyperbolic components."""

    components: tuple[HyperbolicNumber, ...]
    epsilons: tuple[int, ...]
    thetas: tuple[float, ...]
    b_values: tuple[float, ...]
    context: Event | None

    def component(self, x: float) -> HyperbolicNumber:
        return self.components[self.b_values.index(x)]

    def born(self, x: float) -> float:
        return self.component(x).norm_sq()

    def norm_sq(self) -> float:
        return math.fsum(c.norm_sq() for c in self.components)


def hyperbolic_inner_product(
    psi: Sequence[HyperbolicNumber], phi: Sequence[HyperbolicNumber]
) -> HyperbolicNumber:
    """Module scalar product, conjugating the second argument."""
    if len(psi) != len(phi):
        raise ValueError("vectors have different component counts")
    total = ZERO
    for u, v in zip(psi, phi):
        total = total + u * v.conj()
    return total


def hyperbolic_born(
    psi: Sequence[HyperbolicNumber], e: Sequence[HyperbolicNumber]
) -> float:
    """Signed squared norm of the inner product against a basis vector."""
    return hyperbolic_inner_product(psi, e).norm_sq()


def _components(psi) -> Sequence[HyperbolicNumber]:
    return psi.components if isinstance(psi, HyperbolicAmplitude) else psi


def build_hyperbolic_amplitude(
    space: FiniteKolmogorovSpace, pair: ReferencePair, context: Event
) -> HyperbolicAmplitude:
    """Construct the hyperbolic state vector of a hyperbolic (or boundary)
    context.

    The sign of each component's exponential is the sign of the outcome's
    perturbation, the rapidity is arccosh of |lambda| (made common to both
    outcomes when the transition matrix is double stochastic), and the signed
    squared norms must reproduce the direct conditional probabilities.
    """
    coeffs = interference_coefficients(space, pair, context)
    cls = classify_context(coeffs)
    if cls is ContextClass.MIXED:
        raise MixedContext("mixed contexts have no hyperbolic representation")
    if cls is ContextClass.TRIGONOMETRIC:
        raise TrigonometricContext(
            "context has small interference coefficients; build the complex "
            "representation instead"
        )
    phases = assign_phases(coeffs, mode="hyperbolic")
    assert phases.epsilons is not None
    pc = space.probability(context)
    pa = [space.probability(ay & context) / pc for ay in pair.a_partition]
    t = transition_matrix(space, pair, "b/a")
    components = []
    for j in range(2):
        first = HyperbolicNumber(math.sqrt(pa[0] * t.entries[0, j]), 0.0)
        second = (
            phases.epsilons[j] * math.sqrt(pa[1] * t.entries[1, j])
        ) * exp_j(phases.thetas[j])
        components.append(first + second)
    psi = HyperbolicAmplitude(
        components=tuple(components),
        epsilons=phases.epsilons,
        thetas=phases.thetas,
        b_values=pair.b_values,
        context=context,
    )
    for j, bx in enumerate(pair.b_partition):
        direct = space.conditional(bx, context)
        if abs(psi.born(pair.b_values[j]) - direct) > BORN_TOL:
            raise PhaseInconsistency(
                "signed squared norm drifted from the probability"
            )
    return psi


@dataclass(frozen=True)
class GModuleBasis:
    """Orthonormal basis of the two-dimensional hyperbolic module, with the
    change matrix whose columns are the basis vectors in b-coordinates."""

    vectors: tuple[tuple[HyperbolicNumber, ...], ...]
    anchor: Event
    thetas: tuple[float, ...]
    epsilons: tuple[int, ...]

    def vector(self, index: int) -> tuple[HyperbolicNumber, ...]:
        return self.vectors[index]


def hyperbolic_a_basis(
    space: FiniteKolmogorovSpace, pair: ReferencePair, anchor: Event
) -> GModuleBasis:
    """Basis indexed by the a-outcomes, anchored at a hyperbolic context.

    Requires a double stochastic transition matrix; without it no unitary
    change of basis exists in the module and the construction is refused.
    """
    t = transition_matrix(space, pair, "b/a")
    if not is_double_stochastic(t):
        col_sums = t.entries.sum(axis=0)
        raise NonUnitaryBasis(
            "transition matrix is not double stochastic "
            f"(column sums {col_sums.tolist()})"
        )
    amp = build_hyperbolic_amplitude(space, pair, anchor)
    u = [[math.sqrt(t.entries[i, j]) for j in range(2)] for i in range(2)]
    e1 = (HyperbolicNumber(u[0][0], 0.0), HyperbolicNumber(u[0][1], 0.0))
    e2 = (
        (amp.epsilons[0] * u[1][0]) * exp_j(amp.thetas[0]),
        (amp.epsilons[1] * u[1][1]) * exp_j(amp.thetas[1]),
    )
    basis = GModuleBasis(
        vectors=(e1, e2), anchor=anchor, thetas=amp.thetas, epsilons=amp.epsilons
    )
    for i in range(2):
        for k in range(2):
            g = hyperbolic_inner_product(basis.vectors[i], basis.vectors[k])
            want = 1.0 if i == k else 0.0
            if abs(g.x - want) > GRAM_TOL or abs(g.y) > GRAM_TOL:
                raise InvariantViolation(
                    "basis fails orthonormality despite double stochasticity"
                )
    return basis


def check_decomposability(
    psi_coords: Sequence[HyperbolicNumber], tol: float = 1e-12
) -> bool:
    """True iff every coordinate lies in the positive cone; a failure means
    the probabilistic reading of the coordinates is refused, not that the
    vector is invalid."""
    return all(c.norm_sq() >= -tol for c in psi_coords)


def expand_in_basis(
    psi, basis: GModuleBasis
) -> tuple[HyperbolicNumber, HyperbolicNumber]:
    """Coordinates of a vector in an orthonormal module basis."""
    comps = _components(psi)
    return (
        hyperbolic_inner_product(comps, basis.vectors[0]),
        hyperbolic_inner_product(comps, basis.vectors[1]),
    )


def hyperbolic_interference_transform(
    p_a: Sequence[float],
    transition: TransitionMatrix,
    theta: float,
    eps: int,
) -> tuple[float, float]:
    """Transform a-outcome probabilities into b-outcome probabilities with a
    cosh cross term of opposite signs on the two outcomes.

    Only double stochastic transitions keep the pair summing to one, and only
    a bounded range of rapidities keeps both values inside the unit interval;
    leaving it raises.
    """
    if eps not in (1, -1):
        raise ValueError("eps must be +1 or -1")
    if not is_double_stochastic(transition):
        raise NonUnitaryBasis(
            "the paired-sign transform needs a double stochastic transition"
        )
    p = transition.entries
    if len(p_a) != p.shape[0]:
        raise ValueError("one probability per a-outcome is required")
    values = []
    for j, sign in ((0, eps), (1, -eps)):
        base = math.fsum(p_a[i] * p[i, j] for i in range(p.shape[0]))
        cross = math.sqrt(math.prod(p_a[i] * p[i, j] for i in range(p.shape[0])))
        values.append(base + 2.0 * sign * math.cosh(theta) * cross)
    total = math.fsum(values)
    if abs(total - 1.0) > IDENTITY_TOL:
        raise InvariantViolation("transformed pair must sum to one")
    for v in values:
        if v < -IDENTITY_TOL or v > 1.0 + IDENTITY_TOL:
            raise OutOfRangeProbability(
                f"transformed value {v!r} leaves the unit interval; the "
                "rapidity is too large for these marginals"
            )
    return (values[0], values[1])
