"""Interference decomposition of the contextual total probability formula.

For a dichotomous reference pair (a, b) and an a-nondegenerate context C, the
probability of each b-outcome deviates from the context-free decomposition by
a perturbation

    delta(x) = P(b=x|C) - sum_y P(b=x|a=y) P(a=y|C),

whose normalisation by twice the geometric mean of the four constituent
probabilities is the incompatibility coefficient lambda(x).  The sum of the
deltas over the outcomes is always zero, so the lambdas carry one effective
degree of freedom per context.

Contexts split by the magnitude of their lambdas: all |lambda| <= 1 admits a
cosine phase (trigonometric), all |lambda| >= 1 with some strict admits a
cosh rapidity with a sign (hyperbolic), exact |lambda| = 1 everywhere sits on
the boundary and is representable both ways, and anything else is mixed and
representable neither way.

All functions are pure; the coefficient objects are immutable snapshots.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Mapping, Sequence

import numpy as np

from .errors import (
    DegenerateCell,
    DegenerateContext,
    HyperbolicContext,
    InvariantViolation,
    MixedContext,
    PhaseInconsistency,
    TrigonometricContext,
    ZeroConditioningContext,
)
from .space import (
    Event,
    FiniteKolmogorovSpace,
    PREDICATE_TOL,
    ReferencePair,
    TransitionMatrix,
    are_incompatible,
    is_double_stochastic,
    transition_matrix,
)

BOUNDARY_TOL = 1e-12   # ||lambda| - 1| below this counts as the boundary
PHASE_GUARD_TOL = 1e-8  # violation of a guaranteed phase relation -> bug

TWO_PI = 2.0 * math.pi
_QUARTER_PI = math.pi / 2.0


def cis(theta: float) -> complex:
    """Unit complex number of phase ``theta``.

    Multiples of pi/2 are snapped to the exact units so that boundary
    amplitudes (phases 0, pi/2, pi, 3pi/2) come out without rounding fuzz.
    """
    k = round(theta / _QUARTER_PI)
    if abs(theta - k * _QUARTER_PI) < 1e-15:
        return (1.0 + 0.0j, 1.0j, -1.0 + 0.0j, -1.0j)[k % 4]
    return complex(math.cos(theta), math.sin(theta))


def _snap_lambda(lam: float) -> float:
    """Clamp into [-1, 1] and snap boundary values to exactly +-1.

    arccos amplifies coefficient noise like 1/sqrt(1 - lam^2) near the
    boundary; snapping there matches the boundary classification and keeps
    the phases of boundary contexts exact.
    """
    if abs(lam) >= 1.0 - BOUNDARY_TOL:
        return 1.0 if lam > 0 else -1.0
    return lam


class OutcomeClass(str, Enum):
    TRIGONOMETRIC = "trigonometric"
    HYPERBOLIC = "hyperbolic"
    BOUNDARY = "boundary"


class ContextClass(str, Enum):
    TRIGONOMETRIC = "trigonometric"
    HYPERBOLIC = "hyperbolic"
    BOUNDARY = "boundary"
    MIXED = "mixed"


@dataclass(frozen=True)
class OutcomeCoefficients:
    value: float
    delta: float
    lam: float
    tag: OutcomeClass


@dataclass(frozen=True, eq=False)
class InterferenceCoefficients:
    """Per-outcome interference data for one context under one pair."""

    space: FiniteKolmogorovSpace
    pair: ReferencePair
    context: Event
    outcomes: tuple[OutcomeCoefficients, ...]

    @property
    def deltas(self) -> tuple[float, ...]:
        return tuple(o.delta for o in self.outcomes)

    @property
    def lambdas(self) -> tuple[float, ...]:
        return tuple(o.lam for o in self.outcomes)


def _context_a_profile(
    space: FiniteKolmogorovSpace, pair: ReferencePair, context: Event
) -> tuple[float, ...]:
    """P(a=y|C) for every y; raises on null or a-degenerate contexts."""
    pc = space.probability(context)
    if pc == 0.0:
        raise ZeroConditioningContext("context has probability zero")
    probs = []
    for i, ay in enumerate(pair.a_partition):
        p = space.probability(ay & context) / pc
        if p == 0.0:
            raise DegenerateContext(
                f"context misses the cell a={pair.a_values[i]!r}"
            )
        probs.append(p)
    return tuple(probs)


def _require_dichotomous(pair: ReferencePair) -> None:
    if len(pair.a_values) != 2 or len(pair.b_values) != 2:
        raise ValueError(
            "interference decomposition is defined for dichotomous pairs; "
            "use the multivalued splitting for larger value sets"
        )


def delta(
    space: FiniteKolmogorovSpace, pair: ReferencePair, context: Event, x: float
) -> float:
    """Perturbation of the context-free total probability decomposition at
    the b-outcome ``x``."""
    _require_dichotomous(pair)
    if not are_incompatible(space, pair):
        raise DegenerateCell("reference variables must be incompatible")
    pa = _context_a_profile(space, pair, context)
    t = transition_matrix(space, pair, "b/a")
    j = pair.b_index(x)
    direct = space.conditional(pair.b_partition[j], context)
    return direct - math.fsum(pa[i] * t.entries[i, j] for i in range(2))


def lambda_coefficient(
    space: FiniteKolmogorovSpace, pair: ReferencePair, context: Event, x: float
) -> float:
    """Incompatibility coefficient: delta normalised by twice the geometric
    mean of the four constituent probabilities."""
    _require_dichotomous(pair)
    if not are_incompatible(space, pair):
        raise DegenerateCell("reference variables must be incompatible")
    pa = _context_a_profile(space, pair, context)
    t = transition_matrix(space, pair, "b/a")
    j = pair.b_index(x)
    prod = pa[0] * t.entries[0, j] * pa[1] * t.entries[1, j]
    if prod <= 0.0:
        raise DegenerateCell("a probability under the normalising root vanishes")
    d = delta(space, pair, context, x)
    return d / (2.0 * math.sqrt(prod))


def interference_coefficients(
    space: FiniteKolmogorovSpace, pair: ReferencePair, context: Event
) -> InterferenceCoefficients:
    """Compute delta and lambda for every b-outcome of one context."""
    _require_dichotomous(pair)
    if not are_incompatible(space, pair):
        raise DegenerateCell("reference variables must be incompatible")
    pa = _context_a_profile(space, pair, context)
    t = transition_matrix(space, pair, "b/a")
    outcomes = []
    for j, x in enumerate(pair.b_values):
        direct = space.conditional(pair.b_partition[j], context)
        classical = math.fsum(pa[i] * t.entries[i, j] for i in range(2))
        d = direct - classical
        prod = pa[0] * t.entries[0, j] * pa[1] * t.entries[1, j]
        lam = d / (2.0 * math.sqrt(prod))
        if abs(abs(lam) - 1.0) <= BOUNDARY_TOL:
            tag = OutcomeClass.BOUNDARY
        elif abs(lam) < 1.0:
            tag = OutcomeClass.TRIGONOMETRIC
        else:
            tag = OutcomeClass.HYPERBOLIC
        outcomes.append(OutcomeCoefficients(x, d, lam, tag))
    coeffs = InterferenceCoefficients(space, pair, context, tuple(outcomes))
    if abs(math.fsum(coeffs.deltas)) > PREDICATE_TOL:
        raise InvariantViolation("outcome perturbations must sum to zero")
    return coeffs


def classify_context(coeffs: InterferenceCoefficients) -> ContextClass:
    tags = [o.tag for o in coeffs.outcomes]
    if all(t is OutcomeClass.BOUNDARY for t in tags):
        return ContextClass.BOUNDARY
    if all(t in (OutcomeClass.TRIGONOMETRIC, OutcomeClass.BOUNDARY) for t in tags):
        return ContextClass.TRIGONOMETRIC
    if all(t in (OutcomeClass.HYPERBOLIC, OutcomeClass.BOUNDARY) for t in tags):
        return ContextClass.HYPERBOLIC
    return ContextClass.MIXED


@dataclass(frozen=True)
class PhaseAssignment:
    """Phases attached to the interference coefficients of one context.

    ``kind`` is "trigonometric" (thetas are angles in [0, 2pi), cosines equal
    the lambdas) or "hyperbolic" (thetas are nonnegative rapidities, cosh
    equals |lambda|, and the sign lives in ``epsilons``).  ``branch`` records
    which conjugate representative was chosen.  ``k`` is the cosine ratio of
    the transition matrix, recorded for non-double-stochastic pairs where the
    two angles are tied by cos(theta_2) = -k cos(theta_1) instead of a fixed
    pi offset.
    """

    kind: str
    b_values: tuple[float, ...]
    thetas: tuple[float, ...]
    branch: str
    epsilons: tuple[int, ...] | None = None
    double_stochastic: bool = True
    k: float | None = None


def assign_phases(
    coeffs: InterferenceCoefficients,
    convention: str = "principal",
    mode: str = "auto",
) -> PhaseAssignment:
    """Choose phases representing the incompatibility coefficients.

    ``convention`` picks one of the two conjugate representatives
    ("principal" or "conjugate").  ``mode`` forces the geometry for boundary
    contexts, which admit both; "auto" resolves boundary to trigonometric.
    """
    if convention not in ("principal", "conjugate"):
        raise ValueError(f"unknown phase convention {convention!r}")
    cls = classify_context(coeffs)
    if cls is ContextClass.MIXED:
        raise MixedContext("mixed contexts admit no single-geometry phases")
    if mode == "auto":
        kind = (
            "hyperbolic" if cls is ContextClass.HYPERBOLIC else "trigonometric"
        )
    elif mode in ("trigonometric", "hyperbolic"):
        kind = mode
    else:
        raise ValueError(f"unknown phase mode {mode!r}")

    t = transition_matrix(coeffs.space, coeffs.pair, "b/a")
    ds = is_double_stochastic(t)
    lambdas = coeffs.lambdas

    if kind == "trigonometric":
        if cls is ContextClass.HYPERBOLIC:
            raise HyperbolicContext(
                "hyperbolic context cannot take cosine phases"
            )
        lam = [_snap_lambda(v) for v in lambdas]
        if ds:
            theta1 = math.acos(lam[0])
            if convention == "conjugate":
                theta1 = math.fmod(TWO_PI - theta1, TWO_PI)
            theta2 = math.fmod(theta1 + math.pi, TWO_PI)
            if abs(math.cos(theta2) - lam[1]) > PHASE_GUARD_TOL:
                raise PhaseInconsistency(
                    "pi-shifted phase fails to reproduce the second coefficient"
                )
            thetas = (theta1, theta2)
        else:
            raw = [math.acos(v) for v in lam]
            if convention == "conjugate":
                raw = [math.fmod(TWO_PI - v, TWO_PI) for v in raw]
            thetas = tuple(raw)
        return PhaseAssignment(
            kind="trigonometric",
            b_values=coeffs.pair.b_values,
            thetas=tuple(thetas),
            branch=convention,
            double_stochastic=ds,
            k=None if ds else k_coefficient(t),
        )

    # hyperbolic rapidities: nonnegative, with the sign carried by epsilons
    if cls is ContextClass.TRIGONOMETRIC:
        raise TrigonometricContext(
            "trigonometric context cannot take cosh rapidities"
        )
    mags = [max(1.0, abs(v)) for v in lambdas]
    if ds:
        common = math.acosh(math.fsum(mags) / len(mags))
        if any(abs(math.cosh(common) - m) > PHASE_GUARD_TOL for m in mags):
            raise PhaseInconsistency(
                "double stochasticity must equalise the two rapidities"
            )
        thetas = tuple(common for _ in mags)
    else:
        thetas = tuple(math.acosh(m) for m in mags)
    epsilons = tuple(1 if o.delta > 0 else -1 for o in coeffs.outcomes)
    if sum(epsilons) != 0:
        raise PhaseInconsistency("hyperbolic signs must sum to zero")
    return PhaseAssignment(
        kind="hyperbolic",
        b_values=coeffs.pair.b_values,
        thetas=thetas,
        branch=convention,
        epsilons=epsilons,
        double_stochastic=ds,
        k=None if ds else k_coefficient(t),
    )


def reconstruct_probability(
    space: FiniteKolmogorovSpace,
    pair: ReferencePair,
    context: Event,
    phases: PhaseAssignment,
) -> dict[float, float]:
    """Evaluate the interference form of the total probability formula.

    The result is an identity: it must reproduce the direct conditional
    probability of every b-outcome.
    """
    pa = _context_a_profile(space, pair, context)
    t = transition_matrix(space, pair, "b/a")
    out: dict[float, float] = {}
    for j, x in enumerate(pair.b_values):
        classical = math.fsum(pa[i] * t.entries[i, j] for i in range(2))
        cross = math.sqrt(pa[0] * t.entries[0, j] * pa[1] * t.entries[1, j])
        if phases.kind == "trigonometric":
            factor = math.cos(phases.thetas[j])
        else:
            assert phases.epsilons is not None
            factor = phases.epsilons[j] * math.cosh(phases.thetas[j])
        out[x] = classical + 2.0 * factor * cross
    return out


def k_coefficient(m: TransitionMatrix) -> float:
    """Cosine ratio of a dichotomous transition matrix.

    Equals one exactly when the matrix is double stochastic; the two
    conditions are algebraically equivalent, so disagreement signals a bug.
    """
    p = m.entries
    if p.shape != (2, 2):
        raise ValueError("cosine ratio is defined for 2x2 matrices")
    if np.min(p) <= 0.0:
        raise DegenerateCell("all transition entries must be positive")
    k = math.sqrt((p[0, 0] * p[1, 0]) / (p[0, 1] * p[1, 1]))
    ds = is_double_stochastic(m)
    if ds != (abs(k - 1.0) <= 1e-8):
        raise InvariantViolation(
            "unit cosine ratio and double stochasticity must coincide"
        )
    return k


@dataclass(frozen=True)
class GlobalPhaseReport:
    """Outcome of searching for one phase offset shared by all contexts."""

    found: bool
    alpha: float | None
    per_context: dict[str, tuple[float, ...]]
    witness: tuple[str, str] | None
    double_stochastic: bool
    has_distinct_lambda_pair: bool


def _circular_close(u: float, v: float, tol: float) -> bool:
    d = math.fmod(abs(u - v), TWO_PI)
    return d <= tol or TWO_PI - d <= tol


def verify_no_global_alpha(
    space: FiniteKolmogorovSpace,
    pair: ReferencePair,
    contexts: Mapping[str, Event] | Sequence[Event],
    tol: float = 1e-9,
) -> GlobalPhaseReport:
    """Search for an offset alpha with theta(b_2) = theta(b_1) + alpha across
    all given trigonometric contexts, trying both conjugate branches per
    context.

    A shared offset across two contexts with distinct |lambda| forces the
    transition matrix to be double stochastic; when the matrix is double
    stochastic the offset pi always works.  Both facts are enforced.
    """
    if isinstance(contexts, Mapping):
        named = list(contexts.items())
    else:
        named = [(f"context_{i}", c) for i, c in enumerate(contexts)]
    t = transition_matrix(space, pair, "b/a")
    ds = is_double_stochastic(t)

    per_context: dict[str, tuple[float, ...]] = {}
    lam1_abs: dict[str, float] = {}
    for name, context in named:
        coeffs = interference_coefficients(space, pair, context)
        cls = classify_context(coeffs)
        if cls is ContextClass.MIXED:
            raise MixedContext(f"context {name!r} is mixed")
        if cls is ContextClass.HYPERBOLIC:
            raise HyperbolicContext(f"context {name!r} is hyperbolic")
        t1 = math.acos(_snap_lambda(coeffs.lambdas[0]))
        t2 = math.acos(_snap_lambda(coeffs.lambdas[1]))
        candidates = []
        for u in (t2 - t1, t2 + t1, -t2 - t1, -t2 + t1):
            u = math.fmod(math.fmod(u, TWO_PI) + TWO_PI, TWO_PI)
            if not any(_circular_close(u, v, tol) for v in candidates):
                candidates.append(u)
        per_context[name] = tuple(candidates)
        lam1_abs[name] = abs(coeffs.lambdas[0])

    alpha: float | None = None
    witness: tuple[str, str] | None = None
    if named:
        first_name = named[0][0]
        shared = list(per_context[first_name])
        for name, _ in named[1:]:
            shared = [
                u
                for u in shared
                if any(_circular_close(u, v, tol) for v in per_context[name])
            ]
            if not shared:
                witness = (first_name, name)
                break
        if shared:
            # prefer the pi offset when available; it is the canonical choice
            for u in shared:
                if _circular_close(u, math.pi, tol):
                    alpha = math.pi
                    break
            else:
                alpha = shared[0]

    mags = list(lam1_abs.values())
    has_distinct = any(
        abs(mags[i] - mags[j]) > 1e-8
        for i in range(len(mags))
        for j in range(i + 1, len(mags))
    )
    found = alpha is not None
    if found and has_distinct and not ds:
        raise InvariantViolation(
            "a shared offset across distinct-|lambda| contexts forces double "
            "stochasticity"
        )
    if ds and named and not found:
        raise InvariantViolation(
            "double stochastic matrices always admit the offset pi"
        )
    return GlobalPhaseReport(
        found=found,
        alpha=alpha,
        per_context=per_context,
        witness=witness,
        double_stochastic=ds,
        has_distinct_lambda_pair=has_distinct,
    )
