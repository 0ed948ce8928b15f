"""Complex Hilbert-space representation of trigonometric contexts.

A trigonometric context maps to a two-component complex state vector whose
squared moduli reproduce the conditional probabilities of the b-outcomes.
When the transition matrix is double stochastic and the two phases differ by
pi, a context-independent orthonormal basis indexed by the a-outcomes exists
as well, the squared inner products against it reproduce the a-outcome
probabilities, and both reference variables become self-adjoint operators.
Conditional expectations of f(a) + g(b) are preserved by the operator map
even though joint-distribution information is not.

Inner products conjugate the second argument.  Every context admits exactly
two conjugate state vectors; the ``branch`` tag records which one was built.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from .errors import (
    BasisMismatch,
    DegenerateContext,
    HyperbolicContext,
    InvariantViolation,
    MixedContext,
    NonUnitaryBasis,
    PhaseInconsistency,
)
from .interference import (
    ContextClass,
    PhaseAssignment,
    assign_phases,
    cis,
    classify_context,
    interference_coefficients,
)
from .space import (
    Event,
    FiniteKolmogorovSpace,
    PREDICATE_TOL,
    ReferencePair,
    transition_matrix,
)

BORN_TOL = 1e-10
HERMITIAN_TOL = 1e-12
AVERAGE_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class ComplexAmplitude:
    """State vector over the b-outcomes representing one context."""

    components: np.ndarray
    b_values: tuple[float, ...]
    context: Event | None
    branch: str

    def __post_init__(self) -> None:
        self.components.setflags(write=False)

    def component(self, x: float) -> complex:
        return complex(self.components[self.b_values.index(x)])

    def born(self, x: float) -> float:
        return float(abs(self.components[self.b_values.index(x)]) ** 2)

    def norm_sq(self) -> float:
        return float(np.sum(np.abs(self.components) ** 2))

    def conjugate(self) -> "ComplexAmplitude":
        other = "conjugate" if self.branch == "principal" else "principal"
        return ComplexAmplitude(
            np.conj(self.components), self.b_values, self.context, other
        )


def inner_product(u: np.ndarray, v: np.ndarray) -> complex:
    """Standard inner product, conjugating the second argument."""
    return complex(np.sum(np.asarray(u) * np.conj(np.asarray(v))))


def born_probability(psi, basis_vector) -> float:
    """Squared modulus of the inner product with a basis vector."""
    u = psi.components if isinstance(psi, ComplexAmplitude) else np.asarray(psi)
    v = (
        basis_vector.components
        if isinstance(basis_vector, ComplexAmplitude)
        else np.asarray(basis_vector)
    )
    return float(abs(inner_product(u, v)) ** 2)


def _amplitude_from_phases(
    space: FiniteKolmogorovSpace,
    pair: ReferencePair,
    context: Event,
    phases: PhaseAssignment,
) -> np.ndarray:
    pc = space.probability(context)
    pa = [space.probability(ay & context) / pc for ay in pair.a_partition]
    t = transition_matrix(space, pair, "b/a")
    return np.array(
        [
            math.sqrt(pa[0] * t.entries[0, j])
            + cis(phases.thetas[j]) * math.sqrt(pa[1] * t.entries[1, j])
            for j in range(2)
        ],
        dtype=complex,
    )


def build_amplitude(
    space: FiniteKolmogorovSpace,
    pair: ReferencePair,
    context: Event,
    convention: str = "principal",
) -> ComplexAmplitude:
    """Construct the complex state vector of a trigonometric (or boundary)
    context.  The squared moduli must reproduce the direct conditional
    probabilities; a violation indicates an upstream bug."""
    coeffs = interference_coefficients(space, pair, context)
    cls = classify_context(coeffs)
    if cls is ContextClass.MIXED:
        raise MixedContext("mixed contexts have no complex representation")
    if cls is ContextClass.HYPERBOLIC:
        raise HyperbolicContext(
            "context has large interference coefficients; build the "
            "hyperbolic representation instead"
        )
    phases = assign_phases(coeffs, convention, mode="trigonometric")
    components = _amplitude_from_phases(space, pair, context, phases)
    psi = ComplexAmplitude(components, pair.b_values, context, convention)
    for j, bx in enumerate(pair.b_partition):
        if abs(psi.born(pair.b_values[j]) - space.conditional(bx, context)) > BORN_TOL:
            raise PhaseInconsistency("squared modulus drifted from the probability")
    return psi


@dataclass(frozen=True, eq=False)
class HilbertBasis:
    """Basis vectors (rows, in b-coordinates) with the change matrix and a
    unitarity report.  A non-unitary basis is reported, not rejected:
    single contexts can still be expanded in it, only the two-sided
    probability rule fails."""

    label: str
    vectors: np.ndarray
    anchor: Event | None
    unitary: bool
    witness: dict[str, float] = field(default_factory=dict)

    def __post_init__(self) -> None:
        self.vectors.setflags(write=False)

    def vector(self, index: int) -> np.ndarray:
        return self.vectors[index]


def a_basis_for_context(
    space: FiniteKolmogorovSpace,
    pair: ReferencePair,
    anchor_context: Event,
    convention: str = "principal",
) -> HilbertBasis:
    """Basis indexed by the a-outcomes, anchored at one trigonometric context.

    The change matrix is unitary exactly when the transition matrix is double
    stochastic and the anchor phases differ by pi; otherwise the basis is
    valid only for contexts sharing the anchor's |lambda| level and the
    report carries the offending column sums.
    """
    coeffs = interference_coefficients(space, pair, anchor_context)
    cls = classify_context(coeffs)
    if cls is ContextClass.MIXED:
        raise MixedContext("anchor context is mixed")
    if cls is ContextClass.HYPERBOLIC:
        raise HyperbolicContext("anchor context is hyperbolic")
    phases = assign_phases(coeffs, convention, mode="trigonometric")
    t = transition_matrix(space, pair, "b/a")
    u = np.sqrt(t.entries)
    e1 = np.array([u[0, 0], u[0, 1]], dtype=complex)
    e2 = np.array(
        [cis(phases.thetas[0]) * u[1, 0], cis(phases.thetas[1]) * u[1, 1]],
        dtype=complex,
    )
    vectors = np.vstack([e1, e2])
    gram = vectors @ vectors.conj().T
    unitary = bool(np.max(np.abs(gram - np.eye(2))) <= PREDICATE_TOL)
    witness: dict[str, float] = {}
    if not unitary:
        col_sums = t.entries.sum(axis=0)
        witness = {
            f"column_sum_{j}": float(col_sums[j]) for j in range(len(col_sums))
        }
    return HilbertBasis(
        label="a", vectors=vectors, anchor=anchor_context, unitary=unitary,
        witness=witness,
    )


def b_basis(pair: ReferencePair) -> HilbertBasis:
    """The canonical basis indexed by the b-outcomes."""
    k = len(pair.b_values)
    return HilbertBasis(
        label="b", vectors=np.eye(k, dtype=complex), anchor=None, unitary=True
    )


def extend_to_a_contexts(
    space: FiniteKolmogorovSpace, pair: ReferencePair, a_basis: HilbertBasis
) -> dict[float, ComplexAmplitude]:
    """Map each a-partition cell, which is degenerate and has no interference
    representation, to its basis vector."""
    out: dict[float, ComplexAmplitude] = {}
    for i, y in enumerate(pair.a_values):
        out[y] = ComplexAmplitude(
            np.array(a_basis.vectors[i], dtype=complex),
            pair.b_values,
            pair.a_partition[i],
            "basis",
        )
    return out


@dataclass(frozen=True, eq=False)
class HermitianOperator:
    """Self-adjoint matrix in a named basis."""

    matrix: np.ndarray
    basis: str

    def __post_init__(self) -> None:
        self.matrix.setflags(write=False)
        if np.max(np.abs(self.matrix - self.matrix.conj().T)) > HERMITIAN_TOL:
            raise InvariantViolation("operator is not self-adjoint")

    def eigenvalues(self) -> np.ndarray:
        return np.linalg.eigvalsh(self.matrix)


def operator_for_variable(
    values: Sequence[float], basis: HilbertBasis
) -> HermitianOperator:
    """Operator with the given eigenvalues on the given basis vectors,
    expressed in b-coordinates."""
    if not basis.unitary:
        raise NonUnitaryBasis(
            "operator construction needs an orthonormal basis; the change "
            f"matrix is not unitary ({basis.witness})"
        )
    if len(values) != basis.vectors.shape[0]:
        raise ValueError("one eigenvalue per basis vector is required")
    k = basis.vectors.shape[1]
    matrix = np.zeros((k, k), dtype=complex)
    for value, vec in zip(values, basis.vectors):
        matrix += value * np.outer(vec, np.conj(vec))
    return HermitianOperator(matrix, basis="b")


def operator_for_b(pair: ReferencePair) -> HermitianOperator:
    return HermitianOperator(
        np.diag(np.asarray(pair.b_values, dtype=complex)), basis="b"
    )


def commutator(op_a: HermitianOperator, op_b: HermitianOperator) -> np.ndarray:
    """AB - BA.  Nonzero for incompatible dichotomous reference pairs with a
    double stochastic transition matrix."""
    if op_a.basis != op_b.basis:
        raise BasisMismatch("operators live in different bases")
    return op_a.matrix @ op_b.matrix - op_b.matrix @ op_a.matrix


def quantum_average(op: HermitianOperator, psi: ComplexAmplitude) -> float:
    """Expectation of a self-adjoint operator in a state; the imaginary
    residue must vanish to rounding."""
    value = complex(np.vdot(psi.components, op.matrix @ psi.components))
    if abs(value.imag) > BORN_TOL:
        raise InvariantViolation(f"average has imaginary residue {value.imag!r}")
    return value.real


def _as_table(f, values: Sequence[float]) -> dict[float, float]:
    if callable(f):
        return {v: float(f(v)) for v in values}
    return {v: float(f[v]) for v in values}


def _state_for_context(
    space: FiniteKolmogorovSpace,
    pair: ReferencePair,
    context: Event,
    basis: HilbertBasis,
    convention: str = "principal",
) -> ComplexAmplitude:
    """State of a representable context: interference amplitude when the
    context is a-nondegenerate, basis vector when it is an a-cell."""
    for i, ay in enumerate(pair.a_partition):
        if context.mask == ay.mask:
            return extend_to_a_contexts(space, pair, basis)[pair.a_values[i]]
    return build_amplitude(space, pair, context, convention)


@dataclass(frozen=True)
class AveragePreservationReport:
    classical: float
    quantum: float
    residual: float
    ok: bool


def verify_average_preservation(
    space: FiniteKolmogorovSpace,
    pair: ReferencePair,
    context: Event,
    f,
    g,
    convention: str = "principal",
    anchor: Event | None = None,
) -> AveragePreservationReport:
    """Compare the conditional expectation of f(a) + g(b) computed by direct
    summation with the operator average of f(op_a) + g(op_b)."""
    f_table = _as_table(f, pair.a_values)
    g_table = _as_table(g, pair.b_values)
    pc = space.probability(context)
    classical = math.fsum(
        space.weights[i]
        * (f_table[pair.a.values[i]] + g_table[pair.b.values[i]])
        for i in context.indices()
    ) / pc

    basis = a_basis_for_context(
        space, pair, anchor if anchor is not None else space.full_event(),
        convention,
    )
    psi = _state_for_context(space, pair, context, basis, convention)
    f_op = operator_for_variable([f_table[y] for y in pair.a_values], basis)
    g_op = HermitianOperator(
        np.diag([complex(g_table[x]) for x in pair.b_values]), basis="b"
    )
    quantum = quantum_average(
        HermitianOperator(f_op.matrix + g_op.matrix, basis="b"), psi
    )
    residual = abs(classical - quantum)
    return AveragePreservationReport(
        classical=classical,
        quantum=quantum,
        residual=residual,
        ok=residual <= AVERAGE_TOL,
    )


@dataclass(frozen=True)
class DistributionMismatchReport:
    """Distributions of the sum variable: pointwise classical versus
    spectral, together with their (equal) averages."""

    classical_dist: dict[float, float]
    quantum_dist: dict[float, float]
    classical_average: float
    quantum_average: float
    total_variation: float


def distribution_mismatch(
    space: FiniteKolmogorovSpace,
    pair: ReferencePair,
    context: Event,
    gamma: float,
    convention: str = "principal",
    anchor: Event | None = None,
) -> DistributionMismatchReport:
    """Distribution of a(omega) + b(omega) given the context versus that of
    the operator sum in the context's state.

    Requires both variables to take the values +gamma and -gamma.  The two
    averages coincide; the distributions in general do not, which is the
    point of the report.
    """
    expected = {gamma, -gamma}
    if set(pair.a_values) != expected or set(pair.b_values) != expected:
        raise ValueError("both variables must take values +gamma and -gamma")

    pc = space.probability(context)
    classical_dist = {v: 0.0 for v in (-2.0 * gamma, 0.0, 2.0 * gamma)}
    for i in context.indices():
        classical_dist[pair.a.values[i] + pair.b.values[i]] += space.weights[i] / pc
    classical_avg = math.fsum(v * p for v, p in classical_dist.items())

    basis = a_basis_for_context(
        space, pair, anchor if anchor is not None else space.full_event(),
        convention,
    )
    psi = _state_for_context(space, pair, context, basis, convention)
    a_op = operator_for_variable(pair.a_values, basis)
    d_op = HermitianOperator(
        a_op.matrix + np.diag(np.asarray(pair.b_values, dtype=complex)), basis="b"
    )
    eigvals, eigvecs = np.linalg.eigh(d_op.matrix)
    quantum_dist = {
        float(eigvals[k]): born_probability(psi, eigvecs[:, k])
        for k in range(len(eigvals))
    }
    quantum_avg = quantum_average(d_op, psi)

    support = sorted(set(classical_dist) | set(quantum_dist))
    tv = 0.5 * math.fsum(
        abs(classical_dist.get(v, 0.0) - quantum_dist.get(v, 0.0)) for v in support
    )
    return DistributionMismatchReport(
        classical_dist=classical_dist,
        quantum_dist=quantum_dist,
        classical_average=classical_avg,
        quantum_average=quantum_avg,
        total_variation=tv,
    )


@dataclass(frozen=True)
class ImageReport:
    """Deduplicated image of a context family on the unit sphere.

    Contexts sharing both outcome distributions are indistinguishable up to
    conjugation: the first two such contexts receive the two conjugate
    representatives and any further ones collide with the first.
    """

    states: tuple[np.ndarray, ...]
    assignment: dict[str, int | None]
    excluded: dict[str, str]
    collisions: tuple[tuple[str, str], ...]
    injective: bool


def image_of_context_family(
    space: FiniteKolmogorovSpace,
    pair: ReferencePair,
    contexts: Mapping[str, Event],
    anchor: Event | None = None,
    tol: float = 1e-10,
) -> ImageReport:
    """Represent every representable context of the family and deduplicate
    the resulting states."""
    basis = a_basis_for_context(
        space, pair, anchor if anchor is not None else space.full_event()
    )
    a_states = extend_to_a_contexts(space, pair, basis)

    states: list[np.ndarray] = []
    assignment: dict[str, int | None] = {}
    excluded: dict[str, str] = {}
    collisions: list[tuple[str, str]] = []
    group_members: dict[tuple, list[str]] = {}

    def register(vec: np.ndarray) -> int:
        for idx, s in enumerate(states):
            if np.max(np.abs(s - vec)) <= tol:
                return idx
        states.append(vec)
        return len(states) - 1

    for name, context in contexts.items():
        cell_index = next(
            (
                i
                for i, ay in enumerate(pair.a_partition)
                if context.mask == ay.mask
            ),
            None,
        )
        if cell_index is not None:
            vec = np.array(a_states[pair.a_values[cell_index]].components)
            assignment[name] = register(vec)
            continue
        try:
            coeffs = interference_coefficients(space, pair, context)
        except DegenerateContext:
            excluded[name] = "a-degenerate context (not an a-cell)"
            assignment[name] = None
            continue
        cls = classify_context(coeffs)
        if cls is ContextClass.MIXED:
            excluded[name] = "mixed context"
            assignment[name] = None
            continue
        if cls is ContextClass.HYPERBOLIC:
            excluded[name] = "hyperbolic context"
            assignment[name] = None
            continue
        pc = space.probability(context)
        key = tuple(
            round(space.probability(e & context) / pc, 9)
            for e in (*pair.a_partition, *pair.b_partition)
        )
        members = group_members.setdefault(key, [])
        if len(members) == 0:
            branch = "principal"
        elif len(members) == 1:
            branch = "conjugate"
        else:
            branch = "principal"
            collisions.append((name, members[0]))
        members.append(name)
        psi = build_amplitude(space, pair, context, branch)
        assignment[name] = register(np.array(psi.components))

    return ImageReport(
        states=tuple(states),
        assignment=assignment,
        excluded=excluded,
        collisions=tuple(collisions),
        injective=not collisions,
    )
