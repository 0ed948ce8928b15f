"""Model documents: loading, validation, canonical serialisation, generators.

A model document is a single JSON object with the sample points and their
weights, the named random variables (total over the points), the named
contexts (lists of point identifiers), and optionally the pair of variable
names to use as the reference pair (default: "a" and "b", else the first two
declared).

The loader rejects nonpositive weights and weight sums outside one part in
1e9, then renormalises.  Serialisation is canonical: sorted object keys,
context members in point order, and floats printed with 17 significant
digits so that load -> serialise -> load is a fixed point.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .errors import (
    ConstraintUnsatisfiable,
    ModelValidationError,
    QOutOfRange,
)
from .space import (
    Event,
    FiniteKolmogorovSpace,
    RandomVariable,
    ReferencePair,
    are_incompatible,
    is_double_stochastic,
    transition_matrix,
)

SUM_GATE = 1e-9      # accepted deviation of the declared weight sum from one
RENORM_SKIP = 1e-13  # below this the weights are already canonical; keep them


@dataclass(frozen=True, eq=False)
class ModelDocument:
    """A validated model: space, variables, contexts, and reference pair."""

    space: FiniteKolmogorovSpace
    variables: dict[str, RandomVariable]
    contexts: dict[str, Event]
    pair_names: tuple[str, str]

    @property
    def pair(self) -> ReferencePair:
        a, b = self.pair_names
        return ReferencePair.from_variables(
            self.space, self.variables[a], self.variables[b]
        )

    def context(self, name: str) -> Event:
        try:
            return self.contexts[name]
        except KeyError:
            raise ModelValidationError(f"unknown context {name!r}") from None


def _validate(cond: bool, message: str) -> None:
    if not cond:
        raise ModelValidationError(message)


def model_from_dict(doc: Mapping) -> ModelDocument:
    _validate(isinstance(doc, Mapping), "model document must be a JSON object")
    _validate("points" in doc, "model document needs a 'points' array")
    points_raw = doc["points"]
    _validate(
        isinstance(points_raw, Sequence) and points_raw,
        "'points' must be a nonempty array",
    )
    ids: list[str] = []
    weights: list[float] = []
    for entry in points_raw:
        _validate(
            isinstance(entry, Mapping) and "id" in entry and "p" in entry,
            "each point needs 'id' and 'p'",
        )
        pid, w = entry["id"], entry["p"]
        _validate(isinstance(pid, str), "point ids must be strings")
        _validate(
            isinstance(w, (int, float)) and not isinstance(w, bool),
            f"weight of {pid!r} must be a number",
        )
        _validate(float(w) > 0.0, f"weight of {pid!r} must be positive")
        _validate(pid not in ids, f"duplicate point id {pid!r}")
        ids.append(pid)
        weights.append(float(w))
    total = math.fsum(weights)
    _validate(
        abs(total - 1.0) <= SUM_GATE,
        f"weights sum to {total!r}, outside the accepted gate around 1",
    )
    if abs(total - 1.0) > RENORM_SKIP:
        weights = [w / total for w in weights]
    space = FiniteKolmogorovSpace(tuple(ids), tuple(weights))

    variables_raw = doc.get("variables", {})
    _validate(
        isinstance(variables_raw, Mapping) and len(variables_raw) >= 2,
        "model needs at least two variables",
    )
    variables: dict[str, RandomVariable] = {}
    for name, mapping in variables_raw.items():
        _validate(isinstance(mapping, Mapping), f"variable {name!r} must be an object")
        try:
            variables[name] = RandomVariable.from_mapping(space, name, mapping)
        except ValueError as exc:
            raise ModelValidationError(str(exc)) from None

    contexts_raw = doc.get("contexts", {})
    _validate(isinstance(contexts_raw, Mapping), "'contexts' must be an object")
    contexts: dict[str, Event] = {}
    for name, members in contexts_raw.items():
        _validate(
            isinstance(members, Sequence) and not isinstance(members, str),
            f"context {name!r} must be an array of point ids",
        )
        try:
            contexts[name] = space.event(members)
        except KeyError as exc:
            raise ModelValidationError(
                f"context {name!r} references {exc.args[0]}"
            ) from None

    pair_names_raw = doc.get("reference_pair")
    if pair_names_raw is None:
        if "a" in variables and "b" in variables:
            pair_names = ("a", "b")
        else:
            names = list(variables)
            pair_names = (names[0], names[1])
    else:
        _validate(
            isinstance(pair_names_raw, Sequence) and len(pair_names_raw) == 2,
            "'reference_pair' must name exactly two variables",
        )
        for name in pair_names_raw:
            _validate(name in variables, f"reference pair names unknown {name!r}")
        pair_names = (pair_names_raw[0], pair_names_raw[1])
    return ModelDocument(space, variables, contexts, pair_names)


def loads_model(text: str) -> ModelDocument:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelValidationError(f"invalid JSON: {exc}") from None
    return model_from_dict(doc)


def load_model(path) -> ModelDocument:
    with open(path, "r", encoding="utf-8") as fh:
        return loads_model(fh.read())


def _fmt(x: float) -> str:
    return format(x, ".17g")


def dumps_model(doc: ModelDocument) -> str:
    """Canonical text form: sorted keys, members in point order, floats with
    17 significant digits."""
    lines = ["{"]
    lines.append('  "contexts": {')
    ctx_items = sorted(doc.contexts.items())
    for i, (name, event) in enumerate(ctx_items):
        members = ", ".join(json.dumps(p) for p in doc.space.members(event))
        comma = "," if i + 1 < len(ctx_items) else ""
        lines.append(f"    {json.dumps(name)}: [{members}]{comma}")
    lines.append("  },")
    lines.append('  "points": [')
    for i, (pid, w) in enumerate(zip(doc.space.points, doc.space.weights)):
        comma = "," if i + 1 < doc.space.n else ""
        lines.append(f'    {{"id": {json.dumps(pid)}, "p": {_fmt(w)}}}{comma}')
    lines.append("  ],")
    lines.append(f'  "reference_pair": {json.dumps(list(doc.pair_names))},')
    lines.append('  "variables": {')
    var_items = sorted(doc.variables.items())
    for i, (name, var) in enumerate(var_items):
        pairs = ", ".join(
            f"{json.dumps(p)}: {_fmt(v)}"
            for p, v in zip(doc.space.points, var.values)
        )
        comma = "," if i + 1 < len(var_items) else ""
        lines.append(f"    {json.dumps(name)}: {{{pairs}}}{comma}")
    lines.append("  }")
    lines.append("}")
    return "\n".join(lines) + "\n"


def save_model(doc: ModelDocument, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_model(doc))


def generate_kq(q: float) -> ModelDocument:
    """The bundled four-point model: weights (q, (1-2q)/2, q, (1-2q)/2), both
    variables dichotomous at +1/-1, all two- and three-point subsets plus the
    full space pre-declared as contexts."""
    if not (0.0 < q < 0.5):
        raise QOutOfRange(f"q={q!r} must lie strictly between 0 and 1/2")
    half_rest = (1.0 - 2.0 * q) / 2.0
    points = ("w1", "w2", "w3", "w4")
    weights = (q, half_rest, q, half_rest)
    space = FiniteKolmogorovSpace(points, weights)
    variables = {
        "a": RandomVariable("a", (1.0, 1.0, -1.0, -1.0)),
        "b": RandomVariable("b", (1.0, -1.0, -1.0, 1.0)),
    }
    contexts: dict[str, Event] = {}
    names = [1, 2, 3, 4]
    for size in (2, 3):
        for combo in _combinations(names, size):
            label = "C" + "".join(str(i) for i in combo)
            contexts[label] = space.event([f"w{i}" for i in combo])
    contexts["Omega"] = space.full_event()
    return ModelDocument(space, variables, contexts, ("a", "b"))


def _combinations(items: list[int], size: int):
    import itertools

    return itertools.combinations(items, size)


def _doubly_stochastic_matrix(rng: np.random.Generator, k: int) -> np.ndarray:
    """Random doubly stochastic matrix with strictly positive entries, as a
    convex combination of permutation matrices plus a uniform floor."""
    perms = [rng.permutation(k) for _ in range(k * k)]
    coeff = rng.dirichlet(np.ones(len(perms)))
    m = np.zeros((k, k))
    for c, perm in zip(coeff, perms):
        for i, j in enumerate(perm):
            m[i, j] += c
    uniform = np.full((k, k), 1.0 / k)
    return 0.9 * m + 0.1 * uniform


def generate_random_model(
    seed: int,
    n_points: int,
    value_arities: tuple[int, int] = (2, 2),
    double_stochastic: bool | None = None,
    incompatible: bool = True,
    n_contexts: int = 8,
    max_retries: int = 200,
) -> ModelDocument:
    """Seed-deterministic random model meeting the requested constraints.

    ``double_stochastic`` constrains the transition matrix conditioned on the
    first variable: True forces it, False forbids it, None leaves it free.
    ``incompatible`` keeps every joint cell of the two partitions populated.
    """
    ka, kb = value_arities
    if n_points < ka * kb:
        raise ValueError("need at least one point per joint cell")
    if not incompatible and n_points < max(ka, kb):
        raise ValueError("too few points for the requested arities")
    rng = np.random.default_rng(seed)

    for _ in range(max_retries):
        if double_stochastic:
            t = _doubly_stochastic_matrix(rng, ka)
            row_mass = rng.dirichlet(np.ones(ka) * 5.0)
            cell_mass = row_mass[:, None] * t
        else:
            cell_mass = rng.dirichlet(np.ones(ka * kb) * 2.0).reshape(ka, kb)
        if np.min(cell_mass) < 1e-4:
            continue

        # one point per cell in (a, b)-major order fixes the value ordering,
        # extra points are sprinkled over the cells afterwards
        cell_of_point = [(y, x) for y in range(ka) for x in range(kb)]
        for _ in range(n_points - ka * kb):
            cell_of_point.append(
                (int(rng.integers(ka)), int(rng.integers(kb)))
            )
        splits: dict[tuple[int, int], list[int]] = {}
        for idx, cell in enumerate(cell_of_point):
            splits.setdefault(cell, []).append(idx)
        weights = np.empty(len(cell_of_point))
        for cell, point_ids in splits.items():
            parts = rng.dirichlet(np.ones(len(point_ids)) * 3.0)
            mass = cell_mass[cell[0], cell[1]]
            for pid, frac in zip(point_ids, parts):
                weights[pid] = mass * frac
        weights = weights / weights.sum()
        if np.min(weights) <= 1e-9:
            continue

        points = tuple(f"w{i + 1}" for i in range(len(cell_of_point)))
        a_levels = tuple(np.linspace(1.0, -1.0, ka))
        b_levels = tuple(np.linspace(1.0, -1.0, kb))
        a_vals = tuple(float(a_levels[c[0]]) for c in cell_of_point)
        b_vals = tuple(float(b_levels[c[1]]) for c in cell_of_point)
        space = FiniteKolmogorovSpace(points, tuple(float(w) for w in weights))
        variables = {
            "a": RandomVariable("a", a_vals),
            "b": RandomVariable("b", b_vals),
        }
        pair = ReferencePair.from_variables(space, variables["a"], variables["b"])

        if incompatible and not are_incompatible(space, pair):
            continue
        t_ba = transition_matrix(space, pair, "b/a")
        ds = is_double_stochastic(t_ba)
        if double_stochastic is True and not ds:
            continue
        if double_stochastic is False and ds:
            continue

        contexts: dict[str, Event] = {"Omega": space.full_event()}
        for ci in range(n_contexts):
            size = int(rng.integers(2, len(points) + 1))
            chosen = rng.choice(len(points), size=size, replace=False)
            contexts[f"S{ci}"] = space.event_from_indices(int(i) for i in chosen)
        return ModelDocument(space, variables, contexts, ("a", "b"))

    raise ConstraintUnsatisfiable(
        f"no model met the constraints within {max_retries} attempts"
    )
