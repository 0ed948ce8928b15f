"""Command-line interface.

Subcommands: ``analyze`` (interference coefficients and context classes),
``represent`` (state vectors and operator matrices), ``verify`` (named check
suites with exit code 1 on failure), ``example kq`` (the bundled four-point
model reproduced against its closed forms), and ``gen random`` (seeded model
generation).  Exit codes: 0 success, 1 verification or reproduction failure,
2 load/validation failure; diagnostics for the latter are machine readable
on stderr.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import complex_repr as cr
from . import hyperbolic_repr as hr
from . import interference as itf
from . import multivalued as mv
from .errors import ContextualProbabilityError, ModelValidationError
from .models import (
    ModelDocument,
    dumps_model,
    generate_kq,
    generate_random_model,
    load_model,
    save_model,
)
from .space import transition_matrix
from .verify import run_suite


def _emit(payload, args) -> None:
    if args.format == "json":
        text = json.dumps(payload, indent=2, sort_keys=True, default=str)
    else:
        text = _render_text(payload)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _render_text(payload, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(payload, dict):
        lines = []
        for key, value in payload.items():
            if isinstance(value, (dict, list)):
                lines.append(f"{pad}{key}:")
                lines.append(_render_text(value, indent + 1))
            else:
                lines.append(f"{pad}{key}: {_fmt_value(value)}")
        return "\n".join(lines)
    if isinstance(payload, list):
        return "\n".join(_render_text(item, indent) for item in payload)
    return pad + _fmt_value(payload)


def _fmt_value(value) -> str:
    if isinstance(value, float):
        return f"{value:.12g}"
    return str(value)


def _fail_load(exc: Exception) -> int:
    diag = {"error": "model-validation", "detail": str(exc)}
    print(json.dumps(diag), file=sys.stderr)
    return 2


def _load(args) -> ModelDocument:
    return load_model(args.model)


def _selected_contexts(doc: ModelDocument, name: str | None):
    if name is None:
        return dict(doc.contexts)
    return {name: doc.context(name)}


def _chain_payload(chain) -> dict:
    return {
        "order": list(chain.order),
        "levels": {
            str(x): [
                {
                    "level": rec.level,
                    "coefficient": rec.coefficient,
                    "phase": rec.phase,
                    "arg": rec.arg,
                    "partial": {"re": rec.partial.real, "im": rec.partial.imag},
                    "tail_probability": rec.tail_probability,
                }
                for rec in records
            ]
            for x, records in chain.levels.items()
        },
        "betas": {str(x): list(b) for x, b in chain.betas.items()},
    }


def cmd_analyze(args) -> int:
    try:
        doc = _load(args)
    except (ModelValidationError, OSError) as exc:
        return _fail_load(exc)
    space, pair = doc.space, doc.pair
    out: dict = {"contexts": {}}
    dichotomous = len(pair.a_values) == 2 and len(pair.b_values) == 2
    for name, event in _selected_contexts(doc, args.context).items():
        if not dichotomous:
            try:
                _, chain = mv.build_amplitude_nvalued(space, pair, event)
                out["contexts"][name] = {
                    "class": "split-representable",
                    "split_chain": _chain_payload(chain),
                }
            except ContextualProbabilityError as exc:
                out["contexts"][name] = {
                    "class": "unrepresentable", "reason": str(exc),
                }
            continue
        try:
            coeffs = itf.interference_coefficients(space, pair, event)
        except ContextualProbabilityError as exc:
            out["contexts"][name] = {"class": "degenerate", "reason": str(exc)}
            continue
        cls = itf.classify_context(coeffs)
        entry: dict = {"class": cls.value, "outcomes": {}}
        thetas = epsilons = None
        if cls is not itf.ContextClass.MIXED:
            phases = itf.assign_phases(coeffs, args.branch)
            thetas = phases.thetas
            epsilons = phases.epsilons
        for j, o in enumerate(coeffs.outcomes):
            entry["outcomes"][str(o.value)] = {
                "delta": o.delta,
                "lambda": o.lam,
                "theta": None if thetas is None else thetas[j],
                "epsilon": None if epsilons is None else epsilons[j],
            }
        out["contexts"][name] = entry
    _emit(out, args)
    return 0


def _complex_entry(space, pair, event, branch, basis):
    psi = cr.build_amplitude(space, pair, event, branch)
    born_b = max(
        abs(psi.born(x) - space.conditional(pair.b_partition[j], event))
        for j, x in enumerate(pair.b_values)
    )
    entry = {
        "amplitude": {
            "re": [float(c.real) for c in psi.components],
            "im": [float(c.imag) for c in psi.components],
        },
        "branch": branch,
        "born_b_residual": born_b,
    }
    if basis.unitary:
        born_a = max(
            abs(
                cr.born_probability(psi, basis.vector(i))
                - space.conditional(pair.a_partition[i], event)
            )
            for i in range(2)
        )
        entry["born_a_residual"] = born_a
    return entry


def cmd_represent(args) -> int:
    try:
        doc = _load(args)
    except (ModelValidationError, OSError) as exc:
        return _fail_load(exc)
    space, pair = doc.space, doc.pair
    anchor = doc.context(args.anchor) if args.anchor else space.full_event()
    if len(pair.a_values) != 2 or len(pair.b_values) != 2:
        return _represent_nvalued(doc, args)
    basis = cr.a_basis_for_context(space, pair, anchor, args.branch)
    out: dict = {"complex": {}, "hyperbolic": {}, "operators": {}}
    out["basis_unitary"] = basis.unitary
    if not basis.unitary:
        out["basis_witness"] = basis.witness

    # a shared module basis for the a-side decomposability flags: anchored at
    # the first strictly hyperbolic declared context, when one exists
    g_basis = None
    if basis.unitary:
        for event in doc.contexts.values():
            try:
                coeffs = itf.interference_coefficients(space, pair, event)
            except ContextualProbabilityError:
                continue
            if itf.classify_context(coeffs) is itf.ContextClass.HYPERBOLIC:
                g_basis = hr.hyperbolic_a_basis(space, pair, event)
                break

    for name, event in _selected_contexts(doc, args.context).items():
        try:
            out["complex"][name] = _complex_entry(
                space, pair, event, args.branch, basis
            )
        except ContextualProbabilityError as exc:
            out["complex"][name] = {"skipped": str(exc)}
        try:
            psi = hr.build_hyperbolic_amplitude(space, pair, event)
            decomposable = {"b": hr.check_decomposability(psi.components)}
            if g_basis is not None:
                decomposable["a"] = hr.check_decomposability(
                    hr.expand_in_basis(psi, g_basis)
                )
            out["hyperbolic"][name] = {
                "components": [{"x": c.x, "y": c.y} for c in psi.components],
                "epsilons": list(psi.epsilons),
                "thetas": list(psi.thetas),
                "born_residual": max(
                    abs(
                        psi.born(x)
                        - space.conditional(pair.b_partition[j], event)
                    )
                    for j, x in enumerate(pair.b_values)
                ),
                "decomposable": decomposable,
            }
        except ContextualProbabilityError as exc:
            out["hyperbolic"][name] = {"skipped": str(exc)}
    b_op = cr.operator_for_b(pair)
    out["operators"]["b"] = _matrix_payload(b_op.matrix)
    if basis.unitary:
        a_op = cr.operator_for_variable(pair.a_values, basis)
        out["operators"]["a"] = _matrix_payload(a_op.matrix)
        out["operators"]["commutator_b_a"] = _matrix_payload(
            cr.commutator(b_op, a_op)
        )
    _emit(out, args)
    return 0


def _represent_nvalued(doc, args) -> int:
    """Split-recursion report for pairs with more than two values."""
    space, pair = doc.space, doc.pair
    out: dict = {"complex": {}, "operators": {}}
    for name, event in _selected_contexts(doc, args.context).items():
        try:
            psi, chain = mv.build_amplitude_nvalued(space, pair, event)
        except ContextualProbabilityError as exc:
            out["complex"][name] = {"skipped": str(exc)}
            continue
        born = max(
            abs(psi.born(x) - space.conditional(pair.b_partition[j], event))
            for j, x in enumerate(pair.b_values)
        )
        out["complex"][name] = {
            "amplitude": {
                "re": [float(c.real) for c in psi.components],
                "im": [float(c.imag) for c in psi.components],
            },
            "born_b_residual": born,
            "split_chain": _chain_payload(chain),
        }
    out["operators"]["b"] = _matrix_payload(cr.operator_for_b(pair).matrix)
    _emit(out, args)
    return 0


def _matrix_payload(m: np.ndarray):
    return [
        [{"re": float(v.real), "im": float(v.imag)} for v in row] for row in m
    ]


def cmd_verify(args) -> int:
    try:
        doc = _load(args)
    except (ModelValidationError, OSError) as exc:
        return _fail_load(exc)
    report = run_suite(doc, args.suite, tolerance=args.tolerance)
    _emit(report.to_dict(), args)
    return 0 if report.passed else 1


def cmd_example_kq(args) -> int:
    q = args.q
    gamma = args.gamma
    try:
        doc = generate_kq(q)
    except ContextualProbabilityError as exc:
        return _fail_load(exc)
    space, pair = doc.space, doc.pair
    rows: list[dict] = []

    def row(name: str, reference: float, computed: float) -> None:
        rows.append(
            {
                "quantity": name,
                "closed_form": reference,
                "computed": computed,
                "abs_diff": abs(reference - computed),
            }
        )

    t = transition_matrix(space, pair, "b/a")
    row("p(b1|a1)", 2 * q, float(t.entries[0, 0]))
    row("p(b2|a1)", 1 - 2 * q, float(t.entries[0, 1]))
    for i, e in enumerate(pair.a_partition):
        row(f"P(A{i + 1})", 0.5, space.probability(e))

    lam_forms = {
        "C123": -math.sqrt(1 - 2 * q) / 2,
        "C124": math.sqrt(q / 2),
        "C134": math.sqrt(1 - 2 * q) / 2,
        "C234": -math.sqrt(q / 2),
    }
    for name, closed in lam_forms.items():
        lam = itf.lambda_coefficient(
            space, pair, doc.context(name), pair.b_values[0]
        )
        row(f"lambda(b1, {name})", closed, lam)

    psi24 = cr.build_amplitude(space, pair, doc.context("C24"), "principal")
    row("Re psi_C24(b1)", math.sqrt(q), psi24.component(1.0).real)
    row("Im psi_C24(b1)", math.sqrt((1 - 2 * q) / 2), psi24.component(1.0).imag)
    row("Re psi_C24(b2)", math.sqrt((1 - 2 * q) / 2), psi24.component(-1.0).real)
    row("Im psi_C24(b2)", -math.sqrt(q), psi24.component(-1.0).imag)

    c234 = doc.context("C234")
    b_op = cr.operator_for_b(pair)
    basis = cr.a_basis_for_context(space, pair, space.full_event())
    a_op = cr.operator_for_variable(pair.a_values, basis)
    psi234 = cr.build_amplitude(space, pair, c234)
    closed_avg = q / (q - 1)
    row("E(b|C234)", closed_avg, cr.quantum_average(b_op, psi234))
    row("E(a|C234)", closed_avg, cr.quantum_average(a_op, psi234))

    mismatch = cr.distribution_mismatch(space, pair, c234, gamma)
    row("classical p(-2g)", q / (1 - q), mismatch.classical_dist[-2 * gamma])
    row("classical p(0)", (1 - 2 * q) / (1 - q), mismatch.classical_dist[0.0])
    row("classical p(+2g)", 0.0, mismatch.classical_dist[2 * gamma])
    s = math.sqrt(2 * q)
    k1, k2 = 2 * s * gamma, -2 * s * gamma
    quantum = dict(mismatch.quantum_dist)
    row("quantum p(k1)", (1 - s) * (2 + s) / (4 * (1 - q)), quantum[max(quantum)])
    row("quantum p(k2)", (1 + s) * (2 - s) / (4 * (1 - q)), quantum[min(quantum)])
    row("spectrum k1", k1, max(quantum))
    row("spectrum k2", k2, min(quantum))
    row("avg (classical)", 2 * closed_avg * gamma, mismatch.classical_average)
    row("avg (spectral)", 2 * closed_avg * gamma, mismatch.quantum_average)

    comm = cr.commutator(b_op, a_op)
    q1q2 = math.sqrt(2 * q * (1 - 2 * q))
    closed_offdiag = (
        (pair.a_values[0] - pair.a_values[1])
        * (pair.b_values[0] - pair.b_values[1])
        * q1q2
    )
    row("commutator [b,a]_12", closed_offdiag, float(comm[0, 1].real))

    worst = max(r["abs_diff"] for r in rows)
    payload = {"q": q, "gamma": gamma, "rows": rows, "worst_abs_diff": worst}
    _emit(payload, args)
    return 0 if worst <= (args.tolerance or 1e-9) else 1


def cmd_gen_random(args) -> int:
    try:
        doc = generate_random_model(
            seed=args.seed,
            n_points=args.points,
            value_arities=(args.arity_a, args.arity_b),
            double_stochastic=args.double_stochastic,
            incompatible=not args.allow_compatible,
            n_contexts=args.contexts,
        )
    except ContextualProbabilityError as exc:
        return _fail_load(exc)
    if args.output:
        save_model(doc, args.output)
    else:
        print(dumps_model(doc), end="")
    return 0


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--format", choices=("json", "text"), default="json")
    parser.add_argument("--output", default=None, help="write the report here")
    parser.add_argument(
        "--tolerance",
        type=float,
        default=None,
        help="override the report tolerance (not internal identity checks)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="contextprob",
        description="contextual probability calculus and its Hilbert-space "
        "representations",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="interference coefficients per context")
    p.add_argument("model")
    p.add_argument("--context", default=None)
    p.add_argument(
        "--branch", choices=("principal", "conjugate"), default="principal"
    )
    _add_common(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("represent", help="state vectors and operators")
    p.add_argument("model")
    p.add_argument("--context", default=None)
    p.add_argument(
        "--branch", choices=("principal", "conjugate"), default="principal"
    )
    p.add_argument("--anchor", default=None, help="anchor context name")
    _add_common(p)
    p.set_defaults(func=cmd_represent)

    p = sub.add_parser("verify", help="run named verification checks")
    p.add_argument("model")
    p.add_argument(
        "--suite",
        choices=("core", "complex", "hyperbolic", "multivalued", "all"),
        default="all",
    )
    _add_common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("example", help="bundled models reproduced end to end")
    example_sub = p.add_subparsers(dest="example", required=True)
    kq = example_sub.add_parser("kq", help="four-point two-parameter model")
    kq.add_argument("--q", type=float, required=True)
    kq.add_argument("--gamma", type=float, default=1.0)
    _add_common(kq)
    kq.set_defaults(func=cmd_example_kq)

    p = sub.add_parser("gen", help="model generators")
    gen_sub = p.add_subparsers(dest="generator", required=True)
    rnd = gen_sub.add_parser("random", help="seeded random model")
    rnd.add_argument("--seed", type=int, required=True)
    rnd.add_argument("--points", type=int, required=True)
    rnd.add_argument("--arity-a", type=int, default=2)
    rnd.add_argument("--arity-b", type=int, default=2)
    ds_group = rnd.add_mutually_exclusive_group()
    ds_group.add_argument(
        "--double-stochastic", dest="double_stochastic",
        action="store_const", const=True, default=None,
    )
    ds_group.add_argument(
        "--not-double-stochastic", dest="double_stochastic",
        action="store_const", const=False,
    )
    rnd.add_argument("--allow-compatible", action="store_true")
    rnd.add_argument("--contexts", type=int, default=8)
    rnd.add_argument("--output", default=None)
    rnd.set_defaults(func=cmd_gen_random)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ModelValidationError as exc:
        return _fail_load(exc)


if __name__ == "__main__":
    sys.exit(main())
