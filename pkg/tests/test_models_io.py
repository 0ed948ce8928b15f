import json
import math

import numpy as np
import pytest

import contextprob as cp
from contextprob.models import dumps_model, loads_model, model_from_dict


def minimal_doc(weights=(0.125, 0.375, 0.125, 0.375)):
    return {
        "points": [
            {"id": f"w{i + 1}", "p": w} for i, w in enumerate(weights)
        ],
        "variables": {
            "a": {"w1": 1.0, "w2": 1.0, "w3": -1.0, "w4": -1.0},
            "b": {"w1": 1.0, "w2": -1.0, "w3": -1.0, "w4": 1.0},
        },
        "contexts": {"C123": ["w1", "w2", "w3"]},
    }


class TestLoader:
    def test_minimal_document(self):
        doc = model_from_dict(minimal_doc())
        assert doc.space.points == ("w1", "w2", "w3", "w4")
        assert doc.pair_names == ("a", "b")
        assert doc.space.members(doc.context("C123")) == ("w1", "w2", "w3")

    def test_rejects_nonpositive_weight(self):
        raw = minimal_doc()
        raw["points"][0]["p"] = 0.0
        with pytest.raises(cp.ModelValidationError):
            model_from_dict(raw)

    def test_rejects_bad_weight_sum(self):
        raw = minimal_doc((0.1, 0.3, 0.1, 0.4))
        with pytest.raises(cp.ModelValidationError):
            model_from_dict(raw)

    def test_renormalises_small_drift(self):
        raw = minimal_doc()
        raw["points"][0]["p"] = 0.125 + 4e-10
        doc = model_from_dict(raw)
        assert math.fsum(doc.space.weights) == pytest.approx(1.0, abs=1e-12)

    def test_rejects_duplicate_ids(self):
        raw = minimal_doc()
        raw["points"][1]["id"] = "w1"
        with pytest.raises(cp.ModelValidationError):
            model_from_dict(raw)

    def test_rejects_partial_variable(self):
        raw = minimal_doc()
        del raw["variables"]["a"]["w3"]
        with pytest.raises(cp.ModelValidationError):
            model_from_dict(raw)

    def test_rejects_unknown_context_member(self):
        raw = minimal_doc()
        raw["contexts"]["C123"] = ["w1", "nope"]
        with pytest.raises(cp.ModelValidationError):
            model_from_dict(raw)

    def test_rejects_invalid_json(self):
        with pytest.raises(cp.ModelValidationError):
            loads_model("{not json")

    def test_explicit_reference_pair(self):
        raw = minimal_doc()
        raw["variables"]["c"] = {"w1": 0.0, "w2": 1.0, "w3": 2.0, "w4": 3.0}
        raw["reference_pair"] = ["a", "c"]
        doc = model_from_dict(raw)
        assert doc.pair_names == ("a", "c")


class TestCanonicalSerialisation:
    def test_roundtrip_is_fixed_point(self):
        doc = cp.generate_kq(0.3)
        text1 = dumps_model(doc)
        doc2 = loads_model(text1)
        text2 = dumps_model(doc2)
        assert text1 == text2
        doc3 = loads_model(text2)
        assert dumps_model(doc3) == text2

    def test_fixed_point_after_renormalisation(self):
        raw = minimal_doc()
        raw["points"][0]["p"] = 0.125 + 4e-10
        doc = model_from_dict(raw)
        text1 = dumps_model(doc)
        assert dumps_model(loads_model(text1)) == text1

    def test_seventeen_digit_floats(self):
        doc = cp.generate_kq(1.0 / 3.0)
        text = dumps_model(doc)
        assert "0.33333333333333331" in text

    def test_canonical_output_is_valid_json(self):
        doc = cp.generate_kq(0.125)
        parsed = json.loads(dumps_model(doc))
        assert parsed["points"][0]["id"] == "w1"
        assert sorted(parsed["contexts"]) == list(parsed["contexts"])


class TestKqGenerator:
    @pytest.mark.parametrize("q", (0.05, 0.125, 0.25, 0.4))
    def test_weights(self, q):
        doc = cp.generate_kq(q)
        assert doc.space.weights == (
            q, (1 - 2 * q) / 2, q, (1 - 2 * q) / 2
        )

    def test_uniform_marginals(self, kq):
        for e in (*kq.pair.a_partition, *kq.pair.b_partition):
            assert kq.space.probability(e) == pytest.approx(0.5, abs=1e-15)

    def test_transition_matrix(self, kq):
        t = cp.transition_matrix(kq.space, kq.pair)
        np.testing.assert_allclose(
            t.entries, [[0.25, 0.75], [0.75, 0.25]], atol=1e-15
        )

    def test_context_catalogue(self, kq):
        assert len(kq.contexts) == 11
        assert "Omega" in kq.contexts
        assert len(kq.context("Omega")) == 4

    @pytest.mark.parametrize("q", (0.0, 0.5, -0.1, 1.0))
    def test_q_out_of_range(self, q):
        with pytest.raises(cp.QOutOfRange):
            cp.generate_kq(q)


class TestRandomGenerator:
    def test_deterministic_for_fixed_seed(self):
        d1 = cp.generate_random_model(seed=42, n_points=6)
        d2 = cp.generate_random_model(seed=42, n_points=6)
        assert dumps_model(d1) == dumps_model(d2)

    def test_different_seeds_differ(self):
        d1 = cp.generate_random_model(seed=1, n_points=6)
        d2 = cp.generate_random_model(seed=2, n_points=6)
        assert dumps_model(d1) != dumps_model(d2)

    def test_double_stochastic_constraint(self):
        for seed in range(20):
            doc = cp.generate_random_model(
                seed=seed, n_points=5, double_stochastic=True
            )
            t = cp.transition_matrix(doc.space, doc.pair)
            assert cp.is_double_stochastic(t, tol=1e-10)

    def test_not_double_stochastic_constraint(self):
        for seed in range(20):
            doc = cp.generate_random_model(
                seed=seed, n_points=5, double_stochastic=False
            )
            t = cp.transition_matrix(doc.space, doc.pair)
            assert not cp.is_double_stochastic(t)

    def test_incompatible_constraint(self):
        for seed in range(20):
            doc = cp.generate_random_model(seed=seed, n_points=7)
            assert cp.are_incompatible(doc.space, doc.pair)

    def test_three_valued_arities(self):
        doc = cp.generate_random_model(
            seed=5, n_points=11, value_arities=(3, 3)
        )
        assert len(doc.pair.a_values) == 3
        assert len(doc.pair.b_values) == 3
        assert cp.are_incompatible(doc.space, doc.pair)

    def test_too_few_points_rejected(self):
        with pytest.raises(ValueError):
            cp.generate_random_model(seed=0, n_points=3)

    def test_retry_budget_exhaustion(self):
        with pytest.raises(cp.ConstraintUnsatisfiable):
            cp.generate_random_model(seed=0, n_points=4, max_retries=0)
