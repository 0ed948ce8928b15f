import pytest

import contextprob as cp


@pytest.fixture
def kq():
    """The bundled four-point model at q = 1/8."""
    return cp.generate_kq(0.125)


def make_pair_model(weights):
    """Four-point space with the canonical crossing partitions:
    a splits {w1,w2} vs {w3,w4}, b splits {w1,w4} vs {w2,w3}."""
    space = cp.FiniteKolmogorovSpace(("w1", "w2", "w3", "w4"), tuple(weights))
    a = cp.RandomVariable("a", (1.0, 1.0, -1.0, -1.0))
    b = cp.RandomVariable("b", (1.0, -1.0, -1.0, 1.0))
    return space, cp.ReferencePair.from_variables(space, a, b)


@pytest.fixture
def skewed():
    """Non-double-stochastic four-point model with hyperbolic b-cells."""
    return make_pair_model((0.1, 0.2, 0.3, 0.4))


@pytest.fixture
def ds_skewed():
    """Double stochastic transition matrix but nonuniform marginals, so the
    b-cells are strictly hyperbolic contexts."""
    return make_pair_model((0.075, 0.225, 0.175, 0.525))
