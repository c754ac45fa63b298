import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from steinlab.errors import DimensionError, InvalidStateError, SupportError
from steinlab.states import (
    DensityOperator,
    StatePair,
    binary_divergence,
    binary_entropy,
    kl_divergence,
    preset_pair,
    random_density,
    random_pair,
    relative_entropy,
    tensor_power,
)


def test_classical_kl_oracle():
    p, q = np.array([0.75, 0.25]), np.array([0.5, 0.5])
    oracle = float(np.sum(p * np.log(p / q)))
    assert kl_divergence(p, q) == pytest.approx(oracle, abs=1e-14)
    assert oracle == pytest.approx(0.130812, abs=5e-7)
    pair = preset_pair("commuting-qubit")
    assert relative_entropy(pair.rho, pair.sigma) == pytest.approx(oracle, abs=1e-12)


def test_plus_vs_diag_oracle():
    # D(|+><+| || sigma) = -<+|log sigma|+> since |+> is pure
    oracle = -0.5 * (math.log(0.75) + math.log(0.25))
    pair = preset_pair("plus-vs-diag")
    assert relative_entropy(pair.rho, pair.sigma) == pytest.approx(oracle, abs=1e-6)
    assert round(relative_entropy(pair.rho, pair.sigma), 6) == 0.836988


def test_binary_functions():
    assert binary_divergence(0.25, 0.5) == pytest.approx(0.130812, abs=5e-7)
    assert binary_entropy(0.25) == pytest.approx(0.562335, abs=5e-7)
    assert binary_entropy(0.0) == 0.0


def test_kl_support_violation():
    with pytest.raises(SupportError):
        kl_divergence([0.5, 0.5], [1.0, 0.0])
    assert kl_divergence([1.0, 0.0], [0.5, 0.5]) == pytest.approx(math.log(2))


def test_density_validation():
    with pytest.raises(InvalidStateError):
        DensityOperator(np.diag([0.6, 0.6]))
    with pytest.raises(InvalidStateError):
        DensityOperator(np.diag([1.2, -0.2]))


def test_pair_requires_faithful_and_matching():
    with pytest.raises(SupportError):
        StatePair.from_arrays(np.diag([1.0, 0.0]), np.eye(2) / 2)
    with pytest.raises(DimensionError):
        StatePair.from_arrays(np.eye(2) / 2, np.eye(3) / 3)


def test_tensor_power_trace_and_spectrum():
    rho = random_density(3, 5)
    r3 = tensor_power(rho, 3)
    assert r3.dim == 27
    assert np.trace(r3.op).real == pytest.approx(1.0, abs=1e-12)
    np.testing.assert_allclose(np.sort(r3.spectrum.eigenvalues), np.sort(np.linalg.eigvalsh(r3.op)), atol=1e-12)


def test_relative_entropy_additive():
    pair = random_pair(11)
    d1 = relative_entropy(pair.rho, pair.sigma)
    d3 = relative_entropy(tensor_power(pair.rho, 3), tensor_power(pair.sigma, 3))
    assert d3 == pytest.approx(3 * d1, rel=1e-9)


def test_random_states_are_seeded():
    np.testing.assert_array_equal(random_density(4, 3).op, random_density(4, 3).op)
    assert not np.array_equal(random_density(4, 3).op, random_density(4, 4).op)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.integers(2, 5))
def test_klein_inequality(seed, d):
    rho = random_density(d, seed)
    sigma = random_density(d, seed + 1)
    assert relative_entropy(rho, sigma) >= -1e-12
    assert relative_entropy(rho, rho) == pytest.approx(0.0, abs=1e-10)


def test_random_density_invariants():
    assert random_density(1, 0).op[0, 0] == pytest.approx(1.0)
    for seed in range(1000):
        rho = random_density(4, seed)
        assert np.trace(rho.op).real == pytest.approx(1.0, abs=1e-10)
        assert rho.is_faithful()
