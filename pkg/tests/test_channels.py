import math

import numpy as np
import pytest

from qmemgame.channels import (
    I2,
    SIGMA_Z,
    DephasingParams,
    KrausSet,
    apply_channel,
    coherence_decay_factor,
    correlated_dephasing_kraus,
    lambda_to_p,
    n_qubit_product_kraus,
    single_qubit_dephasing_kraus,
)
from qmemgame.linalg import DimensionError, is_hermitian, is_psd
from qmemgame.protocol import initial_state

from conftest import random_density_matrix


def test_lambda_to_p():
    assert lambda_to_p(0.0) == 0.0
    assert abs(lambda_to_p(50.0) - 1.0) <= 1e-15
    assert lambda_to_p(math.log(2)) == pytest.approx(0.5, abs=1e-15)
    with pytest.raises(ValueError):
        lambda_to_p(-0.1)


@pytest.mark.parametrize("p,mu", [(-0.1, 0), (1.1, 0), (0.5, -1e-3), (0.5, 2)])
def test_params_range(p, mu):
    with pytest.raises(ValueError):
        DephasingParams(p, mu)


def test_single_qubit_kraus():
    k0 = single_qubit_dephasing_kraus(0.0).operators
    np.testing.assert_array_equal(k0[0], I2)
    np.testing.assert_array_equal(k0[1], np.zeros((2, 2)))
    k1 = single_qubit_dephasing_kraus(1.0).operators
    np.testing.assert_allclose(k1[0], math.sqrt(0.5) * I2, atol=1e-15)
    np.testing.assert_allclose(k1[1], math.sqrt(0.5) * SIGMA_Z, atol=1e-15)
    with pytest.raises(ValueError):
        single_qubit_dephasing_kraus(1.5)


def test_single_qubit_offdiagonal_decay(rng):
    for p in rng.uniform(0, 1, 10):
        a, b = rng.normal(size=2) + 1j * rng.normal(size=2)
        n = math.sqrt(abs(a) ** 2 + abs(b) ** 2)
        a, b = a / n, b / n
        rho = np.array([[abs(a) ** 2, a * b.conjugate()], [a.conjugate() * b, abs(b) ** 2]])
        out = apply_channel(rho, single_qubit_dephasing_kraus(p))
        expected = rho.copy()
        expected[0, 1] *= 1 - p
        expected[1, 0] *= 1 - p
        np.testing.assert_allclose(out, expected, atol=1e-15)


def test_product_kraus():
    np.testing.assert_array_equal(n_qubit_product_kraus(0.3, 1).operators[0],
                                  single_qubit_dephasing_kraus(0.3).operators[0])
    ops = n_qubit_product_kraus(0.0, 2).operators
    assert len(ops) == 4
    np.testing.assert_array_equal(ops[0], np.eye(4))
    assert all(np.all(o == 0) for o in ops[1:])
    assert len(n_qubit_product_kraus(0.3, 4)) == 16
    with pytest.raises(MemoryError):
        n_qubit_product_kraus(0.3, 5)


def test_product_channel_equals_memoryless(rng):
    for _ in range(20):
        p = rng.uniform()
        rho = random_density_matrix(rng)
        a = apply_channel(rho, n_qubit_product_kraus(p, 2))
        b = apply_channel(rho, correlated_dephasing_kraus(DephasingParams(p, 0.0)))
        np.testing.assert_allclose(a, b, rtol=0, atol=1e-12)


def test_correlated_full_memory():
    ops = correlated_dephasing_kraus(DephasingParams(0.6, 1.0)).operators
    zz = np.kron(SIGMA_Z, SIGMA_Z)
    np.testing.assert_allclose(ops[0], math.sqrt(0.7) * np.eye(4), atol=1e-15)
    np.testing.assert_allclose(ops[3], math.sqrt(0.3) * zz, atol=1e-15)
    assert np.all(ops[1] == 0) and np.all(ops[2] == 0)


def test_correlated_no_noise():
    ops = correlated_dephasing_kraus(DephasingParams(0.0, 0.4)).operators
    np.testing.assert_array_equal(ops[0], np.eye(4))
    assert all(np.all(o == 0) for o in ops[1:])


def test_correlated_memoryless_weights():
    q = (1 - 0.3 / 2, 0.3 / 2)
    ops = correlated_dephasing_kraus(DephasingParams(0.3, 0.0)).operators
    for idx, (i, j) in enumerate([(0, 0), (0, 1), (1, 0), (1, 1)]):
        assert np.abs(ops[idx]).max() == pytest.approx(math.sqrt(q[i] * q[j]), abs=1e-15)


def test_kraus_completeness(rng):
    for _ in range(50):
        ks = correlated_dephasing_kraus(DephasingParams(*rng.uniform(0, 1, 2)))
        assert ks.completeness_error() <= 1e-12
    with pytest.raises(ValueError, match="complete"):
        KrausSet((0.5 * np.eye(2),))


def test_diagonal_state_fixed(rng):
    rho = np.zeros((4, 4))
    rho[0, 0] = 1
    for _ in range(10):
        out = apply_channel(rho, correlated_dephasing_kraus(DephasingParams(*rng.uniform(0, 1, 2))))
        np.testing.assert_allclose(out, rho, atol=1e-15)


def test_max_noise_memoryless_kills_bell_coherence():
    out = apply_channel(initial_state(math.pi / 2), correlated_dephasing_kraus(DephasingParams(1.0, 0.0)))
    np.testing.assert_allclose(out, np.diag([0.5, 0, 0, 0.5]), atol=1e-15)


def test_channel_properties_and_coherence_factors(rng):
    for _ in range(50):
        params = DephasingParams(*rng.uniform(0, 1, 2))
        rho = random_density_matrix(rng)
        out = apply_channel(rho, correlated_dephasing_kraus(params))
        assert abs(np.trace(out) - 1) <= 1e-12
        assert is_hermitian(out)
        assert np.linalg.eigvalsh(out)[0] >= -1e-8
        mup = coherence_decay_factor(params)
        for i, j in [(0, 3), (3, 0), (1, 2), (2, 1)]:
            assert abs(out[i, j] - mup * rho[i, j]) <= 1e-12
        for i, j in [(0, 1), (0, 2), (1, 3), (2, 3)]:
            assert abs(out[i, j] - (1 - params.p) * rho[i, j]) <= 1e-12


def test_double_flip_factor_by_expansion(rng):
    # sum of w_ij * s_i * s_j with s = (+1, -1) is the |00><11| multiplier
    for _ in range(20):
        p, mu = rng.uniform(0, 1, 2)
        q = (1 - p / 2, p / 2)
        s = (1, -1)
        total = sum(q[i] * ((1 - mu) * q[j] + mu * (i == j)) * s[i] * s[j]
                    for i in range(2) for j in range(2))
        assert total == pytest.approx(coherence_decay_factor(DephasingParams(p, mu)), abs=1e-15)


def test_channel_linear(rng):
    for _ in range(20):
        ks = correlated_dephasing_kraus(DephasingParams(*rng.uniform(0, 1, 2)))
        r1, r2 = random_density_matrix(rng), random_density_matrix(rng)
        a = rng.uniform()
        lhs = apply_channel(a * r1 + (1 - a) * r2, ks)
        rhs = a * apply_channel(r1, ks) + (1 - a) * apply_channel(r2, ks)
        np.testing.assert_allclose(lhs, rhs, rtol=0, atol=1e-12)


def test_apply_channel_dimension_error():
    with pytest.raises(DimensionError):
        apply_channel(np.eye(2) / 2, correlated_dephasing_kraus(DephasingParams(0.1, 0.1)))


def test_coherence_decay_factor_examples():
    for mu in (0.0, 0.3, 1.0):
        assert coherence_decay_factor(DephasingParams(0.0, mu)) == 1.0
        assert coherence_decay_factor(DephasingParams(1.0, mu)) == mu
    for p in np.linspace(0, 1, 11):
        assert coherence_decay_factor(DephasingParams(p, 0.5)) == pytest.approx((1 + (1 - p) ** 2) / 2, abs=1e-15)


def test_n_qubit_product_psd(rng):
    rho = random_density_matrix(rng, 8)
    out = apply_channel(rho, n_qubit_product_kraus(0.4, 3))
    assert is_psd(out)
    assert abs(np.trace(out) - 1) <= 1e-12
