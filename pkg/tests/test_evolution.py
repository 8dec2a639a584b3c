import csv
import io

import numpy as np
import pytest

from perfectw.errors import DimensionError, PerfectWError
from perfectw.evolution import (
    evolve,
    evolve_ode_oracle,
    probability_trace,
    propagator,
)
from perfectw.lattice import ChainSpec, RingSpec, chain_matrix, ring_matrix, w_prime_distance
from perfectw.states import PhotonAmplitudes, fidelity

from conftest import (
    CHAIN4_STATE,
    CHAIN5_STATE,
    CHAIN4_COUPLINGS,
    CHAIN4_Z,
    CHAIN5_COUPLINGS,
    CHAIN5_Z,
    random_hermitian,
    random_state,
)


def test_zero_distance_is_identity(rng):
    m = random_hermitian(rng, 5)
    s = random_state(rng, 5)
    np.testing.assert_allclose(evolve(m, 0.0, s).amplitudes, s.amplitudes, atol=1e-15)
    np.testing.assert_array_equal(evolve_ode_oracle(m, 0.0, s).amplitudes, s.amplitudes)


def test_reference_chain_four_mode():
    out = evolve(chain_matrix(ChainSpec(4, CHAIN4_COUPLINGS)), CHAIN4_Z, PhotonAmplitudes.basis(4, 3))
    np.testing.assert_allclose(out.probabilities, [1 / 6, 1 / 6, 1 / 6, 1 / 2], atol=2e-3)
    assert fidelity(out, PhotonAmplitudes(CHAIN4_STATE)) >= 0.999


def test_reference_chain_five_mode():
    out = evolve(chain_matrix(ChainSpec(5, CHAIN5_COUPLINGS)), CHAIN5_Z, PhotonAmplitudes.basis(5, 3))
    np.testing.assert_allclose(out.probabilities, [1 / 8] * 4 + [1 / 2], atol=2e-3)
    assert fidelity(out, PhotonAmplitudes(CHAIN5_STATE)) >= 0.999


def test_oracle_reference_chain_probabilities():
    out = evolve_ode_oracle(chain_matrix(ChainSpec(4, CHAIN4_COUPLINGS)), CHAIN4_Z, PhotonAmplitudes.basis(4, 3))
    np.testing.assert_allclose(out.probabilities, [1 / 6, 1 / 6, 1 / 6, 1 / 2], atol=2e-3)


def test_errors(rng):
    m = random_hermitian(rng, 3)
    with pytest.raises(DimensionError):
        evolve(m, 1.0, random_state(rng, 4))
    with pytest.raises(PerfectWError):
        evolve(m, -1.0, random_state(rng, 3))
    with pytest.raises(PerfectWError):
        evolve(m + np.triu(np.ones((3, 3)), 1), 1.0, random_state(rng, 3))
    with pytest.raises(DimensionError):
        propagator(np.ones((2, 3)), 1.0)


@pytest.mark.parametrize("dim", [2, 5, 11, 16])
def test_unitarity_and_oracle(rng, dim):
    for _ in range(3):
        m = random_hermitian(rng, dim)
        z = rng.uniform(0, 10)
        u = propagator(m, z)
        assert np.max(np.abs(u.conj().T @ u - np.eye(dim))) < 1e-12
        s = random_state(rng, dim)
        diff = evolve(m, z, s).amplitudes - evolve_ode_oracle(m, z, s).amplitudes
        assert np.max(np.abs(diff)) < 1e-8


def test_composition(rng):
    m = random_hermitian(rng, 7)
    s = random_state(rng, 7)
    z1, z2 = 1.3, 2.9
    direct = evolve(m, z1 + z2, s).amplitudes
    stepped = evolve(m, z2, evolve(m, z1, s)).amplitudes
    np.testing.assert_allclose(direct, stepped, atol=1e-10)


def test_complex_hermitian_convention(rng):
    # amplitudes follow conj(exp(-izM)) for non-real M as well
    m = random_hermitian(rng, 4)
    s = random_state(rng, 4)
    out = evolve(m, 0.8, s).amplitudes
    np.testing.assert_allclose(out, np.conj(propagator(m, 0.8)) @ s.amplitudes, atol=1e-14)


def test_trace_rows_and_first_row(rng):
    m = random_hermitian(rng, 6)
    s = random_state(rng, 6)
    trace = probability_trace(m, s, np.linspace(0, 20, 101))
    np.testing.assert_allclose(trace.probabilities.sum(axis=1), 1, atol=1e-10)
    np.testing.assert_allclose(trace.probabilities[0], s.probabilities, atol=1e-14)
    np.testing.assert_allclose(trace.probabilities[37], evolve(m, trace.z_values[37], s).probabilities, atol=1e-12)
    with pytest.raises(PerfectWError):
        probability_trace(m, s, [1.0, 0.5])


def test_trace_single_point(rng):
    s = random_state(rng, 3)
    trace = probability_trace(random_hermitian(rng, 3), s, [0.0])
    np.testing.assert_allclose(trace.probabilities, [s.probabilities], atol=1e-14)


def test_trace_order_independent(rng):
    m = random_hermitian(rng, 5)
    s = random_state(rng, 5)
    grid = np.linspace(0, 3, 31)
    whole = probability_trace(m, s, grid).probabilities
    pieces = np.vstack([probability_trace(m, s, [z]).probabilities for z in grid[::-1]])[::-1]
    np.testing.assert_allclose(whole, pieces, atol=1e-13)


def test_ring_trace_touches_half():
    spec = RingSpec.resonant(7, kappa=1.0)
    z_star = w_prime_distance(spec.c, 1)
    grid = np.linspace(0, 2 * z_star, 2001)  # z_star is grid point 1000
    trace = probability_trace(ring_matrix(spec), PhotonAmplitudes.basis(8, 8), grid)
    central = trace.probabilities[:, 7]
    ring = trace.probabilities[:, :7].sum(axis=1)
    first = np.argmin(np.abs(central - ring))
    assert first == 1000
    assert central[first] == pytest.approx(0.5, abs=1e-12)
    assert np.all(central >= 0.5 - 1e-12)


def test_trace_csv_format():
    m = chain_matrix(ChainSpec(3, (1.0, 0.5)))
    text = probability_trace(m, PhotonAmplitudes.basis(3, 1), [0.0, 0.1]).to_csv()
    rows = list(csv.reader(io.StringIO(text)))
    assert rows[0] == ["z", "p_1", "p_2", "p_3"]
    assert len(rows) == 3
    assert float(rows[1][1]) == 1.0
    assert float(rows[2][0]) == 0.1
