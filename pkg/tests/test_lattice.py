import math

import numpy as np
import pytest

from perfectw.errors import GeometryError, PerfectWError
from perfectw.evolution import evolve, propagator
from perfectw.lattice import (
    ChainSpec,
    RingSpec,
    chain_matrix,
    ring_central_amplitude,
    ring_geometry,
    ring_matrix,
    spec_from_json,
    w_prime_distance,
)
from perfectw.states import PhotonAmplitudes

from conftest import CHAIN4_COUPLINGS


def test_chain_matrix_reference():
    m = chain_matrix(ChainSpec(4, CHAIN4_COUPLINGS))
    np.testing.assert_array_equal(np.diag(m, 1), CHAIN4_COUPLINGS)
    np.testing.assert_array_equal(m, m.T)
    assert not np.any(np.diag(m))
    assert np.count_nonzero(m) == 6


def test_two_guide_chain():
    np.testing.assert_array_equal(chain_matrix(ChainSpec(2, (0.7,))), [[0, 0.7], [0.7, 0]])


def test_chain_validation():
    with pytest.raises(PerfectWError):
        ChainSpec(4, (1.0, 1.0))
    with pytest.raises(PerfectWError):
        ChainSpec(3, (1.0, -1.0))


def test_ring_star_graph():
    m = ring_matrix(RingSpec(3, 0.5, 0.0))
    expected = np.zeros((4, 4))
    expected[:3, 3] = expected[3, :3] = 0.5
    np.testing.assert_array_equal(m, expected)


def test_ring_matrix_structure():
    spec = RingSpec.resonant(7, kappa=0.3)
    m = ring_matrix(spec)
    assert m.shape == (8, 8)
    np.testing.assert_array_equal(m, m.T)
    # each ring guide: two ring neighbours plus the centre
    np.testing.assert_allclose(m[:7].sum(axis=1), 2 * spec.c + spec.kappa)
    assert m[7].sum() == pytest.approx(7 * spec.kappa)
    assert m[0, 6] == spec.c


def test_ring_json_round_trip():
    for spec in (RingSpec(7, 0.1, 0.2), ChainSpec(3, (1.0, 2.0))):
        assert spec_from_json(spec.to_json()) == spec
    with pytest.raises(PerfectWError):
        spec_from_json({"type": "mesh"})


def test_ring_geometry_seven():
    g = ring_geometry(7)
    assert g.r_over_d0 == pytest.approx(7.35791, abs=1e-4)
    assert g.a_over_d0 == pytest.approx(6.38496, abs=1e-4)
    assert g.c_over_k == pytest.approx(1.6867e-3, abs=1e-7)
    assert g.kappa_over_k == pytest.approx(0.6375e-3, abs=1e-7)


def test_ring_geometry_eight_against_high_precision():
    # mpmath, 15 digits: ln(sqrt 8)/(1 - 2 sin(pi/8)) and 2 r sin(pi/8)
    g = ring_geometry(8)
    assert g.r_over_d0 == pytest.approx(4.43126146545446, rel=1e-13)
    assert g.a_over_d0 == pytest.approx(3.39154069461454, rel=1e-13)


@pytest.mark.parametrize("n", range(7, 13))
def test_ring_geometry_invariants(n):
    g = ring_geometry(n)
    assert g.a_over_d0 == pytest.approx(2 * g.r_over_d0 * math.sin(math.pi / n), abs=1e-12)
    assert n * g.kappa_over_k**2 == pytest.approx(g.c_over_k**2, abs=1e-12)


@pytest.mark.parametrize("n", [3, 5, 6])
def test_ring_geometry_infeasible(n):
    with pytest.raises(GeometryError):
        ring_geometry(n)


def test_ring_geometry_long_range_guard():
    with pytest.raises(GeometryError):
        ring_geometry(13)
    assert ring_geometry(13, allow_long_range=True).r_over_d0 > 0


def test_central_amplitude_at_zero():
    assert ring_central_amplitude(RingSpec(7, 0.2, 0.5), 0.0) == (1, 0)


@pytest.mark.parametrize("kappa,c,n", [(0.3, 0.9, 5), (1.0, 0.0, 4), (0.7, 0.7 * math.sqrt(9), 9), (0.05, 1.3, 12)])
def test_central_amplitude_matches_matrix_exponential(kappa, c, n):
    spec = RingSpec(n, kappa, c)
    m = ring_matrix(spec)
    for z in np.linspace(0, 12, 25):
        u = propagator(m, z)
        u_cc, u_cs = ring_central_amplitude(spec, z)
        assert abs(u[n, n] - u_cc) < 1e-10
        np.testing.assert_allclose(u[n, :n], u_cs, atol=1e-10)
        assert abs(u_cc) ** 2 + n * abs(u_cs) ** 2 == pytest.approx(1, abs=1e-12)


def test_resonant_half_split():
    spec = RingSpec.resonant(7, kappa=0.4)
    z = w_prime_distance(spec.c, 1)
    u_cc, u_cs = ring_central_amplitude(spec, z)
    assert abs(u_cc) ** 2 == pytest.approx(0.5, abs=1e-12)
    assert abs(u_cs) ** 2 == pytest.approx(1 / 14, abs=1e-12)


def test_resonant_state_phases():
    # photon at the centre ends as e^{i pi/(2 sqrt2)} [i/sqrt(2N) sum|j> - i/sqrt2 |c>]
    spec = RingSpec.resonant(7, kappa=1.0)
    z = w_prime_distance(spec.c, 1)
    out = evolve(ring_matrix(spec), z, PhotonAmplitudes.basis(8, 8)).amplitudes
    phase = np.exp(1j * math.pi / (2 * math.sqrt(2)))
    expected = phase * np.append(np.full(7, 1j / math.sqrt(14)), -1j / math.sqrt(2))
    np.testing.assert_allclose(out, expected, atol=1e-12)


def test_w_prime_distance():
    assert w_prime_distance(1.0, 1) == pytest.approx(math.pi / (2 * math.sqrt(2)))
    assert w_prime_distance(2.0, 1) == pytest.approx(math.pi / (4 * math.sqrt(2)))
    z3 = w_prime_distance(1.0, 3)
    assert z3 == pytest.approx(3 * math.pi / (2 * math.sqrt(2)))
    spec = RingSpec.resonant(9, kappa=1 / 3)
    u_cc, _ = ring_central_amplitude(spec, z3)
    assert abs(u_cc) ** 2 == pytest.approx(0.5, abs=1e-12)
    with pytest.raises(PerfectWError):
        w_prime_distance(1.0, 2)
    with pytest.raises(PerfectWError):
        w_prime_distance(0.0, 1)
