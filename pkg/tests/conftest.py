import numpy as np
import pytest
from hypothesis import settings

from perfectw.states import AlphaVector, PhotonAmplitudes

settings.register_profile("repro", derandomize=True, max_examples=60, deadline=None)
settings.load_profile("repro")

SQ2 = np.sqrt(2.0)
SQ3 = np.sqrt(3.0)

# states quoted for the reference chains, before phase correction
CHAIN4_STATE = np.array([-1, 1j, 1, 1j * SQ3]) / np.sqrt(6)
CHAIN5_STATE = np.array([-1, 1j, 1, 1j, -2]) / (2 * SQ2)
# five-mode generalized W-state missed by the uniform-alpha condition
COUNTEREXAMPLE = np.array([1, 1, -1, -1, 2]) / (2 * SQ2)

CHAIN4_COUPLINGS = (1.2043, 0.686372, 0.781121)
CHAIN4_Z = 1.15042
CHAIN5_COUPLINGS = (1.08983, 0.584456, 0.988893, 1.53062)
CHAIN5_Z = 1.23828


def random_complex(rng, size):
    return rng.normal(size=size) + 1j * rng.normal(size=size)


def random_alphas(rng, count):
    return AlphaVector.normalized(random_complex(rng, count))


def random_state(rng, n):
    return PhotonAmplitudes.normalized(random_complex(rng, n))


def random_hermitian(rng, dim):
    a = random_complex(rng, (dim, dim))
    return (a + a.conj().T) / 2


@pytest.fixture
def rng():
    return np.random.default_rng(20201)
