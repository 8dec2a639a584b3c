"""Generation and entanglement checks for single-photon perfect W-states in waveguide lattices."""

from .errors import PerfectWError
from .states import (
    AlphaVector,
    PhotonAmplitudes,
    WDecomposition,
    decompose,
    fidelity,
    generalized_w_pair,
    perfect_w,
)

__all__ = [
    "AlphaVector",
    "PerfectWError",
    "PhotonAmplitudes",
    "WDecomposition",
    "decompose",
    "fidelity",
    "generalized_w_pair",
    "perfect_w",
]
