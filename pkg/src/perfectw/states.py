"""Single-photon states over N spatial modes and the perfect W-state family.

A single photon shared between N waveguides is described by the amplitude
vector ``C`` with ``|1>_j`` the basis state "photon in mode j".  Modes are
1-indexed in the physics and 0-indexed in the arrays; the last array entry is
always the distinguished mode N that carries amplitude 1/sqrt(2) in a perfect
W-state.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DegenerateAlphaError,
    DimensionError,
    NormalizationError,
    NotGenuinelyEntangledError,
)

NORM_TOL = 1e-12
ZERO_TOL = 1e-12


def _frozen_complex(values) -> np.ndarray:
    arr = np.array(values, dtype=complex).reshape(-1)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class PhotonAmplitudes:
    """Unit-norm amplitude vector of one photon over ``n`` modes."""

    amplitudes: np.ndarray

    def __post_init__(self):
        amps = _frozen_complex(self.amplitudes)
        object.__setattr__(self, "amplitudes", amps)
        if amps.size < 2:
            raise DimensionError(f"need at least 2 modes, got {amps.size}")
        norm = np.vdot(amps, amps).real
        if abs(norm - 1.0) > NORM_TOL:
            raise NormalizationError(f"squared norm is {norm!r}, expected 1")

    @classmethod
    def normalized(cls, values) -> "PhotonAmplitudes":
        """Build a state from amplitudes that are only proportional to a unit vector."""
        arr = np.asarray(values, dtype=complex).reshape(-1)
        norm = np.linalg.norm(arr)
        if norm == 0:
            raise NormalizationError("cannot normalize the zero vector")
        return cls(arr / norm)

    @classmethod
    def basis(cls, n: int, mode: int) -> "PhotonAmplitudes":
        """Photon localized in ``mode`` (1-indexed)."""
        if not 1 <= mode <= n:
            raise DimensionError(f"mode {mode} outside 1..{n}")
        arr = np.zeros(n, dtype=complex)
        arr[mode - 1] = 1.0
        return cls(arr)

    @property
    def n(self) -> int:
        return self.amplitudes.size

    @property
    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def with_global_phase(self, phase: float) -> "PhotonAmplitudes":
        return PhotonAmplitudes(np.exp(1j * phase) * self.amplitudes)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "amplitudes": [[float(c.real), float(c.imag)] for c in self.amplitudes],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "PhotonAmplitudes":
        pairs = obj["amplitudes"]
        if int(obj["n"]) != len(pairs):
            raise DimensionError(f"n={obj['n']} but {len(pairs)} amplitudes given")
        return cls([complex(re, im) for re, im in pairs])

    def __repr__(self) -> str:
        return f"PhotonAmplitudes({np.array2string(self.amplitudes, precision=6)})"


@dataclass(frozen=True, eq=False)
class AlphaVector:
    """Nonzero complex weights alpha_1..alpha_{N-1} with unit 2-norm."""

    alphas: np.ndarray

    def __post_init__(self):
        arr = _frozen_complex(self.alphas)
        object.__setattr__(self, "alphas", arr)
        if arr.size < 1:
            raise DimensionError("an alpha vector needs at least one entry")
        if np.any(np.abs(arr) <= ZERO_TOL):
            raise DegenerateAlphaError(f"alpha entries must be nonzero: {arr}")
        norm = np.vdot(arr, arr).real
        if abs(norm - 1.0) > NORM_TOL:
            raise NormalizationError(f"sum |alpha_j|^2 = {norm!r}, expected 1")

    @classmethod
    def normalized(cls, values) -> "AlphaVector":
        arr = np.asarray(values, dtype=complex).reshape(-1)
        return cls(arr / np.linalg.norm(arr))

    @classmethod
    def uniform(cls, n: int) -> "AlphaVector":
        """alpha_j = 1/sqrt(n-1), the weights of the canonical perfect W-state."""
        return cls(np.full(n - 1, 1.0 / np.sqrt(n - 1)))

    @property
    def n(self) -> int:
        """Mode count N of the states this vector parametrizes."""
        return self.alphas.size + 1

    def to_json(self) -> dict:
        return {"alphas": [[float(a.real), float(a.imag)] for a in self.alphas]}

    @classmethod
    def from_json(cls, obj: dict) -> "AlphaVector":
        return cls([complex(re, im) for re, im in obj["alphas"]])

    def __repr__(self) -> str:
        return f"AlphaVector({np.array2string(self.alphas, precision=6)})"


@dataclass(frozen=True, eq=False)
class WDecomposition:
    """``state = global_phase * (d1 |W+> + d2 |W->)`` for the W-pair built from ``alphas``."""

    alphas: AlphaVector
    lam: float
    branch: int
    d1: complex
    d2: complex
    global_phase: complex = field(default=1.0 + 0j)

    def reconstruct(self) -> PhotonAmplitudes:
        plus, minus = generalized_w_pair(self.alphas, 1)
        amps = self.global_phase * (self.d1 * plus.amplitudes + self.d2 * minus.amplitudes)
        return PhotonAmplitudes(amps)


def perfect_w(n: int) -> PhotonAmplitudes:
    """Canonical N-mode perfect W-state: 1/sqrt(2(n-1)) on the first n-1 modes, 1/sqrt(2) on the last."""
    if n < 3:
        raise DimensionError(f"perfect W-state needs n >= 3, got {n}")
    amps = np.full(n, 1.0 / np.sqrt(2 * (n - 1)), dtype=complex)
    amps[-1] = 1.0 / np.sqrt(2)
    return PhotonAmplitudes(amps)


def generalized_w_pair(alphas: AlphaVector, operator_index: int = 1):
    """Orthonormal pair of generalized perfect W-states, the +1/-1 eigenvectors of L1 or L2.

    ``operator_index=1`` gives ``(±alpha*/sqrt2, 1/sqrt2)``;
    ``operator_index=2`` gives ``(∓i alpha*/sqrt2, 1/sqrt2)``.
    """
    if operator_index == 1:
        head = np.conj(alphas.alphas)
    elif operator_index == 2:
        head = -1j * np.conj(alphas.alphas)
    else:
        raise ValueError(f"operator_index must be 1 or 2, got {operator_index}")
    s = 1.0 / np.sqrt(2)
    plus = np.append(s * head, s)
    minus = np.append(-s * head, s)
    return PhotonAmplitudes(plus), PhotonAmplitudes(minus)


def fidelity(a: PhotonAmplitudes, b: PhotonAmplitudes) -> float:
    if a.n != b.n:
        raise DimensionError(f"mode counts differ: {a.n} vs {b.n}")
    return float(abs(np.vdot(a.amplitudes, b.amplitudes)) ** 2)


def decompose(state: PhotonAmplitudes, branch: int = 1) -> WDecomposition:
    """Write a genuinely entangled single-photon state as ``d1|W+> + d2|W->``.

    The squeezing parameter is ``lam = 1 - 2|C_N|^2``.  ``branch=+1`` (the
    default) makes ``d1`` the larger coefficient; ``branch=-1`` flips the sign
    of alpha and swaps the roles of the pair members.  The phase of ``C_N`` is
    returned separately as ``global_phase``.
    """
    if branch not in (1, -1):
        raise ValueError(f"branch must be +1 or -1, got {branch}")
    c = state.amplitudes
    c_last = abs(c[-1])
    if c_last <= ZERO_TOL or abs(c_last - 1.0) <= ZERO_TOL:
        raise NotGenuinelyEntangledError(
            f"|C_N| = {c_last:.3g}; the photon must be shared between mode N and the rest"
        )
    head = c[:-1]
    zeros = np.flatnonzero(np.abs(head) <= ZERO_TOL)
    if zeros.size:
        raise DegenerateAlphaError(
            f"modes {list(zeros + 1)} have zero amplitude, so their alpha would vanish"
        )
    phase_n = c[-1] / c_last
    weight = np.sqrt(np.sum(np.abs(head) ** 2))
    alpha_conj = branch * head * np.conj(phase_n) / weight
    lam = 1.0 - 2.0 * c_last**2
    root_minus = np.sqrt(1.0 - lam)
    root_plus = np.sqrt(1.0 + lam)
    d1 = (root_minus + branch * root_plus) / 2
    d2 = (root_minus - branch * root_plus) / 2
    # renormalize: alpha_conj is unit up to rounding of `weight`
    alphas = AlphaVector.normalized(np.conj(alpha_conj))
    return WDecomposition(alphas, float(lam), branch, complex(d1), complex(d2), complex(phase_n))
