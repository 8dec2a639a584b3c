"""Coupling matrices for waveguide chains and rings with a central guide.

Couplings are in cm^-1 and propagation distances in cm.  Ring quantities from
``ring_geometry`` are dimensionless: distances in units of the coupling decay
length d0 and couplings in units of the characteristic strength k.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import GeometryError, PerfectWError

RING_MAX_N = 12


@dataclass(frozen=True)
class ChainSpec:
    n: int
    couplings: tuple[float, ...]
    propagation_constant: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "couplings", tuple(float(k) for k in self.couplings))
        if self.n < 2:
            raise PerfectWError(f"a chain needs at least 2 guides, got {self.n}")
        if len(self.couplings) != self.n - 1:
            raise PerfectWError(f"{self.n} guides need {self.n - 1} couplings, got {len(self.couplings)}")
        if any(k <= 0 for k in self.couplings):
            raise PerfectWError(f"couplings must be positive: {self.couplings}")

    def to_json(self) -> dict:
        out = {"type": "chain", "n": self.n, "couplings": list(self.couplings)}
        if self.propagation_constant:
            out["propagation_constant"] = self.propagation_constant
        return out


@dataclass(frozen=True)
class RingSpec:
    """``n_ring`` guides on a ring, each coupled to a central guide (last index)."""

    n_ring: int
    kappa: float
    c: float

    def __post_init__(self):
        if self.n_ring < 3:
            raise PerfectWError(f"a ring needs at least 3 guides, got {self.n_ring}")
        if self.kappa <= 0 or self.c < 0:
            raise PerfectWError(f"need kappa > 0 and c >= 0, got kappa={self.kappa}, c={self.c}")

    @property
    def dim(self) -> int:
        return self.n_ring + 1

    @classmethod
    def resonant(cls, n_ring: int, kappa: float = 1.0) -> "RingSpec":
        """Couplings obeying N kappa^2 = C^2."""
        return cls(n_ring, kappa, math.sqrt(n_ring) * kappa)

    def to_json(self) -> dict:
        return {"type": "ring", "n_ring": self.n_ring, "kappa": self.kappa, "c": self.c}


def spec_from_json(obj: dict) -> ChainSpec | RingSpec:
    kind = obj.get("type")
    if kind == "chain":
        return ChainSpec(int(obj["n"]), tuple(obj["couplings"]), float(obj.get("propagation_constant", 0.0)))
    if kind == "ring":
        return RingSpec(int(obj["n_ring"]), float(obj["kappa"]), float(obj["c"]))
    raise PerfectWError(f"unknown lattice type {kind!r}")


@dataclass(frozen=True)
class RingGeometry:
    n_ring: int
    r_over_d0: float
    a_over_d0: float
    kappa_over_k: float
    c_over_k: float

    def to_json(self) -> dict:
        return {
            "n_ring": self.n_ring,
            "r_over_d0": self.r_over_d0,
            "a_over_d0": self.a_over_d0,
            "kappa_over_k": self.kappa_over_k,
            "c_over_k": self.c_over_k,
        }


def chain_matrix(spec: ChainSpec) -> np.ndarray:
    k = np.asarray(spec.couplings)
    return np.diag(k, 1) + np.diag(k, -1) + spec.propagation_constant * np.eye(spec.n)


def ring_matrix(spec: RingSpec) -> np.ndarray:
    n = spec.n_ring
    m = np.zeros((n + 1, n + 1))
    m[:n, n] = m[n, :n] = spec.kappa
    for j in range(n):
        m[j, (j + 1) % n] = m[(j + 1) % n, j] = spec.c
    return m


def lattice_matrix(spec: ChainSpec | RingSpec) -> np.ndarray:
    if isinstance(spec, ChainSpec):
        return chain_matrix(spec)
    return ring_matrix(spec)


def ring_geometry(n_ring: int, allow_long_range: bool = False) -> RingGeometry:
    """Ring radius and spacing that make exponentially decaying couplings resonant.

    With ``kappa = k exp(-r/d0)`` and ``C = k exp(-a/d0)``, ``a = 2 r sin(pi/N)``,
    the condition ``N kappa^2 = C^2`` fixes ``r/d0 = ln(sqrt N) / (1 - 2 sin(pi/N))``.
    Beyond 12 ring guides second-neighbour coupling is no longer negligible;
    ``allow_long_range=True`` computes the numbers anyway.
    """
    if n_ring <= 6:
        raise GeometryError(f"no resonant ring exists for N={n_ring}: 1 - 2 sin(pi/N) <= 0")
    if n_ring > RING_MAX_N and not allow_long_range:
        raise GeometryError(
            f"N={n_ring} > {RING_MAX_N}: second-nearest-neighbour coupling is not negligible"
        )
    s = math.sin(math.pi / n_ring)
    r = math.log(math.sqrt(n_ring)) / (1.0 - 2.0 * s)
    a = 2.0 * r * s
    return RingGeometry(n_ring, r, a, math.exp(-r), math.exp(-a))


def ring_central_amplitude(spec: RingSpec, z: float) -> tuple[complex, complex]:
    """Expansion of the central creation operator at distance z.

    Returns ``(u_cc, u_cs)`` with ``a_c^dag(z) = u_cc a_c^dag(0) + u_cs sum_j a_j^dag(0)``.
    Only the central guide and the uniform ring superposition couple, so a
    2x2 rotation at frequency ``sqrt(C^2 + N kappa^2)`` solves it exactly.
    """
    omega = math.sqrt(spec.c**2 + spec.n_ring * spec.kappa**2)
    envelope = np.exp(-1j * spec.c * z)
    sin = math.sin(omega * z)
    u_cc = envelope * (math.cos(omega * z) + 1j * spec.c / omega * sin)
    u_cs = envelope * (-1j * spec.kappa / omega * sin)
    return complex(u_cc), complex(u_cs)


def w_prime_distance(c: float, n: int = 1) -> float:
    """Distance where a resonant ring splits the photon half/half: C z = n pi / (2 sqrt 2)."""
    if c <= 0:
        raise PerfectWError(f"ring coupling must be positive, got {c}")
    if n < 1 or n % 2 == 0:
        raise PerfectWError(f"n must be a positive odd integer, got {n}")
    return n * math.pi / (2.0 * math.sqrt(2.0) * c)
