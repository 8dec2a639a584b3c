"""Directional-coupler cascade that measures L1, L2 and the separable bound.

Wiring: phase shifter PS_j multiplies input a_j by exp(-i phi_j).  Coupler
DC_1 mixes a_1 (= b_0) with a_2; DC_j mixes the running mode b_{j-1} with
a_{j+1} and emits (b_j, c_j).  The last coupler DC_{N-1} is a fixed balanced
coupler (T = 1/sqrt2, R = i/sqrt2) and its outputs b_{N-1}, c_{N-1} go to the
two detectors.  Output ports are ordered ``(c_1, ..., c_{N-2}, b_{N-1}, c_{N-1})``.

All matrices act on annihilation operators: ``out = U @ in``.  A one-photon
input amplitude vector transforms with the same matrix.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import CircuitError, DegenerateAlphaError, DimensionError
from .states import AlphaVector, PhotonAmplitudes

COUPLER_TOL = 1e-12
SQRT_HALF = 1.0 / math.sqrt(2.0)


@dataclass(frozen=True)
class DirectionalCoupler:
    t: complex
    r: complex

    def __post_init__(self):
        t, r = complex(self.t), complex(self.r)
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "r", r)
        if abs(abs(t) ** 2 + abs(r) ** 2 - 1.0) > COUPLER_TOL:
            raise CircuitError(f"|t|^2 + |r|^2 = {abs(t)**2 + abs(r)**2!r}, expected 1")
        if abs(2 * (r.conjugate() * t).real) > COUPLER_TOL:
            raise CircuitError("coupler violates r* t + t* r = 0")

    @classmethod
    def from_transmission(cls, t: float) -> "DirectionalCoupler":
        """Real transmission ``t`` with the matching purely imaginary reflection."""
        return cls(t, 1j * math.sqrt(max(0.0, 1.0 - t * t)))

    @classmethod
    def balanced(cls) -> "DirectionalCoupler":
        return cls(SQRT_HALF, 1j * SQRT_HALF)

    def to_json(self) -> dict:
        return {"t": [self.t.real, self.t.imag], "r": [self.r.real, self.r.imag]}

    @classmethod
    def from_json(cls, obj: dict) -> "DirectionalCoupler":
        return cls(complex(*obj["t"]), complex(*obj["r"]))


def dc_unitary(dc: DirectionalCoupler) -> np.ndarray:
    return np.array([[dc.t, dc.r], [dc.r, dc.t]])


@dataclass(frozen=True)
class CircuitSpec:
    n: int
    couplers: tuple[DirectionalCoupler, ...]
    phases: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "couplers", tuple(self.couplers))
        object.__setattr__(self, "phases", tuple(float(p) for p in self.phases))
        if self.n < 2:
            raise CircuitError(f"circuit needs at least 2 inputs, got {self.n}")
        if len(self.couplers) != self.n - 1:
            raise CircuitError(f"{self.n} inputs need {self.n - 1} couplers, got {len(self.couplers)}")
        if len(self.phases) != self.n:
            raise CircuitError(f"{self.n} inputs need {self.n} phases, got {len(self.phases)}")
        last = self.couplers[-1]
        if abs(last.t - SQRT_HALF) > COUPLER_TOL or abs(last.r - 1j * SQRT_HALF) > COUPLER_TOL:
            raise CircuitError("the final coupler must be balanced: t = 1/sqrt2, r = i/sqrt2")

    def with_phi_n(self, phi_n: float) -> "CircuitSpec":
        return CircuitSpec(self.n, self.couplers, self.phases[:-1] + (float(phi_n),))

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "couplers": [dc.to_json() for dc in self.couplers],
            "phases": list(self.phases),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "CircuitSpec":
        return cls(
            int(obj["n"]),
            tuple(DirectionalCoupler.from_json(d) for d in obj["couplers"]),
            tuple(obj["phases"]),
        )

    def netlist(self) -> list[str]:
        """Human-readable ordered list of stages."""
        stages = [f"PS{j} on a{j}: phi={p:.6g}" for j, p in enumerate(self.phases, start=1)]
        for j, dc in enumerate(self.couplers, start=1):
            left = "a1" if j == 1 else f"b{j - 1}"
            stages.append(f"DC{j}: ({left}, a{j + 1}) -> (b{j}, c{j}) t={dc.t:.6g} r={dc.r:.6g}")
        stages.append(f"detect D1 <- b{self.n - 1}, D2 <- c{self.n - 1}")
        return stages


def circuit_unitary(spec: CircuitSpec) -> np.ndarray:
    """Full N x N input-output matrix, rows in port order (c_1..c_{N-2}, b_{N-1}, c_{N-1})."""
    n = spec.n
    shifted = np.diag(np.exp(-1j * np.asarray(spec.phases)))
    rows = []
    b = shifted[0]
    for j, dc in enumerate(spec.couplers, start=1):
        a_next = shifted[j]
        b, c = dc.t * b + dc.r * a_next, dc.r * b + dc.t * a_next
        rows.append(c)
    # rows holds c_1..c_{N-1}; b is b_{N-1}
    return np.array(rows[:-1] + [b, rows[-1]]).reshape(n, n)


def circuit_alphas(spec: CircuitSpec) -> AlphaVector:
    """Weights of the running mode entering the last coupler: b_{N-2} = sum_j alpha_j a_j."""
    n = spec.n
    phases = np.asarray(spec.phases)
    alphas = np.empty(n - 1, dtype=complex)
    chain = spec.couplers[:-1]  # DC_1 .. DC_{N-2}
    for j in range(1, n):
        through = np.prod([dc.t for dc in chain[j - 1:]]) if j - 1 < len(chain) else 1.0
        entry = 1.0 if j == 1 else chain[j - 2].r
        alphas[j - 1] = through * entry * np.exp(-1j * phases[j - 1])
    if np.any(np.abs(alphas) <= 1e-12):
        raise DegenerateAlphaError("a coupler with t = 0 or r = 0 zeroes some alpha")
    return AlphaVector(alphas)


def design_circuit(alphas: AlphaVector, phi_n: float = math.pi / 2) -> CircuitSpec:
    """Couplers (real t, imaginary r) and phases reproducing ``alphas`` exactly.

    Peels alpha from the last entry: DC_m's reflectivity carries the share of
    mode m+1 in what remains, PS_{m+1} its phase.
    """
    beta = np.array(alphas.alphas)
    n = alphas.n
    phases = np.zeros(n)
    phases[-1] = phi_n
    chain = []
    for m in range(n - 2, 0, -1):
        head = beta[m]
        mag = min(abs(head), 1.0)
        t = math.sqrt(max(0.0, 1.0 - mag * mag))
        chain.append(DirectionalCoupler(t, 1j * mag))
        # R_m e^{-i phi} = head with R_m = i|head|
        phases[m] = math.pi / 2 - np.angle(head)
        beta = beta[:m] / t
    phases[0] = -np.angle(beta[0])
    chain.reverse()
    return CircuitSpec(n, tuple(chain) + (DirectionalCoupler.balanced(),), tuple(phases))


def measure_expectations(spec: CircuitSpec, state: PhotonAmplitudes, phi_n: float | None = None) -> dict:
    """Mean photon-number difference and sum at detectors b_{N-1}, c_{N-1}."""
    if state.n != spec.n:
        raise DimensionError(f"state has {state.n} modes, circuit has {spec.n} inputs")
    if phi_n is not None:
        spec = spec.with_phi_n(phi_n)
    out = circuit_unitary(spec) @ state.amplitudes
    p_b, p_c = abs(out[-2]) ** 2, abs(out[-1]) ** 2
    return {"diff": float(p_b - p_c), "sum": float(p_b + p_c), "p_b": float(p_b), "p_c": float(p_c)}


def generate_from_circuit(spec: CircuitSpec, port: str) -> PhotonAmplitudes:
    """Run the circuit backwards from one detector port.

    With phi_N = pi/2, port ``b`` yields W+ and port ``c`` yields W- (up to
    global phase) for the circuit's alpha.
    """
    index = {"b": spec.n - 2, "c": spec.n - 1}.get(port)
    if index is None:
        raise CircuitError(f"port must be 'b' or 'c', got {port!r}")
    u = circuit_unitary(spec)
    return PhotonAmplitudes.normalized(u.conj().T[:, index])
