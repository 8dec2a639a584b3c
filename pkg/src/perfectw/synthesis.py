"""Finding chain couplings and a length that produce a target output profile,
and the phase shifts that turn a generated state into a canonical one."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize

from .errors import DimensionError, PerfectWError
from .evolution import evolve
from .lattice import ChainSpec, chain_matrix
from .states import PhotonAmplitudes

DEFAULT_COUPLING_BOUNDS = (0.1, 3.0)
DEFAULT_Z_BOUNDS = (0.1, 5.0)
TARGET_RESIDUAL = 1e-6


@dataclass(frozen=True)
class SynthesisProblem:
    n: int
    input_mode: int
    target_probs: tuple[float, ...]
    coupling_bounds: tuple[float, float] = DEFAULT_COUPLING_BOUNDS
    z_bounds: tuple[float, float] = DEFAULT_Z_BOUNDS
    seed: int = 0
    starts: int = 64

    def __post_init__(self):
        object.__setattr__(self, "target_probs", tuple(float(p) for p in self.target_probs))
        object.__setattr__(self, "coupling_bounds", tuple(map(float, self.coupling_bounds)))
        object.__setattr__(self, "z_bounds", tuple(map(float, self.z_bounds)))
        if len(self.target_probs) != self.n:
            raise DimensionError(f"{self.n} modes need {self.n} target probabilities")
        if any(p < 0 for p in self.target_probs) or abs(sum(self.target_probs) - 1) > 1e-12:
            raise PerfectWError("target probabilities must be nonnegative and sum to 1")
        if not 1 <= self.input_mode <= self.n:
            raise PerfectWError(f"input mode {self.input_mode} outside 1..{self.n}")
        for name, (lo, hi) in (("coupling", self.coupling_bounds), ("z", self.z_bounds)):
            if not 0 < lo <= hi:
                raise PerfectWError(f"infeasible {name} bounds ({lo}, {hi})")
        if self.starts < 1:
            raise PerfectWError("need at least one start")

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "input_mode": self.input_mode,
            "target_probs": list(self.target_probs),
            "coupling_bounds": list(self.coupling_bounds),
            "z_bounds": list(self.z_bounds),
            "seed": self.seed,
            "starts": self.starts,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "SynthesisProblem":
        return cls(
            n=int(obj["n"]),
            input_mode=int(obj["input_mode"]),
            target_probs=tuple(obj["target_probs"]),
            coupling_bounds=tuple(obj.get("coupling_bounds", DEFAULT_COUPLING_BOUNDS)),
            z_bounds=tuple(obj.get("z_bounds", DEFAULT_Z_BOUNDS)),
            seed=int(obj.get("seed", 0)),
            starts=int(obj.get("starts", 64)),
        )


@dataclass(frozen=True, eq=False)
class SynthesisResult:
    couplings: tuple[float, ...]
    z: float
    residual: float
    achieved_state: PhotonAmplitudes
    converged: bool
    starts_converged: int = field(default=0)

    def to_json(self) -> dict:
        return {
            "couplings": list(self.couplings),
            "z": self.z,
            "residual": self.residual,
            "converged": self.converged,
            "starts_converged": self.starts_converged,
            "achieved_state": self.achieved_state.to_json(),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "SynthesisResult":
        return cls(
            couplings=tuple(obj["couplings"]),
            z=float(obj["z"]),
            residual=float(obj["residual"]),
            achieved_state=PhotonAmplitudes.from_json(obj["achieved_state"]),
            converged=bool(obj["converged"]),
            starts_converged=int(obj.get("starts_converged", 0)),
        )


def chain_output(couplings, z: float, n: int, input_mode: int) -> PhotonAmplitudes:
    m = chain_matrix(ChainSpec(n, tuple(couplings)))
    return evolve(m, z, PhotonAmplitudes.basis(n, input_mode))


def max_deviation(couplings, z: float, problem: SynthesisProblem) -> float:
    state = chain_output(couplings, z, problem.n, problem.input_mode)
    return float(np.max(np.abs(state.probabilities - np.asarray(problem.target_probs))))


def search_chain_parameters(problem: SynthesisProblem) -> SynthesisResult:
    """Multi-start Nelder-Mead over (couplings, z).

    Each start is drawn uniformly inside the bounds from a generator seeded by
    ``problem.seed`` and refined on the squared probability error.  Among the
    starts that reach ``TARGET_RESIDUAL`` the one with the smallest z (then the
    lexicographically smallest couplings) wins; if none do, the smallest
    residual wins and the result is flagged ``converged=False``.
    """
    n = problem.n
    target = np.asarray(problem.target_probs)
    lo = np.array([problem.coupling_bounds[0]] * (n - 1) + [problem.z_bounds[0]])
    hi = np.array([problem.coupling_bounds[1]] * (n - 1) + [problem.z_bounds[1]])
    rng = np.random.default_rng(problem.seed)
    starts = rng.uniform(lo, hi, size=(problem.starts, n))
    source = np.zeros(n)
    source[problem.input_mode - 1] = 1.0

    def probs(x):
        w, v = np.linalg.eigh(np.diag(x[:-1], 1) + np.diag(x[:-1], -1))
        return np.abs((v * np.exp(1j * x[-1] * w)) @ (v.T @ source)) ** 2

    def objective(x):
        return float(np.sum((probs(x) - target) ** 2))

    bounds = list(zip(lo, hi))
    candidates = []
    for x0 in starts:
        res = minimize(
            objective, x0, method="Nelder-Mead", bounds=bounds,
            options={"xatol": 1e-12, "fatol": 1e-18, "maxiter": 4000 * n, "maxfev": 6000 * n},
        )
        x = np.clip(res.x, lo, hi)
        candidates.append((max_deviation(x[:-1], x[-1], problem), x))

    good = [c for c in candidates if c[0] < TARGET_RESIDUAL]
    if good:
        _, best = min(good, key=lambda c: (c[1][-1], tuple(c[1][:-1])))
    else:
        _, best = min(candidates, key=lambda c: (c[0], c[1][-1], tuple(c[1][:-1])))
    couplings = tuple(float(k) for k in best[:-1])
    z = float(best[-1])
    state = chain_output(couplings, z, n, problem.input_mode)
    residual = float(np.max(np.abs(state.probabilities - target)))
    return SynthesisResult(couplings, z, residual, state, residual < TARGET_RESIDUAL, len(good))


def phase_corrections(state: PhotonAmplitudes, target: PhotonAmplitudes, tol: float = 1e-9) -> np.ndarray:
    """Per-mode phases theta_j with exp(i theta_j) state_j = exp(i gamma) target_j.

    The last mode is left untouched (theta_N = 0), which fixes gamma.  Angles
    are wrapped into (-pi, pi].
    """
    if state.n != target.n:
        raise DimensionError(f"mode counts differ: {state.n} vs {target.n}")
    s, t = state.amplitudes, target.amplitudes
    gap = np.max(np.abs(np.abs(s) - np.abs(t)))
    if gap > tol:
        raise PerfectWError(f"magnitudes differ by {gap:.3g}; a phase mask cannot map state to target")
    if abs(s[-1]) == 0:
        raise PerfectWError("the last mode is empty, so the reference phase is undefined")
    gamma = np.angle(s[-1]) - np.angle(t[-1])
    theta = gamma + np.angle(t) - np.angle(s)
    # modes with no amplitude need no correction
    theta[np.abs(s) == 0] = 0.0
    theta = np.angle(np.exp(1j * theta))
    theta[-1] = 0.0
    return theta


def apply_phases(state: PhotonAmplitudes, theta) -> PhotonAmplitudes:
    return PhotonAmplitudes(np.exp(1j * np.asarray(theta)) * state.amplitudes)
