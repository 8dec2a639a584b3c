"""Brute-force multimode Fock-space checks of the su(2) variance bound.

States are dense tensors of shape ``(cutoff+1,)*modes``; axis j holds the
photon number of mode j+1.  Two evaluation paths exist:

* ``build_fock_operator`` assembles dense truncated matrices (for structure
  checks: Hermiticity, commutators, the one-photon block);
* ``check_bound`` applies ladder operators straight to the tensor after
  padding every mode by one level, so no truncation error enters the
  expectation values.
"""

from __future__ import annotations

import csv
import io
import itertools
from dataclasses import dataclass
from functools import reduce

import numpy as np

from .errors import DimensionError, PerfectWError
from .states import AlphaVector, PhotonAmplitudes

MAX_MODES = 5
MAX_CUTOFF = 3
MAX_BASIS = 4096
KINDS = ("L1", "L2", "L3", "bound")
VIOLATION_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class FockState:
    amplitudes: np.ndarray

    def __post_init__(self):
        psi = np.array(self.amplitudes, dtype=complex)
        if psi.ndim < 1 or len(set(psi.shape)) != 1:
            raise DimensionError(f"expected a cube tensor, got shape {psi.shape}")
        if psi.ndim > MAX_MODES or psi.shape[0] - 1 > MAX_CUTOFF:
            raise DimensionError(f"at most {MAX_MODES} modes and cutoff {MAX_CUTOFF}, got shape {psi.shape}")
        norm = np.vdot(psi, psi).real
        if abs(norm - 1.0) > 1e-12:
            raise PerfectWError(f"squared norm is {norm!r}, expected 1")
        psi.setflags(write=False)
        object.__setattr__(self, "amplitudes", psi)

    @property
    def modes(self) -> int:
        return self.amplitudes.ndim

    @property
    def cutoff(self) -> int:
        return self.amplitudes.shape[0] - 1

    @classmethod
    def from_single_photon(cls, state: PhotonAmplitudes, cutoff: int = 1) -> "FockState":
        psi = np.zeros((cutoff + 1,) * state.n, dtype=complex)
        for j, c in enumerate(state.amplitudes):
            idx = [0] * state.n
            idx[j] = 1
            psi[tuple(idx)] = c
        return cls(psi)


@dataclass(frozen=True, eq=False)
class FockOperator:
    matrix: np.ndarray
    kind: str
    alphas: AlphaVector
    modes: int
    cutoff: int

    def basis(self) -> list[tuple[int, ...]]:
        return list(itertools.product(range(self.cutoff + 1), repeat=self.modes))

    def block(self, total: int) -> np.ndarray:
        """Matrix restricted to basis states with exactly ``total`` photons."""
        idx = [i for i, occ in enumerate(self.basis()) if sum(occ) == total]
        return self.matrix[np.ix_(idx, idx)]

    def single_photon_block(self) -> np.ndarray:
        """The one-photon block, reordered so row j is "photon in mode j+1"."""
        occs = self.basis()
        idx = [occs.index(tuple(int(k == j) for k in range(self.modes))) for j in range(self.modes)]
        return self.matrix[np.ix_(idx, idx)]


def _ladder(cutoff: int) -> np.ndarray:
    return np.diag(np.sqrt(np.arange(1, cutoff + 1)), 1).astype(complex)


def _embed(single: np.ndarray, j: int, modes: int, cutoff: int) -> np.ndarray:
    eye = np.eye(cutoff + 1)
    return reduce(np.kron, [single if k == j else eye for k in range(modes)])


def build_fock_operator(kind: str, alphas: AlphaVector, modes: int, cutoff: int) -> FockOperator:
    if kind not in KINDS:
        raise PerfectWError(f"unknown operator kind {kind!r}; choose from {KINDS}")
    if modes != alphas.n:
        raise DimensionError(f"{modes} modes need {modes - 1} alphas, got {alphas.alphas.size}")
    if cutoff < 1:
        raise DimensionError("cutoff must be at least 1")
    size = (cutoff + 1) ** modes
    if size > MAX_BASIS:
        raise DimensionError(f"basis size {size} exceeds {MAX_BASIS}")
    a = [_embed(_ladder(cutoff), j, modes, cutoff) for j in range(modes)]
    a_last = a[-1]
    b = sum(al * aj for al, aj in zip(alphas.alphas, a[:-1]))
    n_last = a_last.conj().T @ a_last
    hop = a_last.conj().T @ b  # sum_j alpha_j a_N^dag a_j
    if kind == "L1":
        mat = hop + hop.conj().T
    elif kind == "L2":
        mat = 1j * hop - 1j * hop.conj().T
    elif kind == "L3":
        mat = b.conj().T @ b - n_last
    else:
        mat = 2.0 * (b.conj().T @ b + n_last)
    return FockOperator(mat, kind, alphas, modes, cutoff)


# -- tensor-level ladder operators, exact on padded tensors -------------------

def _lower(psi: np.ndarray, j: int) -> np.ndarray:
    psi = np.moveaxis(psi, j, 0)
    out = np.zeros_like(psi)
    levels = np.sqrt(np.arange(1, psi.shape[0])).reshape((-1,) + (1,) * (psi.ndim - 1))
    out[:-1] = levels * psi[1:]
    return np.moveaxis(out, 0, j)


def _raise(psi: np.ndarray, j: int) -> np.ndarray:
    psi = np.moveaxis(psi, j, 0)
    if np.any(psi[-1]):
        raise PerfectWError("raising would leave the tensor; pad before applying")
    out = np.zeros_like(psi)
    levels = np.sqrt(np.arange(1, psi.shape[0])).reshape((-1,) + (1,) * (psi.ndim - 1))
    out[1:] = levels * psi[:-1]
    return np.moveaxis(out, 0, j)


def _number(psi: np.ndarray, j: int) -> np.ndarray:
    n = np.arange(psi.shape[j]).reshape([-1 if k == j else 1 for k in range(psi.ndim)])
    return n * psi


def _pad(psi: np.ndarray) -> np.ndarray:
    return np.pad(psi, [(0, 1)] * psi.ndim)


def check_bound(state: FockState, alphas: AlphaVector) -> dict:
    """Exact variance sum, separable bound and both sides of the coherence condition for ``state``.

    Every mode is padded by one photon level first.  All operators involved
    change any single mode by at most one photon per application, and each
    quantity needs at most one application to the ket, so the padded tensor
    holds the results without truncation.
    """
    if state.modes != alphas.n:
        raise DimensionError(f"state has {state.modes} modes, alphas describe {alphas.n}")
    psi = _pad(state.amplitudes)
    last = state.modes - 1
    al = alphas.alphas

    def b_op(x):  # sum_j alpha_j a_j
        return sum(al[j] * _lower(x, j) for j in range(last))

    def b_dag(x):
        return sum(np.conj(al[j]) * _raise(x, j) for j in range(last))

    hop = _raise(b_op(psi), last)  # a_N^dag B psi
    hop_dag = b_dag(_lower(psi, last))  # B^dag a_N psi
    l1 = hop + hop_dag
    l2 = 1j * hop - 1j * hop_dag

    def mean_var(lpsi):
        mean = np.vdot(psi, lpsi).real
        return mean, np.vdot(lpsi, lpsi).real - mean**2

    m1, v1 = mean_var(l1)
    m2, v2 = mean_var(l2)
    bpsi = b_op(psi)
    occupancy = np.vdot(bpsi, bpsi).real + np.vdot(psi, _number(psi, last)).real
    coherence = np.vdot(psi, hop)  # <a_N^dag B>
    rhs21 = np.vdot(bpsi, b_op(_number(psi, last))).real
    sum_var = v1 + v2
    bound = 2.0 * occupancy
    return {
        "sum_var": float(sum_var),
        "sum_var_expansion": float(bound + 4.0 * (rhs21 - abs(coherence) ** 2)),
        "bound": float(bound),
        "lhs_eq21": float(abs(coherence) ** 2),
        "rhs_eq21": float(rhs21),
        "mean_l1": float(m1),
        "mean_l2": float(m2),
        "violates_eq20": bool(sum_var < bound - VIOLATION_TOL),
    }


def sample_product_state(modes: int, cutoff: int, seed: int) -> FockState:
    """Tensor product of per-mode states drawn uniformly from the unit sphere in C^(cutoff+1)."""
    if not 1 <= modes <= MAX_MODES or not 1 <= cutoff <= MAX_CUTOFF:
        raise DimensionError(f"need 1..{MAX_MODES} modes and cutoff 1..{MAX_CUTOFF}")
    rng = np.random.default_rng(seed)
    factors = []
    for _ in range(modes):
        v = rng.normal(size=cutoff + 1) + 1j * rng.normal(size=cutoff + 1)
        factors.append(v / np.linalg.norm(v))
    psi = reduce(np.multiply.outer, factors)
    return FockState(psi / np.linalg.norm(psi))


def random_alphas(rng: np.random.Generator, count: int) -> AlphaVector:
    v = rng.normal(size=count) + 1j * rng.normal(size=count)
    return AlphaVector.normalized(v)


def derive_seed(root_seed: int, index: int) -> int:
    return int(np.random.SeedSequence([root_seed, index]).generate_state(1, dtype=np.uint64)[0])


def product_state_suite(count: int, root_seed: int = 0, modes_choices=(3, 4, 5), cutoff: int = 2) -> list[dict]:
    """Check the bound on ``count`` seeded product states with seeded random alphas.

    Convex mixtures of these states also satisfy the bound because the
    variance sum is concave and the bound linear in the state; they are not
    sampled here.
    """
    rows = []
    for i in range(count):
        seed = derive_seed(root_seed, i)
        rng = np.random.default_rng(seed)
        modes = int(modes_choices[rng.integers(len(modes_choices))])
        alphas = random_alphas(rng, modes - 1)
        state = sample_product_state(modes, cutoff, int(rng.integers(2**63)))
        result = check_bound(state, alphas)
        rows.append({"seed": seed, "modes": modes, **result})
    return rows


def suite_to_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["seed", "sum_var", "bound", "lhs21", "rhs21", "violates"])
    for r in rows:
        writer.writerow([
            r["seed"], repr(r["sum_var"]), repr(r["bound"]),
            repr(r["lhs_eq21"]), repr(r["rhs_eq21"]), int(r["violates_eq20"]),
        ])
    return buf.getvalue()
