"""su(2) operators built from an alpha vector and the entanglement tests they give.

All operators here are restricted to the one-photon sector, basis ``|1>_j``,
which they leave invariant.  With ``u = sum_j alpha_j^* |1>_j`` and ``e_N``
the last mode::

    L1 = |u><N| + |N><u|
    L2 = -i|u><N| + i|N><u|
    L3 = |u><u| - |N><N|

so (u, e_N) span a Pauli algebra and the orthogonal complement is the
zero eigenspace.  Multiphoton versions live in ``perfectw.fock``.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass

import numpy as np

from .errors import DimensionError
from .states import AlphaVector, PhotonAmplitudes, decompose, generalized_w_pair

DETECTION_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class Su2Triple:
    alphas: AlphaVector
    l1: np.ndarray
    l2: np.ndarray
    l3: np.ndarray

    @property
    def n(self) -> int:
        return self.alphas.n

    def bound_operator(self) -> np.ndarray:
        """``sum_jk alpha_j^* alpha_k a_j^dag a_k + N_N``, i.e. half the separable bound."""
        out = self.l3.copy()
        out[-1, -1] = 1.0
        return out


def su2_matrices(alphas: AlphaVector) -> Su2Triple:
    a = alphas.alphas
    n = alphas.n
    l1 = np.zeros((n, n), dtype=complex)
    l2 = np.zeros((n, n), dtype=complex)
    l3 = np.zeros((n, n), dtype=complex)
    l1[:-1, -1] = np.conj(a)
    l1[-1, :-1] = a
    l2[:-1, -1] = -1j * np.conj(a)
    l2[-1, :-1] = 1j * a
    l3[:-1, :-1] = np.outer(np.conj(a), a)
    l3[-1, -1] = -1.0
    for m in (l1, l2, l3):
        m.setflags(write=False)
    return Su2Triple(alphas, l1, l2, l3)


def _check(state: PhotonAmplitudes, n: int) -> np.ndarray:
    if state.n != n:
        raise DimensionError(f"state has {state.n} modes, operators act on {n}")
    return state.amplitudes


def expectation(op: np.ndarray, state: PhotonAmplitudes) -> float:
    c = _check(state, op.shape[0])
    return float(np.vdot(c, op @ c).real)


def variance(op: np.ndarray, state: PhotonAmplitudes) -> float:
    c = _check(state, op.shape[0])
    oc = op @ c
    mean = np.vdot(c, oc).real
    # <L^2> = ||L c||^2 for Hermitian L
    return float(np.vdot(oc, oc).real - mean**2)


def variance_sum(state: PhotonAmplitudes, triple: Su2Triple) -> dict:
    """Left and right sides of the separable-state bound (dL1)^2 + (dL2)^2 >= bound."""
    return {
        "sum_var": variance(triple.l1, state) + variance(triple.l2, state),
        "bound": 2.0 * expectation(triple.bound_operator(), state),
    }


@dataclass
class EntanglementReport:
    lhs_eq21: float = 0.0
    rhs_eq21: float = 0.0
    violated_eq20: bool = False
    fidelity_gap_l1: float = 0.0
    fidelity_gap_l2: float = 0.0
    lhs_eq35: float = 0.0
    lam: float = float("nan")
    verdict: str = "not-detected"
    alphas: AlphaVector | None = None

    def to_json(self) -> dict:
        out = asdict(self)
        out.pop("alphas")
        out["lambda"] = out.pop("lam")
        if self.alphas is not None:
            out["alphas"] = self.alphas.to_json()["alphas"]
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)


def coherence(state: PhotonAmplitudes, alphas: AlphaVector) -> complex:
    """``sum_j alpha_j <a_j a_N^dag>``; on one photon this is ``conj(C_N) sum_j alpha_j C_j``."""
    c = _check(state, alphas.n)
    return complex(np.conj(c[-1]) * np.dot(alphas.alphas, c[:-1]))


def entanglement_condition(state: PhotonAmplitudes, alphas: AlphaVector) -> EntanglementReport:
    """Coherence condition: |sum alpha_j <a_j a_N^dag>|^2 against the N_N-weighted term.

    The right side needs two photons (one in mode N, one elsewhere), so it
    vanishes identically on single-photon states.
    """
    lhs = abs(coherence(state, alphas)) ** 2
    rhs = 0.0
    violated = lhs > rhs + DETECTION_TOL
    return EntanglementReport(
        lhs_eq21=lhs,
        rhs_eq21=rhs,
        violated_eq20=violated,
        verdict="entangled" if violated else "not-detected",
        alphas=alphas,
    )


def squeezing_check(state: PhotonAmplitudes) -> dict:
    """Residuals of the three minimum-uncertainty identities for the state's own alpha.

    The third identity (dL2)^2 = |<L3>/lam| is checked in the product form
    (dL2)^2 |lam| = |<L3>| so that lam = 0 needs no special case.
    """
    dec = decompose(state)
    triple = su2_matrices(dec.alphas)
    var1 = variance(triple.l1, state)
    var2 = variance(triple.l2, state)
    l3 = expectation(triple.l3, state)
    lam = dec.lam
    return {
        "prod_residual": abs(np.sqrt(max(var1, 0.0) * max(var2, 0.0)) - abs(l3)),
        "var1_residual": abs(var1 - abs(lam * l3)),
        "var2_residual": abs(var2 * abs(lam) - abs(l3)),
        "lambda": lam,
        "var1": var1,
        "var2": var2,
        "l3": l3,
    }


def single_photon_condition(state: PhotonAmplitudes, alphas: AlphaVector) -> EntanglementReport:
    """Fidelity-gap test: entangled iff the squared gaps with both W-pairs do not both vanish."""
    _check(state, alphas.n)
    plus1, minus1 = generalized_w_pair(alphas, 1)
    plus2, minus2 = generalized_w_pair(alphas, 2)
    c = state.amplitudes

    def overlap(w: PhotonAmplitudes) -> float:
        return abs(np.vdot(c, w.amplitudes)) ** 2

    gap1 = overlap(plus1) - overlap(minus1)
    gap2 = overlap(plus2) - overlap(minus2)
    lhs35 = gap1**2 + gap2**2
    report = entanglement_condition(state, alphas)
    report.fidelity_gap_l1 = float(gap1)
    report.fidelity_gap_l2 = float(gap2)
    report.lhs_eq35 = float(lhs35)
    report.lam = float(1.0 - 2.0 * abs(c[-1]) ** 2)
    report.verdict = "entangled" if lhs35 > DETECTION_TOL else "not-detected"
    return report


def auto_detect(state: PhotonAmplitudes) -> EntanglementReport:
    """Pick alpha from the state itself, then run the fidelity-gap test."""
    dec = decompose(state)
    return single_photon_condition(state, dec.alphas)
