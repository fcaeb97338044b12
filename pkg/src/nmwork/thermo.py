"""Entropic observables and the extractable work of Landauer erasure with a quantum memory.

Work is dimensionless, in units of kT ln 2. For an n-qubit system
W_ex = n - H(S|Q) = n + I(S>Q), and in the noisy-system picture the same
number reads n - H(S_t) + I(S_t:Q).
"""
from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass
from typing import NamedTuple, Optional

from .channels import DivisibilityFlags
from .errors import InvalidArgumentError, UnsupportedError
from .linalg import MEMORY, SYSTEM, DensityMatrix, partial_trace, von_neumann_entropy

BOLTZMANN = 1.380649e-23  # J/K, exact SI
LN2 = math.log(2.0)
PROB_TOL = 1e-10


class EntropicProfile(NamedTuple):
    H_S: float
    H_Q: float
    H_SQ: float
    cond_entropy: float
    coherent_info: float
    mutual_info: float


def entropic_profile(rho_sq: DensityMatrix) -> EntropicProfile:
    if not isinstance(rho_sq, DensityMatrix):
        rho_sq = DensityMatrix(rho_sq)
    if rho_sq.dim != 4:
        raise InvalidArgumentError("entropic_profile expects a two-qubit state")
    h_s = von_neumann_entropy(partial_trace(rho_sq, SYSTEM))
    h_q = von_neumann_entropy(partial_trace(rho_sq, MEMORY))
    h_sq = von_neumann_entropy(rho_sq)
    cond = h_sq - h_q
    return EntropicProfile(h_s, h_q, h_sq, cond, -cond, h_s + h_q - h_sq)


def _check_n(n: int) -> None:
    if n != 1:
        raise UnsupportedError("only single-qubit systems (n = 1) are supported")


def work_memory_scenario(rho_sq: DensityMatrix, n: int = 1) -> float:
    """W_ex = n + I(S>Q_t) when the memory is the noisy party."""
    _check_n(n)
    return n + entropic_profile(rho_sq).coherent_info


def work_system_scenario(rho_sq: DensityMatrix, n: int = 1) -> float:
    """W_ex = n - H(S_t) + I(S_t:Q) when the system is the noisy party."""
    _check_n(n)
    prof = entropic_profile(rho_sq)
    return n - prof.H_S + prof.mutual_info


def pauli_coherent_info_analytic(p: Sequence[float]) -> float:
    """I(S>Q_t) = 1 + sum_alpha p_alpha log2 p_alpha for Pauli noise on one half of the singlet."""
    p = [float(x) for x in p]
    if len(p) != 4:
        raise InvalidArgumentError("expected four Pauli weights")
    if min(p) < -PROB_TOL:
        raise InvalidArgumentError(f"negative Pauli weight {min(p):.3e}")
    if abs(sum(p) - 1.0) > PROB_TOL:
        raise InvalidArgumentError(f"Pauli weights sum to {sum(p)!r}")
    return 1.0 + sum(x * math.log2(x) for x in p if x > 0.0)


@dataclass(frozen=True)
class WorkPoint:
    t: float
    H_S: float
    H_Q: float
    H_SQ: float
    cond_entropy: float
    coherent_info: float
    mutual_info: float
    w_ex: float
    flags: Optional[DivisibilityFlags] = None

    @classmethod
    def from_state(cls, t: float, rho_sq: DensityMatrix, flags: Optional[DivisibilityFlags] = None,
                   n: int = 1) -> "WorkPoint":
        _check_n(n)
        prof = entropic_profile(rho_sq)
        return cls(t, *prof, w_ex=n - prof.cond_entropy, flags=flags)

    def joules(self, temperature: float) -> float:
        return self.w_ex * BOLTZMANN * temperature * LN2


class WorkDelta(NamedTuple):
    total: float
    minus_delta_H_S: float
    delta_mutual_info: float


def delta_work(w1: WorkPoint, w2: WorkPoint) -> WorkDelta:
    """W_ex(t2) - W_ex(t1) and its split into -dH(S_t) + dI(S_t:Q)."""
    if w2.t < w1.t:
        raise InvalidArgumentError("delta_work expects t2 >= t1")
    return WorkDelta(w2.w_ex - w1.w_ex, -(w2.H_S - w1.H_S), w2.mutual_info - w1.mutual_info)
