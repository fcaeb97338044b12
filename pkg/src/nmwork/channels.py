"""Time-parametrized qubit channels.

Pauli channels are built from three decoherence rates gamma_k(t) through their
integrals Gamma_k(t); the channel multiplies the Bloch components by
lambda_1 = exp(-2[Gamma_2 + Gamma_3]) (and cyclic), and its Pauli weights p_alpha
follow by inverting the Bloch/Pauli relation. Amplitude damping is parametrized
directly by the complex excited-state amplitude G(t).
"""
from __future__ import annotations

import math
from collections.abc import Callable, Sequence
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import linalg
from .errors import InvalidArgumentError, ModelViolationError, SingularityError
from .linalg import PAULIS, DensityMatrix
from .quadrature import adaptive_simpson

CONSTANT = "constant"
TAN_RATE = "tan_rate"
TANH_RATE = "tanh_rate"
TABULATED = "tabulated"
RATE_KINDS = (CONSTANT, TAN_RATE, TANH_RATE, TABULATED)

QUAD_TOL = 1e-10
RATE_TOL = 1e-12
CP_TOL = 1e-10
COMPLETENESS_TOL = 1e-10
KRAUS_G_TOL = 1e-12


@dataclass(frozen=True)
class RateFunction:
    """One decoherence rate gamma(t).

    ``constant``: gamma = lam/2. ``tan_rate``: gamma = (omega/2) tan(omega t).
    ``tanh_rate``: gamma = -(omega/2) tanh(omega t). ``tabulated``: any callable,
    optionally with a closed-form integral.
    Setting ``closed_form=False`` forces the quadrature path (used for cross-checks).
    """

    kind: str
    lam: float = 0.0
    omega: float = 0.0
    func: Optional[Callable[[float], float]] = None
    antiderivative: Optional[Callable[[float], float]] = None
    closed_form: bool = True

    def __post_init__(self):
        if self.kind not in RATE_KINDS:
            raise InvalidArgumentError(f"unknown rate kind {self.kind!r}")
        if self.kind in (TAN_RATE, TANH_RATE) and not self.omega > 0:
            raise InvalidArgumentError("omega must be positive")
        if self.kind == CONSTANT and not math.isfinite(self.lam):
            raise InvalidArgumentError("lam must be finite")
        if self.kind == TABULATED and self.func is None:
            raise InvalidArgumentError("tabulated rates need a callable")

    @property
    def closed_form_integral_available(self) -> bool:
        if not self.closed_form:
            return False
        return self.kind != TABULATED or self.antiderivative is not None

    def __call__(self, t: float) -> float:
        if self.kind == CONSTANT:
            return 0.5 * self.lam
        if self.kind == TAN_RATE:
            return 0.5 * self.omega * math.tan(self.omega * t)
        if self.kind == TANH_RATE:
            return -0.5 * self.omega * math.tanh(self.omega * t)
        return float(self.func(t))

    def _tan_phase(self, t: float) -> float:
        # distance of omega*t from the nearest pole (pi/2 + k pi)
        wt = self.omega * t
        return abs(math.remainder(wt - 0.5 * math.pi, math.pi))

    def integral(self, t: float, strict: bool = True) -> float:
        """Gamma(t) = int_0^t gamma. For tan rates past a pole the closed form is
        continued as -1/2 ln|cos(omega t)|; at a pole it diverges."""
        if t < 0:
            raise InvalidArgumentError("t must be non-negative")
        if t == 0:
            return 0.0
        if self.closed_form_integral_available:
            if self.kind == CONSTANT:
                return 0.5 * self.lam * t
            if self.kind == TAN_RATE:
                wt = self.omega * t
                if self._tan_phase(t) <= 4 * math.ulp(max(1.0, wt)):
                    if strict:
                        raise SingularityError(f"Gamma diverges at omega*t = {wt!r} (pole of tan)")
                    return math.inf
                return -0.5 * math.log(abs(math.cos(wt)))
            if self.kind == TANH_RATE:
                return -0.5 * math.log(math.cosh(self.omega * t))
            return float(self.antiderivative(t))
        if self.kind == TAN_RATE and self.omega * t >= 0.5 * math.pi:
            raise SingularityError("quadrature cannot integrate tan(omega t) through omega t = pi/2")
        return adaptive_simpson(self, 0.0, t, tol=QUAD_TOL)

    def decay_factor(self, t: float) -> float:
        """exp(-2 Gamma(t)), continued through tan poles as cos(omega t)."""
        if self.closed_form_integral_available:
            if self.kind == CONSTANT:
                return math.exp(-self.lam * t)
            if self.kind == TAN_RATE:
                return math.cos(self.omega * t)
            if self.kind == TANH_RATE:
                return math.cosh(self.omega * t)
        return math.exp(-2.0 * self.integral(t))


def constant_rate(lam: float) -> RateFunction:
    return RateFunction(CONSTANT, lam=lam)


def tan_rate(omega: float, closed_form: bool = True) -> RateFunction:
    return RateFunction(TAN_RATE, omega=omega, closed_form=closed_form)


def tanh_rate(omega: float, closed_form: bool = True) -> RateFunction:
    return RateFunction(TANH_RATE, omega=omega, closed_form=closed_form)


def tabulated_rate(func: Callable[[float], float],
                   antiderivative: Optional[Callable[[float], float]] = None) -> RateFunction:
    return RateFunction(TABULATED, func=func, antiderivative=antiderivative)


def gamma_integral(rate: RateFunction, t: float) -> float:
    """Gamma(t) = int_0^t gamma(tau) dtau; raises SingularityError at a tan pole."""
    return rate.integral(t, strict=True)


@dataclass(frozen=True)
class PauliRateSet:
    g1: RateFunction
    g2: RateFunction
    g3: RateFunction

    @property
    def rates(self) -> tuple[RateFunction, RateFunction, RateFunction]:
        return (self.g1, self.g2, self.g3)

    def values(self, t: float) -> tuple[float, float, float]:
        return tuple(g(t) for g in self.rates)


@dataclass(frozen=True)
class PauliSnapshot:
    t: float
    Gamma: tuple[float, float, float]
    lam: tuple[float, float, float]
    p: tuple[float, float, float, float]

    @property
    def cp_violation(self) -> bool:
        return min(self.p) < -CP_TOL


def pauli_weights(lam: Sequence[float]) -> tuple[float, float, float, float]:
    """Pauli probabilities (p0, p1, p2, p3) from the Bloch eigenvalues (l1, l2, l3)."""
    l1, l2, l3 = lam
    return (
        0.25 * (1 + l1 + l2 + l3),
        0.25 * (1 + l1 - l2 - l3),
        0.25 * (1 - l1 + l2 - l3),
        0.25 * (1 - l1 - l2 + l3),
    )


def pauli_snapshot(rates: PauliRateSet, t: float) -> PauliSnapshot:
    if t < 0:
        raise InvalidArgumentError("t must be non-negative")
    gammas = tuple(g.integral(t, strict=False) for g in rates.rates)
    f1, f2, f3 = (g.decay_factor(t) for g in rates.rates)
    lam = (f2 * f3, f1 * f3, f1 * f2)
    return PauliSnapshot(t=t, Gamma=gammas, lam=lam, p=pauli_weights(lam))


def pauli_kraus(snapshot: PauliSnapshot) -> list[np.ndarray]:
    """Kraus operators sqrt(p_alpha) sigma_alpha; tiny negative weights are clipped."""
    if snapshot.cp_violation:
        raise ModelViolationError(f"Pauli weights {snapshot.p} are not a probability vector")
    return [math.sqrt(max(p, 0.0)) * s for p, s in zip(snapshot.p, PAULIS)]


def apply_pauli(snapshot: PauliSnapshot, rho: DensityMatrix) -> DensityMatrix:
    """sum_alpha p_alpha sigma_alpha rho sigma_alpha on a single qubit."""
    mat = linalg.as_cmatrix(rho, dims=(2,))
    out = sum(p * (s @ mat @ s) for p, s in zip(snapshot.p, PAULIS))
    return DensityMatrix(out)


@dataclass(frozen=True)
class KrausPair:
    k1: np.ndarray
    k2: np.ndarray
    g: complex

    @property
    def ops(self) -> list[np.ndarray]:
        return [self.k1, self.k2]


def amplitude_damping_kraus(g: complex) -> KrausPair:
    """K1 = [[1, 0], [0, G]], K2 = [[0, sqrt(1 - |G|^2)], [0, 0]]."""
    g = complex(g)
    if not (math.isfinite(g.real) and math.isfinite(g.imag)):
        raise InvalidArgumentError("G must be finite")
    mag2 = abs(g) ** 2
    if abs(g) > 1 + KRAUS_G_TOL:
        raise InvalidArgumentError(f"|G| = {abs(g)!r} exceeds 1")
    k1 = np.array([[1, 0], [0, g]], dtype=complex)
    k2 = np.array([[0, math.sqrt(max(0.0, 1.0 - mag2))], [0, 0]], dtype=complex)
    return KrausPair(k1=k1, k2=k2, g=g)


def kraus_completeness_error(kraus: Sequence[np.ndarray]) -> float:
    acc = sum(k.conj().T @ k for k in kraus)
    return float(np.max(np.abs(acc - np.eye(2))))


def apply_to_subsystem(kraus, rho: DensityMatrix, target: str) -> DensityMatrix:
    """sum_i (K_i (x) I) rho (K_i (x) I)^dagger, or I (x) K_i when target is the memory."""
    if isinstance(kraus, KrausPair):
        kraus = kraus.ops
    ops = [linalg.as_cmatrix(k, dims=(2,)) for k in kraus]
    if target not in (linalg.SYSTEM, linalg.MEMORY):
        raise InvalidArgumentError(f"target must be 'system' or 'memory', got {target!r}")
    dev = kraus_completeness_error(ops)
    if dev > COMPLETENESS_TOL:
        raise InvalidArgumentError(f"Kraus operators are not complete (deviation {dev:.3e})")
    mat = linalg.as_cmatrix(rho, dims=(4,))
    out = np.zeros((4, 4), dtype=complex)
    for k in ops:
        big = np.kron(k, linalg.I2) if target == linalg.SYSTEM else np.kron(linalg.I2, k)
        out += big @ mat @ big.conj().T
    return DensityMatrix(out)


def pauli_choi(snapshot: PauliSnapshot) -> np.ndarray:
    """Choi matrix (Phi (x) id)|Omega><Omega| with |Omega> = (|00> + |11>)/sqrt(2)."""
    omega = np.zeros(4, dtype=complex)
    omega[0] = omega[3] = 1 / math.sqrt(2)
    proj = np.outer(omega, omega.conj())
    out = np.zeros((4, 4), dtype=complex)
    for p, s in zip(snapshot.p, PAULIS):
        big = np.kron(s, linalg.I2)
        out += p * (big @ proj @ big.conj().T)
    return out


def choi_min_eigenvalue(snapshot: PauliSnapshot) -> float:
    return linalg.herm_eigvals(pauli_choi(snapshot))[0]


@dataclass(frozen=True)
class DivisibilityFlags:
    cp_divisible: bool
    p_divisible: bool
    cp_violation: bool


def flags_from_rates(gammas: Sequence[float], p: Sequence[float]) -> DivisibilityFlags:
    g1, g2, g3 = gammas
    cp = all(g >= -RATE_TOL for g in gammas)
    pdiv = g1 + g2 >= -RATE_TOL and g1 + g3 >= -RATE_TOL and g2 + g3 >= -RATE_TOL
    return DivisibilityFlags(cp_divisible=cp, p_divisible=pdiv, cp_violation=min(p) < -CP_TOL)


def divisibility_flags(rates: PauliRateSet, t: float) -> DivisibilityFlags:
    """CP-divisibility (all gamma_k >= 0) and P-divisibility (pairwise sums >= 0) at t."""
    snap = pauli_snapshot(rates, t)
    return flags_from_rates(rates.values(t), snap.p)
