"""Pure dephasing of a qubit coupled to a transverse-field Ising chain.

The qubit in |1> shifts the chain's transverse field from lambda to
lambda_e = lambda + delta. With periodic boundary conditions the chain
decouples into momentum modes k_m = 2 pi m / N (m = 1..N/2) with dispersion

    eps_k(f) = 2 J sqrt(1 + f^2 - 2 f cos k)

and Bogoliubov angle tan(2 theta_k(f)) = sin k / (f - cos k), 2 theta_k in [0, pi).
The Loschmidt echo is

    L(t) = prod_k [1 - sin^2(2 beta_k) sin^2(eps_k(lambda_e) t)],
    beta_k = theta_k(lambda_e) - theta_k(lambda).

It is accumulated as a sum of log1p terms so that tiny echoes do not underflow
before the caller sees them.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from .channels import PauliRateSet, constant_rate, tabulated_rate
from .errors import DegenerateEchoError, InvalidArgumentError

ECHO_FLOOR = 1e-300


@dataclass(frozen=True)
class IsingParams:
    lambda_field: float
    delta: float
    N: int = 4000
    J: float = 1.0

    def __post_init__(self):
        if not (isinstance(self.N, (int, np.integer)) and self.N >= 2 and self.N % 2 == 0):
            raise InvalidArgumentError(f"N must be an even integer >= 2, got {self.N!r}")
        if not self.J > 0:
            raise InvalidArgumentError("J must be positive")
        if not self.lambda_field >= 0:
            raise InvalidArgumentError("lambda_field must be non-negative")
        if not math.isfinite(self.delta):
            raise InvalidArgumentError("delta must be finite")

    @property
    def perturbed_field(self) -> float:
        """lambda* = lambda + delta, the field seen by the chain when the qubit is excited."""
        return self.lambda_field + self.delta


class Mode(NamedTuple):
    k: float
    energy: float
    bogoliubov_angle: float


def _momenta(N: int) -> np.ndarray:
    return 2.0 * np.pi * np.arange(1, N // 2 + 1) / N


def _dispersion(J: float, field: float, k: np.ndarray) -> np.ndarray:
    return 2.0 * J * np.sqrt(1.0 + field * field - 2.0 * field * np.cos(k))


def _angle(field: float, k: np.ndarray) -> np.ndarray:
    # sin k >= 0 for k in (0, pi], so atan2 lands in [0, pi)
    return 0.5 * np.arctan2(np.sin(k), field - np.cos(k))


def mode_spectrum(params: IsingParams, field: float) -> list[Mode]:
    """Positive-momentum quasiparticle modes of the chain at transverse field `field`."""
    k = _momenta(params.N)
    eps = _dispersion(params.J, field, k)
    theta = _angle(field, k)
    return [Mode(float(a), float(b), float(c)) for a, b, c in zip(k, eps, theta)]


@lru_cache(maxsize=32)
def _mode_table(params: IsingParams) -> tuple[np.ndarray, np.ndarray]:
    k = _momenta(params.N)
    lam_e = params.perturbed_field
    weight = np.sin(2.0 * (_angle(lam_e, k) - _angle(params.lambda_field, k))) ** 2
    eps_e = _dispersion(params.J, lam_e, k)
    weight.setflags(write=False)
    eps_e.setflags(write=False)
    return weight, eps_e


def _log_echo(params: IsingParams, t) -> np.ndarray:
    weight, eps_e = _mode_table(params)
    tt = np.asarray(t, dtype=float)
    x = weight * np.sin(np.multiply.outer(tt, eps_e)) ** 2
    x = np.clip(x, 0.0, 1.0)
    with np.errstate(divide="ignore"):
        return np.sum(np.log1p(-x), axis=-1)


def log_echo(params: IsingParams, t):
    """ln L(t); scalar in, float out; array in, array out."""
    tt = np.asarray(t, dtype=float)
    if np.any(tt < 0):
        raise InvalidArgumentError("t must be non-negative")
    out = _log_echo(params, tt)
    return float(out) if out.ndim == 0 else out


def loschmidt_echo(params: IsingParams, t):
    """L(t) in [0, 1], with L(0) = 1."""
    out = np.exp(log_echo(params, t))
    return float(out) if np.ndim(out) == 0 else np.clip(out, 0.0, 1.0)


def derivative_step(t: float) -> float:
    return max(1e-4, 1e-4 * t)


def ising_decay_rate(params: IsingParams, t: float) -> float:
    """gamma(t) = -L'(t) / (4 L(t)) with a central difference of step max(1e-4, 1e-4 t).

    L is even in t, so the stencil may reach below t = 0.
    """
    if t < 0:
        raise InvalidArgumentError("t must be non-negative")
    h = derivative_step(t)
    lt = math.exp(float(_log_echo(params, t)))
    if lt < ECHO_FLOOR:
        raise DegenerateEchoError(f"Loschmidt echo {lt:.3e} is below {ECHO_FLOOR:g} at t={t!r}")
    lp, lm = np.exp(_log_echo(params, np.array([t + h, t - h])))
    return -(lp - lm) / (2.0 * h) / (4.0 * lt)


def coherent_info_from_echo(L) -> float:
    """I = 1 + sum over (1 +- sqrt L)/2 of x log2 x, the dephasing coherent information."""
    r = math.sqrt(min(max(float(L), 0.0), 1.0))
    total = 1.0
    for x in (0.5 * (1.0 - r), 0.5 * (1.0 + r)):
        if x > 0.0:
            total += x * math.log2(x)
    return total


def ising_coherent_info(params: IsingParams, t: float) -> float:
    return coherent_info_from_echo(loschmidt_echo(params, t))


def ising_rates(params: IsingParams) -> PauliRateSet:
    """The dephasing channel as a Pauli rate set: gamma_1 = gamma_2 = 0, gamma_3 = gamma(t).

    Gamma_3(t) = -ln L(t) / 4 in closed form, so exp(-2 Gamma_3) = sqrt(L).
    """
    g3 = tabulated_rate(
        lambda t: ising_decay_rate(params, t),
        antiderivative=lambda t: -0.25 * log_echo(params, t),
    )
    return PauliRateSet(constant_rate(0.0), constant_rate(0.0), g3)
