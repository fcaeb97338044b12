"""Amplitude damping of an atom near the edge of a photonic band gap.

The excited-state amplitude is

    G(t) = e^{i delta t} [ 2 v1 x1 e^{beta x1^2 t} + v2 (x2 + y2) e^{beta x2^2 t}
                           - sum_j a_j y_j (1 - erf(sqrt(beta x_j^2 t))) e^{beta x_j^2 t} ]

with a_j = v_j. Since sqrt(beta x_j^2 t) = sqrt(beta t) y_j for the principal
root, the erf terms are evaluated as a_j y_j erfcx(sqrt(beta t) y_j), which never
overflows because Re y_j >= 0.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidArgumentError, ModelViolationError
from .specfun import erfcx_complex

G0_TOL = 1e-6
G_MAX_TOL = 1e-6
ROOT_SEPARATION = 1e-6  # relative to max |x_j|; separation scales like sqrt(discriminant)


class DegenerateParametersError(InvalidArgumentError):
    """Two of the cubic roots x_j coincide, so v_j is singular."""


@dataclass(frozen=True)
class PBGParams:
    beta: float = 1.0
    detuning: float = -1.0

    def __post_init__(self):
        if not (math.isfinite(self.beta) and self.beta > 0):
            raise InvalidArgumentError("beta must be positive")
        if not math.isfinite(self.detuning):
            raise InvalidArgumentError("detuning must be finite")

    @property
    def discriminant(self) -> float:
        return 1.0 + (4.0 / 27.0) * self.detuning ** 3 / self.beta ** 3


@dataclass(frozen=True)
class PBGCoefficients:
    A_plus: complex
    A_minus: complex
    x: tuple[complex, complex, complex]
    v: tuple[complex, complex, complex]
    y: tuple[complex, complex, complex]
    a: tuple[complex, complex, complex]


def _cbrt(z: complex) -> complex:
    # principal branch, including negative reals
    return 0j if z == 0 else cmath.exp(cmath.log(z) / 3.0)


def pbg_coefficients(params: PBGParams, a_scale: float = 1.0, validate: bool = True) -> PBGCoefficients:
    """Roots x_j, residues v_j, branch values y_j = sqrt(x_j^2) and erf weights a_j.

    `a_scale` multiplies a_j = v_j and exists only to exercise the G(0) = 1 check.
    With `validate`, |G(0) - 1| >= 1e-6 raises ModelViolationError.
    """
    root = cmath.sqrt(complex(params.discriminant))
    a_plus = _cbrt(0.5 + 0.5 * root)
    a_minus = _cbrt(0.5 - 0.5 * root)
    e = lambda phi: cmath.exp(1j * phi)
    pi = math.pi
    x = (
        (a_plus + a_minus) * e(pi / 4),
        (a_plus * e(-pi / 6) - a_minus * e(pi / 6)) * e(-pi / 4),
        (a_plus * e(pi / 6) - a_minus * e(-pi / 6)) * e(3 * pi / 4),
    )
    scale = max(abs(xj) for xj in x)
    for i in range(3):
        for j in range(i + 1, 3):
            if abs(x[i] - x[j]) <= ROOT_SEPARATION * scale:
                raise DegenerateParametersError(
                    f"roots x{i + 1} and x{j + 1} coincide for detuning={params.detuning}, beta={params.beta}")
    v = tuple(x[j] / ((x[j] - x[(j + 1) % 3]) * (x[j] - x[(j + 2) % 3])) for j in range(3))
    y = tuple(cmath.sqrt(xj * xj) for xj in x)
    a = tuple(a_scale * vj for vj in v)
    coeffs = PBGCoefficients(a_plus, a_minus, x, v, y, a)
    if validate:
        g0 = complex(_g_series(coeffs, params.beta, params.detuning, np.zeros(1))[0])
        if abs(g0 - 1.0) >= G0_TOL:
            raise ModelViolationError(f"G(0) = {g0:.12g}, expected 1 (coefficient choice a_j is inconsistent)")
    return coeffs


def _g_series(c: PBGCoefficients, beta: float, delta: float, t: np.ndarray) -> np.ndarray:
    x, v, y, a = (np.array(arr, dtype=complex) for arr in (c.x, c.v, c.y, c.a))
    t = np.asarray(t, dtype=float)
    poles = (2.0 * v[0] * x[0] * np.exp(beta * x[0] ** 2 * t)
             + v[1] * (x[1] + y[1]) * np.exp(beta * x[1] ** 2 * t))
    z = np.sqrt(beta * t)[:, None] * y[None, :]
    cut = np.sum(a * y * erfcx_complex(z), axis=1)
    return np.exp(1j * delta * t) * (poles - cut)


def pbg_G(params: PBGParams, t, coefficients: PBGCoefficients | None = None):
    """G(t) for scalar or array t >= 0. Raises ModelViolationError if |G| > 1 + 1e-6."""
    if coefficients is None:
        coefficients = pbg_coefficients(params)
    tt = np.atleast_1d(np.asarray(t, dtype=float))
    if np.any(tt < 0) or not np.all(np.isfinite(tt)):
        raise InvalidArgumentError("t must be finite and non-negative")
    g = _g_series(coefficients, params.beta, params.detuning, tt.reshape(-1)).reshape(tt.shape)
    worst = float(np.max(np.abs(g)))
    if not math.isfinite(worst) or worst > 1.0 + G_MAX_TOL:
        raise ModelViolationError(f"|G(t)| reaches {worst!r} > 1")
    return complex(g[0]) if np.ndim(t) == 0 else g


def _xlog2x(x: float) -> float:
    return x * math.log2(x) if x > 0.0 else 0.0


def pbg_entropies(g_abs: float) -> tuple[float, float, float]:
    """(H(S_t), H(Q), H(S_t Q)) in bits when the system of the singlet is damped with |G| = g_abs."""
    if not (-1e-12 <= g_abs <= 1.0 + 1e-12):
        raise InvalidArgumentError(f"|G| = {g_abs!r} outside [0, 1]")
    g2 = min(max(g_abs, 0.0), 1.0) ** 2
    h_s = -_xlog2x(0.5 * (2.0 - g2)) - _xlog2x(0.5 * g2)
    h_sq = -_xlog2x(0.5 * (1.0 - g2)) - _xlog2x(0.5 * (1.0 + g2))
    return h_s, 1.0, h_sq
