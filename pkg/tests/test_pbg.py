import cmath
import math

import mpmath
import numpy as np
import pytest

from nmwork.channels import amplitude_damping_kraus, apply_to_subsystem
from nmwork.errors import InvalidArgumentError, ModelViolationError
from nmwork.linalg import SYSTEM, partial_trace, singlet, von_neumann_entropy
from nmwork.pbg import (DegenerateParametersError, PBGParams, pbg_coefficients, pbg_entropies,
                        pbg_G)
from nmwork.thermo import work_system_scenario

FIG4 = PBGParams(beta=1.0, detuning=-1.0)


def g_by_mpmath(params, t):
    """Unscaled formula evaluated with mpmath's erf, as an independent oracle at moderate t."""
    c = pbg_coefficients(params)
    b, d = mpmath.mpf(params.beta), mpmath.mpf(params.detuning)
    x = [mpmath.mpc(z.real, z.imag) for z in c.x]
    v = [mpmath.mpc(z.real, z.imag) for z in c.v]
    y = [mpmath.mpc(z.real, z.imag) for z in c.y]
    poles = 2 * v[0] * x[0] * mpmath.exp(b * x[0] ** 2 * t) + v[1] * (x[1] + y[1]) * mpmath.exp(b * x[1] ** 2 * t)
    cut = sum(v[j] * y[j] * (1 - mpmath.erf(mpmath.sqrt(b * t) * y[j])) * mpmath.exp(b * x[j] ** 2 * t)
              for j in range(3))
    return complex(mpmath.exp(1j * d * t) * (poles - cut))


def damped_entropies(g):
    rho = apply_to_subsystem(amplitude_damping_kraus(g).ops, singlet(), SYSTEM)
    return (von_neumann_entropy(partial_trace(rho, SYSTEM)), von_neumann_entropy(rho))


def test_params_validation():
    with pytest.raises(InvalidArgumentError):
        PBGParams(beta=0.0)
    with pytest.raises(InvalidArgumentError):
        PBGParams(detuning=math.inf)


def test_coefficients_zero_detuning_closed_form():
    c = pbg_coefficients(PBGParams(1.0, 0.0))
    assert c.A_plus == pytest.approx(1.0)
    assert abs(c.A_minus) < 1e-15
    assert c.x[0] == pytest.approx(cmath.exp(1j * math.pi / 4))


def test_coefficients_fig4():
    c = pbg_coefficients(FIG4)
    assert abs(c.A_plus.imag) < 1e-15 and abs(c.A_minus.imag) < 1e-15
    assert abs(c.x[0]) == pytest.approx(c.A_plus.real + c.A_minus.real, abs=1e-14)
    assert abs(sum(c.x)) < 1e-14
    assert all(y.real >= 0 and (y == pytest.approx(x) or y == pytest.approx(-x)) for x, y in zip(c.x, c.y))


def test_roots_solve_the_cubic():
    for d in (-3.0, -1.0, -0.2, 0.0, 0.7, 2.5):
        c = pbg_coefficients(PBGParams(1.0, d))
        assert abs(sum(c.x)) < 1e-13
        assert abs(sum(c.v)) < 1e-12  # residues of x/((x-x1)(x-x2)(x-x3)) sum to zero


def test_coincident_roots_raise():
    d = -(27.0 / 4.0) ** (1.0 / 3.0)
    with pytest.raises(DegenerateParametersError):
        pbg_coefficients(PBGParams(1.0, d))


def test_g_initial_value_for_several_detunings():
    for d in (-3.0, -1.0, -0.5, 0.0, 1.0, 4.0):
        assert abs(pbg_G(PBGParams(1.0, d), 0.0) - 1.0) < 1e-6


def test_corrupted_weights_fail_validation():
    with pytest.raises(ModelViolationError):
        pbg_coefficients(FIG4, a_scale=2.0)


def test_g_against_mpmath_oracle():
    for t in (0.05, 0.7, 2.0, 6.5, 12.0):
        assert abs(pbg_G(FIG4, t) - g_by_mpmath(FIG4, t)) < 1e-10


def test_g_bounded_and_continuous():
    ts = np.linspace(0, 40, 4001)
    g = pbg_G(FIG4, ts)
    assert np.max(np.abs(g)) <= 1 + 1e-6
    h = 1e-4
    jump = np.abs(pbg_G(FIG4, ts + h) - g)
    assert np.max(jump) < 2 * h


def test_population_trapping_plateau():
    late = np.abs(pbg_G(FIG4, np.linspace(200, 250, 200)))
    assert late.min() > 0.5
    assert late.max() - late.min() < 1e-3


def test_negative_time_rejected():
    with pytest.raises(InvalidArgumentError):
        pbg_G(FIG4, -0.1)


def test_entropy_anchors():
    assert pbg_entropies(1.0) == pytest.approx((1.0, 1.0, 0.0), abs=1e-15)
    assert pbg_entropies(0.0) == pytest.approx((0.0, 1.0, 1.0), abs=1e-15)
    with pytest.raises(InvalidArgumentError):
        pbg_entropies(1.5)


def test_entropy_oracle_and_phase_invariance():
    rng = np.random.default_rng(16)
    for g_abs in rng.uniform(0, 1, 100):
        h_s, h_q, h_sq = pbg_entropies(g_abs)
        o_s, o_sq = damped_entropies(g_abs)
        assert abs(h_s - o_s) < 1e-9 and abs(h_sq - o_sq) < 1e-9
        p_s, p_sq = damped_entropies(g_abs * cmath.exp(1j * rng.uniform(0, 2 * math.pi)))
        assert abs(p_s - o_s) < 1e-12 and abs(p_sq - o_sq) < 1e-12


def test_work_range_and_formula():
    for g_abs in np.linspace(0, 1, 51):
        h_s, h_q, h_sq = pbg_entropies(g_abs)
        rho = apply_to_subsystem(amplitude_damping_kraus(g_abs).ops, singlet(), SYSTEM)
        w = work_system_scenario(rho)
        assert w == pytest.approx(1 - h_s + (h_s + h_q - h_sq), abs=1e-9)
        assert -1e-12 <= w <= 2 + 1e-12
