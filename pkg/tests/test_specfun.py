import math

import mpmath
import numpy as np
import pytest

from nmwork.errors import InvalidArgumentError, OutOfRangeError
from nmwork.specfun import ErfConfig, erf_complex, erfcx_complex

mpmath.mp.dps = 40


def erf_series_60(x):
    """Independent oracle: 60-term Maclaurin sum in 40-digit arithmetic."""
    x = mpmath.mpf(x)
    total = mpmath.mpf(0)
    for n in range(60):
        total += (-1) ** n * x ** (2 * n + 1) / (mpmath.factorial(n) * (2 * n + 1))
    return 2 / mpmath.sqrt(mpmath.pi) * total


def rel_err(a, b):
    return abs(a - b) / max(abs(b), 1e-300)


def test_erf_anchors():
    assert erf_complex(0) == 0
    assert float(erf_series_60(1)) == 0.8427007929497149
    assert abs(erf_complex(1.0) - 0.8427007929497149) < 2e-16


def test_scalar_in_scalar_out_array_in_array_out():
    assert isinstance(erf_complex(0.5), complex)
    out = erf_complex(np.array([[0.5, 1j]]))
    assert out.shape == (1, 2)


def test_real_axis_against_stdlib():
    for x in np.linspace(0.0, 6.0, 241):
        ref = math.erf(x)
        got = erf_complex(x)
        assert got.imag == 0.0
        if x > 0:
            assert rel_err(got.real, ref) < 1e-12


def test_against_mpmath_in_the_plane():
    rng = np.random.default_rng(6)
    r = rng.uniform(0, 12, 400)
    phi = rng.uniform(-math.pi, math.pi, 400)
    z = r * np.exp(1j * phi)
    got = erf_complex(z)
    for zi, gi in zip(z, got):
        ref = complex(mpmath.erf(mpmath.mpc(zi.real, zi.imag)))
        if abs(ref) > 1e300:
            continue
        assert rel_err(gi, ref) < 1e-12, zi


def test_symmetries_bit_exact():
    rng = np.random.default_rng(7)
    z = rng.uniform(-8, 8, 100) + 1j * rng.uniform(-8, 8, 100)
    z = z[np.abs(z) <= 8]
    f = erf_complex(z)
    assert np.array_equal(erf_complex(-z), -f)
    assert np.array_equal(erf_complex(z.conj()), f.conj())


def test_derivative_matches_gaussian():
    rng = np.random.default_rng(8)
    z = rng.uniform(-3, 3, 20) + 1j * rng.uniform(-3, 3, 20)
    h = 1e-5
    fd = (erf_complex(z + h) - erf_complex(z - h)) / (2 * h)
    exact = 2 / math.sqrt(math.pi) * np.exp(-z * z)
    assert np.max(np.abs(fd - exact) / np.abs(exact)) < 1e-6


def test_result_does_not_depend_on_batch_composition():
    z = np.array([0.3 + 0.2j, 5.0 + 1.0j, 2.0 + 7.0j, 9.0 - 3.0j])
    batch = erf_complex(z)
    single = np.array([erf_complex(complex(v)) for v in z])
    assert np.array_equal(batch, single)


def test_erfcx_against_mpmath():
    rng = np.random.default_rng(9)
    z = rng.uniform(0, 30, 300) + 1j * rng.uniform(-30, 30, 300)
    got = erfcx_complex(z)
    for zi, gi in zip(z, got):
        w = mpmath.mpc(zi.real, zi.imag)
        ref = complex(mpmath.exp(w * w) * mpmath.erfc(w))
        assert rel_err(gi, ref) < 1e-12, zi


def test_erfcx_large_real_argument_does_not_overflow():
    # erfcx(x) ~ 1/(x sqrt(pi)) for large x
    x = 45.0
    assert rel_err(erfcx_complex(x).real, float(mpmath.exp(mpmath.mpf(x) ** 2) * mpmath.erfc(x))) < 1e-13


def test_errors():
    with pytest.raises(OutOfRangeError):
        erf_complex(60.0)
    with pytest.raises(InvalidArgumentError):
        erf_complex(np.array([1.0, complex("nan")]))
    with pytest.raises(InvalidArgumentError):
        erfcx_complex(-1.0)
    with pytest.raises(InvalidArgumentError):
        ErfConfig(target_relative_error=0.1)
    with pytest.raises(OutOfRangeError):
        erf_complex(1.0 + 40.0j)  # |erf| ~ e^1599 overflows a double


def test_config_changes_algorithm_split_but_not_result():
    z = np.array([3.0 + 0.5j, 3.5 + 0.1j])
    wide = erf_complex(z, ErfConfig(series_cutoff_radius=6.0))
    narrow = erf_complex(z, ErfConfig(series_cutoff_radius=2.0))
    assert np.max(np.abs(wide - narrow) / np.abs(wide)) < 1e-12
