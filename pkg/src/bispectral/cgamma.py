"""Complex log-gamma kernel.

Everything in this package that touches a gamma function goes through
``log_gamma`` / ``gamma_log_sum``.  Products of many gamma factors are
assembled in log space and exponentiated once by the caller, so magnitudes
far beyond double-precision range never appear in intermediate arithmetic.

The core is a Lanczos rational approximation (g = 607/128, 15 terms) valid
for Re z >= 0.5, with the reflection formula for the left half plane.  The
resulting relative error of exp(log_gamma(z)) against Gamma(z) is below
1e-13 for |z| <= 50, and the imaginary part is continuous along vertical
lines Re z = const > 0 (no branch jumps on integration contours).
"""

from __future__ import annotations

import math

import numpy as np

__all__ = ["GammaPoleError", "log_gamma", "gamma_log_sum"]


class GammaPoleError(ArithmeticError):
    """Raised when a gamma argument sits on (or within 1e-14 of) a pole."""


# Lanczos coefficients for g = 607/128, 15 terms (Godfrey's set).
_LANCZOS_G = 607.0 / 128.0
_LANCZOS_C = np.array([
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
])
_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)
_LOG_PI = math.log(math.pi)
_POLE_TOL = 1e-14


def _is_pole(z: np.ndarray, tol: float = _POLE_TOL) -> np.ndarray:
    """True where z is within tol of a non-positive integer."""
    near_int = np.round(z.real)
    return (np.abs(z.real - near_int) <= tol) & (np.abs(z.imag) <= tol) & (near_int <= 0)


def _loggamma_right(z: np.ndarray) -> np.ndarray:
    # Lanczos core; valid for Re z >= 0.5.
    s = np.full(z.shape, _LANCZOS_C[0], dtype=complex)
    for k in range(1, len(_LANCZOS_C)):
        s = s + _LANCZOS_C[k] / (z - 1.0 + k)
    t = z + (_LANCZOS_G - 0.5)
    return _HALF_LOG_2PI + (z - 0.5) * np.log(t) - t + np.log(s)


def _log_sin_pi(z: np.ndarray) -> np.ndarray:
    # log sin(pi z) without overflow for large |Im z|:
    # sin(pi z) = e^{-i pi z} (e^{2 i pi z} - 1) / (2i), reduced through log1p.
    flip = z.imag < 0.0
    zf = np.where(flip, np.conj(z), z)
    w = np.exp(2j * np.pi * zf)
    val = -1j * np.pi * zf + 1j * np.pi - np.log(2j) + np.log1p(-w)
    return np.where(flip, np.conj(val), val)


def log_gamma(z):
    """Principal branch of log Gamma(z) for complex z (scalar or array).

    Raises GammaPoleError when any argument is within 1e-14 of a
    non-positive integer.
    """
    arr = np.asarray(z, dtype=complex)
    scalar = arr.ndim == 0
    arr = np.atleast_1d(arr)
    if np.any(_is_pole(arr)):
        bad = arr[_is_pole(arr)][0]
        raise GammaPoleError(f"log_gamma argument {bad} is at a gamma pole")
    refl = arr.real < 0.5
    # evaluate the core only at safe arguments; reflected entries use 1-z
    zc = np.where(refl, 1.0 - arr, arr)
    lg = _loggamma_right(zc)
    out = np.where(refl, _LOG_PI - _log_sin_pi(arr) - lg, lg)
    if scalar:
        return complex(out[0])
    return out


def gamma_log_sum(numerator_args, denominator_args=()) -> complex:
    """Sum of log Gamma over numerator args minus the sum over denominator args.

    A pole in a numerator argument raises GammaPoleError.  A pole in a
    denominator argument means the whole ratio vanishes: the function
    returns -inf (as the real part), so that exp() of the result is 0.
    Callers exponentiate; nothing here can overflow.
    """
    num = np.asarray(list(numerator_args), dtype=complex)
    den = np.asarray(list(denominator_args), dtype=complex)
    if num.size and np.any(_is_pole(num)):
        bad = num[_is_pole(num)][0]
        raise GammaPoleError(f"numerator gamma argument {bad} is at a pole")
    if den.size and np.any(_is_pole(den)):
        return complex(float("-inf"), 0.0)
    total = 0.0 + 0.0j
    if num.size:
        total += complex(np.sum(log_gamma(num)))
    if den.size:
        total -= complex(np.sum(log_gamma(den)))
    return total
