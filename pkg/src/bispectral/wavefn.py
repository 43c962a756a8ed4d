"""Nested Mellin-Barnes evaluation of the hyperbolic Sutherland wave function.

The wave function Phi is an iterated contour integral over vertical lines in
the complex plane: level m carries m integration variables, the integrand is
a ratio of gamma-function products (a kernel coupling adjacent levels over an
inverse-gamma measure within a level) times an exponential in the
coordinates, and the recursion bottoms out at a single exponential e^{l x}.

Evaluation uses truncated trapezoid quadrature on each vertical line.  The
gamma factors decay super-polynomially along the contours, so the trapezoid
rule is spectrally accurate; the truncation width is expanded adaptively
until the integrand magnitude at the boundary falls below ``tail_tol`` times
the observed maximum.  Derivatives in the coordinates are exact: they only
multiply the integrand by linear forms in the integration variables.

Supported sizes are n = 1, 2, 3 (the nested grid grows like
grid^(n(n-1)/2)).  No 2*pi normalisation is applied anywhere; every check
built on top of this module is a ratio or eigenvalue test.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .cgamma import gamma_log_sum, log_gamma

__all__ = [
    "SpectralPoint",
    "PositionPoint",
    "ContourSpec",
    "QuadratureSpec",
    "InfeasibleContourError",
    "TailNotConvergedError",
    "CoincidentCoordinatesError",
    "ConvergenceWindowError",
    "kernel_K",
    "measure_mu",
    "default_contour",
    "validate_contour",
    "eval_phi",
    "eval_phi_many",
    "eval_phi_derivative",
    "eval_psi",
    "sinh_prefactor",
]


class InfeasibleContourError(ValueError):
    """No vertical line separates the ascending and descending pole lattices."""


class TailNotConvergedError(ArithmeticError):
    """Truncation boundary magnitude stayed above tail_tol * max(integrand)."""


class CoincidentCoordinatesError(ValueError):
    """Two coordinates coincide (the sinh prefactor vanishes there)."""


class ConvergenceWindowError(ValueError):
    """A coordinate separation exceeds the window the quadrature can resolve."""


_DISTINCT_TOL = 1e-12


@dataclass(frozen=True)
class SpectralPoint:
    """Tuple of n spectral parameters, pairwise distinct.

    Nominally purely imaginary; a small real part (or the +2 shifts produced
    by the dual difference operators) is admitted as long as a separating
    contour exists, which ``validate_contour`` checks.
    """

    values: tuple[complex, ...]

    def __post_init__(self):
        vals = tuple(complex(v) for v in self.values)
        object.__setattr__(self, "values", vals)
        for i in range(len(vals)):
            for j in range(i + 1, len(vals)):
                if abs(vals[i] - vals[j]) <= _DISTINCT_TOL:
                    raise ValueError(f"spectral parameters {i} and {j} coincide")

    @property
    def n(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class PositionPoint:
    """Tuple of n real coordinates, pairwise distinct, inside the window.

    max_separation is the convergence window: the exponential factor grows
    like e^{|t| * max|x_i - x_j|} against the gamma decay, so separations are
    capped (default 1.0) instead of silently returning garbage.
    """

    values: tuple[float, ...]
    max_separation: float = 1.0

    def __post_init__(self):
        vals = tuple(float(v) for v in self.values)
        object.__setattr__(self, "values", vals)
        for i in range(len(vals)):
            for j in range(i + 1, len(vals)):
                sep = abs(vals[i] - vals[j])
                if sep <= _DISTINCT_TOL:
                    raise CoincidentCoordinatesError(
                        f"coordinates {i} and {j} coincide at {vals[i]}")
                if sep > self.max_separation:
                    raise ConvergenceWindowError(
                        f"|x_{i} - x_{j}| = {sep} exceeds the convergence "
                        f"window {self.max_separation}")

    @property
    def n(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class ContourSpec:
    """Vertical-line real parts per integration level.

    level_re[i] is the common real part of the i+1 variables at level i+1,
    for levels 1..n-1.  shift_pattern records the +2 shifts applied to the
    top-level spectral parameters (0 or 2 per variable); it is what
    ``default_contour`` used to pick the real parts.
    """

    level_re: tuple[float, ...]
    shift_pattern: tuple[int, ...] = ()


@dataclass(frozen=True)
class QuadratureSpec:
    """Trapezoid discretisation of one vertical line.

    step is the node spacing along the imaginary axis (must be <= 0.25);
    half_width is the truncation half-width, or None to expand adaptively
    until the boundary magnitude is below tail_tol times the running
    maximum (hard cap max_half_width).
    """

    step: float = 0.1
    half_width: float | None = None
    tail_tol: float = 1e-13
    max_half_width: float = 120.0

    def __post_init__(self):
        if not (0.0 < self.step <= 0.25):
            raise ValueError(f"step must be in (0, 0.25], got {self.step}")
        if not (0.0 < self.tail_tol < 1e-3):
            raise ValueError(f"tail_tol must be in (0, 1e-3), got {self.tail_tol}")
        if self.half_width is not None and self.half_width <= 0:
            raise ValueError("half_width must be positive or None")


def as_spectral(lam) -> SpectralPoint:
    if isinstance(lam, SpectralPoint):
        return lam
    return SpectralPoint(values=tuple(complex(v) for v in lam))


def as_position(x, max_separation: float = 1.0) -> PositionPoint:
    if isinstance(x, PositionPoint):
        return x
    return PositionPoint(values=tuple(float(v) for v in x),
                         max_separation=max_separation)


# ---------------------------------------------------------------------------
# kernel, measure, contours


def kernel_K(lam, nu, g: float) -> complex:
    """Log of the inter-level kernel: prod_{j,k} G((nu_j-lam_k+g)/2) G((lam_k-nu_j+g)/2).

    lam has n entries, nu has n-1; the n=1 case (empty nu) gives log 1 = 0.
    Coincident entries are fine here (only the measure vanishes there).
    """
    lam = tuple(complex(v) for v in lam)
    nu = tuple(complex(v) for v in nu)
    args = []
    for nj in nu:
        for lk in lam:
            args.append((nj - lk + g) / 2.0)
            args.append((lk - nj + g) / 2.0)
    return gamma_log_sum(args, ())


def measure_mu(nu, g: float) -> complex:
    """Log of the within-level measure: prod_{r != s} 1/[G((nu_r-nu_s)/2) G((nu_r-nu_s)/2 + g)].

    Coincident nu entries make an inverse gamma of a pole, i.e. a zero
    factor: the returned log has real part -inf and exp() of it is 0.
    """
    nu = tuple(complex(v) for v in nu)
    den = []
    for r in range(len(nu)):
        for s in range(len(nu)):
            if r != s:
                d = (nu[r] - nu[s]) / 2.0
                den.append(d)
                den.append(d + g)
    return gamma_log_sum((), den)


def _level_margin(c: float, upper_re: Sequence[float], g: float) -> float:
    """Distance from the line Re = c to the nearest pole lattice of the level above.

    The lattices attached to an upper variable with real part d are
    d + g + 2k (ascending) and d - g - 2k (descending), k >= 0; the line
    separates them iff |c - d| < g for every d.
    """
    return min(g - abs(c - d) for d in upper_re)


def validate_contour(contour: ContourSpec, lam, g: float) -> float:
    """Check pole separation for every adjacent pair of levels.

    Returns the smallest margin (distance from a contour line to the nearest
    pole real part); raises InfeasibleContourError if any margin is <= 0.
    """
    lam = as_spectral(lam)
    n = lam.n
    if len(contour.level_re) != n - 1:
        raise ValueError(f"contour has {len(contour.level_re)} levels, need {n - 1}")
    if n == 1:
        return g
    margins = []
    top_re = [v.real for v in lam.values]
    for i in range(n - 2, -1, -1):
        upper = top_re if i == n - 2 else [contour.level_re[i + 1]]
        margins.append(_level_margin(contour.level_re[i], upper, g))
    margin = min(margins)
    if margin <= 0.0:
        raise InfeasibleContourError(
            f"contour {contour.level_re} does not separate the pole lattices "
            f"for Re(lambda) = {top_re}, g = {g} (margin {margin:.3g})")
    return margin


def default_contour(n: int, g: float, shift_pattern: Sequence[int] | None = None) -> ContourSpec:
    """Pole-separating contour for a base point with Re(lambda) ~ 0.

    Unshifted evaluation integrates along the imaginary axes.  When any
    top-level variable carries a +2 shift, all levels move to Re = 1, which
    lies in the admissible window (-g+2, g) exactly when g > 1.
    """
    if g <= 0:
        raise ValueError("coupling g must be positive")
    shifts = tuple(int(s) for s in (shift_pattern or (0,) * n))
    if len(shifts) != n:
        raise ValueError(f"shift_pattern must have length n={n}")
    if any(s not in (0, 2) for s in shifts):
        raise ValueError("shifts must be 0 or 2")
    if not any(shifts):
        return ContourSpec(level_re=(0.0,) * (n - 1), shift_pattern=shifts)
    if g <= 1.0:
        raise InfeasibleContourError(
            f"shifted pole lattices admit no separating line for g = {g}: "
            f"the window (-g+2, g) = ({2 - g:.3g}, {g:.3g}) is empty")
    # validate Re = 1 against both lattices (shifted 2 +- g, unshifted +- g)
    margin = min(g - abs(1.0 - s) for s in set(shifts))
    if margin < min(g - 1.0, 1.0) - 1e-12 or margin <= 0:
        raise InfeasibleContourError(
            f"Re = 1 lies within {margin:.3g} of a pole lattice for g = {g}")
    return ContourSpec(level_re=(1.0,) * (n - 1), shift_pattern=shifts)


# ---------------------------------------------------------------------------
# quadrature engine


def _grid(center: float, half_width: float, step: float) -> tuple[np.ndarray, np.ndarray]:
    m = int(math.ceil(half_width / step))
    t = center + step * np.arange(-m, m + 1)
    w = np.full(t.shape, step)
    w[0] = w[-1] = 0.5 * step
    return t, w


def _tail_ok(logmag: np.ndarray, log_tol: float) -> bool:
    peak = float(np.max(logmag))
    if not np.isfinite(peak):
        return False
    edge = max(float(logmag[0]), float(logmag[-1]))
    return edge <= peak + log_tol


def _initial_half_width(im_spread: float, rate: float, tail_tol: float) -> float:
    return im_spread + (-math.log(tail_tol) + 5.0) / rate


def _quantities_n1(lam, x, derivs):
    l1, x1 = lam[0], x[0]
    base = np.exp(l1 * x1)
    return [l1 ** d[0] * base for d in derivs]


def _quantities_n2(lam, x, g, contour, quad, derivs):
    l1, l2 = lam
    x1, x2 = x
    c = contour.level_re[0]
    center = 0.5 * (l1.imag + l2.imag)
    lam_sum = l1 + l2
    log_tol = math.log(quad.tail_tol)
    rate = max(math.pi - abs(x1 - x2), 0.5)
    im_spread = max(abs(l1.imag - center), abs(l2.imag - center))
    T = quad.half_width or _initial_half_width(im_spread, rate, quad.tail_tol)
    fixed = quad.half_width is not None

    while True:
        t, w = _grid(center, T, quad.step)
        gam = c + 1j * t
        lg = (log_gamma((gam - l1 + g) / 2) + log_gamma((l1 - gam + g) / 2)
              + log_gamma((gam - l2 + g) / 2) + log_gamma((l2 - gam + g) / 2))
        expo = (lam_sum - gam) * x2 + gam * x1
        base_logmag = lg.real + expo.real
        with np.errstate(divide="ignore"):
            ok = all(
                _tail_ok(base_logmag
                         + d1 * np.log(np.abs(gam) + 1e-300)
                         + d2 * np.log(np.abs(lam_sum - gam) + 1e-300), log_tol)
                for (d1, d2) in derivs)
        if ok:
            integrand = np.exp(lg + expo)
            return [complex(np.sum(w * integrand * gam ** d1 * (lam_sum - gam) ** d2))
                    for (d1, d2) in derivs]
        if fixed or T >= quad.max_half_width:
            raise TailNotConvergedError(
                f"n=2 integrand tail above tail_tol at half-width {T:.1f}")
        T = min(1.5 * T, quad.max_half_width)


def _quantities_n3(lam, x, g, contour, quad, derivs):
    l1, l2, l3 = lam
    x1, x2, x3 = x
    c1, c2 = contour.level_re
    center = (l1.imag + l2.imag + l3.imag) / 3.0
    lam_sum = l1 + l2 + l3
    log_tol = math.log(quad.tail_tol)
    im_spread = max(abs(v.imag - center) for v in lam)
    rate_in = max(math.pi - abs(x1 - x2), 0.5)
    rate_out = 1.2  # net outer decay: kernel beats the inverse-gamma measure growth
    T_out = quad.half_width or _initial_half_width(im_spread, rate_out, quad.tail_tol)
    fixed = quad.half_width is not None
    T_in = T_out + _initial_half_width(0.0, rate_in, quad.tail_tol)
    m_max = max(d[0] + d[1] for d in derivs)

    for _attempt in range(12):
        t_out, w_out = _grid(center, T_out, quad.step)
        nu = c2 + 1j * t_out
        M = nu.size

        # inner contraction: phi at level 2 on the full (nu_p, nu_q) grid
        while True:
            t_in, w_in = _grid(center, T_in, quad.step)
            gam = c1 + 1j * t_in
            lgA = (log_gamma((gam[:, None] - nu[None, :] + g) / 2)
                   + log_gamma((nu[None, :] - gam[:, None] + g) / 2))
            A = np.exp(lgA)
            base_in = w_in * np.exp(gam * (x1 - x2))
            with np.errstate(divide="ignore"):
                profile = (np.log(np.abs(base_in))
                           + m_max * np.log(np.abs(gam) + 1e-300)
                           + 2.0 * np.max(lgA.real, axis=1))
            if _tail_ok(profile, log_tol):
                break
            if T_in >= quad.max_half_width + T_out:
                raise TailNotConvergedError(
                    f"inner integrand tail above tail_tol at half-width {T_in:.1f}")
            T_in = min(1.5 * T_in, quad.max_half_width + T_out)
        C = {m: (A * (base_in * gam ** m)[:, None]).T @ A for m in range(m_max + 1)}

        # outer pieces, all M x M elementwise
        log_b = np.zeros(M, dtype=complex)
        for lk in lam:
            log_b += (log_gamma((nu - lk + g) / 2) + log_gamma((lk - nu + g) / 2))
        offsets = 1j * quad.step * np.arange(-(M - 1), M)
        log_mu_off = np.full(offsets.shape, -np.inf, dtype=complex)
        nz = np.abs(offsets) > 0
        d_half = offsets[nz] / 2.0
        log_mu_off[nz] = -(log_gamma(d_half) + log_gamma(-d_half)
                           + log_gamma(d_half + g) + log_gamma(-d_half + g))
        idx = np.arange(M)
        log_mu = log_mu_off[idx[:, None] - idx[None, :] + M - 1]
        S = nu[:, None] + nu[None, :]
        log_w2 = (log_mu + log_b[:, None] + log_b[None, :]
                  + lam_sum * x3 + S * (x2 - x3)
                  + np.log(w_out)[:, None] + np.log(w_out)[None, :])
        W2 = np.exp(log_w2)

        values = []
        ok = True
        for (d1, d2, d3) in derivs:
            phi2part = np.zeros((M, M), dtype=complex)
            for j_pow in range(d2 + 1):
                phi2part += (math.comb(d2, j_pow) * (-1.0) ** (d2 - j_pow)
                             * S ** j_pow * C[d1 + d2 - j_pow])
            O = W2 * (lam_sum - S) ** d3 * phi2part
            mag = np.abs(O)
            peak = float(mag.max())
            edge = float(max(mag[0, :].max(), mag[-1, :].max(),
                             mag[:, 0].max(), mag[:, -1].max()))
            if peak <= 0.0 or edge > peak * quad.tail_tol:
                ok = False
                break
            values.append(complex(O.sum()))
        if ok:
            return values
        if fixed or T_out >= quad.max_half_width:
            raise TailNotConvergedError(
                f"n=3 outer integrand tail above tail_tol at half-width {T_out:.1f}")
        grow = min(1.4 * T_out, quad.max_half_width) - T_out
        T_out += grow
        T_in += grow
    raise TailNotConvergedError("n=3 adaptive expansion did not converge")


def eval_phi_many(lam, x, g: float, derivs, contour: ContourSpec | None = None,
                  quad: QuadratureSpec | None = None) -> list[complex]:
    """Evaluate several coordinate derivatives of Phi in one quadrature pass.

    derivs is a list of per-coordinate derivative-order tuples (total order
    <= 2 each); the value of Phi itself is the all-zero tuple.  All
    quantities share the same grid, so ratios between them carry no
    discretisation noise beyond the integrand factors themselves.
    """
    lam = as_spectral(lam)
    x = as_position(x)
    n = lam.n
    if x.n != n:
        raise ValueError(f"lambda has {n} entries but x has {x.n}")
    if n > 3:
        raise ValueError("wave-function evaluation supports n <= 3")
    derivs = [tuple(int(o) for o in d) for d in derivs]
    for d in derivs:
        if len(d) != n or any(o < 0 for o in d) or sum(d) > 2:
            raise ValueError(f"bad derivative multi-index {d}")
    quad = quad or QuadratureSpec()
    contour = contour or default_contour(n, g)
    validate_contour(contour, lam, g)
    if n == 1:
        return _quantities_n1(lam.values, x.values, derivs)
    if n == 2:
        return _quantities_n2(lam.values, x.values, g, contour, quad, derivs)
    return _quantities_n3(lam.values, x.values, g, contour, quad, derivs)


def eval_phi(lam, x, g: float, contour: ContourSpec | None = None,
             quad: QuadratureSpec | None = None) -> complex:
    """The Mellin-Barnes wave function Phi (no prefactor, no normalisation)."""
    n = as_spectral(lam).n
    return eval_phi_many(lam, x, g, [(0,) * n], contour, quad)[0]


def eval_phi_derivative(lam, x, g: float, multi_index, contour: ContourSpec | None = None,
                        quad: QuadratureSpec | None = None) -> complex:
    """Exact derivative of Phi under the integral sign; total order <= 2."""
    return eval_phi_many(lam, x, g, [tuple(multi_index)], contour, quad)[0]


def sinh_prefactor(x, g: float) -> float:
    """prod_{j<k} sinh^g |x_j - x_k| (real power; g need not be an integer)."""
    x = as_position(x)
    out = 1.0
    for j in range(x.n):
        for k in range(j + 1, x.n):
            out *= math.sinh(abs(x.values[j] - x.values[k])) ** g
    return out


def eval_psi(lam, x, g: float, contour: ContourSpec | None = None,
             quad: QuadratureSpec | None = None) -> complex:
    """Full wave function Psi = prefactor * Phi."""
    return sinh_prefactor(x, g) * eval_phi(lam, x, g, contour, quad)
