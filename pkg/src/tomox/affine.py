"""Time-scale and frequency-scale tomograms of the affine operators
``mu t + nu D`` and ``mu omega + nu D`` (D the dilation generator), their
inversion, and the (s, tau) <-> (mu, nu) parameter map.

Each tomogram is the sum of two branch terms, one per half-line of the
integration variable x (time or angular frequency):

    M(s) = sum over branches |int f(x)/sqrt|x| exp(+-i (mu x/nu - s log|x|/nu)) dx|^2 / (2 pi |nu|)

(+ for time-scale, - for frequency-scale). Substituting ``x = +-exp(u)``
turns the log kernel into a plane wave in u, so every branch is one uniform
Fourier sum over a log-spaced resampling of the signal.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.interpolate import make_interp_spline

from .errors import DomainError, IllConditionedInversion, InvalidArgument, TruncationWarning
from .signal import FREQUENCY, TIME, Axis, SampledSignal, dft_at, dft_uniform
from .symplectic import FREQ_SCALE, TIME_SCALE, RayParams, TomogramField

# The floor enters each branch amplitude at first order (about
# 2 exp(u0/2) |f(0)|), so it sits far below the 1e-3 mass level.
DEFAULT_LOG_AXIS = Axis(-24.0, 28.0 / 4095, 4096)


@dataclass(frozen=True)
class AffineParams:
    mu: float
    nu: float
    s_axis: Axis

    def __post_init__(self):
        if self.nu == 0:
            raise InvalidArgument("affine tomograms need nu != 0")
        if self.s_axis.log:
            raise InvalidArgument("the s axis is linear (the spectrum of D is the real line)")


def _one_sided(points, values, x):
    """Quintic spline through the samples on one closed half-line, zero beyond."""
    order = np.argsort(points)
    points, values = points[order], values[order]
    if points.size < 6:
        return np.zeros(x.size, dtype=np.complex128)
    spl = make_interp_spline(points, values, k=5)
    out = spl(x)
    out[x > points[-1]] = 0.0
    return out


def _half_line_samples(f: SampledSignal, x: np.ndarray, sign: int) -> np.ndarray:
    """f at sign * x (x > 0) using only samples with sign * t >= 0."""
    t = f.points()
    keep = sign * t >= -1e-12 * f.axis.step
    return _one_sided(sign * t[keep], f.values[keep], x)


class MellinEvaluator:
    """Branch integrals of one signal for one affine family."""

    def __init__(self, f: SampledSignal, family: str, log_axis: Axis | None = None):
        if family not in (TIME_SCALE, FREQ_SCALE):
            raise InvalidArgument(f"not an affine family: {family!r}")
        log_axis = log_axis or DEFAULT_LOG_AXIS
        self.family = family
        self.log_axis = log_axis
        u = log_axis.points()
        e = np.exp(u)
        self.x = e
        if family == TIME_SCALE:
            if f.domain != TIME:
                raise DomainError("time-scale tomogram needs a time-domain signal")
            pos = _half_line_samples(f, e, +1)
            neg = _half_line_samples(f, e, -1)
            self.sign = 1.0
            peak0 = abs(_half_line_samples(f, np.array([0.0]), +1)[0])
        else:
            self.sign = -1.0
            if f.domain == TIME:
                pos = dft_at(f, e)
                neg = dft_at(f, -e)
                peak0 = abs(dft_at(f, [0.0])[0])
            else:
                pos = _half_line_samples(f, e, +1)
                neg = _half_line_samples(f, e, -1)
                peak0 = abs(_half_line_samples(f, np.array([0.0]), +1)[0])
            # unitary spectrum, so that both families are normalized alike
            pos, neg, peak0 = pos / math.sqrt(2 * math.pi), neg / math.sqrt(2 * math.pi), \
                peak0 / math.sqrt(2 * math.pi)
        w = log_axis.weights() * np.exp(0.5 * u)
        self.gpos = pos * w
        self.gneg = neg * w
        # mass of |f|^2 inside the floor |x| < exp(u0), estimated from |f(0)|
        self.truncated_mass = 2.0 * math.exp(log_axis.start) * peak0 ** 2

    def branches(self, mu: float, nu: float, s_axis: Axis):
        """(positive, negative) branch terms of the tomogram row on ``s_axis``."""
        if nu == 0:
            raise InvalidArgument("affine tomograms need nu != 0")
        la = self.log_axis
        out = []
        for g, xs in ((self.gpos, self.x), (self.gneg, -self.x)):
            if not np.any(g):
                out.append(np.zeros(s_axis.count))
                continue
            gg = g * np.exp(1j * self.sign * mu * xs / nu)
            amp = dft_uniform(gg, la.start, la.step, self.sign * s_axis.start / nu,
                              self.sign * s_axis.step / nu, s_axis.count)
            out.append(np.abs(amp) ** 2 / (2.0 * math.pi * abs(nu)))
        return out[0], out[1]

    def row(self, mu: float, nu: float, s_axis: Axis) -> np.ndarray:
        p, n = self.branches(mu, nu, s_axis)
        return p + n


def _affine_field(f, params: AffineParams, family, log_axis):
    ev = MellinEvaluator(f, family, log_axis)
    norm = f.norm2() if f.domain == TIME else f.norm2() / (2 * math.pi)
    if ev.truncated_mass > 1e-3 * max(norm, 1e-300):
        warnings.warn(f"about {ev.truncated_mass:.3g} of the signal energy lies "
                      f"below the log-grid floor", TruncationWarning, stacklevel=3)
    row = ev.row(params.mu, params.nu, params.s_axis)
    return TomogramField(params.s_axis, (RayParams(params.mu, params.nu),), row[None, :], family)


def freq_scale_tomogram(f: SampledSignal, params: AffineParams,
                        log_axis: Axis | None = None) -> TomogramField:
    """Tomogram of ``mu omega + nu D``; f may be given in either domain."""
    return _affine_field(f, params, FREQ_SCALE, log_axis)


def time_scale_tomogram(f: SampledSignal, params: AffineParams,
                        log_axis: Axis | None = None) -> TomogramField:
    """Tomogram of ``mu t + nu D``."""
    return _affine_field(f, params, TIME_SCALE, log_axis)


def affine_family(f: SampledSignal, rays, s_axis: Axis, family: str,
                  log_axis: Axis | None = None) -> TomogramField:
    ev = MellinEvaluator(f, family, log_axis)
    rays = tuple(r if isinstance(r, RayParams) else RayParams(*r) for r in rays)
    vals = np.stack([ev.row(r.mu, r.nu, s_axis) for r in rays])
    return TomogramField(s_axis, rays, vals, family)


def inversion_tomogram(f: SampledSignal, mu_axis: Axis, s_axis: Axis | None = None,
                       log_axis: Axis | None = None) -> TomogramField:
    """Time-scale rows at (mu_j, 1) for :func:`invert_time_scale`."""
    s_axis = s_axis or Axis(-40.0, 0.05, 1601)
    rays = [RayParams(mu, 1.0) for mu in mu_axis.points()]
    return affine_family(f, rays, s_axis, TIME_SCALE, log_axis)


def invert_time_scale(m: TomogramField, t_axis: Axis, dilation: float = 6.0,
                      literal: bool = False) -> SampledSignal:
    """Recover f(t), up to a global phase, from time-scale rows at nu = 1.

    With ``c = int M(s, mu, 1) exp(i k s) ds`` (k = ``dilation``) one has

        int c(mu) exp(-i mu t) dmu = 2 pi e^(k/2) / (e^k - 1) * f*(a t) f(b t),

    a = 1/(e^k - 1), b = e^k a. Reading the result at t/b and dividing by the
    square root of its t = 0 value gives f(t) times the phase of f*(0), with
    a residual error set by f*(a t / b) - f*(0). ``literal=True`` evaluates the
    formula exactly as commonly printed (k = 2, no rescaling or constant),
    which returns f*(a t) f(b t) / |f(0)| up to a constant and is kept for
    comparison only.
    """
    if m.family != TIME_SCALE:
        raise DomainError("expected a time-scale tomogram")
    if any(abs(r.nu - 1.0) > 1e-12 for r in m.rays):
        raise InvalidArgument("inversion needs rows at nu = 1")
    k = 2.0 if literal else float(dilation)
    if k <= 0:
        raise InvalidArgument("dilation must be positive")
    mus = np.array([r.mu for r in m.rays])
    order = np.argsort(mus)
    mus = mus[order]
    d = np.diff(mus)
    if mus.size < 2 or not np.allclose(d, d[0], rtol=1e-9):
        raise InvalidArgument("rows must lie on a uniform mu grid")
    wmu = np.full(mus.size, d[0])
    wmu[0] = wmu[-1] = 0.5 * d[0]
    s = m.x_axis.points()
    char = (m.values[order] * m.x_axis.weights()) @ np.exp(1j * k * s)
    norm = complex(np.sum(wmu * char))
    if abs(norm) < 1e-6:
        raise IllConditionedInversion("normalizing integral is too close to zero")
    t = t_axis.points()
    if literal:
        c, const = t, 1.0
    else:
        ek = math.exp(k)
        b = ek / (ek - 1.0)
        c = t / b
        const = math.sqrt((ek - 1.0) / (2.0 * math.pi * math.exp(0.5 * k)))
    num = np.exp(-1j * np.outer(c, mus)) @ (wmu * char)
    return SampledSignal(t_axis, const * num / np.sqrt(norm))


def affine_param_map(s: float, tau: float):
    """(s, tau) -> (mu, nu) with nu = log s, mu = tau log s / (s - 1)."""
    if not s > 0:
        raise InvalidArgument("scale s must be positive")
    nu = math.log(s)
    if abs(s - 1.0) < 1e-8:
        # log(s)/(s-1) = 1 - (s-1)/2 + O((s-1)^2)
        ratio = 1.0 - 0.5 * (s - 1.0)
    else:
        ratio = nu / (s - 1.0)
    return tau * ratio, nu


def affine_param_inverse(mu: float, nu: float):
    """(mu, nu) -> (s, tau), the inverse of :func:`affine_param_map`."""
    s = math.exp(nu)
    if abs(nu) < 1e-8:
        ratio = 1.0 + 0.5 * nu
    else:
        ratio = (s - 1.0) / nu
    return s, mu * ratio
