"""Bilinear quasidistributions: Wigner-Ville, ambiguity, affine and Husimi-Kano.

Off-grid samples of the signal are obtained by band-limited interpolation
(``interp="sinc"``) with ``"linear"`` as a cheaper fallback. The signal is
taken to vanish outside its sampled span.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import ContractWarning, DomainError, InvalidArgument, TruncationWarning
from .signal import TIME, Axis, SampledSignal, interpolate

WIGNER_VILLE = "wigner_ville"
AMBIGUITY = "ambiguity"
AFFINE = "affine"
HUSIMI = "husimi"
_KINDS = (WIGNER_VILLE, AMBIGUITY, AFFINE, HUSIMI)


@dataclass(frozen=True, eq=False)
class PhasePlaneField:
    """Complex values on ``axis1 x axis2``; ``values[i, j]`` sits at (axis1[i], axis2[j]).

    Axis meaning by kind: wigner_ville (tau, Omega), ambiguity (mu, nu),
    affine (s, tau), husimi (t, omega).
    """

    axis1: Axis
    axis2: Axis
    values: np.ndarray
    kind: str

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise InvalidArgument(f"unknown phase-plane kind {self.kind!r}")
        v = np.array(self.values, dtype=np.complex128)
        if v.shape != (self.axis1.count, self.axis2.count):
            raise InvalidArgument(
                f"values shape {v.shape} does not match axes "
                f"({self.axis1.count}, {self.axis2.count})")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)


def _require_time(f: SampledSignal):
    if f.domain != TIME:
        raise DomainError("expected a time-domain signal")


def _warn_outside(f: SampledSignal, axis: Axis, what: str):
    lo, hi = f.axis.start, f.axis.stop
    p = axis.points()
    if p.min() < lo - 1e-12 or p.max() > hi + 1e-12:
        warnings.warn(f"{what} extends beyond the signal span [{lo}, {hi}]",
                      TruncationWarning, stacklevel=3)


def wigner_ville(f: SampledSignal, tau_axis: Axis, omega_axis: Axis,
                 interp: str = "sinc") -> PhasePlaneField:
    """WV(tau, Omega) = int f(tau + u/2) f*(tau - u/2) exp(-i Omega u) du.

    Evaluated as ``2 int f(tau+v) f*(tau-v) exp(-2i Omega v) dv`` with ``v``
    on the signal's own step, so the lag products are Hermitian in ``v`` and
    the result is real up to rounding.
    """
    _require_time(f)
    _warn_outside(f, tau_axis, "tau axis")
    h = f.axis.step
    nyq = math.pi / (2.0 * h)
    if np.max(np.abs(omega_axis.points())) > nyq:
        warnings.warn(f"|Omega| exceeds the lag Nyquist limit {nyq:.4g}",
                      TruncationWarning, stacklevel=2)
    half = int(math.ceil(f.axis.span / (2.0 * h))) + 1
    k = np.arange(-half, half + 1)
    v = k * h
    tau = tau_axis.points()
    x = (tau[:, None] + v[None, :]).ravel()
    s = interpolate(f, x, interp).reshape(tau.size, v.size)
    lag = s * np.conj(s[:, ::-1])
    w = np.full(v.size, h)
    w[0] = w[-1] = 0.5 * h
    kernel = np.exp(-2j * np.outer(v, omega_axis.points()))
    values = 2.0 * (lag * w) @ kernel
    return PhasePlaneField(tau_axis, omega_axis, values, WIGNER_VILLE)


def _ambiguity_products(f: SampledSignal, nu, interp: str) -> np.ndarray:
    """Rows ``f*(t - nu/2) f(t + nu/2)`` on the signal grid, one per nu."""
    t = f.points()
    nu = np.atleast_1d(np.asarray(nu, dtype=float))
    plus = interpolate(f, (t[None, :] + 0.5 * nu[:, None]).ravel(), interp)
    minus = interpolate(f, (t[None, :] - 0.5 * nu[:, None]).ravel(), interp)
    prod = np.conj(minus) * plus
    return prod.reshape(nu.size, t.size) * f.axis.weights()


def ambiguity(f: SampledSignal, mu_axis: Axis, nu_axis: Axis,
              interp: str = "sinc") -> PhasePlaneField:
    """Q(mu, nu) = int f*(t - nu/2) f(t + nu/2) exp(i mu t) dt."""
    _require_time(f)
    rows = _ambiguity_products(f, nu_axis.points(), interp)
    kernel = np.exp(1j * np.outer(f.points(), mu_axis.points()))
    values = (rows @ kernel).T
    return PhasePlaneField(mu_axis, nu_axis, values, AMBIGUITY)


def ambiguity_at(f: SampledSignal, mu, nu, interp: str = "sinc") -> np.ndarray:
    """Ambiguity function at scattered points ``(mu[i], nu[i])``."""
    _require_time(f)
    mu = np.atleast_1d(np.asarray(mu, dtype=float))
    nu = np.atleast_1d(np.asarray(nu, dtype=float))
    mu, nu = np.broadcast_arrays(mu, nu)
    rows = _ambiguity_products(f, nu.ravel(), interp)
    phase = np.exp(1j * mu.ravel()[:, None] * f.points()[None, :])
    return np.sum(rows * phase, axis=1).reshape(mu.shape)


def cross_affine_overlap(g: SampledSignal, f: SampledSignal, s: float, tau: float,
                         interp: str = "sinc") -> complex:
    """int g*((t - tau/2)/sqrt(s)) f(sqrt(s)(t + tau/2)) dt over the common support."""
    r = math.sqrt(s)
    a = max(r * g.axis.start + 0.5 * tau, f.axis.start / r - 0.5 * tau)
    b = min(r * g.axis.stop + 0.5 * tau, f.axis.stop / r - 0.5 * tau)
    if b <= a:
        return 0j
    # fine enough for both the stretched and the compressed factor
    dt = min(g.axis.step * r, f.axis.step / r)
    t = dt * np.arange(math.ceil(a / dt), math.floor(b / dt) + 1)
    if t.size == 0:
        return 0j
    left = interpolate(g, (t - 0.5 * tau) / r, interp)
    right = interpolate(f, r * (t + 0.5 * tau), interp)
    return complex(dt * np.sum(np.conj(left) * right))


def affine_quasidistribution(f: SampledSignal, s_axis: Axis, tau_axis: Axis,
                             interp: str = "sinc") -> PhasePlaneField:
    """Q(s, tau) = int f*((t - tau/2)/sqrt(s)) f(sqrt(s) (t + tau/2)) dt."""
    _require_time(f)
    scales = s_axis.points()
    if np.any(scales <= 0):
        raise InvalidArgument("affine quasidistribution needs s > 0")
    taus = tau_axis.points()
    values = np.empty((scales.size, taus.size), dtype=np.complex128)
    for i, s in enumerate(scales):
        for j, tau in enumerate(taus):
            values[i, j] = cross_affine_overlap(f, f, float(s), float(tau), interp)
    return PhasePlaneField(s_axis, tau_axis, values, AFFINE)


def coherent_overlap(f: SampledSignal, t, omega) -> np.ndarray:
    """<beta|f> with beta = (t + i omega)/sqrt(2) on the grid t x omega.

    The coherent state is the displaced ground Gaussian
    ``pi^(-1/4) exp(-(x - t)^2/2 + i omega x - i t omega/2)``.
    """
    t = np.atleast_1d(np.asarray(t, dtype=float))
    omega = np.atleast_1d(np.asarray(omega, dtype=float))
    x = f.points()
    g = f.values * f.axis.weights() * math.pi ** -0.25
    window = np.exp(-0.5 * (x[None, :] - t[:, None]) ** 2)
    kernel = np.exp(-1j * np.outer(x, omega))
    out = (window * g) @ kernel
    return out * np.exp(0.5j * np.outer(t, omega))


def husimi_kano(f: SampledSignal, t_axis: Axis, omega_axis: Axis) -> PhasePlaneField:
    """Q(t, omega) = |<beta|f>|^2, beta = (t + i omega)/sqrt(2)."""
    _require_time(f)
    n2 = f.norm2()
    if abs(n2 - 1.0) > 1e-6:
        warnings.warn(f"husimi_kano expects a normalized signal (norm^2 = {n2:.6g})",
                      ContractWarning, stacklevel=2)
    ov = coherent_overlap(f, t_axis.points(), omega_axis.points())
    return PhasePlaneField(t_axis, omega_axis, np.abs(ov) ** 2, HUSIMI)
