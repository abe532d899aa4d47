"""Time-frequency (symplectic) tomograms M(X; mu, nu), their inversion and the
Radon relation to the Wigner-Ville distribution.

A row for the ray (mu, nu) is the squared modulus of the chirped Fourier
integral

    M(X) = |int exp(i mu t^2 / 2nu - i t X / nu) f(t) dt|^2 / (2 pi |nu|),

evaluated as chirp-multiply -> chirp-z transform -> modulus. For |nu| < |mu|
the same quantity is computed from the spectrum with the dual chirp
``exp(-i nu w^2 / 2mu + i w X / mu)`` so that the chirp rate never exceeds
one; the two expressions are identical integrals.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.ndimage import map_coordinates

from .errors import DomainError, IllConditionedInversion, InvalidArgument, TruncationWarning
from .quasidist import WIGNER_VILLE, PhasePlaneField
from .signal import TIME, Axis, SampledSignal, dft_uniform, interpolate, spectral_axis

SYMPLECTIC = "symplectic"
TIME_SCALE = "time_scale"
FREQ_SCALE = "freq_scale"
PHOTON_NUMBER = "photon_number"
FAMILIES = (SYMPLECTIC, TIME_SCALE, FREQ_SCALE, PHOTON_NUMBER)

# relative |nu| below which the delta-limit branch is used
NU_EPS = 1e-6


@dataclass(frozen=True)
class RayParams:
    mu: float
    nu: float

    def __post_init__(self):
        object.__setattr__(self, "mu", float(self.mu))
        object.__setattr__(self, "nu", float(self.nu))
        if self.mu == 0.0 and self.nu == 0.0:
            raise InvalidArgument("ray (0, 0) is not allowed")

    @classmethod
    def from_angle(cls, theta: float) -> "RayParams":
        return cls(math.cos(theta), math.sin(theta))

    def scaled(self, factor: float) -> "RayParams":
        return RayParams(self.mu * factor, self.nu * factor)


@dataclass(frozen=True, eq=False)
class TomogramField:
    """Nonnegative rows ``values[r, i]`` = M(x_axis[i]; rays[r])."""

    x_axis: Axis
    rays: tuple
    values: np.ndarray
    family: str = SYMPLECTIC

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise InvalidArgument(f"unknown tomogram family {self.family!r}")
        rays = tuple(self.rays)
        v = np.array(self.values, dtype=np.float64)
        if v.ndim == 1:
            v = v[None, :]
        if v.shape != (len(rays), self.x_axis.count):
            raise InvalidArgument(
                f"values shape {v.shape} does not match "
                f"{len(rays)} rays x {self.x_axis.count} points")
        if v.size and v.min() < -1e-12 * max(1.0, float(np.abs(v).max())):
            raise InvalidArgument("tomogram values must be nonnegative")
        v = np.clip(v, 0.0, None)
        v.setflags(write=False)
        object.__setattr__(self, "rays", rays)
        object.__setattr__(self, "values", v)

    def row(self, index: int = 0) -> np.ndarray:
        return self.values[index]

    def masses(self) -> np.ndarray:
        """Trapezoid integral of each row over X."""
        return self.values @ self.x_axis.weights()


def _uniform(x: np.ndarray):
    """(x0, dx) if x is a uniform grid, else None."""
    if x.size < 2:
        return (float(x[0]), 1.0) if x.size else None
    d = np.diff(x)
    if np.allclose(d, d[0], rtol=1e-10, atol=1e-13 * max(1.0, np.abs(x).max())):
        return float(x[0]), float((x[-1] - x[0]) / (x.size - 1))
    return None


class SymplecticEvaluator:
    """Evaluates symplectic tomogram rows of one signal.

    The spectrum needed by the dual branch is computed once and reused for
    every ray, which matters for the dense ray sets used by inversion.
    """

    def __init__(self, f: SampledSignal, oversample: int = 8):
        if f.domain != TIME:
            raise DomainError("symplectic tomogram expects a time-domain signal")
        self.f = f
        self.t = f.points()
        self.g = f.values * f.axis.weights()
        self.oversample = oversample
        self._spec = None

    def _spectrum(self):
        if self._spec is None:
            ax = spectral_axis(self.f.axis, self.oversample)
            F = dft_uniform(self.g, self.f.axis.start, self.f.axis.step,
                            ax.start, ax.step, ax.count)
            self._spec = (ax, F * ax.weights())
        return self._spec

    @staticmethod
    def _sum(g, t0, h, omega):
        u = _uniform(omega)
        if u is None:
            t = t0 + h * np.arange(g.size)
            return np.exp(-1j * np.outer(omega, t)) @ g
        return dft_uniform(g, t0, h, u[0], u[1], omega.size)

    def values(self, mu: float, nu: float, x) -> np.ndarray:
        x = np.atleast_1d(np.asarray(x, dtype=float))
        r = math.hypot(mu, nu)
        if r == 0.0:
            raise InvalidArgument("ray (0, 0) is not allowed")
        if abs(nu) <= NU_EPS * r:
            return np.abs(interpolate(self.f, x / mu)) ** 2 / abs(mu)
        if abs(nu) >= abs(mu):
            g = self.g * np.exp(0.5j * mu * self.t ** 2 / nu)
            a = self._sum(g, self.f.axis.start, self.f.axis.step, x / nu)
            return np.abs(a) ** 2 / (2.0 * math.pi * abs(nu))
        ax, Fw = self._spectrum()
        w = ax.points()
        g = Fw * np.exp(-0.5j * nu * w ** 2 / mu)
        b = self._sum(g, ax.start, ax.step, -x / mu)
        return np.abs(b) ** 2 / (4.0 * math.pi ** 2 * abs(mu))


def symplectic_tomogram(f: SampledSignal, ray: RayParams, x_axis: Axis) -> TomogramField:
    vals = SymplecticEvaluator(f).values(ray.mu, ray.nu, x_axis.points())
    return TomogramField(x_axis, (ray,), vals[None, :], SYMPLECTIC)


def tomogram_family(f: SampledSignal, thetas, x_axis: Axis) -> TomogramField:
    """Rows at the unit rays (cos theta, sin theta)."""
    thetas = list(np.atleast_1d(np.asarray(thetas, dtype=float)))
    if not thetas:
        raise InvalidArgument("need at least one angle")
    ev = SymplecticEvaluator(f)
    rays = tuple(RayParams.from_angle(th) for th in thetas)
    x = x_axis.points()
    vals = np.stack([ev.values(r.mu, r.nu, x) for r in rays])
    return TomogramField(x_axis, rays, vals, SYMPLECTIC)


def projector_value(f: SampledSignal, ray: RayParams, x) -> np.ndarray:
    """|<X|f>|^2 with the explicit eigenfunctions of mu t + nu omega.

    ``<t|X> = exp(i (X t - mu t^2/2) / nu) / sqrt(2 pi |nu|)``; needs nu != 0.
    """
    if ray.nu == 0.0:
        raise InvalidArgument("explicit eigenfunctions need nu != 0")
    x = np.atleast_1d(np.asarray(x, dtype=float))
    t = f.points()
    eig = np.exp(1j * (np.outer(x, t) - 0.5 * ray.mu * t ** 2) / ray.nu)
    eig /= math.sqrt(2.0 * math.pi * abs(ray.nu))
    amp = np.conj(eig) @ (f.values * f.axis.weights())
    return np.abs(amp) ** 2


def tomogram_from_wigner(wv: PhasePlaneField, ray: RayParams, x_axis: Axis) -> TomogramField:
    """Radon transform of WV along the lines X = mu tau + nu omega, over 2 pi.

    The integral runs over the sample lines of whichever axis is better
    aligned with the ray; the other coordinate is reached with quintic
    spline interpolation of WV.
    """
    if wv.kind != WIGNER_VILLE:
        raise DomainError(f"expected a wigner_ville field, got {wv.kind!r}")
    data = np.ascontiguousarray(wv.values.real)
    tau_ax, om_ax = wv.axis1, wv.axis2
    x = x_axis.points()
    mu, nu = ray.mu, ray.nu
    if abs(mu) >= abs(nu):
        om = om_ax.points()
        tau = (x[:, None] - nu * om[None, :]) / mu
        ci = (tau - tau_ax.start) / tau_ax.step
        cj = np.broadcast_to(np.arange(om.size, dtype=float), ci.shape)
        w, scale = om_ax.weights(), abs(mu)
    else:
        tau = tau_ax.points()
        om = (x[:, None] - mu * tau[None, :]) / nu
        cj = (om - om_ax.start) / om_ax.step
        ci = np.broadcast_to(np.arange(tau.size, dtype=float), cj.shape)
        w, scale = tau_ax.weights(), abs(nu)
    samples = map_coordinates(data, [ci.ravel(), cj.ravel()], order=5,
                              mode="grid-constant", cval=0.0).reshape(ci.shape)
    row = samples @ w / (2.0 * math.pi * scale)
    return TomogramField(x_axis, (ray,), np.clip(row, 0.0, None)[None, :], SYMPLECTIC)


def quasidist_from_tomogram(m: TomogramField, index: int = 0, k: float = 1.0,
                            expected_mass: float | None = 1.0) -> complex:
    """int M(X) exp(i k X) dX for one row; k = 1 gives <f|exp(iB)|f>."""
    row = m.values[index]
    w = m.x_axis.weights()
    if expected_mass is not None:
        mass = float(row @ w)
        if mass < 0.999 * expected_mass:
            warnings.warn(f"row mass {mass:.6f} suggests truncated X support",
                          TruncationWarning, stacklevel=2)
    return complex(np.sum(w * row * np.exp(1j * k * m.x_axis.points())))


def inversion_tomogram(f: SampledSignal, t_axis: Axis, mu_axis: Axis,
                       x_axis: Axis | None = None) -> TomogramField:
    """Tomogram data for :func:`invert_symplectic`.

    Row ``i * mu_axis.count + j`` belongs to the ray (mu_j, t_i). It is
    stored at the unit ray of the same direction; by homogeneity
    ``M(X; mu, t) = M(X / r; unit) / r`` with ``r = |(mu, t)|``, so one X grid
    serves rays of every length. The zero ray is stored as (1, 0).
    """
    if x_axis is None:
        x_axis = Axis(-12.0, 0.1, 241)
    ev = SymplecticEvaluator(f)
    x = x_axis.points()
    # M(X; -ray) = M(-X; ray): on a symmetric X grid that is the reversed row
    mirror = np.allclose(x, -x[::-1], rtol=0.0, atol=1e-12 * x_axis.step)
    done = {}
    rays, rows = [], []
    for t in t_axis.points():
        for mu in mu_axis.points():
            r = math.hypot(mu, t)
            ray = RayParams(mu / r, t / r) if r > 0 else RayParams(1.0, 0.0)
            rays.append(ray)
            key = (round(ray.mu, 12), round(ray.nu, 12))
            twin = done.get((round(-ray.mu, 12), round(-ray.nu, 12))) if mirror else None
            row = twin[::-1] if twin is not None else ev.values(ray.mu, ray.nu, x)
            done[key] = row
            rows.append(row)
    return TomogramField(x_axis, tuple(rays), np.stack(rows), SYMPLECTIC)


def invert_symplectic(m: TomogramField, t_axis: Axis, mu_axis: Axis) -> SampledSignal:
    """Recover f(t) up to a global phase from tomogram rows at nu = t.

    Computes ``f(t) f*(0) = (1/2pi) int M(X, mu, t) exp(i (X - mu t/2)) dX dmu``
    and divides by ``sqrt(|f(0)|^2)`` read off at t = 0. ``m`` must be laid
    out as produced by :func:`inversion_tomogram`.
    """
    ts, mus = t_axis.points(), mu_axis.points()
    if len(m.rays) != ts.size * mus.size:
        raise InvalidArgument("tomogram rows do not match the (t, mu) grid")
    zero = np.flatnonzero(np.abs(ts) < 1e-12 * max(1.0, t_axis.step))
    if zero.size != 1:
        raise InvalidArgument("t axis must contain t = 0")
    r = np.hypot(mus[None, :], ts[:, None]).ravel()
    y, wy = m.x_axis.points(), m.x_axis.weights()
    char = np.einsum("ry,ry->r", m.values * wy, np.exp(1j * np.outer(r, y)))
    char = char.reshape(ts.size, mus.size)
    phase = np.exp(-0.5j * np.outer(ts, mus))
    g = (char * phase) @ mu_axis.weights() / (2.0 * math.pi)
    g0 = g[zero[0]]
    # every row integrates to ||f||^2, so |g0| = |f(0)|^2 is judged against it
    mass = float(np.mean(m.values @ wy))
    if not mass > 0.0 or abs(g0) < 1e-6 * mass:
        raise IllConditionedInversion(
            "|f(0)|^2 is below 1e-6 ||f||^2; this inversion divides by it")
    return SampledSignal(t_axis, g / math.sqrt(abs(g0)))
