"""Bridges between tomograms, quasidistributions and wavelet-type transforms.

For a self-adjoint generator B(alpha) with tomogram ``M(X) = <f|delta(B - X)|f>``:

* characteristic function  ``<f|exp(i k B)|f> = int M(X) exp(i k X) dX``;
* its inverse              ``M(X) = (1/2pi) int <f|exp(i k B)|f> exp(-i k X) dk``;
* polarization             ``<h|exp(iB)|f>`` from the tomograms of h+f, h+if, h-f, h-if.

The matrix elements ``<h|exp(iB)|f>`` are also computed directly (closed-form
operator actions) to serve as oracles.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.interpolate import make_interp_spline

from . import _kernels
from .affine import MellinEvaluator
from .errors import DomainError, IncompatibleGrids, InvalidArgument, TruncationWarning
from .quasidist import ambiguity_at
from .signal import TIME, Axis, SampledSignal, interpolate, symmetric_axis
from .symplectic import (FREQ_SCALE, SYMPLECTIC, TIME_SCALE,
                         RayParams, SymplecticEvaluator, TomogramField)

POLARIZATION_FAMILIES = (SYMPLECTIC, TIME_SCALE, FREQ_SCALE)


@dataclass(frozen=True, eq=False)
class PolarizationQuad:
    """The raw combinations h+f, h+if, h-f, h-if (not normalized)."""

    h: SampledSignal
    f: SampledSignal

    @property
    def f1(self) -> SampledSignal:
        return self.h.with_values(self.h.values + self.f.values)

    @property
    def f2(self) -> SampledSignal:
        return self.h.with_values(self.h.values + 1j * self.f.values)

    @property
    def f3(self) -> SampledSignal:
        return self.h.with_values(self.h.values - self.f.values)

    @property
    def f4(self) -> SampledSignal:
        return self.h.with_values(self.h.values - 1j * self.f.values)

    def signals(self):
        return self.f1, self.f2, self.f3, self.f4


def make_polarization_quad(h: SampledSignal, f: SampledSignal) -> PolarizationQuad:
    if h.axis != f.axis or h.domain != f.domain:
        raise IncompatibleGrids("h and f must share axis and domain")
    return PolarizationQuad(h, f)


def default_x_axis(family: str, ray: RayParams) -> Axis:
    """X (or s) grid wide enough for the built-in signals on the default grid."""
    r = math.hypot(ray.mu, ray.nu)
    if family == SYMPLECTIC:
        return symmetric_axis(12.0 * r, 0.05 * r)
    if family in (TIME_SCALE, FREQ_SCALE):
        # the s-width scales with |nu| (homogeneity); the floor covers nu -> 0
        a = max(abs(ray.nu), 0.05 * r)
        return symmetric_axis(40.0 * a, 0.025 * a)
    raise InvalidArgument(f"no default X grid for family {family!r}")


def _rows(family: str, signals, ray: RayParams, x_axis: Axis):
    out = []
    for g in signals:
        if family == SYMPLECTIC:
            out.append(SymplecticEvaluator(g).values(ray.mu, ray.nu, x_axis.points()))
        elif family in (TIME_SCALE, FREQ_SCALE):
            out.append(MellinEvaluator(g, family).row(ray.mu, ray.nu, x_axis))
        else:
            raise InvalidArgument(f"family {family!r} has no polarization form")
    return out


def wavelet_from_tomograms(h: SampledSignal, f: SampledSignal, family: str,
                           ray: RayParams, x_axis: Axis | None = None) -> complex:
    """<h|exp(i B(ray))|f> from the tomograms of the four polarization signals.

    ``(1/4) int exp(iX) [M1 - i M2 - M3 + i M4](X) dX`` with raw (unnormalized)
    tomograms. A TruncationWarning flags rows whose X-mass falls short of the
    squared norm of their signal.
    """
    quad = make_polarization_quad(h, f)
    x_axis = x_axis or default_x_axis(family, ray)
    sigs = quad.signals()
    rows = _rows(family, sigs, ray, x_axis)
    w = x_axis.weights()
    for g, row in zip(sigs, rows):
        n2 = g.norm2()
        if n2 > 0 and float(row @ w) < 0.999 * n2:
            warnings.warn("X grid misses part of a polarization tomogram",
                          TruncationWarning, stacklevel=2)
            break
    kern = w * np.exp(1j * x_axis.points())
    c = [complex(kern @ row) for row in rows]
    return 0.25 * ((c[0] - c[2]) - 1j * (c[1] - c[3]))


# --- direct matrix elements (oracles) -------------------------------------

def _grow(nu: float) -> float:
    """(e^nu - 1)/nu with its limit 1 at nu = 0."""
    return 1.0 + 0.5 * nu if abs(nu) < 1e-8 else math.expm1(nu) / nu


def matrix_element(h: SampledSignal, f: SampledSignal, family: str,
                   ray: RayParams, interp: str = "sinc") -> complex:
    """<h|exp(i B(ray))|f> by quadrature of the explicit operator action.

    symplectic:  exp(i(mu t + nu omega)) f(t) = exp(i mu nu/2) exp(i mu t) f(t + nu)
    time_scale:  exp(i(mu t + nu D)) f(t) = e^(nu/2) exp(i mu t (e^nu - 1)/nu) f(e^nu t)
    freq_scale:  exp(i(mu omega + nu D)) f(t) = e^(nu/2) f(e^nu t + mu (e^nu - 1)/nu)
    """
    if h.axis != f.axis or h.domain != TIME or f.domain != TIME:
        raise IncompatibleGrids("matrix elements need time signals on one axis")
    t = f.points()
    mu, nu = ray.mu, ray.nu
    if family == SYMPLECTIC:
        act = np.exp(0.5j * mu * nu) * np.exp(1j * mu * t) * interpolate(f, t + nu, interp)
    elif family == TIME_SCALE:
        act = (math.exp(0.5 * nu) * np.exp(1j * mu * t * _grow(nu))
               * interpolate(f, math.exp(nu) * t, interp))
    elif family == FREQ_SCALE:
        act = math.exp(0.5 * nu) * interpolate(f, math.exp(nu) * t + mu * _grow(nu), interp)
    else:
        raise InvalidArgument(f"unknown family {family!r}")
    return complex(np.sum(f.axis.weights() * np.conj(h.values) * act))


# --- characteristic function <-> tomogram ---------------------------------

def symplectic_characteristic(f: SampledSignal, ray: RayParams):
    """k -> <f|exp(i k B(ray))|f>, i.e. the ambiguity function at (k mu, k nu)."""
    def q(k):
        k = np.asarray(k, dtype=float)
        return ambiguity_at(f, k * ray.mu, k * ray.nu)
    return q


def tomogram_from_characteristic(quasidist_fn, x_axis: Axis, k_axis: Axis | None = None,
                      ray: RayParams | None = None, family: str = SYMPLECTIC,
                      decay: float = 1e-8) -> TomogramField:
    """M(X) = (1/2pi) int Q(k) exp(-i k X) dk with Q(k) = <f|exp(i k B)|f>.

    ``quasidist_fn`` maps an array of k to Q values. A TruncationWarning is
    issued when |Q| at the ends of the k grid exceeds ``decay * |Q(0)|``.
    """
    k_axis = k_axis or symmetric_axis(16.0, 0.05)
    k = k_axis.points()
    q = np.asarray(quasidist_fn(k), dtype=np.complex128)
    ref = abs(complex(np.asarray(quasidist_fn(np.array([0.0])))[0]))
    if max(abs(q[0]), abs(q[-1])) > decay * max(ref, 1e-300):
        warnings.warn("characteristic function has not decayed at the k-grid edge",
                      TruncationWarning, stacklevel=2)
    kern = np.exp(-1j * np.outer(x_axis.points(), k))
    row = (kern @ (q * k_axis.weights())).real / (2.0 * math.pi)
    ray = ray or RayParams(1.0, 0.0)
    return TomogramField(x_axis, (ray,), np.clip(row, 0.0, None)[None, :], family)


def quasidist_from_scaled_row(m: TomogramField, p: float, index: int = 0) -> complex:
    """<f|exp(iB)|f> as int M^(B/p)(X) exp(i p X) dX.

    The row of B/p is built from the stored row of B through homogeneity,
    ``M^(B/p)(X) = |p| M^(B)(p X)``, by quintic spline interpolation on the
    stored X grid (zero outside it).
    """
    if p == 0:
        raise InvalidArgument("p must be nonzero")
    x = m.x_axis.points()
    row = m.values[index]
    spl = make_interp_spline(x, row, k=5)
    px = p * x
    scaled = abs(p) * spl(px)
    scaled[(px < x[0]) | (px > x[-1])] = 0.0
    return complex(np.sum(m.x_axis.weights() * scaled * np.exp(1j * p * x)))


# --- photon-number tomogram -----------------------------------------------

@dataclass(frozen=True, eq=False)
class PhotonTomogram:
    beta: complex
    probs: np.ndarray

    def __post_init__(self):
        p = np.array(self.probs, dtype=np.float64)
        if np.any(p < -1e-12):
            raise InvalidArgument("photon-number probabilities must be nonnegative")
        p = np.clip(p, 0.0, None)
        p.setflags(write=False)
        object.__setattr__(self, "probs", p)
        object.__setattr__(self, "beta", complex(self.beta))

    @property
    def n_max(self) -> int:
        return self.probs.size - 1


def photon_number_tomogram(f: SampledSignal, beta: complex, n_max: int) -> PhotonTomogram:
    """w(n) = |int psi_n(t) exp(i sqrt2 t Im beta) f(t + sqrt2 Re beta) dt|^2.

    psi_n are the normalized Hermite functions, generated by their three-term
    recurrence. The integration grid is the signal grid shifted by
    ``-sqrt2 Re beta`` so f is only ever read at its own samples.
    """
    if f.domain != TIME:
        raise DomainError("photon-number tomogram needs a time-domain signal")
    if int(n_max) != n_max or n_max < 0:
        raise InvalidArgument("n_max must be a nonnegative integer")
    beta = complex(beta)
    t = f.points() - math.sqrt(2.0) * beta.real
    g = f.values * f.axis.weights() * np.exp(1j * math.sqrt(2.0) * beta.imag * t)
    c = _kernels.hermite_overlaps(t, g, int(n_max))
    return PhotonTomogram(beta, np.abs(c) ** 2)
