"""Continuous wavelet transform, admissibility constants and the inverse transform.

The wavelet family is ``h_{s,tau}(t) = s^(-1/2) h((t - tau)/s)`` and the
transform ``W(s, tau) = <h_{s,tau}|f>``. Both directions are evaluated in the
Fourier domain, where dilation and translation are exact:

    W(s, tau) = (1/2pi) int sqrt(s) H*(s omega) F(omega) exp(i omega tau) domega

so no interpolation of narrow (small-s) wavelets on the time grid is needed.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from . import quasidist
from .errors import (CoverageWarning, DomainError, InvalidArgument,
                     NonAdmissibleWavelet)
from .signal import TIME, Axis, SampledSignal, dft_at

RAW = "raw"
UNITARY = "unitary"
RECONSTRUCTION = "reconstruction"
CONVENTIONS = (RAW, UNITARY, RECONSTRUCTION)

# u = log|omega| grid used for the 1/|omega| integrals (same floor policy as the
# Mellin branches of the affine tomograms)
_LOG_OMEGA = Axis(-24.0, 28.0 / 4095, 4096)


@dataclass(frozen=True, eq=False)
class WaveletField:
    """``values[i, j] = W(s_i, tau_j)``; ``s_axis`` is usually a log axis."""

    s_axis: Axis
    tau_axis: Axis
    values: np.ndarray
    mother: str = "custom"

    def __post_init__(self):
        if np.any(self.s_axis.points() <= 0):
            raise InvalidArgument("wavelet scales must be positive")
        v = np.array(self.values, dtype=np.complex128)
        if v.shape != (self.s_axis.count, self.tau_axis.count):
            raise InvalidArgument(
                f"values shape {v.shape} does not match axes "
                f"({self.s_axis.count}, {self.tau_axis.count})")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    def scale_weights(self) -> np.ndarray:
        """Quadrature weights for ``ds / s^2``."""
        s = self.s_axis.points()
        if self.s_axis.log:
            return self.s_axis.weights() / s
        return self.s_axis.weights() / (s * s)

    def energy(self) -> float:
        """Trapezoid value of the double integral of |W|^2 dtau ds/s^2."""
        inner = np.abs(self.values) ** 2 @ self.tau_axis.weights()
        return float(self.scale_weights() @ inner)


def _require_time(*signals):
    for g in signals:
        if g.domain != TIME:
            raise DomainError("expected time-domain signals")


def _omega_grid(f_axis: Axis, h_axis: Axis, s_max: float, tau_reach: float) -> Axis:
    """Frequency grid for the Fourier-domain transform.

    Covers the band of f; the spacing keeps the time-domain alias of the
    integrand (support about f span + s_max * h span + 2 |tau|) out of reach.
    """
    band = math.pi / f_axis.step
    extent = f_axis.span + s_max * h_axis.span + 2.0 * tau_reach
    d = 2.0 * math.pi / (1.25 * extent)
    n = int(math.ceil(band / d))
    return Axis(-n * d, d, 2 * n + 1)


def _mother_spectrum(h: SampledSignal, scales: np.ndarray, omega: np.ndarray) -> np.ndarray:
    """H(s omega) for every scale (rows) and frequency (columns)."""
    arg = np.outer(scales, omega).ravel()
    return dft_at(h, arg).reshape(scales.size, omega.size)


def cwt(f: SampledSignal, h: SampledSignal, s_axis: Axis, tau_axis: Axis,
        mother: str = "custom") -> WaveletField:
    """W(s, tau) = s^(-1/2) int f(t) h*((t - tau)/s) dt on the grid."""
    _require_time(f, h)
    scales = s_axis.points()
    if np.any(scales <= 0):
        raise InvalidArgument("wavelet scales must be positive")
    taus = tau_axis.points()
    om = _omega_grid(f.axis, h.axis, float(scales.max()),
                     float(np.max(np.abs(taus))))
    omega = om.points()
    F = dft_at(f, omega) * om.weights()
    Hs = _mother_spectrum(h, scales, omega)
    left = np.conj(Hs) * F * np.sqrt(scales)[:, None]
    values = left @ np.exp(1j * np.outer(omega, taus)) / (2.0 * math.pi)
    return WaveletField(s_axis, tau_axis, values, mother)


def _one_sided_constants(h: SampledSignal):
    """(C+, C-) = int_0^inf |H(+-x)|^2 dx/x, by substituting x = exp(u)."""
    x = np.exp(_LOG_OMEGA.points())
    w = _LOG_OMEGA.weights()
    cp = float(w @ np.abs(dft_at(h, x)) ** 2)
    cm = float(w @ np.abs(dft_at(h, -x)) ** 2)
    return cp, cm


def admissibility_constant(h: SampledSignal, convention: str = RECONSTRUCTION,
                           tol: float = 1e-6) -> float:
    """Admissibility constant of the mother wavelet ``h``.

    Parameters
    ----------
    convention : {"raw", "unitary", "reconstruction"}
        ``raw`` is ``int |H|^2/|omega| domega`` with H the unnormalized
        spectrum; ``unitary`` divides it by 2 pi (the unitary Fourier
        spectrum); ``reconstruction`` is the mean of the one-sided integrals
        ``int_0^inf |H(+-x)|^2 dx/x``, the constant for which the inverse
        transform and the energy identity over s > 0 are exact.
    tol : float
        Largest accepted |H(0)| (that is, |int h dt|).
    """
    _require_time(h)
    if convention not in CONVENTIONS:
        raise InvalidArgument(f"unknown convention {convention!r}")
    h0 = abs(dft_at(h, [0.0])[0])
    if h0 > tol:
        raise NonAdmissibleWavelet(f"|H(0)| = {h0:.3g} exceeds {tol:g}")
    cp, cm = _one_sided_constants(h)
    if convention == RAW:
        return cp + cm
    if convention == UNITARY:
        return (cp + cm) / (2.0 * math.pi)
    return 0.5 * (cp + cm)


def icwt(w: WaveletField, h: SampledSignal, out_axis: Axis,
         coverage_tol: float = 0.05) -> SampledSignal:
    """Invert the wavelet transform onto ``out_axis``.

    Positive and negative frequencies are divided by their own one-sided
    constants, so the inversion is exact for mothers whose |H| is not even.
    Frequencies the scale grid does not reach are lost; if the estimated
    relative L2 loss exceeds ``coverage_tol`` a CoverageWarning is issued.
    """
    _require_time(h)
    scales = w.s_axis.points()
    taus = w.tau_axis.points()
    reach = max(float(np.max(np.abs(taus))), float(np.max(np.abs(out_axis.points()))))
    om = _omega_grid(w.tau_axis, h.axis, float(scales.max()), reach)
    omega = om.points()
    cp, cm = _one_sided_constants(h)
    if min(cp, cm) <= 0:
        raise NonAdmissibleWavelet("a one-sided admissibility integral vanishes")
    Hs = _mother_spectrum(h, scales, omega)
    # FT over tau of each row: sqrt(s) H*(s omega) F(omega) when W is exact
    What = (w.values * w.tau_axis.weights()) @ np.exp(-1j * np.outer(taus, omega))
    sw = w.scale_weights()
    R = np.sum((sw * np.sqrt(scales))[:, None] * Hs * What, axis=0)
    R = R / np.where(omega >= 0, cp, cm)
    _check_coverage(What, Hs, scales, R, om, coverage_tol)
    values = np.exp(1j * np.outer(out_axis.points(), omega)) @ (R * om.weights())
    return SampledSignal(out_axis, values / (2.0 * math.pi))


def _check_coverage(What, Hs, scales, R, om, tol):
    """Warn when the scale grid leaves part of the spectrum unreconstructed.

    F is estimated at each omega from the scale whose |H(s omega)| is largest
    and compared with the reconstructed spectrum R.
    """
    mag = np.abs(Hs)
    best = np.argmax(mag, axis=0)
    cols = np.arange(Hs.shape[1])
    hb = Hs[best, cols]
    ok = np.abs(hb) > 1e-6 * max(float(mag.max()), 1e-300)
    est = np.zeros_like(R)
    est[ok] = What[best[ok], cols[ok]] / (np.sqrt(scales[best[ok]]) * np.conj(hb[ok]))
    wts = om.weights()
    total = float(wts @ np.abs(est) ** 2)
    if total <= 0:
        return
    loss = math.sqrt(float(wts @ np.abs(est - R) ** 2) / total)
    if loss > tol:
        warnings.warn(f"scale grid misses about {100 * loss:.1f}% of the signal "
                      f"(relative L2)", CoverageWarning, stacklevel=3)


def cwt_alt_form(f: SampledSignal, h: SampledSignal, s: float, tau: float,
                 interp: str = "sinc") -> complex:
    """int h*((t - tau/2)/sqrt(s)) f(sqrt(s)(t + tau/2)) dt, by direct quadrature.

    Equal to ``W(s, sqrt(s) tau)`` of :func:`cwt`.
    """
    _require_time(f, h)
    if not s > 0:
        raise InvalidArgument("scale s must be positive")
    return quasidist.cross_affine_overlap(h, f, float(s), float(tau), interp)
