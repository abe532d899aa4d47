"""Uniform grids, analytic test signals, inner products and the Fourier transform.

Fourier convention used everywhere in the package::

    F(omega) = integral f(t) exp(-i omega t) dt

(angular frequency, no prefactor), so Parseval reads
``(1/2pi) <F|F> = <f|f>``. All integrals are trapezoid sums over the grid.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.fft import fft, ifft, next_fast_len

from . import _kernels
from .errors import DegenerateInput, DomainError, IncompatibleGrids, InvalidArgument

TIME = "time"
FREQUENCY = "frequency"


@dataclass(frozen=True)
class Axis:
    """Uniform grid ``start + i*step`` for ``0 <= i < count``.

    With ``log=True`` the grid is uniform in the natural logarithm and
    :meth:`points` returns ``exp(start + i*step)``; this is how scale grids
    for the wavelet transform are described.
    """

    start: float
    step: float
    count: int
    log: bool = False

    def __post_init__(self):
        if not (math.isfinite(self.start) and math.isfinite(self.step)):
            raise InvalidArgument("axis start and step must be finite")
        if self.step <= 0:
            raise InvalidArgument(f"axis step must be positive, got {self.step}")
        if int(self.count) != self.count or self.count < 2:
            raise InvalidArgument(f"axis needs at least 2 points, got {self.count}")
        object.__setattr__(self, "count", int(self.count))
        object.__setattr__(self, "start", float(self.start))
        object.__setattr__(self, "step", float(self.step))
        if not math.isfinite(self.step * (self.count - 1)):
            raise InvalidArgument("axis span is not representable")

    @property
    def stop(self) -> float:
        """Last grid coordinate (in log units for a log axis)."""
        return self.start + self.step * (self.count - 1)

    @property
    def span(self) -> float:
        return self.step * (self.count - 1)

    def points(self) -> np.ndarray:
        p = self.start + self.step * np.arange(self.count)
        return np.exp(p) if self.log else p

    def weights(self) -> np.ndarray:
        """Trapezoid weights for integrating over the grid coordinate.

        For a log axis these integrate ``d(log s)``.
        """
        w = np.full(self.count, self.step)
        w[0] = w[-1] = 0.5 * self.step
        return w

    def scaled(self, factor: float) -> "Axis":
        """Grid of the points multiplied by ``factor`` (ascending order kept)."""
        if self.log:
            raise InvalidArgument("cannot rescale a log axis")
        if factor == 0:
            raise InvalidArgument("scale factor must be nonzero")
        if factor > 0:
            return Axis(self.start * factor, self.step * factor, self.count)
        return Axis(self.stop * factor, self.step * -factor, self.count)


def make_axis(start: float, step: float, count: int) -> Axis:
    return Axis(start, step, count)


def make_log_axis(smin: float, smax: float, count: int) -> Axis:
    """Logarithmically spaced grid from ``smin`` to ``smax`` inclusive."""
    if smin <= 0 or smax <= smin:
        raise InvalidArgument("log axis needs 0 < smin < smax")
    if count < 2:
        raise InvalidArgument("log axis needs at least 2 points")
    a, b = math.log(smin), math.log(smax)
    return Axis(a, (b - a) / (count - 1), count, log=True)


def symmetric_axis(half_width: float, step: float) -> Axis:
    """Grid on ``[-half_width, half_width]`` containing 0 as a sample."""
    n = int(round(half_width / step))
    return Axis(-n * step, step, 2 * n + 1)


@dataclass(frozen=True, eq=False)
class SampledSignal:
    axis: Axis
    values: np.ndarray
    domain: str = TIME

    def __post_init__(self):
        if self.domain not in (TIME, FREQUENCY):
            raise InvalidArgument(f"unknown domain tag {self.domain!r}")
        if self.axis.log:
            raise InvalidArgument("signals live on linear axes")
        v = np.array(self.values, dtype=np.complex128).reshape(-1)
        if v.size != self.axis.count:
            raise InvalidArgument(
                f"{v.size} values for an axis of {self.axis.count} points")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    def points(self) -> np.ndarray:
        return self.axis.points()

    def with_values(self, values) -> "SampledSignal":
        return SampledSignal(self.axis, values, self.domain)

    def norm2(self) -> float:
        return float(np.sum(self.axis.weights() * np.abs(self.values) ** 2))


@dataclass(frozen=True)
class SignalKind:
    """Built-in analytic signal family with its real parameters.

    ``name`` is one of gaussian, gabor_wavelet, mexican_hat, chirp, two_tone.
    """

    name: str
    params: tuple = field(default=())

    _DEFAULTS = {
        "gaussian": (),
        "mexican_hat": (),
        "gabor_wavelet": (5.0,),
        "chirp": (0.5, 1.0),
        "two_tone": (1.0, 3.0),
    }

    def __post_init__(self):
        if self.name not in self._DEFAULTS:
            raise InvalidArgument(f"unknown signal kind {self.name!r}")
        want = len(self._DEFAULTS[self.name])
        params = tuple(float(p) for p in self.params) or self._DEFAULTS[self.name]
        if len(params) != want:
            raise InvalidArgument(
                f"{self.name} takes {want} parameter(s), got {len(params)}")
        object.__setattr__(self, "params", params)

    @classmethod
    def parse(cls, text: str) -> "SignalKind":
        """Parse ``name`` or ``name:p1,p2`` (e.g. ``chirp:0.5,1``)."""
        name, _, rest = text.strip().partition(":")
        params = tuple(float(p) for p in rest.split(",") if p.strip()) if rest else ()
        return cls(name.strip(), params)

    def __str__(self):
        if not self.params:
            return self.name
        return self.name + ":" + ",".join(repr(p) for p in self.params)

    def evaluate(self, t):
        t = np.asarray(t, dtype=np.float64)
        env = np.exp(-0.5 * t * t)
        if self.name == "gaussian":
            return env.astype(np.complex128)
        if self.name == "mexican_hat":
            return ((1.0 - t * t) * env).astype(np.complex128)
        if self.name == "gabor_wavelet":
            (w0,) = self.params
            return np.exp(1j * w0 * t) * env / math.sqrt(math.pi)
        if self.name == "chirp":
            a, b = self.params
            return np.exp(1j * (0.5 * a * t * t + b * t)) * env
        w1, w2 = self.params
        return (np.exp(1j * w1 * t) + np.exp(1j * w2 * t)) * env


DEFAULT_KINDS = (
    SignalKind("gaussian"),
    SignalKind("gabor_wavelet"),
    SignalKind("mexican_hat"),
    SignalKind("chirp"),
    SignalKind("two_tone"),
)


def synthesize(kind: SignalKind | str, axis: Axis, normalize: bool = False) -> SampledSignal:
    if isinstance(kind, str):
        kind = SignalKind.parse(kind)
    f = SampledSignal(axis, kind.evaluate(axis.points()))
    return _normalize(f) if normalize else f


def inner_product(f: SampledSignal, g: SampledSignal) -> complex:
    """Trapezoid approximation of the integral of conj(f) * g."""
    if f.axis != g.axis or f.domain != g.domain:
        raise IncompatibleGrids("inner product needs identical axes and domains")
    return complex(np.sum(f.axis.weights() * np.conj(f.values) * g.values))


def normalize(f: SampledSignal) -> SampledSignal:
    n2 = f.norm2()
    if not n2 > 0:
        raise DegenerateInput("cannot normalize a zero signal")
    return f.with_values(f.values / math.sqrt(n2))


_normalize = normalize


def dft_at(f: SampledSignal, omega) -> np.ndarray:
    """Trapezoid quadrature of ``int f(t) exp(-i omega t) dt`` at arbitrary omega."""
    g = f.values * f.axis.weights()
    return _kernels.dft_at(g, f.points(), np.atleast_1d(np.asarray(omega, float)))


def dft_uniform(g, t0: float, h: float, omega0: float, domega: float, m: int) -> np.ndarray:
    """``sum_n g[n] exp(-i (t0 + n h) (omega0 + k domega))`` for k < m.

    Bluestein's chirp-z algorithm: with ``n k = (n^2 + k^2 - (k - n)^2)/2`` the
    sum becomes a convolution, done by FFT in O((N + m) log(N + m)).
    """
    g = np.asarray(g, dtype=np.complex128)
    n = g.size
    c = h * domega
    length = next_fast_len(n + m - 1)
    j = np.arange(max(n, m), dtype=np.float64)
    chirp = np.exp(-0.5j * c * j * j)
    a = np.zeros(length, dtype=np.complex128)
    a[:n] = g * np.exp(-1j * h * omega0 * j[:n]) * chirp[:n]
    b = np.zeros(length, dtype=np.complex128)
    b[:m] = np.conj(chirp[:m])
    b[length - n + 1:] = np.conj(chirp[1:n][::-1])
    conv = ifft(fft(a) * fft(b))[:m]
    omega = omega0 + domega * np.arange(m)
    return conv * chirp[:m] * np.exp(-1j * t0 * omega)


def fourier_transform(f: SampledSignal, out_axis: Axis) -> SampledSignal:
    if f.domain != TIME:
        raise DomainError("fourier_transform expects a time-domain signal")
    return SampledSignal(out_axis, dft_at(f, out_axis.points()), FREQUENCY)


def spectral_axis(axis: Axis, oversample: int = 8) -> Axis:
    """Frequency grid covering the band ``|omega| <= pi/step`` of a time axis.

    The spacing ``2 pi / (oversample * span)`` keeps the spectrum's
    conjugate-time content alias free well beyond the signal support.
    """
    nyq = math.pi / axis.step
    d = 2.0 * math.pi / (oversample * axis.span)
    n = int(math.ceil(nyq / d))
    return Axis(-n * d, d, 2 * n + 1)


def interpolate(f: SampledSignal, x, method: str = "sinc") -> np.ndarray:
    """Values of ``f`` at arbitrary points; zero outside the sampled span.

    ``sinc`` is band-limited interpolation (the default); ``linear`` is the
    cheap fallback.
    """
    x = np.atleast_1d(np.asarray(x, dtype=np.float64))
    if method == "sinc":
        out = _kernels.sinc_interp(f.values, f.axis.start, f.axis.step, x)
        lo, hi = f.axis.start, f.axis.stop
        # sinc tails beyond the span are not part of the compact-support model
        out[(x < lo - f.axis.step) | (x > hi + f.axis.step)] = 0.0
        return out
    if method == "linear":
        p = f.points()
        re = np.interp(x, p, f.values.real, left=0.0, right=0.0)
        im = np.interp(x, p, f.values.imag, left=0.0, right=0.0)
        return re + 1j * im
    raise InvalidArgument(f"unknown interpolation method {method!r}")
