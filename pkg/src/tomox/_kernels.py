"""Hot inner loops, each with a numba and a pure-numpy implementation.

The numba path is used when numba imports and the environment variable
``TOMOX_DISABLE_NUMBA`` is unset (or "0"). Both paths compute the same sums;
they differ only in summation order, so results agree to rounding.
"""
import os

import numpy as np


def _noop_jit(*args, **kwargs):
    if len(args) == 1 and callable(args[0]) and not kwargs:
        return args[0]
    return lambda f: f


def _want_numba():
    if os.environ.get("TOMOX_DISABLE_NUMBA", "0") not in ("", "0"):
        return False
    try:
        import numba  # noqa: F401
    except ImportError:
        return False
    return True


USE_NUMBA = _want_numba()

if USE_NUMBA:
    from numba import njit
else:
    njit = _noop_jit

# numpy fallbacks build (chunk x N) temporaries; keep them around 8 MB
_CHUNK_ELEMS = 1 << 19


def _chunks(m, n):
    step = max(1, _CHUNK_ELEMS // max(n, 1))
    for lo in range(0, m, step):
        yield lo, min(m, lo + step)


# --- band-limited (Whittaker) interpolation -------------------------------

def sinc_interp_numpy(values, start, step, x):
    values = np.ascontiguousarray(values, dtype=np.complex128)
    n = values.size
    u = (np.asarray(x, dtype=np.float64) - start) / step
    k0 = np.floor(u + 0.5)
    delta = u - k0
    # sin(pi*(u - j)) = (-1)**(k0 - j) * sin(pi*delta), as in the numba kernel
    s = np.sin(np.pi * delta) / np.pi * np.where(k0 % 2 == 0, 1.0, -1.0)
    alt = values * np.where(np.arange(n) % 2 == 0, 1.0, -1.0)
    j = np.arange(n, dtype=np.float64)
    out = np.empty(u.size, dtype=np.complex128)
    off = delta != 0.0
    for lo, hi in _chunks(u.size, n):
        sl = slice(lo, hi)
        d = u[sl, None] - j[None, :]
        d[~off[sl]] = 1.0  # on-sample rows are filled in below
        out[sl] = (1.0 / d) @ alt * s[sl]
    on = ~off
    k = k0[on].astype(np.int64)
    inside = (k >= 0) & (k < n)
    out[np.flatnonzero(on)[inside]] = values[k[inside]]
    out[np.flatnonzero(on)[~inside]] = 0.0
    return out


@njit(cache=True, fastmath=False)
def _sinc_interp_nb(values, start, step, x):
    n = values.size
    out = np.empty(x.size, dtype=np.complex128)
    for m in range(x.size):
        u = (x[m] - start) / step
        k0 = np.floor(u + 0.5)
        delta = u - k0
        if delta == 0.0:
            k = int(k0)
            if 0 <= k < n:
                out[m] = values[k]
            else:
                out[m] = 0.0
            continue
        # sin(pi*(u - j)) = (-1)**(k0 - j) * sin(pi*delta)
        s = np.sin(np.pi * delta) / np.pi
        sign0 = 1.0 if int(k0) % 2 == 0 else -1.0
        acc = 0.0 + 0.0j
        sign = sign0
        for j in range(n):
            acc += values[j] * (sign / (u - j))
            sign = -sign
        out[m] = acc * s
    return out


def sinc_interp_numba(values, start, step, x):
    return _sinc_interp_nb(np.ascontiguousarray(values, dtype=np.complex128),
                           float(start), float(step),
                           np.ascontiguousarray(x, dtype=np.float64))


# --- direct Fourier sums at arbitrary frequencies -------------------------

def dft_at_numpy(g, t, omega):
    """sum_n g[n] * exp(-i t[n] omega[m]) for every m."""
    g = np.ascontiguousarray(g, dtype=np.complex128)
    t = np.asarray(t, dtype=np.float64)
    omega = np.asarray(omega, dtype=np.float64)
    out = np.empty(omega.size, dtype=np.complex128)
    for lo, hi in _chunks(omega.size, t.size):
        out[lo:hi] = np.exp(-1j * np.outer(omega[lo:hi], t)) @ g
    return out


@njit(cache=True)
def _dft_at_nb(g, t, omega):
    out = np.empty(omega.size, dtype=np.complex128)
    for m in range(omega.size):
        w = omega[m]
        re = 0.0
        im = 0.0
        for n in range(t.size):
            c = np.cos(w * t[n])
            s = np.sin(w * t[n])
            gr = g[n].real
            gi = g[n].imag
            re += gr * c + gi * s
            im += gi * c - gr * s
        out[m] = complex(re, im)
    return out


def dft_at_numba(g, t, omega):
    return _dft_at_nb(np.ascontiguousarray(g, dtype=np.complex128),
                      np.ascontiguousarray(t, dtype=np.float64),
                      np.ascontiguousarray(omega, dtype=np.float64))


# --- Hermite-function overlaps --------------------------------------------

def hermite_overlaps_numpy(t, g, n_max):
    """c[n] = sum_j psi_n(t[j]) g[j] with psi_n the normalized Hermite functions."""
    t = np.asarray(t, dtype=np.float64)
    g = np.asarray(g, dtype=np.complex128)
    out = np.empty(n_max + 1, dtype=np.complex128)
    prev = np.zeros_like(t)
    cur = np.pi ** -0.25 * np.exp(-0.5 * t * t)
    out[0] = cur @ g
    for n in range(n_max):
        nxt = np.sqrt(2.0 / (n + 1)) * t * cur - np.sqrt(n / (n + 1.0)) * prev
        prev, cur = cur, nxt
        out[n + 1] = cur @ g
    return out


@njit(cache=True)
def _hermite_overlaps_nb(t, g, n_max):
    out = np.zeros(n_max + 1, dtype=np.complex128)
    norm0 = np.pi ** -0.25
    for j in range(t.size):
        x = t[j]
        prev = 0.0
        cur = norm0 * np.exp(-0.5 * x * x)
        out[0] += cur * g[j]
        for n in range(n_max):
            nxt = np.sqrt(2.0 / (n + 1)) * x * cur - np.sqrt(n / (n + 1.0)) * prev
            prev = cur
            cur = nxt
            out[n + 1] += cur * g[j]
    return out


def hermite_overlaps_numba(t, g, n_max):
    return _hermite_overlaps_nb(np.ascontiguousarray(t, dtype=np.float64),
                                np.ascontiguousarray(g, dtype=np.complex128),
                                int(n_max))


if USE_NUMBA:
    sinc_interp = sinc_interp_numba
    dft_at = dft_at_numba
    hermite_overlaps = hermite_overlaps_numba
else:
    sinc_interp = sinc_interp_numpy
    dft_at = dft_at_numpy
    hermite_overlaps = hermite_overlaps_numpy

BACKEND = "numba" if USE_NUMBA else "numpy"
