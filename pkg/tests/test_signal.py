import math

import numpy as np
import pytest

from golden import GAUSSIAN_AT_ZERO, GAUSSIAN_MEXHAT_OVERLAP, GAUSSIAN_SPECTRUM_AT_ZERO
from tomox.errors import DegenerateInput, DomainError, IncompatibleGrids, InvalidArgument
from tomox.signal import (DEFAULT_KINDS, FREQUENCY, Axis, SampledSignal, SignalKind,
                          dft_uniform, fourier_transform, inner_product, interpolate,
                          make_axis, make_log_axis, normalize, spectral_axis, symmetric_axis,
                          synthesize)


class TestAxis:
    def test_default_grid_spans_minus8_to_8(self):
        ax = make_axis(-8, 0.0625, 257)
        assert ax.stop == 8.0
        assert ax.points()[-1] == 8.0

    def test_two_point_axis(self):
        assert list(make_axis(0, 1, 2).points()) == [0.0, 1.0]

    @pytest.mark.parametrize("args", [(-8, -1, 10), (0, 0, 5), (0, 1, 1), (0, 1, 2.5)])
    def test_invalid(self, args):
        with pytest.raises(InvalidArgument):
            make_axis(*args)

    def test_log_axis_endpoints(self):
        ax = make_log_axis(2 ** -4, 2 ** 4, 64)
        p = ax.points()
        assert p[0] == pytest.approx(1 / 16) and p[-1] == pytest.approx(16)

    def test_symmetric_axis_contains_zero(self):
        ax = symmetric_axis(4, 0.125)
        assert ax.count == 65 and 0.0 in ax.points()

    def test_scaled_negative_keeps_ascending(self):
        ax = make_axis(-1, 0.5, 5).scaled(-2)
        assert np.all(np.diff(ax.points()) > 0)
        assert ax.start == -2 and ax.stop == 2


class TestSynthesize:
    def test_gaussian_normalized_peak(self, grid):
        f = synthesize("gaussian", grid, normalize=True)
        assert f.values[128].real == pytest.approx(GAUSSIAN_AT_ZERO, abs=1e-9)

    def test_mexican_hat_at_zero(self, grid):
        assert synthesize("mexican_hat", grid).values[128] == 1.0

    def test_gabor_at_zero(self, grid):
        v = synthesize(SignalKind("gabor_wavelet", (5.0,)), grid).values[128]
        assert v.real == pytest.approx(math.pi ** -0.5, abs=1e-12)

    def test_parse_roundtrip(self):
        k = SignalKind.parse("chirp:0.5,1")
        assert k.params == (0.5, 1.0)
        assert SignalKind.parse(str(k)) == k

    def test_unknown_kind(self):
        with pytest.raises(InvalidArgument):
            SignalKind.parse("sawtooth")

    def test_wrong_param_count(self):
        with pytest.raises(InvalidArgument):
            SignalKind("chirp", (1.0,))

    @pytest.mark.parametrize("kind", DEFAULT_KINDS, ids=str)
    def test_normalized_self_product(self, kind, grid):
        f = synthesize(kind, grid, normalize=True)
        assert inner_product(f, f).real == pytest.approx(1.0, abs=1e-12)


class TestInnerProduct:
    def test_gaussian_mexhat(self):
        ax = make_axis(-8, 1 / 64, 1025)
        g = synthesize("gaussian", ax, normalize=True)
        m = synthesize("mexican_hat", ax)
        assert inner_product(g, m).real == pytest.approx(GAUSSIAN_MEXHAT_OVERLAP, abs=1e-9)

    def test_mismatched_axes(self, grid):
        a = synthesize("gaussian", grid)
        b = synthesize("gaussian", make_axis(-8, 0.125, 129))
        with pytest.raises(IncompatibleGrids):
            inner_product(a, b)

    def test_conjugate_symmetry(self, signals):
        f, g = signals["chirp"], signals["two_tone"]
        assert inner_product(f, g) == pytest.approx(np.conj(inner_product(g, f)), abs=1e-15)


class TestFourier:
    def test_gaussian_pair(self, gauss):
        out = make_axis(-6, 0.5, 25)
        F = fourier_transform(gauss, out)
        w = out.points()
        ref = GAUSSIAN_SPECTRUM_AT_ZERO * np.exp(-w ** 2 / 2)
        assert np.max(np.abs(F.values - ref)) < 1e-10
        assert F.domain == FREQUENCY

    def test_mexican_hat_pair(self, grid):
        out = make_axis(-6, 0.5, 25)
        F = fourier_transform(synthesize("mexican_hat", grid), out)
        w = out.points()
        ref = math.sqrt(2 * math.pi) * w ** 2 * np.exp(-w ** 2 / 2)
        assert np.max(np.abs(F.values - ref)) < 1e-10
        assert abs(F.values[12]) < 1e-12

    def test_frequency_input_rejected(self, gauss):
        F = fourier_transform(gauss, make_axis(-1, 1, 3))
        with pytest.raises(DomainError):
            fourier_transform(F, make_axis(-1, 1, 3))

    @pytest.mark.parametrize("kind", DEFAULT_KINDS, ids=str)
    def test_parseval(self, kind, grid):
        f = synthesize(kind, grid, normalize=True)
        ax = spectral_axis(grid, 4)
        F = fourier_transform(f, ax)
        assert F.norm2() / (2 * math.pi) == pytest.approx(1.0, rel=1e-6)

    def test_chirp_z_matches_direct_sum(self):
        rng = np.random.default_rng(1)
        g = rng.normal(size=50) + 1j * rng.normal(size=50)
        t0, h, w0, dw, m = -2.0, 0.1, -3.0, 0.07, 40
        ref = np.exp(-1j * np.outer(w0 + dw * np.arange(m), t0 + h * np.arange(50))) @ g
        assert np.max(np.abs(dft_uniform(g, t0, h, w0, dw, m) - ref)) < 1e-12


class TestNormalize:
    def test_unit_norm(self, grid):
        f = synthesize("two_tone", grid)
        assert normalize(f).norm2() == pytest.approx(1.0, abs=1e-12)

    def test_zero_signal(self, grid):
        with pytest.raises(DegenerateInput):
            normalize(SampledSignal(grid, np.zeros(grid.count)))

    def test_idempotent(self, gauss):
        assert np.max(np.abs(normalize(gauss).values - gauss.values)) < 1e-12


class TestInterpolate:
    def test_sinc_exact_at_samples(self, signals):
        f = signals["chirp"]
        assert np.array_equal(interpolate(f, f.points()), f.values)

    def test_sinc_off_grid(self, grid):
        f = synthesize("gaussian", grid)
        x = np.linspace(-3, 3, 37) + 0.013
        assert np.max(np.abs(interpolate(f, x) - np.exp(-x ** 2 / 2))) < 1e-12

    def test_zero_outside_span(self, gauss):
        assert np.all(interpolate(gauss, [-9.0, 9.0]) == 0)

    def test_linear_fallback(self, gauss):
        x = np.array([0.03])
        assert abs(interpolate(gauss, x, "linear")[0] - GAUSSIAN_AT_ZERO * math.exp(-x[0] ** 2 / 2)) < 1e-3

    def test_unknown_method(self, gauss):
        with pytest.raises(InvalidArgument):
            interpolate(gauss, [0.0], "cubic")


def test_signal_values_read_only(gauss):
    with pytest.raises(ValueError):
        gauss.values[0] = 0


def test_signal_length_mismatch():
    with pytest.raises(InvalidArgument):
        SampledSignal(Axis(0, 1, 3), [1, 2])
