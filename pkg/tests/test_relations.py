import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.integrate import trapezoid

from tomox.errors import IncompatibleGrids, InvalidArgument, TruncationWarning
from tomox.quasidist import ambiguity_at
from tomox.relations import (POLARIZATION_FAMILIES, PhotonTomogram, make_polarization_quad,
                             matrix_element, photon_number_tomogram, quasidist_from_scaled_row,
                             symplectic_characteristic, tomogram_from_characteristic,
                             wavelet_from_tomograms)
from tomox.signal import SampledSignal, SignalKind, make_axis, symmetric_axis, synthesize
from tomox.symplectic import (SYMPLECTIC, RayParams, SymplecticEvaluator, quasidist_from_tomogram,
                              symplectic_tomogram)

X = symmetric_axis(12.0, 0.05)


class TestPolarizationQuad:
    def test_equal_signals(self, gauss):
        assert not np.any(make_polarization_quad(gauss, gauss).f3.values)

    def test_zero_f(self, gauss, grid):
        z = SampledSignal(grid, np.zeros(grid.count))
        for g in make_polarization_quad(gauss, z).signals():
            assert np.array_equal(g.values, gauss.values)

    def test_recover_f(self, signals):
        q = make_polarization_quad(signals["gaussian"], signals["chirp"])
        assert np.max(np.abs((q.f1.values - q.f3.values) / 2 - signals["chirp"].values)) < 1e-15

    def test_mismatch(self, gauss):
        other = synthesize("gaussian", make_axis(-8, 0.125, 129))
        with pytest.raises(IncompatibleGrids):
            make_polarization_quad(gauss, other)


class TestWaveletFromTomograms:
    @pytest.mark.parametrize("name", ["gaussian", "chirp", "two_tone"])
    def test_self_matches_quasidist(self, signals, name):
        f = signals[name]
        ray = RayParams(0.6, 0.8)
        w = wavelet_from_tomograms(f, f, SYMPLECTIC, ray)
        q = quasidist_from_tomogram(symplectic_tomogram(f, ray, X))
        assert abs(w - q) < 1e-4

    def test_gaussian_chirp_bch(self, grid, signals):
        h, f = signals["gaussian"], signals["chirp"]
        mu, nu = 0.6, 0.8
        # brute-force oracle from closed forms on a fine grid
        t = np.linspace(-10, 10, 40001)
        k = SignalKind.parse("chirp")
        norm_c = math.sqrt(synthesize(k, grid).norm2())
        hg = math.pi ** -0.25 * np.exp(-t ** 2 / 2)
        integrand = hg * np.exp(1j * mu * t) * k.evaluate(t + nu) / norm_c
        ref = np.exp(0.5j * mu * nu) * trapezoid(integrand, t)
        assert abs(wavelet_from_tomograms(h, f, SYMPLECTIC, RayParams(mu, nu)) - ref) < 1e-3

    @pytest.mark.parametrize("family", POLARIZATION_FAMILIES)
    def test_zero_f(self, gauss, grid, family):
        z = SampledSignal(grid, np.zeros(grid.count))
        assert wavelet_from_tomograms(gauss, z, family, RayParams(0.4, 0.9)) == 0

    @pytest.mark.parametrize("family", POLARIZATION_FAMILIES)
    @pytest.mark.parametrize("pair,ray", [(("gaussian", "chirp"), (0.6, 0.8)),
                                          (("two_tone", "gabor_wavelet"), (0.3, -0.5)),
                                          (("mexican_hat", "two_tone"), (-1.0, 0.4))])
    def test_matches_direct_matrix_element(self, signals, family, pair, ray):
        h, f = signals[pair[0]], signals[pair[1]]
        r = RayParams(*ray)
        assert abs(wavelet_from_tomograms(h, f, family, r) - matrix_element(h, f, family, r)) < 1e-3

    def test_truncated_x_warns(self, signals):
        with pytest.warns(TruncationWarning):
            wavelet_from_tomograms(signals["gaussian"], signals["chirp"], SYMPLECTIC,
                                   RayParams(0.6, 0.8), symmetric_axis(1.0, 0.05))


class TestMatrixElement:
    @pytest.mark.parametrize("family", POLARIZATION_FAMILIES)
    def test_unitary_action(self, signals, family):
        # <f|U|f> has modulus at most ||f||^2 = 1
        f = signals["chirp"]
        assert abs(matrix_element(f, f, family, RayParams(0.5, 0.5))) <= 1 + 1e-9

    def test_symplectic_is_ambiguity(self, signals):
        f = signals["two_tone"]
        a = matrix_element(f, f, SYMPLECTIC, RayParams(0.7, -0.3))
        assert abs(a - ambiguity_at(f, 0.7, -0.3)[0]) < 1e-10


class TestTomogramFromCharacteristic:
    @pytest.mark.parametrize("theta", [0.3, 0.7, 1.4])
    def test_matches_tomogram(self, gauss, theta):
        ray = RayParams.from_angle(theta)
        m = tomogram_from_characteristic(symplectic_characteristic(gauss, ray), X, ray=ray)
        ref = SymplecticEvaluator(gauss).values(ray.mu, ray.nu, X.points())
        assert math.sqrt(np.mean((m.values[0] - ref) ** 2)) < 1e-3
        assert m.masses()[0] == pytest.approx(1.0, abs=1e-3)

    def test_k_grid_refinement(self, signals):
        f = signals["chirp"]
        ray = RayParams.from_angle(0.7)
        q = symplectic_characteristic(f, ray)
        a = tomogram_from_characteristic(q, X, symmetric_axis(16.0, 0.1), ray=ray).values[0]
        b = tomogram_from_characteristic(q, X, symmetric_axis(16.0, 0.05), ray=ray).values[0]
        assert np.max(np.abs(a - b)) < 1e-4

    def test_non_decaying_warns(self, gauss):
        with pytest.warns(TruncationWarning):
            tomogram_from_characteristic(lambda k: np.ones_like(k, dtype=complex), X)

    def test_round_trip_through_row_characteristic(self, signals):
        f = signals["two_tone"]
        ray = RayParams.from_angle(1.1)
        row = symplectic_tomogram(f, ray, X)
        q = symplectic_characteristic(f, ray)
        back = tomogram_from_characteristic(lambda k: np.array([quasidist_from_tomogram(row, k=kk)
                                                     for kk in np.atleast_1d(k)]), X, ray=ray)
        assert math.sqrt(np.mean((back.values[0] - row.values[0]) ** 2)) < 1e-3
        assert abs(q(np.array([1.0]))[0] - quasidist_from_tomogram(row)) < 1e-4


class TestQuasidistFromScaledRow:
    def test_p1_is_direct(self, signals):
        m = symplectic_tomogram(signals["chirp"], RayParams(0.6, 0.8), X)
        assert abs(quasidist_from_scaled_row(m, 1.0) - quasidist_from_tomogram(m)) < 1e-10

    @pytest.mark.parametrize("name", ["gaussian", "chirp", "two_tone"])
    def test_p_independent(self, signals, name):
        m = symplectic_tomogram(signals[name], RayParams(0.6, 0.8), X)
        vals = [quasidist_from_scaled_row(m, p) for p in (0.5, 1.0, 2.0)]
        assert max(abs(v - vals[1]) for v in vals) < 1e-4

    def test_gaussian_ambiguity(self, gauss):
        m = symplectic_tomogram(gauss, RayParams(0.6, 0.8), X)
        assert abs(quasidist_from_scaled_row(m, 2.0) - ambiguity_at(gauss, 0.6, 0.8)[0]) < 1e-4

    def test_zero_p(self, gauss):
        with pytest.raises(InvalidArgument):
            quasidist_from_scaled_row(symplectic_tomogram(gauss, RayParams(1, 1), X), 0.0)


class TestPhoton:
    def test_ground_state(self, gauss):
        p = photon_number_tomogram(gauss, 0, 10).probs
        assert p[0] == pytest.approx(1.0, abs=1e-9)
        assert np.max(p[1:]) < 1e-9

    @pytest.mark.parametrize("beta", [0.5, 1.0, 2.0, 1j, 0.8 - 0.6j])
    def test_poisson(self, gauss, beta):
        p = photon_number_tomogram(gauss, beta, 40).probs
        n = np.arange(21)
        b2 = abs(beta) ** 2
        pois = np.array([math.exp(-b2) * b2 ** k / math.factorial(k) for k in n])
        assert np.max(np.abs(p[:21] - pois)) < 1e-6
        assert abs(p.sum() - 1) < 1e-8

    def test_w1(self, gauss):
        assert photon_number_tomogram(gauss, 1, 3).probs[1] == pytest.approx(math.exp(-1), abs=1e-6)

    def test_large_n_finite(self, gauss):
        p = photon_number_tomogram(gauss, 2, 200).probs
        assert np.all(np.isfinite(p)) and p.sum() <= 1 + 1e-6

    def test_negative_n_max(self, gauss):
        with pytest.raises(InvalidArgument):
            photon_number_tomogram(gauss, 1, -1)

    def test_negative_probability_rejected(self):
        with pytest.raises(InvalidArgument):
            PhotonTomogram(0, [0.5, -0.1])

    @settings(max_examples=20, deadline=None)
    @given(st.floats(0, 2 * math.pi), st.complex_numbers(max_magnitude=2))
    def test_phase_invariant_and_complete(self, phi, beta):
        f = synthesize("two_tone", make_axis(-8, 0.0625, 257), normalize=True)
        g = SampledSignal(f.axis, f.values * np.exp(1j * phi))
        a = photon_number_tomogram(f, beta, 40).probs
        b = photon_number_tomogram(g, beta, 40).probs
        assert np.max(np.abs(a - b)) < 1e-14
        assert a.min() >= 0 and a.sum() <= 1 + 1e-6
