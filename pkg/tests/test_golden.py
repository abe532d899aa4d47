"""Oracles against frozen values, then the package against both."""
import math

import numpy as np
import pytest

import golden as G
import oracles as O
from tomox.affine import AffineParams, freq_scale_tomogram, time_scale_tomogram
from tomox.quasidist import affine_quasidistribution, ambiguity_at
from tomox.relations import photon_number_tomogram
from tomox.signal import make_axis, symmetric_axis, synthesize
from tomox.symplectic import RayParams, SymplecticEvaluator


class TestOraclesReproduceGolden:
    def test_overlap(self):
        assert O.gaussian_mexhat_overlap() == pytest.approx(G.GAUSSIAN_MEXHAT_OVERLAP, rel=1e-12)
        assert G.GAUSSIAN_MEXHAT_OVERLAP == pytest.approx(math.pi ** 0.25 / 2, rel=1e-12)

    def test_spectrum_at_zero(self):
        assert O.gaussian_spectrum_at_zero() == pytest.approx(G.GAUSSIAN_SPECTRUM_AT_ZERO, rel=1e-12)
        assert G.GAUSSIAN_SPECTRUM_AT_ZERO == pytest.approx(math.sqrt(2) * math.pi ** 0.25, rel=1e-12)

    def test_affine_q(self):
        assert O.affine_q_gaussian(2.0, 0.0) == pytest.approx(G.AFFINE_Q_GAUSSIAN_S2, rel=1e-10)
        assert O.affine_q_gaussian(1.0, 2.0) == pytest.approx(G.AFFINE_Q_GAUSSIAN_S1_TAU2, rel=1e-10)
        assert G.AFFINE_Q_GAUSSIAN_S2 == pytest.approx(math.sqrt(4 / 5), rel=1e-12)

    def test_mellin(self):
        assert O.mellin_tomogram(O.gaussian, 0.0, 1.0, 0.0, -1) == pytest.approx(
            G.FREQ_SCALE_GAUSSIAN_0_1_S0, rel=1e-9)
        assert O.mellin_tomogram(O.gaussian, 1.0, 1.0, 0.3, +1) == pytest.approx(
            G.TIME_SCALE_GAUSSIAN_1_1_S03, rel=1e-9)

    def test_admissibility(self):
        assert O.admissibility_raw_mexhat() == pytest.approx(G.ADMISSIBILITY_RAW_MEXHAT, rel=1e-12)

    def test_closed_forms(self):
        assert abs(O.ambiguity_gaussian(2.0, 0.0) - math.exp(-1)) < 1e-12
        r = math.sqrt(0.5)
        assert O.symplectic_tomogram_gaussian(r, r, 0.0) == pytest.approx(1 / math.sqrt(math.pi), rel=1e-10)
        assert O.photon_gaussian(1, 1.0) == pytest.approx(math.exp(-1), rel=1e-10)


class TestPackageAgainstOracles:
    grid = make_axis(-8, 0.0625, 257)

    @pytest.mark.parametrize("theta,x", [(0.4, 0.3), (1.2, -0.8), (2.5, 1.1)])
    def test_symplectic(self, theta, x):
        g = synthesize("gaussian", self.grid, normalize=True)
        mu, nu = math.cos(theta), math.sin(theta)
        v = SymplecticEvaluator(g).values(mu, nu, np.array([x]))[0]
        assert abs(v - O.symplectic_tomogram_gaussian(mu, nu, x)) < 1e-10

    @pytest.mark.parametrize("mu,nu", [(0.5, -1.0), (1.5, 0.7)])
    def test_ambiguity(self, mu, nu):
        g = synthesize("gaussian", self.grid, normalize=True)
        assert abs(ambiguity_at(g, mu, nu)[0] - O.ambiguity_gaussian(mu, nu)) < 1e-10

    @pytest.mark.parametrize("s,tau", [(0.5, 0.4), (3.0, -1.0)])
    def test_affine_q(self, s, tau):
        g = synthesize("gaussian", self.grid, normalize=True)
        q = affine_quasidistribution(g, make_axis(s, 1, 2), make_axis(tau, 1, 2)).values[0, 0]
        assert abs(q - O.affine_q_gaussian(s, tau)) < 1e-8

    @pytest.mark.parametrize("mu,nu,s", [(0.5, 1.0, -1.0), (-0.3, 0.6, 0.8)])
    def test_mellin(self, mu, nu, s):
        g = synthesize("gaussian", self.grid, normalize=True)
        p = AffineParams(mu, nu, make_axis(s, 1, 2))
        assert time_scale_tomogram(g, p).values[0, 0] == pytest.approx(
            O.mellin_tomogram(O.gaussian, mu, nu, s, +1), rel=5e-5)
        assert freq_scale_tomogram(g, p).values[0, 0] == pytest.approx(
            O.mellin_tomogram(O.gaussian, mu, nu, s, -1), rel=5e-5)

    @pytest.mark.parametrize("n,beta", [(0, 0.5), (3, 1 + 0.5j), (7, -1.2j)])
    def test_photon(self, n, beta):
        g = synthesize("gaussian", self.grid, normalize=True)
        assert abs(photon_number_tomogram(g, beta, n).probs[n] - O.photon_gaussian(n, beta)) < 1e-10
