"""Tomograms, quasidistributions and wavelet transforms of sampled signals.

The modules share one Fourier convention, ``F(omega) = int f(t) exp(-i omega t) dt``,
and trapezoid quadrature on uniform grids (:mod:`tomox.signal`).
"""
from ._kernels import BACKEND
from .affine import (AffineParams, affine_param_inverse, affine_param_map, freq_scale_tomogram,
                     invert_time_scale, time_scale_tomogram)
from .errors import *  # noqa: F401,F403
from .quasidist import (PhasePlaneField, affine_quasidistribution, ambiguity, husimi_kano,
                        wigner_ville)
from .relations import (PhotonTomogram, PolarizationQuad, make_polarization_quad,
                        photon_number_tomogram, quasidist_from_scaled_row, tomogram_from_characteristic,
                        wavelet_from_tomograms)
from .signal import (Axis, SampledSignal, SignalKind, fourier_transform, inner_product,
                     make_axis, make_log_axis, normalize, synthesize)
from .symplectic import (RayParams, TomogramField, invert_symplectic, quasidist_from_tomogram,
                         symplectic_tomogram, tomogram_family, tomogram_from_wigner)
from .wavelet import WaveletField, admissibility_constant, cwt, cwt_alt_form, icwt

__version__ = "0.1.0"
