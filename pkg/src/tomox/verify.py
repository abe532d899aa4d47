"""Configuration and the verification runner behind ``tomox verify``.

The config is a flat text file of ``key = value`` lines (``#`` starts a
comment) with module-namespaced keys; see :data:`DEFAULTS`. Every check
records a measured residual and an absolute tolerance (``_rel`` in a check
name marks a relative residual) and passes iff residual <= tolerance.
"""
from __future__ import annotations

import json
import math
import time
import warnings
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import _kernels
from .affine import (MellinEvaluator, inversion_tomogram as affine_inversion_tomogram,
                     invert_time_scale)
from .errors import ConfigError, InvalidArgument, TomoxWarning
from .quasidist import ambiguity_at, husimi_kano, wigner_ville
from .relations import (POLARIZATION_FAMILIES, matrix_element, photon_number_tomogram,
                        symplectic_characteristic, tomogram_from_characteristic, wavelet_from_tomograms)
from .signal import (Axis, SignalKind, inner_product, make_axis, make_log_axis,
                     symmetric_axis, synthesize)
from .symplectic import (FREQ_SCALE, SYMPLECTIC, TIME_SCALE, RayParams, SymplecticEvaluator,
                         inversion_tomogram, invert_symplectic, quasidist_from_tomogram,
                         tomogram_from_wigner)
from .wavelet import admissibility_constant, cwt, icwt

DEFAULTS = {
    "grid.start": -8.0,
    "grid.step": 0.0625,
    "grid.count": 257,
    "signals": "gaussian,gabor_wavelet,mexican_hat,chirp,two_tone",
    "tolerance_scale": 1.0,
    "symplectic.theta_count": 9,
    "symplectic.x_half_width": 12.0,
    "symplectic.x_step": 0.05,
    "symplectic.inversion_mu_max": 12.0,
    "symplectic.inversion_mu_step": 0.1,
    "symplectic.inversion_t_max": 4.0,
    "symplectic.inversion_t_step": 0.125,
    "affine.s_half_width": 40.0,
    "affine.s_step": 0.05,
    "affine.inversion_mu_max": 10.0,
    "affine.inversion_mu_step": 0.1,
    "affine.dilation": 6.0,
    "wavelet.scale_min": 0.0625,
    "wavelet.scale_max": 16.0,
    "wavelet.scale_count": 64,
    "photon.n_max": 40,
    "verify.inversions": True,
}


def _coerce(key, raw, like):
    if isinstance(like, bool):
        v = str(raw).strip().lower()
        if v in ("1", "true", "yes", "on"):
            return True
        if v in ("0", "false", "no", "off"):
            return False
        raise ConfigError(f"{key}: expected a boolean, got {raw!r}")
    try:
        if isinstance(like, int):
            return int(raw)
        if isinstance(like, float):
            return float(raw)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{key}: cannot parse {raw!r}") from exc
    return str(raw).strip()


def make_config(overrides=None) -> dict:
    """Defaults updated with ``overrides``; validates keys, types and signals."""
    cfg = dict(DEFAULTS)
    for key, raw in (overrides or {}).items():
        if key not in DEFAULTS:
            raise ConfigError(f"unknown config key {key!r}")
        cfg[key] = _coerce(key, raw, DEFAULTS[key])
    try:
        cfg["_kinds"] = [SignalKind.parse(s) for s in cfg["signals"].split(",") if s.strip()]
        make_axis(cfg["grid.start"], cfg["grid.step"], cfg["grid.count"])
    except (InvalidArgument, ValueError) as exc:
        raise ConfigError(str(exc)) from exc
    if not cfg["_kinds"]:
        raise ConfigError("no signals selected")
    if not cfg["tolerance_scale"] >= 0:
        raise ConfigError("tolerance_scale must be nonnegative")
    return cfg


def parse_config_text(text: str) -> dict:
    out = {}
    for n, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise ConfigError(f"line {n}: expected 'key = value'")
        out[key.strip()] = value.strip()
    return out


def load_config(path=None, overrides=None) -> dict:
    raw = {}
    if path is not None:
        try:
            raw = parse_config_text(Path(path).read_text())
        except OSError as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
    raw.update(overrides or {})
    return make_config(raw)


@dataclass(frozen=True)
class Check:
    name: str
    residual: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return bool(self.residual <= self.tolerance)


@dataclass
class VerificationReport:
    checks: list
    metadata: dict
    # kept out of the serialized report so that reports are reproducible
    wall_time: float = field(default=0.0, compare=False)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self):
        return [c for c in self.checks if not c.passed]

    def to_json(self) -> str:
        body = {
            "metadata": self.metadata,
            "checks": [{"name": c.name, "residual": c.residual, "tolerance": c.tolerance,
                        "passed": c.passed} for c in self.checks],
            "passed": self.passed,
        }
        return json.dumps(body, sort_keys=True, indent=1) + "\n"

    def to_text(self) -> str:
        lines = [f"{'PASS' if c.passed else 'FAIL'} {c.name} "
                 f"residual={c.residual:.3e} tol={c.tolerance:.1e}" for c in self.checks]
        lines.append(f"{len(self.checks) - len(self.failures())}/{len(self.checks)} checks passed")
        return "\n".join(lines) + "\n"


# --- the suite ------------------------------------------------------------

def _rel_l2_phase(g: np.ndarray, ref: np.ndarray) -> float:
    """Relative L2 error after the best global phase."""
    ov = np.vdot(g, ref)
    ph = ov / abs(ov) if ov != 0 else 1.0
    return float(np.linalg.norm(g * ph - ref) / np.linalg.norm(ref))


def _reference(kind: SignalKind, grid: Axis, out: Axis) -> np.ndarray:
    """Normalized closed form on ``out`` with the normalization of ``grid``."""
    n = math.sqrt(synthesize(kind, grid).norm2())
    return kind.evaluate(out.points()) / n


class _Suite:
    def __init__(self, cfg):
        self.cfg = cfg
        self.grid = make_axis(cfg["grid.start"], cfg["grid.step"], cfg["grid.count"])
        self.kinds = cfg["_kinds"]
        self.sig = {str(k): synthesize(k, self.grid, normalize=True) for k in self.kinds}
        self.checks = []

    def add(self, name, residual, tol):
        self.checks.append(Check(name, float(residual), float(tol) * self.cfg["tolerance_scale"]))

    def x_axis(self):
        c = self.cfg
        return symmetric_axis(c["symplectic.x_half_width"], c["symplectic.x_step"])

    def s_axis(self):
        c = self.cfg
        return symmetric_axis(c["affine.s_half_width"], c["affine.s_step"])

    # criterion-level checks
    def normalization(self):
        xa, sa = self.x_axis(), self.s_axis()
        n = self.cfg["symplectic.theta_count"]
        thetas = np.arange(n) * math.pi / n
        arays = [(0.0, 1.0), (1.0, 1.0), (0.5, -0.7)]
        for name, f in self.sig.items():
            ev = SymplecticEvaluator(f)
            m = [ev.values(math.cos(t), math.sin(t), xa.points()) @ xa.weights() for t in thetas]
            self.add(f"normalization.symplectic.{name}", max(abs(v - 1) for v in m), 1e-4)
            for fam in (TIME_SCALE, FREQ_SCALE):
                mev = MellinEvaluator(f, fam)
                m = [mev.row(mu, nu, sa) @ sa.weights() for mu, nu in arays]
                self.add(f"normalization.{fam}.{name}", max(abs(v - 1) for v in m), 1e-3)

    def golden(self):
        g = synthesize("gaussian", self.grid, normalize=True)
        xa = self.x_axis()
        ev = SymplecticEvaluator(g)
        ref = np.exp(-xa.points() ** 2) / math.sqrt(math.pi)
        rms = max(math.sqrt(np.mean((ev.values(math.cos(t), math.sin(t), xa.points()) - ref) ** 2))
                  for t in np.linspace(0, math.pi, 9))
        self.add("golden.symplectic_gaussian", rms, 1e-5)
        mu, nu = np.meshgrid(np.linspace(-2, 2, 5), np.linspace(-2, 2, 5))
        q = ambiguity_at(g, mu.ravel(), nu.ravel())
        self.add("golden.ambiguity_gaussian",
                 np.max(np.abs(q - np.exp(-(mu.ravel() ** 2 + nu.ravel() ** 2) / 4))), 1e-6)
        one = Axis(0.0, 1.0, 2)
        wv = wigner_ville(g, one, one)
        self.add("golden.wigner_origin", abs(wv.values[0, 0].real - 2.0), 1e-3)
        hk = husimi_kano(g, Axis(1.0, 1.0, 2), Axis(1.0, 1.0, 2))
        self.add("golden.husimi_1_1", abs(hk.values[0, 0].real - math.exp(-1)), 1e-6)

    def radon(self):
        xa = symmetric_axis(6.0, 0.05)
        om = symmetric_axis(12.0, 0.0625)
        for name, f in self.sig.items():
            with warnings.catch_warnings():
                warnings.simplefilter("ignore", TomoxWarning)
                wv = wigner_ville(f, f.axis, om)
            ev = SymplecticEvaluator(f)
            worst = 0.0
            for th in (0, math.pi / 6, math.pi / 4, math.pi / 3, math.pi / 2):
                ray = RayParams.from_angle(th)
                a = tomogram_from_wigner(wv, ray, xa).values[0]
                b = ev.values(ray.mu, ray.nu, xa.points())
                worst = max(worst, math.sqrt(np.mean((a - b) ** 2)))
            self.add(f"radon.{name}", worst, 1e-3)

    def homogeneity(self):
        xa, sa = self.x_axis(), self.s_axis()
        ps = (0.5, 2.0, -1.0)
        for name, f in self.sig.items():
            ev = SymplecticEvaluator(f)
            x = xa.points()
            mu, nu = 0.6, 0.8
            base = ev.values(mu, nu, x)
            res = max(np.max(np.abs(ev.values(mu / p, nu / p, x) - abs(p) * ev.values(mu, nu, p * x)))
                      for p in ps) / base.max()
            self.add(f"homogeneity.symplectic.{name}", res, 1e-3)
            for fam in (TIME_SCALE, FREQ_SCALE):
                mev = MellinEvaluator(f, fam)
                mu, nu = 0.7, 1.0
                base = mev.row(mu, nu, sa)
                worst = 0.0
                for p in ps:
                    lhs = mev.row(mu / p, nu / p, sa)
                    rhs = abs(p) * mev.row(mu, nu, sa.scaled(p))
                    if p < 0:
                        rhs = rhs[::-1]
                    worst = max(worst, float(np.max(np.abs(lhs - rhs))))
                self.add(f"homogeneity.{fam}.{name}", worst / base.max(), 1e-3)

    def inversions(self):
        c = self.cfg
        ta = symmetric_axis(c["symplectic.inversion_t_max"], c["symplectic.inversion_t_step"])
        ma = symmetric_axis(c["symplectic.inversion_mu_max"], c["symplectic.inversion_mu_step"])
        for kind, tol in (("gaussian", 2e-2), ("chirp", 5e-2)):
            k = SignalKind.parse(kind)
            f = synthesize(k, self.grid, normalize=True)
            g = invert_symplectic(inversion_tomogram(f, ta, ma), ta, ma)
            self.add(f"inversion.symplectic.{kind}_rel", _rel_l2_phase(g.values, _reference(k, self.grid, ta)), tol)
        am = symmetric_axis(c["affine.inversion_mu_max"], c["affine.inversion_mu_step"])
        for kind in ("gaussian", "chirp"):
            k = SignalKind.parse(kind)
            f = synthesize(k, self.grid, normalize=True)
            g = invert_time_scale(affine_inversion_tomogram(f, am), ta, dilation=c["affine.dilation"])
            self.add(f"inversion.time_scale.{kind}_rel", _rel_l2_phase(g.values, _reference(k, self.grid, ta)), 5e-2)
        h = synthesize("mexican_hat", self.grid, normalize=True)
        sa = make_log_axis(c["wavelet.scale_min"], c["wavelet.scale_max"], c["wavelet.scale_count"])
        out = symmetric_axis(4.0, self.grid.step)
        for kind in ("mexican_hat", "gabor_wavelet"):
            k = SignalKind.parse(kind)
            f = synthesize(k, self.grid, normalize=True)
            r = icwt(cwt(f, h, sa, self.grid), h, out)
            ref = _reference(k, self.grid, out)
            self.add(f"inversion.wavelet.{kind}_rel",
                     float(np.linalg.norm(r.values - ref) / np.linalg.norm(ref)), 2e-2)

    def polarization(self):
        names = list(self.sig)
        triples = [(names[i % len(names)], names[(i + 1) % len(names)]) for i in range(4)]
        rays = [RayParams(0.6, 0.8), RayParams(0.3, -0.5), RayParams(-1.0, 0.4)]
        for fam in POLARIZATION_FAMILIES:
            worst = 0.0
            for (hn, fn), ray in zip(triples, rays + rays[:1]):
                h, f = self.sig[hn], self.sig[fn]
                worst = max(worst, abs(wavelet_from_tomograms(h, f, fam, ray)
                                       - matrix_element(h, f, fam, ray)))
            self.add(f"polarization.{fam}", worst, 1e-3)
            worst = 0.0
            for name, f in self.sig.items():
                ray = RayParams(0.6, 0.8)
                worst = max(worst, abs(wavelet_from_tomograms(f, f, fam, ray)
                                       - matrix_element(f, f, fam, ray)))
            self.add(f"polarization_self.{fam}", worst, 1e-4)

    def energy(self):
        c = self.cfg
        h = synthesize("mexican_hat", self.grid, normalize=True)
        nh = admissibility_constant(h)
        sa = make_log_axis(c["wavelet.scale_min"], c["wavelet.scale_max"], c["wavelet.scale_count"])
        f = synthesize("mexican_hat", self.grid, normalize=True)
        res = abs(cwt(f, h, sa, self.grid).energy() / nh - 1.0)
        self.add("energy_identity_rel", res, 3e-2)

    def photon(self):
        g = synthesize("gaussian", self.grid, normalize=True)
        nmax = self.cfg["photon.n_max"]
        worst, mass = 0.0, 0.0
        for beta in (0.5, 1.0, 2.0):
            p = photon_number_tomogram(g, beta, nmax).probs
            n = np.arange(21)
            pois = np.exp(-beta ** 2 + 2 * n * math.log(beta)
                          - np.array([math.lgamma(k + 1) for k in n]))
            worst = max(worst, float(np.max(np.abs(p[:21] - pois))))
            mass = max(mass, abs(float(p[:41].sum()) - 1.0))
        self.add("photon.poisson", worst, 1e-6)
        self.add("photon.completeness", mass, 1e-8)

    def invariants(self):
        for name, f in self.sig.items():
            self.add(f"norm.{name}", abs(inner_product(f, f).real - 1.0), 1e-9)
        f = next(iter(self.sig.values()))
        ray = RayParams.from_angle(0.7)
        xa = self.x_axis()
        m = tomogram_from_characteristic(symplectic_characteristic(f, ray), xa, ray=ray)
        ref = SymplecticEvaluator(f).values(ray.mu, ray.nu, xa.points())
        self.add("characteristic_inverse.symplectic", math.sqrt(np.mean((m.values[0] - ref) ** 2)), 1e-3)
        q = quasidist_from_tomogram(m)
        self.add("characteristic_from_row.symplectic", abs(q - ambiguity_at(f, ray.mu, ray.nu)[0]), 1e-4)


def run_verify(config=None) -> VerificationReport:
    """Run the identity suite; ``config`` is a dict from :func:`load_config`."""
    cfg = config if config is not None else make_config()
    start = time.perf_counter()
    suite = _Suite(cfg)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", TomoxWarning)
        suite.normalization()
        suite.golden()
        suite.radon()
        suite.homogeneity()
        if cfg["verify.inversions"]:
            suite.inversions()
        suite.polarization()
        suite.energy()
        suite.photon()
        suite.invariants()
    checks = sorted(suite.checks, key=lambda c: c.name)
    meta = {k: v for k, v in sorted(cfg.items()) if not k.startswith("_")}
    meta["backend"] = _kernels.BACKEND
    return VerificationReport(checks, meta, time.perf_counter() - start)
