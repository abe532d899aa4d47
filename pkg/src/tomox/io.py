"""Signal input and field storage (binary and CSV).

Binary layout, little-endian throughout::

    b"TOMOX1" | uint32 header length | UTF-8 JSON header | float64 payload

The JSON header (sorted keys) fully describes the payload: the axes, the
value shape and whether values are complex (stored as re, im pairs) or real.
Floats in the header are written in shortest round-trip form, so a stored
field loads back bit for bit.
"""
from __future__ import annotations

import csv
import json
import struct
from pathlib import Path

import numpy as np

from .errors import FieldIOError, FormatError, GridError
from .quasidist import PhasePlaneField
from .signal import Axis, SampledSignal
from .symplectic import RayParams, TomogramField
from .wavelet import WaveletField

MAGIC = b"TOMOX1"
BIN = "bin"
CSV = "csv"

# column names of the axes, per field class
_PHASE_AXES = {
    "wigner_ville": ("tau", "omega"),
    "ambiguity": ("mu", "nu"),
    "affine": ("s", "tau"),
    "husimi": ("t", "omega"),
}


def _axis_header(ax: Axis) -> dict:
    return {"count": ax.count, "log": ax.log, "start": ax.start, "step": ax.step}


def _axis_from(d) -> Axis:
    try:
        return Axis(float(d["start"]), float(d["step"]), int(d["count"]), bool(d["log"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"bad axis descriptor {d!r}") from exc


def _describe(obj):
    """(header dict, values array) for any storable object."""
    if isinstance(obj, TomogramField):
        head = {"kind": "tomogram", "tag": obj.family, "axes": [_axis_header(obj.x_axis)],
                "rays": [[r.mu, r.nu] for r in obj.rays]}
        return head, obj.values
    if isinstance(obj, PhasePlaneField):
        head = {"kind": "phase_plane", "tag": obj.kind,
                "axes": [_axis_header(obj.axis1), _axis_header(obj.axis2)]}
        return head, obj.values
    if isinstance(obj, WaveletField):
        head = {"kind": "wavelet", "tag": obj.mother,
                "axes": [_axis_header(obj.s_axis), _axis_header(obj.tau_axis)]}
        return head, obj.values
    if isinstance(obj, SampledSignal):
        head = {"kind": "signal", "tag": obj.domain, "axes": [_axis_header(obj.axis)]}
        return head, obj.values
    raise TypeError(f"cannot store objects of type {type(obj).__name__}")


def _encode(obj) -> bytes:
    head, values = _describe(obj)
    values = np.asarray(values)
    cplx = np.iscomplexobj(values)
    head["complex"] = bool(cplx)
    head["shape"] = list(values.shape)
    text = json.dumps(head, sort_keys=True, separators=(",", ":")).encode("utf-8")
    dtype = "<c16" if cplx else "<f8"
    payload = np.ascontiguousarray(values, dtype=dtype).tobytes()
    return MAGIC + struct.pack("<I", len(text)) + text + payload


def _decode(data: bytes):
    if not data.startswith(MAGIC):
        raise FormatError("not a TOMOX1 field file")
    off = len(MAGIC)
    if len(data) < off + 4:
        raise FormatError("truncated header")
    (n,) = struct.unpack_from("<I", data, off)
    off += 4
    try:
        head = json.loads(data[off:off + n].decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise FormatError("unreadable header") from exc
    off += n
    try:
        shape = tuple(int(k) for k in head["shape"])
        dtype = "<c16" if head["complex"] else "<f8"
        kind, tag, axes = head["kind"], head["tag"], [_axis_from(a) for a in head["axes"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError("incomplete header") from exc
    width = 16 if head["complex"] else 8
    if len(data) - off != width * int(np.prod(shape)):
        raise FormatError("payload length does not match the header")
    values = np.frombuffer(data, dtype=dtype, offset=off).reshape(shape)
    if kind == "tomogram":
        rays = tuple(RayParams(mu, nu) for mu, nu in head["rays"])
        return TomogramField(axes[0], rays, values, tag)
    if kind == "phase_plane":
        return PhasePlaneField(axes[0], axes[1], values, tag)
    if kind == "wavelet":
        return WaveletField(axes[0], axes[1], values, tag)
    if kind == "signal":
        return SampledSignal(axes[0], values, tag)
    raise FormatError(f"unknown field kind {kind!r}")


def _csv_rows(obj):
    """Header and data rows; complex values split into re, im columns."""
    num = repr  # shortest round-trip decimal form
    if isinstance(obj, TomogramField):
        yield ["mu", "nu", "x", "value"]
        x = obj.x_axis.points()
        for ray, row in zip(obj.rays, obj.values):
            for xi, v in zip(x, row):
                yield [num(ray.mu), num(ray.nu), num(float(xi)), num(float(v))]
        return
    if isinstance(obj, SampledSignal):
        yield ["t" if obj.domain == "time" else "omega", "re", "im"]
        for t, v in zip(obj.points(), obj.values):
            yield [num(float(t)), num(float(v.real)), num(float(v.imag))]
        return
    if isinstance(obj, PhasePlaneField):
        names, a1, a2 = _PHASE_AXES[obj.kind], obj.axis1, obj.axis2
    elif isinstance(obj, WaveletField):
        names, a1, a2 = ("s", "tau"), obj.s_axis, obj.tau_axis
    else:
        raise TypeError(f"cannot export objects of type {type(obj).__name__}")
    yield [names[0], names[1], "re", "im"]
    p2 = a2.points()
    for u, row in zip(a1.points(), obj.values):
        for w, v in zip(p2, row):
            yield [num(float(u)), num(float(w)), num(float(v.real)), num(float(v.imag))]


def store_field(field, path, format: str = BIN) -> None:
    """Write a field (or signal) as TOMOX1 binary or CSV."""
    path = Path(path)
    try:
        if format == BIN:
            path.write_bytes(_encode(field))
        elif format == CSV:
            with path.open("w", newline="") as fh:
                csv.writer(fh, lineterminator="\n").writerows(_csv_rows(field))
        else:
            raise ValueError(f"unknown format {format!r}")
    except OSError as exc:
        raise FieldIOError(f"cannot write {path}: {exc}") from exc


def load_field(path):
    """Read a TOMOX1 binary file back into the object that was stored."""
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        raise FieldIOError(f"cannot read {path}: {exc}") from exc
    return _decode(data)


def _uniform_axis(t: np.ndarray) -> Axis:
    if t.size < 2:
        raise GridError("a signal needs at least two samples")
    step = (t[-1] - t[0]) / (t.size - 1)
    if not step > 0:
        raise GridError("sample times must increase")
    dev = np.max(np.abs(t - (t[0] + step * np.arange(t.size))))
    if dev > 1e-9 * step:
        raise GridError(f"sample spacing is not uniform (deviation {dev:.3g})")
    return Axis(float(t[0]), float(step), t.size)


def load_signal(path, format: str = CSV) -> SampledSignal:
    """Read a time signal from CSV (columns t, re, im with a header row) or binary."""
    if format == BIN:
        obj = load_field(path)
        if not isinstance(obj, SampledSignal):
            raise FormatError("binary file does not hold a signal")
        return obj
    if format != CSV:
        raise FormatError(f"unknown format {format!r}")
    try:
        with Path(path).open(newline="") as fh:
            rows = [r for r in csv.reader(fh) if r and any(c.strip() for c in r)]
    except OSError as exc:
        raise FieldIOError(f"cannot read {path}: {exc}") from exc
    if not rows:
        raise FormatError("empty file")
    head = [c.strip().lower() for c in rows[0]]
    try:
        cols = [head.index(name) for name in ("t", "re", "im")]
    except ValueError as exc:
        raise FormatError(f"header must name columns t, re, im (got {rows[0]})") from exc
    try:
        data = np.array([[float(r[c]) for c in cols] for r in rows[1:]], dtype=float)
    except (ValueError, IndexError) as exc:
        raise FormatError("non-numeric or missing value") from exc
    if data.shape[0] < 2:
        raise FormatError("need at least two data rows")
    axis = _uniform_axis(data[:, 0])
    return SampledSignal(axis, data[:, 1] + 1j * data[:, 2])
