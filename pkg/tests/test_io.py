import csv

import numpy as np
import pytest

from tomox.errors import FieldIOError, FormatError, GridError
from tomox.io import BIN, CSV, MAGIC, load_field, load_signal, store_field
from tomox.quasidist import PhasePlaneField, ambiguity
from tomox.signal import Axis, SampledSignal, make_axis, make_log_axis, symmetric_axis
from tomox.symplectic import RayParams, TomogramField, tomogram_family
from tomox.wavelet import WaveletField, cwt


def write(tmp_path, text, name="s.csv"):
    p = tmp_path / name
    p.write_text(text)
    return p


class TestLoadSignal:
    def test_two_point(self, tmp_path):
        f = load_signal(write(tmp_path, "t,re,im\n0,1,0\n1,0,0\n"))
        assert f.axis == Axis(0.0, 1.0, 2)
        assert list(f.values) == [1, 0]

    def test_column_order_free(self, tmp_path):
        f = load_signal(write(tmp_path, "im,t,re\n0.5,0,1\n0,1,2\n"))
        assert f.values[0] == 1 + 0.5j

    def test_missing_im(self, tmp_path):
        with pytest.raises(FormatError):
            load_signal(write(tmp_path, "t,re\n0,1\n1,0\n"))

    def test_non_numeric(self, tmp_path):
        with pytest.raises(FormatError):
            load_signal(write(tmp_path, "t,re,im\n0,x,0\n1,0,0\n"))

    def test_jittered(self, tmp_path):
        with pytest.raises(GridError):
            load_signal(write(tmp_path, "t,re,im\n0,1,0\n1.01,0,0\n2,0,0\n"))

    def test_missing_file(self, tmp_path):
        with pytest.raises(FieldIOError):
            load_signal(tmp_path / "nope.csv")

    def test_binary_signal(self, tmp_path, signals):
        p = tmp_path / "f.bin"
        store_field(signals["chirp"], p)
        g = load_signal(p, BIN)
        assert np.array_equal(g.values, signals["chirp"].values) and g.axis == signals["chirp"].axis

    def test_binary_non_signal(self, tmp_path, gauss):
        p = tmp_path / "m.bin"
        store_field(tomogram_family(gauss, [0.3], symmetric_axis(2, 0.5)), p)
        with pytest.raises(FormatError):
            load_signal(p, BIN)

    def test_csv_round_trip(self, tmp_path, signals):
        p = tmp_path / "c.csv"
        store_field(signals["two_tone"], p, CSV)
        g = load_signal(p)
        assert np.array_equal(g.values, signals["two_tone"].values)


def fields(gauss):
    ax = symmetric_axis(1, 0.5)
    return [
        tomogram_family(gauss, [0.0, 0.4, 1.2], symmetric_axis(2, 0.25)),
        ambiguity(gauss, ax, ax),
        cwt(gauss, gauss, make_log_axis(0.5, 2, 3), ax, mother="gaussian"),
        gauss,
    ]


class TestBinary:
    @pytest.mark.parametrize("index", range(4))
    def test_round_trip_bit_exact(self, tmp_path, gauss, index):
        obj = fields(gauss)[index]
        p = tmp_path / "x.bin"
        store_field(obj, p)
        back = load_field(p)
        assert type(back) is type(obj)
        assert back.values.tobytes() == np.asarray(obj.values).tobytes()
        store_field(back, tmp_path / "y.bin")
        assert (tmp_path / "y.bin").read_bytes() == p.read_bytes()

    def test_metadata_kept(self, tmp_path, gauss):
        m, q, w, _ = fields(gauss)
        for obj, name in ((m, "m"), (q, "q"), (w, "w")):
            store_field(obj, tmp_path / name)
        assert load_field(tmp_path / "m").rays == m.rays
        assert load_field(tmp_path / "q").kind == "ambiguity"
        back = load_field(tmp_path / "w")
        assert back.mother == "gaussian" and back.s_axis == w.s_axis

    def test_header_layout(self, tmp_path, gauss):
        p = tmp_path / "f.bin"
        store_field(gauss, p)
        data = p.read_bytes()
        assert data.startswith(MAGIC)
        n = int.from_bytes(data[6:10], "little")
        assert len(data) == 10 + n + 16 * gauss.axis.count

    def test_bad_magic(self, tmp_path):
        p = tmp_path / "bad.bin"
        p.write_bytes(b"NOPE" + bytes(20))
        with pytest.raises(FormatError):
            load_field(p)

    def test_truncated_payload(self, tmp_path, gauss):
        p = tmp_path / "f.bin"
        store_field(gauss, p)
        p.write_bytes(p.read_bytes()[:-8])
        with pytest.raises(FormatError):
            load_field(p)

    def test_unwritable(self, tmp_path, gauss):
        with pytest.raises(FieldIOError):
            store_field(gauss, tmp_path / "missing" / "f.bin")


class TestCsv:
    def test_three_by_three(self, tmp_path):
        ax = make_axis(0, 1, 3)
        q = PhasePlaneField(ax, ax, np.arange(9).reshape(3, 3) * (1 + 1j), "ambiguity")
        p = tmp_path / "q.csv"
        store_field(q, p, CSV)
        rows = list(csv.reader(p.open()))
        assert rows[0] == ["mu", "nu", "re", "im"] and len(rows) == 10
        assert rows[5] == ["1.0", "1.0", "4.0", "4.0"]

    def test_shortest_round_trip_digits(self, tmp_path):
        f = SampledSignal(make_axis(0, 0.1, 2), [1 / 3, 2 / 3 + 0.1j])
        p = tmp_path / "f.csv"
        store_field(f, p, CSV)
        rows = list(csv.reader(p.open()))
        assert rows[1] == ["0.0", repr(1 / 3), "0.0"]
        assert float(rows[2][1]) == 2 / 3

    def test_tomogram_columns(self, tmp_path):
        m = TomogramField(make_axis(0, 1, 2), (RayParams(1, 0),), [[0.5, 0.25]])
        p = tmp_path / "m.csv"
        store_field(m, p, CSV)
        assert list(csv.reader(p.open())) == [["mu", "nu", "x", "value"],
                                              ["1.0", "0.0", "0.0", "0.5"],
                                              ["1.0", "0.0", "1.0", "0.25"]]

    def test_wavelet_columns(self, tmp_path):
        w = WaveletField(make_log_axis(1, 2, 2), make_axis(0, 1, 2), np.ones((2, 2)))
        p = tmp_path / "w.csv"
        store_field(w, p, CSV)
        assert next(csv.reader(p.open())) == ["s", "tau", "re", "im"]
