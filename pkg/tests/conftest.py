import math
import sys
from pathlib import Path

import numpy as np
import pytest

from tomox.signal import DEFAULT_KINDS, make_axis, synthesize

sys.path.insert(0, str(Path(__file__).parent))


@pytest.fixture(scope="session")
def grid():
    return make_axis(-8.0, 0.0625, 257)


@pytest.fixture(scope="session")
def signals(grid):
    """Normalized built-in signals keyed by kind name."""
    return {k.name: synthesize(k, grid, normalize=True) for k in DEFAULT_KINDS}


@pytest.fixture(scope="session")
def gauss(signals):
    return signals["gaussian"]


def rel_l2_phase(g, ref):
    """Relative L2 distance after removing the best global phase."""
    ov = np.vdot(g, ref)
    ph = ov / abs(ov) if ov != 0 else 1.0
    return float(np.linalg.norm(g * ph - ref) / np.linalg.norm(ref))


def reference(kind, grid, out_axis):
    """Closed form of ``kind`` on ``out_axis`` with the trapezoid norm of ``grid``."""
    n = math.sqrt(synthesize(kind, grid).norm2())
    return kind.evaluate(out_axis.points()) / n


ACCEPTANCE_LINES = []


@pytest.fixture
def criterion():
    """Record one PASS/FAIL line; returns a callable(label, residual, tol, seconds=None, limit=None)."""
    def record(label, residual, tol, seconds=None, limit=None):
        ok = residual <= tol and (limit is None or seconds < limit)
        line = f"{'PASS' if ok else 'FAIL'} {label}: residual {residual:.3e} (tol {tol:.0e})"
        if seconds is not None:
            line += f", {seconds:.1f} s" + (f" (limit {limit:.0f} s)" if limit else "")
        ACCEPTANCE_LINES.append(line)
        print(line)
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
