import functools
import random
from pathlib import Path

import pytest

from g2torsion import jacobian as J
from g2torsion import oracle as O

DATA = Path(__file__).parent / "data"

# (name, p, f lowest degree first).  Group orders and structures are never
# written down here; tests get them from the enumeration oracle.
CURVES = [
    ("p3", 3, (1, 0, 1, 0, 0, 1)),
    ("p5", 5, (1, 2, 0, 0, 0, 1)),
    ("p7", 7, (2, 1, 0, 3, 0, 1)),
    ("p11", 11, (1, 1, 0, 0, 0, 1)),
    ("p13", 13, (3, 0, 2, 1, 5, 1)),
    ("p13_rank4", 13, (0, 11, 2, 9, 3, 1)),
    ("p13_three", 13, (6, 12, 12, 6, 9, 1)),
    ("p17", 17, (8, 7, 1, 5, 11, 1)),
    ("p19", 19, (17, 5, 6, 18, 15, 1)),
    ("p11_sextic", 11, (10, 0, 0, 0, 0, 0, 1)),
    ("p17_m1", 17, (9, 1, 1, 7, 3, 1)),
]
CURVE_IDS = [c[0] for c in CURVES]


@functools.lru_cache(maxsize=None)
def oracle_curve(name):
    """(ctx, enumerated group) for a registry curve, N taken from enumeration."""
    _, p, f = next(c for c in CURVES if c[0] == name)
    curve = J.validate_curve(p, f)
    grp = O.enumerate_jacobian(curve)
    ctx = J.GroupContext.create(curve, grp.N)
    return ctx, grp


@pytest.fixture(params=CURVE_IDS)
def any_curve(request):
    return oracle_curve(request.param)


@pytest.fixture
def rng():
    return random.Random(1234)


@pytest.fixture
def curve_file(tmp_path):
    """Write the oracle-verified curve file for a registry curve."""
    def make(name):
        ctx, grp = oracle_curve(name)
        path = tmp_path / f"{name}.curve"
        path.write_text(O.curve_file_text(ctx.curve, grp))
        return str(path)
    return make


@pytest.fixture(autouse=True)
def _quiet_env(monkeypatch):
    monkeypatch.delenv("G2TORSION_LOG", raising=False)
    yield


def big_curve_path():
    return str(DATA / "big_curve.txt")



ACCEPTANCE_LINES = []


@pytest.fixture
def acceptance_line():
    """Record the one-line verdict of an acceptance criterion."""
    def record(number, ok, detail):
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}"
        ACCEPTANCE_LINES.append((number, line))
        print(line)
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
