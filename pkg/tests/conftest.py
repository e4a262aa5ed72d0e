import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import settings

from quatkit.quaternion import Quaternion
from quatkit.scalar import Mode

settings.register_profile("ci", derandomize=True, deadline=None, max_examples=200)
settings.load_profile("ci")


def rand_fraction(rng: random.Random) -> Fraction:
    num = rng.randint(-100, 100)
    den = rng.choice([d for d in range(-100, 101) if d != 0])
    return Fraction(num, den)


def rand_quat(rng: random.Random) -> Quaternion:
    return Quaternion(*(rand_fraction(rng) for _ in range(4)))


def rand_nonzero_quat(rng: random.Random) -> Quaternion:
    while True:
        q = rand_quat(rng)
        if not q.is_zero():
            return q


def rand_float_quat(rng: random.Random, scale: float = 10.0) -> Quaternion:
    return Quaternion(*(rng.uniform(-scale, scale) for _ in range(4)), mode=Mode.FLOAT)


def leibniz_det(m):
    """Brute-force determinant over all permutations."""
    n = len(m)
    total = 0
    for perm in itertools.permutations(range(n)):
        inv = sum(1 for a in range(n) for b in range(a + 1, n) if perm[a] > perm[b])
        term = Fraction(-1 if inv % 2 else 1)
        for r in range(n):
            term *= m[r][perm[r]]
        total += term
    return total


@pytest.fixture
def rng():
    return random.Random(20240601)


# -- acceptance summary ------------------------------------------------------

_ACCEPTANCE: dict[str, tuple[str, str]] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        name = report.nodeid.split("::")[-1]
        _ACCEPTANCE[name] = (report.outcome, report.nodeid)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_ACCEPTANCE, key=lambda n: int(n.split("_")[1]) if n.split("_")[1].isdigit() else 99):
        outcome, _ = _ACCEPTANCE[name]
        status = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"{status}  {name}")
