from pathlib import Path

import pytest
from hypothesis import settings

from evokit import EvolutionAlgebra, Field, Matrix

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

GOLDEN = Path(__file__).resolve().parent.parent / "golden"

Q = Field.rational()
K2 = Field.tower(2)
K3 = Field.tower(3)


def algebra(rows, field=Q):
    return EvolutionAlgebra.from_rows(rows, field)


def mat(rows, field=Q):
    return Matrix(rows, field)


def reflection_example(a=1, b=2, c=3, d=4):
    """Structure matrix and reflection of the two-operator example."""
    A = [[a, a, b], [f"{a}*r-{a}", f"{a}*r-{a}", f"{b}*r-{b}"], [c, c, d]]
    G = [["r/2", "r/2", 0], ["r/2", "-r/2", 0], [0, 0, 1]]
    return algebra(A, K2), mat(G, K2)


def rotation_example():
    A = [[1, 1, 1], ["-i/2", "-i/2", "-i/2"], ["-i/2", "-i/2", "-i/2"]]
    G = [["5/3", "-4/3*i", 0], [0, 0, 1], ["-4/3*i", "-5/3", 0]]
    return algebra(A, K2), mat(G, K2)


@pytest.fixture
def golden():
    return GOLDEN


def to_sympy(x, d):
    """Exact sympy value of a tower scalar (independent oracle)."""
    import sympy

    r = sympy.sqrt(d) if d else 0
    R = sympy.Rational
    return R(x.a) + R(x.b) * r + (R(x.c) + R(x.e) * r) * sympy.I


def sympy_matrix(M):
    import sympy

    return sympy.Matrix(M.rows, M.cols, [to_sympy(x, M.field.d) for x in M.entries])


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
