import json
from pathlib import Path

import pytest

from ecx.curve import Curve, find_subgroups, subgroup_from_generator
from ecx.finite_field import ExtField, PrimeField

DATA = Path(__file__).parent / "data"

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def e11():
    """y^2 = x^3 + x + 6 over F_11: 13 points, cyclic of prime order."""
    return Curve(PrimeField(11), 1, 6)


@pytest.fixture(scope="session")
def g13(e11):
    return subgroup_from_generator(e11.point(2, 7))


@pytest.fixture(scope="session")
def e31():
    """y^2 = x^3 + 4x + 2 over F_31: 35 = 5 * 7 points."""
    return Curve(PrimeField(31), 4, 2)


@pytest.fixture(scope="session")
def f49():
    return ExtField(7, (1, 0, 1))


@pytest.fixture(scope="session")
def e49(f49):
    """y^2 = x^3 + x + 6 over F_{7^2}: 55 = 5 * 11 points."""
    return Curve(f49, f49(1), f49(6))


@pytest.fixture(scope="session")
def pinned_curves():
    spec = json.loads((DATA / "curves.json").read_text())
    return [(Curve(PrimeField(c["p"]), c["a"], c["b"]), c["points"]) for c in spec["curves"]]


@pytest.fixture(scope="session")
def ext1_audit_pairs(e11, g13, e31):
    s5 = find_subgroups(e31, 5)[0]
    s7 = find_subgroups(e31, 7)[0]
    s35 = find_subgroups(e31, 35)[0]
    return [
        ("E11 <13>x<13>", e11, g13, g13),
        ("E31 <5>x<7>", e31, s5, s7),
        ("E31 <7>x<5>", e31, s7, s5),
        ("E31 <35>x<35>", e31, s35, s35),
        ("E31 <5>x<35>", e31, s5, s35),
        ("E31 <7>x<7>", e31, s7, s7),
    ]


@pytest.fixture(scope="session")
def ext2_audit_pairs(e49):
    s5 = find_subgroups(e49, 5)[0]
    s11 = find_subgroups(e49, 11)[0]
    s55 = find_subgroups(e49, 55)[0]
    return [
        ("E49 <5>x<11>", e49, s5, s11),
        ("E49 <11>x<11>", e49, s11, s11),
        ("E49 <55>x<55>", e49, s55, s55),
        ("E49 <5>x<5>", e49, s5, s5),
    ]


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
