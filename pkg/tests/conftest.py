from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import pytest

from braidtower import braidact, grouptower, nielsen
from braidtower.grouptower import element_index
from braidtower.nielsen import ClassSpec
from braidtower.permcore import Perm


@dataclass
class Level0:
    A5: grouptower.FiniteGroup
    c3: int
    nc: nielsen.NielsenClasses
    ab: nielsen.ClassSet
    red: nielsen.ClassSet
    red_abs: nielsen.ClassSet


@pytest.fixture(scope="session")
def A5():
    return grouptower.alternating(5)


@pytest.fixture(scope="session")
def level0(A5) -> Level0:
    c3 = element_index(A5, Perm.parse("(1 2 3)", 5))
    nc = nielsen.enumerate_inner(ClassSpec(A5, (c3,) * 4))
    auts = nielsen.conjugation_automorphisms(A5, [Perm.parse("(1 2)", 5)])
    return Level0(
        A5,
        c3,
        nc,
        nielsen.absolute_classes(nc, auts),
        nielsen.reduced_classes(nc),
        nielsen.reduced_classes(nc, auts),
    )


@pytest.fixture(scope="session")
def G1():
    return grouptower.build_G1()


@pytest.fixture(scope="session")
def spin40(G1):
    return grouptower.spin_sep_rep(G1)


@pytest.fixture(scope="session")
def level1():
    # shares the construction used by `braidtower reproduce level1`; O+ first
    from braidtower.cli import build_level1

    return build_level1()


def lift_over(G, A5_elem: int, order: int) -> int:
    proj, _ = G.quotients["frattini:A5"]
    return int(np.nonzero((proj == A5_elem) & (G.element_orders == order))[0][0])


@pytest.fixture(scope="session")
def level0_orbits(level0):
    return {
        "abs": braidact.mbar4_orbits(level0.red_abs)[0],
        "inn": braidact.mbar4_orbits(level0.red)[0],
    }


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(RESULTS):
        terminalreporter.write_line(RESULTS[n])
