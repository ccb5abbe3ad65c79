from __future__ import annotations

from collections import Counter

import numpy as np
import pytest

from braidtower import liftinv
from braidtower.grouptower import element_index
from braidtower.nielsen import ClassSpec, enumerate_inner
from braidtower.permcore import Perm
from braidtower.spincover import serre_formula


@pytest.fixture(scope="module")
def obstruction(A5):
    return liftinv.a5_obstruction_suite(A5)


def test_obstruction_suite_counts(obstruction):
    got = {k: (r.count, [(o.size, o.s) for o in r.orbits]) for k, r in obstruction.items()}
    assert got["5+5-3"] == (6, [(6, 1)])
    assert got["5+^3"] == (1, [(1, -1)])
    assert got["5+^2 3"] == (3, [(3, -1)])
    assert got["5+^2 5-"] == (0, [])


@pytest.mark.parametrize("name", ["5+^2 5-^2", "5+5-3^2"])
def test_two_orbit_splits(obstruction, name):
    r = obstruction[name]
    assert len(r.orbits) == 2
    assert r.values == [-1, 1]
    assert sum(o.size for o in r.orbits) == r.count


def test_no_hm_rep_in_5533(obstruction):
    assert not any(o.has_hm for o in obstruction["5+5-3^2"].orbits)
    assert [o.obstructed for o in obstruction["5+5-3^2"].orbits].count(True) == 1


def test_obstruction_matches_serre_where_applicable(A5, obstruction):
    # genus-0 transitive cases: the formula and the lift product agree class by class
    for name in ("5+^3", "5+^2 3", "5+5-3"):
        r = obstruction[name]
        reps = tuple(element_index(A5, Perm.parse(c, 5)) for c in liftinv.A5_OBSTRUCTION_SPECS[name])
        nc = enumerate_inner(ClassSpec(A5, reps))
        for t in nc.tuples:
            perms = [A5.labels[int(x)] for x in t]
            sign, ok = serre_formula(perms)
            if ok:
                assert sign == liftinv.lift_invariant(A5, t, A5.perm_rep)
        assert len(nc) == r.count


def test_level0_invariant(level0):
    rep = liftinv.orbit_report(level0.nc, level0.A5.perm_rep)
    assert [(o.size, o.s, o.has_hm) for o in rep.orbits] == [(18, 1, True)]
    assert rep.to_json()["orbits"][0]["obstructed"] is False


def test_even_order_entries_rejected(A5):
    inv = element_index(A5, Perm.parse("(1 2)(3 4)", 5))
    with pytest.raises(liftinv.LiftError):
        liftinv.lift_invariant(A5, (inv, inv), A5.perm_rep)


def test_level1_split(level1, spin40):
    s = liftinv.class_invariants(level1.nc, spin40)
    assert Counter(s.tolist()) == {1: 1152, -1: 1152}
    red = level1.red
    per = [set(s[np.concatenate([red.members[b] for b in o.points])].tolist()) for o in level1.orbits]
    assert per == [{1}, {-1}]


def test_class_invariants_agree_with_direct_lift(level1, spin40):
    s = liftinv.class_invariants(level1.nc, spin40)
    for i in range(0, len(level1.nc), 97):
        assert s[i] == liftinv.lift_invariant(level1.G, level1.nc.tuple(i), spin40)


def test_hm_reps_have_plus_one(level1, spin40):
    for i, tag in enumerate(level1.tags):
        if tag == "HM":
            assert liftinv.lift_invariant(level1.G, level1.nc.tuple(i), spin40) == 1


@pytest.fixture(scope="module")
def perturbed(level1, spin40):
    return liftinv.perturbed_hm(level1.nc, spin40, level1.G.module)


def test_perturbed_hm_sign_rule(perturbed):
    p = perturbed
    assert p.signs[("M3", "M3")] == {1}
    assert p.signs[("M5", "M5")] == {1}
    assert p.signs[("M3", "M5")] == {-1}
    assert p.signs[("M5", "M3")] == {-1}
    assert p.signs[("0", "0")] == {1}


def test_perturbed_hm_reduced_classes_per_rep(level1, perturbed):
    p = perturbed
    red = level1.red
    orbit_of = {}
    for k, o in enumerate(level1.orbits):
        for b in o.points:
            orbit_of[int(b)] = k
    for i, reached in p.per_rep.items():
        blocks = {int(red.block[j]) for j in reached}
        per = Counter(orbit_of[b] for b in blocks)
        assert (per[0], per[1]) == (8, 6)
    assert len(p.per_rep) == 16
