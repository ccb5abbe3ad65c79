from __future__ import annotations

import itertools
import json
from collections import Counter

import numpy as np
import pytest

from braidtower import braidact, nielsen
from braidtower.grouptower import element_index
from braidtower.nielsen import BudgetExceeded, ClassSpec
from braidtower.permcore import Perm, PermGroup


def _brute_generating_tuples(A5, x: int) -> int:
    """4-tuples of conjugates of x with product 1 generating A5, counted directly on permutations."""
    cls = [A5.labels[y] for y in A5.class_of(x)]
    ident = Perm.identity(5)
    n = 0
    for a, b, c in itertools.product(cls, repeat=3):
        d = (a * b * c).inverse()
        if d == ident or d.cycle_type() != cls[0].cycle_type():
            continue
        if PermGroup([a, b, c, d], 5).order() == 60:
            n += 1
    return n


def test_level0_counts_against_brute_force(level0):
    n = _brute_generating_tuples(level0.A5, level0.c3)
    # A5 is centerless and S5 acts freely on generating tuples
    assert len(level0.nc) == n // 60 == 18
    assert len(level0.ab) == n // 120 == 9


def test_level0_single_braid_orbit(level0):
    nc = level0.nc
    labels = nielsen.orbit_partition(len(nc), [nc.braid_perm(i) for i in (1, 2, 3)])
    assert set(labels.tolist()) == {0}


def test_enumerate_nielsen_modes(level0):
    spec = level0.nc.spec
    assert len(nielsen.enumerate_nielsen(spec, "inner")) == 18
    assert len(nielsen.enumerate_nielsen(spec, "reduced-inner")) == 18
    with pytest.raises(ValueError):
        nielsen.enumerate_nielsen(spec, "sideways")


def test_budget_abort(level0):
    with pytest.raises(BudgetExceeded) as err:
        nielsen.enumerate_inner(level0.nc.spec, budget=10)
    assert err.value.estimate > 10


def test_hm_shape_tag(level0):
    A5 = level0.A5
    t = [element_index(A5, Perm.parse(c, 5)) for c in ("(1 2 3)", "(1 3 2)", "(1 4 5)", "(1 5 4)")]
    i = level0.nc.find(t)
    assert level0.nc.is_hm(i)
    assert level0.nc.classify_hm()[i] == "HM"


def test_level1_census(level1):
    assert len(level1.nc) == 2304
    c = Counter(level1.tags)
    assert c["HM"] == 16 and c["nearHM"] == 16


def test_level1_one_hm_and_one_near_hm_per_q2_orbit(level1):
    nc = level1.nc
    q2 = nc.braid_perm(2)
    labels = nielsen.orbit_partition(len(nc), [q2])
    for tag in ("HM", "nearHM"):
        per = Counter(int(labels[i]) for i, t in enumerate(level1.tags) if t == tag)
        assert set(per.values()) == {1}
    hm_orbits = {int(labels[i]) for i, t in enumerate(level1.tags) if t == "HM"}
    near_orbits = {int(labels[i]) for i, t in enumerate(level1.tags) if t == "nearHM"}
    assert hm_orbits.isdisjoint(near_orbits)


def test_near_hm_synthesis(level1):
    G, nc = level1.G, level1.nc
    hm = [i for i, t in enumerate(level1.tags) if t == "HM"]
    for i in hm:
        g1, _, g2, _ = nc.tuple(i)
        assert level1.tags[nc.find(nielsen.near_hm_synthesize(G, g1, g2))] == "nearHM"
    assert len(hm) == 16


def test_complement_construction_returns_to_hm(level1):
    # g' = (g1, c g1^-1 c, c g2 c, g2^-1) with c = (g1^-1 g2)^5; ten q2 steps bring it back
    G, nc = level1.G, level1.nc
    for i, t in enumerate(level1.tags):
        if t != "HM":
            continue
        g1, _, g2, _ = nc.tuple(i)
        c = G.power(int(G.mul[G.inv[g1], g2]), 5)
        gp = (g1, G.prod([c, G.inv[g1], c]), G.prod([c, g2, c]), int(G.inv[g2]))
        assert level1.tags[nc.find(gp)] == "complement"
        assert nc.find(braidact.braid_apply(G, (2,) * 10, gp)) == i


def test_complement_is_half_the_q2_orbit(level1):
    nc = level1.nc
    q2 = nc.braid_perm(2)
    for i, t in enumerate(level1.tags):
        if t == "HM":
            j = i
            for _ in range(10):
                j = int(q2[j])
            assert level1.tags[j] == "complement"


def test_class_product_count(A5):
    c3 = element_index(A5, Perm.parse("(1 2 3)", 5))
    cls = A5.class_of(c3).tolist()
    five = A5.class_of(element_index(A5, Perm.parse("(1 2 3 4 5)", 5))).tolist()
    for g in five[:4]:
        brute = sum(1 for a in cls for b in cls if A5.mul[A5.mul[a, b], g] == 0)
        assert nielsen.class_product_count(A5, [c3, c3], g) == brute > 0
    x = five[0]
    assert nielsen.class_product_count(A5, [int(A5.inv[x])], x) == 1


def test_class_product_count_5_5_to_3(A5):
    f = element_index(A5, Perm.parse("(1 2 3 4 5)", 5))
    g = element_index(A5, Perm.parse("(1 2 3)", 5))
    assert nielsen.class_product_count(A5, [f, f], g) > 0


@pytest.mark.parametrize("p,k,absolute,inner,widths", [(5, 0, 6, 12, [1, 5]), (7, 0, 8, 24, [1, 7])])
def test_dihedral_reference(p, k, absolute, inner, widths):
    r = nielsen.dihedral_reference(p, k)
    assert (r.absolute, r.inner, r.q2_widths) == (absolute, inner, widths)
    assert r.normalizer_order == p * nielsen.euler_phi(p)


def test_dihedral_25():
    r = nielsen.dihedral_reference(5, 1)
    assert (r.absolute, r.inner) == (30, 300)
    assert 1 in r.q2_widths and 25 in r.q2_widths


def test_json_dump_is_deterministic(level0):
    a = nielsen.dump_json(level0.ab)
    b = nielsen.dump_json(level0.ab)
    assert a == b
    data = json.loads(a)
    assert data["schema"] == nielsen.SCHEMA


def test_classspec_validation(A5):
    with pytest.raises(ValueError):
        ClassSpec(A5, (1, 2))
    with pytest.raises(ValueError):
        ClassSpec(A5, (1, 2, 999))


def test_mpr_values(level0):
    assert set(np.unique(level0.nc.mprs).tolist()) <= {1, 2, 3, 5}
