from __future__ import annotations

import numpy as np
import pytest

from braidtower import braidact, nielsen, realpts
from braidtower.grouptower import element_index
from braidtower.permcore import Perm


def _hm(A5):
    return tuple(element_index(A5, Perm.parse(c, 5)) for c in ("(1 2 3)", "(1 3 2)", "(1 4 5)", "(1 5 4)"))


def test_khat_fixes_hm_rep(A5):
    t = _hm(A5)
    assert realpts.khat(A5, t, 0) == t


def test_khat_is_an_involution_up_to_conjugacy(level0):
    nc = level0.nc
    for r1 in (0, 2, 4):
        for i in range(len(nc)):
            t = nc.tuple(i)
            assert nc.find(realpts.khat(nc.G, realpts.khat(nc.G, t, r1), r1)) == i


def test_khat_bad_split(A5):
    with pytest.raises(ValueError):
        realpts.khat(A5, _hm(A5), 1)


def test_khat_on_near_hm_is_conjugation_by_c(level1):
    G, nc = level1.G, level1.nc
    for i, tag in enumerate(level1.tags):
        if tag != "HM":
            continue
        g1, _, g2, _ = nc.tuple(i)
        gs = nielsen.near_hm_synthesize(G, g1, g2)
        c = G.power(int(G.mul[g1, g2]), 5)
        assert realpts.khat(G, gs, 0) == tuple(G.prod([c, x, c]) for x in gs)


def test_level0_real_counts(level0_orbits):
    assert realpts.real_counts(level0_orbits["abs"]) == {"(1,inf)": 3, "(0,1)": 3, "(-inf,0)": 3}
    assert realpts.real_counts(level0_orbits["inn"]) == {"(1,inf)": 4, "(0,1)": 2, "(-inf,0)": 2}


def test_interval_conjugations_invert_boundary_loops(level0_orbits):
    for o in level0_orbits.values():
        conj = realpts.interval_conjugations(o)
        loops = {"0": o.g0, "1": o.g1, "inf": o.ginf}
        for iv, c in conj.items():
            assert np.array_equal(c[c], np.arange(len(o)))
            for e in realpts._ENDS[iv]:
                g = loops[e]
                # c g c = g^-1
                assert np.array_equal(c[g[c]], np.argsort(g))


def test_level0_components(level0_orbits):
    for o in level0_orbits.values():
        rep = realpts.real_components(o)
        assert rep.components == 1
        assert all(len(arcs) == 2 for _, _, _, arcs in rep.pairings)
        assert rep.to_json()["components"] == 1


def test_level1_real_locus(level1):
    plus, minus = level1.orbits
    assert realpts.real_counts(plus) == {"(1,inf)": 16, "(0,1)": 0, "(-inf,0)": 0}
    assert realpts.real_counts(minus) == dict.fromkeys(realpts.INTERVALS, 0)
    assert realpts.real_components(plus).components == 1
    assert realpts.real_components(minus).components == 0


def test_hm_classification(level1, spin40):
    G, nc = level1.G, level1.nc
    kinds = {}
    for i, tag in enumerate(level1.tags):
        if tag in ("HM", "nearHM"):
            kinds.setdefault(tag, set()).add(realpts.hm_real_classification(G, nc.tuple(i), tag, spin40))
    assert kinds == {"HM": {("cover-point-all-real", 1)}, "nearHM": {("near-HM-no-real-point", 4)}}


def test_hm_real_census(level1, spin40):
    plus, minus = level1.orbits
    census = realpts.hm_real_census(plus, level1.tags, spin40)
    assert census == {"cover-point-all-real": 4, "near-HM-no-real-point": 4, "complement": 8}
    assert sum(census.values()) == 16
    assert realpts.hm_real_census(minus, level1.tags, spin40) == {}


def test_near_hm_needs_spin_rep(level1):
    i = level1.tags.index("nearHM")
    with pytest.raises(ValueError):
        realpts.hm_real_classification(level1.G, level1.nc.tuple(i), "nearHM")


def test_real_classes_consistent_within_reduced_class(level1):
    for o in level1.orbits:
        for r1 in (0, 2, 4):
            realpts.real_reduced_classes(o, r1)  # raises on mixed verdicts


def test_orbit_swapped_by_conjugation_has_no_real_points():
    from braidtower.cli import resolve_group

    ctx = resolve_group("G1A5|A4")
    H = ctx.group
    hp, hm = ctx.to_point(Perm.parse("(1 2 3)", 5)), ctx.to_point(Perm.parse("(1 3 2)", 5))
    nc = nielsen.enumerate_inner(nielsen.ClassSpec(H, (hp, hp, hm, hm)))
    orbs = braidact.mbar4_orbits(nielsen.reduced_classes(nc))
    swapped = 0
    for o in orbs:
        try:
            realpts.conjugation_perm(o, 4)
        except realpts.OrbitNotReal:
            swapped += 1
            assert realpts.real_counts(o) == dict.fromkeys(realpts.INTERVALS, 0)
    assert swapped > 0
