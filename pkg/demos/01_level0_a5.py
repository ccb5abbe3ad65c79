"""Level 0: four 3-cycles in A5.

Walks from Nielsen classes to the two j-line covers they define, then to
cusps, the sh-incidence matrix and real points.
"""

from __future__ import annotations

from braidtower import braidact, jline, nielsen, realpts
from braidtower.grouptower import alternating, element_index
from braidtower.permcore import Perm

# %% Nielsen classes
A5 = alternating(5)
c3 = element_index(A5, Perm.parse("(1 2 3)", 5))
nc = nielsen.enumerate_inner(nielsen.ClassSpec(A5, (c3,) * 4))
auts = nielsen.conjugation_automorphisms(A5, [Perm.parse("(1 2)", 5)])
absolute = nielsen.reduced_classes(nc, auts)
inner = nielsen.reduced_classes(nc)
print(f"inner classes: {len(nc)}, absolute classes: {len(absolute)}")

# %% Each equivalence gives one M4-bar orbit, hence one cover of the j-line
for name, cs in (("absolute", absolute), ("inner", inner)):
    (orb,) = braidact.mbar4_orbits(cs)
    cover = jline.branch_cycles(orb)
    print(f"{name}: degree {cover.degree}, genus {cover.genus()}, cusp widths {sorted(cover.widths)}")
    print(f"  gamma_0   = {cover.gamma0}")
    print(f"  gamma_1   = {cover.gamma1}")
    print(f"  gamma_inf = {cover.gammainf}")
    print(f"  monodromy group order {jline.monodromy_order(cover)}")

# %% Cusps of the inner cover, labelled O(mpr, width; a), and the sh-incidence matrix
(orb,) = braidact.mbar4_orbits(inner)
cusps = braidact.cusp_orbits(orb, nc.classify_hm())
S = braidact.sh_incidence(orb, cusps)
for c, row in zip(cusps, S.matrix):
    tag = "" if c.hm_tag == "none" else f" [{c.hm_tag}]"
    print(f"O({c.u},{c.v};{c.a}){tag:6s}", row.tolist())

# %% Real points over the three real intervals of the j-line
for name, cs in (("absolute", absolute), ("inner", inner)):
    (orb,) = braidact.mbar4_orbits(cs)
    counts = realpts.real_counts(orb)
    print(f"{name}: real points {counts}, real components {realpts.real_components(orb).components}")
