"""Level 1: the 2-Frattini extension G1 of A5 and its two components.

Builds G1 from a nonsplit cocycle, enumerates the 2304 inner classes of
four order-3 lifts, and separates the two M4-bar orbits by genus, cusps,
real points and the spin lifting invariant.
"""

from __future__ import annotations

import time
from collections import Counter

import numpy as np

from braidtower import braidact, grouptower, jline, liftinv, realpts
from braidtower.cli import build_level1

# %% G1 and its certificate
t0 = time.time()
L = build_level1()
print("G1:", grouptower.certify_G1(L.G))
print(f"inner classes {len(L.nc)}, reduced {len(L.red)}, tags {dict(Counter(L.tags))}  ({time.time() - t0:.1f}s)")

# %% The two orbits
sp = grouptower.spin_sep_rep(L.G)
s = liftinv.class_invariants(L.nc, sp)
for name, orb in zip(("O+", "O-"), L.orbits):
    cover = jline.branch_cycles(orb)
    members = np.concatenate([L.red.members[b] for b in orb.points])
    print(f"{name}: {len(orb)} reduced classes, genus {cover.genus()}, lifting invariant {set(s[members].tolist())}")
    print(f"  gamma_inf cycle lengths {dict(sorted(braidact.cycle_shape(orb.ginf).items()))}")
    print(f"  real points {realpts.real_counts(orb)}, components {realpts.real_components(orb).components}")

# %% Cusps of O+ carrying H-M and near H-M reps
plus = L.orbits[0]
for c in braidact.cusp_orbits(plus, L.tags):
    if c.hm_tag != "none":
        print(f"  O({c.u},{c.v};{c.a}) {c.hm_tag}")
print("real classes on O+:", realpts.hm_real_census(plus, L.tags, sp))

# %% Genus along the tower from the pullback arithmetic
for k in range(3):
    rk, g = grouptower.tower_arith(2, 5, 21, k)
    print(f"level {k}: rank {rk}, genus {g if g < 10**6 else f'1 + 5*2^{(g - 1).bit_length() - 3}'}")
