"""Lifting invariants over A5 and the spin cover.

A braid orbit of odd-order tuples gets a sign from lifting each entry to
its odd-order preimage in the double cover.  A sign of -1 means no cover
with those branch cycles lifts.
"""

from __future__ import annotations

from braidtower import liftinv
from braidtower.grouptower import alternating
from braidtower.permcore import Perm
from braidtower.spincover import product_sign, serre_formula

# %% Two tuples by hand: an H-M tuple and a (5,3,3) tuple
hm = [Perm.parse(c, 5) for c in ("(1 2 3)", "(1 3 2)", "(1 4 5)", "(1 5 4)")]
five = Perm.parse("(1 2 3 4 5)", 5)
t553 = [five**3, Perm.parse("(3 5 1)", 5), Perm.parse("(2 4 1)", 5)]
for name, t in (("H-M", hm), ("5-3-3", t553)):
    sign, applies = serre_formula(t)
    print(f"{name}: product of lifts {product_sign(t):+d}, genus-0 formula {sign:+d} (applies: {applies})")

# %% The obstruction table over A5
for name, rep in liftinv.a5_obstruction_suite(alternating(5)).items():
    orbits = ", ".join(f"{o.size} class{'es' if o.size != 1 else ''} s={o.s:+d}{' (H-M)' if o.has_hm else ''}" for o in rep.orbits) or "empty"
    print(f"{name:10s} {rep.count:4d} inner classes: {orbits}")
