"""Two comparison families: dihedral groups and the A4 tower.

Dihedral Nielsen classes of four involutions reproduce modular curves.
The A4 tower shows the lifting invariant separating components whose
genera differ.
"""

from __future__ import annotations

from braidtower import nielsen
from braidtower.cli import suite_a4tower

# %% Dihedral groups D_p^(k+1): absolute classes p^(k+1) + p^k, cusp widths 1 and p^(k+1)
for p, k in ((5, 0), (7, 0), (5, 1)):
    r = nielsen.dihedral_reference(p, k)
    print(f"D_{p ** (k + 1)}: absolute {r.absolute}, inner {r.inner}, q2 widths {r.q2_widths}")

# %% A4 with two 3-cycle classes, at levels 0 and 1
for check in suite_a4tower():
    print(f"{'ok ' if check.ok else 'BAD'} {check.name}: {check.computed}")
