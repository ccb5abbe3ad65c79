"""Spin-cover lifting invariants of Nielsen classes.

Entries of odd order in an alternating group have unique lifts of the same
order to the spin cover.  For a tuple with product 1 the product of those
lifts is +1 or -1, and that sign is a braid invariant.  H-M tuples
(g1, g1^-1, g2, g2^-1) always give +1, which pins the sign convention.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .grouptower import FiniteGroup, GF2Module, element_index
from .nielsen import ClassSpec, NielsenClasses, enumerate_inner, is_hm_tuple, orbit_partition
from .permcore import Perm
from .spincover import canonical_odd_lift, product_sign

Embedding = Callable[[int], Perm]


class LiftError(ValueError):
    """The tuple cannot be lifted: an entry has even order or is not an even permutation."""


class MixedInvariant(AssertionError):
    """The lifting invariant is not constant on a braid orbit."""


def standard_embedding(G: FiniteGroup) -> Embedding:
    if G.perm_rep is None:
        raise LiftError(f"{G.name} has no permutation representation")
    return G.perm_rep


def lift_invariant(G: FiniteGroup, t: Sequence[int], embedding: Embedding) -> int:
    """Sign of the product of the odd-order lifts of the embedded entries."""
    perms = [embedding(int(x)) for x in t]
    for x, p in zip(t, perms):
        if G.element_order(int(x)) % 2 == 0:
            raise LiftError(f"entry {int(x)} has even order")
        if not p.is_even():
            raise LiftError(f"entry {int(x)} does not embed in the alternating group")
    return product_sign(perms)


def class_invariants(nc: NielsenClasses, embedding: Embedding) -> np.ndarray:
    """Invariant of every inner class, lifting each distinct entry once."""
    G = nc.G
    lifts = {}
    for x in np.unique(nc.tuples):
        x = int(x)
        p = embedding(x)
        if G.element_order(x) % 2 == 0 or not p.is_even():
            raise LiftError(f"entry {x} cannot be lifted")
        lifts[x] = canonical_odd_lift(p)
    out = np.empty(len(nc), dtype=np.int64)
    for i, t in enumerate(nc.tuples):
        acc = lifts[int(t[0])]
        for x in t[1:]:
            acc = acc * lifts[int(x)]
        if not acc.perm.is_identity():
            raise LiftError(f"class {i} does not have product 1")
        out[i] = acc.sign
    return out


def braid_orbits(nc: NielsenClasses) -> np.ndarray:
    """Orbit label of each inner class under q_1, ..., q_{r-1}."""
    r = nc.tuples.shape[1]
    return orbit_partition(len(nc), [nc.braid_perm(i) for i in range(1, r)])


@dataclass
class OrbitLift:
    size: int
    s: int
    has_hm: bool

    @property
    def obstructed(self) -> bool:
        return self.s == -1


@dataclass
class LiftReport:
    group: str
    classes: list[str]
    embedding: str
    count: int
    orbits: list[OrbitLift] = field(default_factory=list)

    @property
    def values(self) -> list[int]:
        return sorted(o.s for o in self.orbits)

    def to_json(self) -> dict:
        return {
            "group": self.group,
            "classes": self.classes,
            "embedding": self.embedding,
            "count": self.count,
            "orbits": [
                {"size": o.size, "s": o.s, "obstructed": o.obstructed, "has_hm": o.has_hm} for o in self.orbits
            ],
        }


def orbit_report(nc: NielsenClasses, embedding: Embedding, embedding_name: str = "standard") -> LiftReport:
    """Braid orbits with their invariant; raises MixedInvariant if s varies on an orbit."""
    G = nc.G
    label = (lambda x: str(G.labels[x])) if G.labels is not None else str
    rep = LiftReport(G.name, [label(x) for x in nc.spec.reps], embedding_name, len(nc))
    if len(nc) == 0:
        return rep
    s = class_invariants(nc, embedding)
    orb = braid_orbits(nc)
    for k in range(int(orb.max()) + 1):
        idx = np.nonzero(orb == k)[0]
        vals = set(s[idx].tolist())
        if len(vals) != 1:
            raise MixedInvariant(f"orbit {k} carries invariants {sorted(vals)}")
        hm = any(is_hm_tuple(G, nc.tuples[i]) for i in idx)
        rep.orbits.append(OrbitLift(len(idx), vals.pop(), hm))
    return rep


def obstruction_report(spec: ClassSpec, embedding: Embedding | None = None) -> LiftReport:
    """Inner Nielsen class of an odd-order class spec, split into braid orbits with s values.

    For these alternating-group examples s = -1 is exactly the obstruction
    to lifting a cover with the same branch cycle orders to the spin cover.
    """
    emb = embedding or standard_embedding(spec.group)
    return orbit_report(enumerate_inner(spec), emb, "standard" if embedding is None else "custom")


# class specs over A5 in cycle notation; 5+ and 5- are the two classes of 5-cycles
FIVE_PLUS = "(1 2 3 4 5)"
FIVE_MINUS = "(1 3 5 2 4)"
THREE = "(1 2 3)"
A5_OBSTRUCTION_SPECS: dict[str, tuple[str, ...]] = {
    "5+5-3": (FIVE_PLUS, FIVE_MINUS, THREE),
    "5+^3": (FIVE_PLUS,) * 3,
    "5+^2 3": (FIVE_PLUS, FIVE_PLUS, THREE),
    "5+^2 5-": (FIVE_PLUS, FIVE_PLUS, FIVE_MINUS),
    "5+^2 5-^2": (FIVE_PLUS, FIVE_PLUS, FIVE_MINUS, FIVE_MINUS),
    "5+5-3^2": (FIVE_PLUS, FIVE_MINUS, THREE, THREE),
}


def a5_obstruction_suite(A5: FiniteGroup) -> dict[str, LiftReport]:
    out = {}
    for name, cycles in A5_OBSTRUCTION_SPECS.items():
        reps = tuple(element_index(A5, Perm.parse(c, 5)) for c in cycles)
        out[name] = obstruction_report(ClassSpec(A5, reps))
    return out


# ---------------------------------------------------------------------------
# level 1: perturbed H-M normal form
# ---------------------------------------------------------------------------


@dataclass
class PerturbedHM:
    """Tuples (g1, a g1^-1 a, b g2 b, g2^-1) over the H-M reps, a and b in M.

    ``by_type`` and ``signs`` are keyed by the M-orbit names of (a, b)
    ("0", "V", "M3", "M5"); ``per_rep`` maps each H-M inner class to the
    inner classes reached from it.
    """

    by_type: dict[tuple[str, str], set[int]]
    signs: dict[tuple[str, str], set[int]]
    per_rep: dict[int, set[int]]

    def classes(self) -> set[int]:
        return set().union(*self.by_type.values())


def perturbed_hm(nc: NielsenClasses, embedding: Embedding, module: GF2Module) -> PerturbedHM:
    G = nc.G
    mul, inv = G.mul, G.inv
    # kernel elements (m, 1) sit at indices m >> 1
    kernel = [(m >> 1, module.orbit_name(m)) for m in range(0, 64, 2)]
    by_type: dict[tuple[str, str], set[int]] = {}
    signs: dict[tuple[str, str], set[int]] = {}
    per_rep: dict[int, set[int]] = {}
    for i in range(len(nc)):
        if not nc.is_hm(i):
            continue
        g1, _, g2, _ = (int(x) for x in nc.tuples[i])
        reached = per_rep.setdefault(i, set())
        for a, na in kernel:
            x2 = int(mul[mul[a, inv[g1]], a])
            for b, nb in kernel:
                x3 = int(mul[mul[b, g2], b])
                t = (g1, x2, x3, int(inv[g2]))
                if mul[mul[mul[g1, x2], x3], t[3]] != 0:
                    continue
                try:
                    j = nc.find(t)
                except KeyError:  # does not generate
                    continue
                reached.add(j)
                by_type.setdefault((na, nb), set()).add(j)
                signs.setdefault((na, nb), set()).add(lift_invariant(G, t, embedding))
    return PerturbedHM(by_type, signs, per_rep)
