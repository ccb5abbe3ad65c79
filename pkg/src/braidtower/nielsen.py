"""Nielsen classes: enumeration, canonical forms and equivalences.

Tuples are tuples of element indices of a :class:`FiniteGroup`.  The inner
canonical form conjugates g1 to the least element of its class and then
minimises lexicographically over the centralizer of that element.  Absolute
and reduced classes are orbit partitions of the inner classes (under outer
automorphisms and under Q'' respectively), so every mode shares one indexing.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from itertools import permutations
from math import gcd
from typing import Iterable, Sequence

import numpy as np

from .grouptower import FiniteGroup
from .permcore import EnumerationOverflow, Perm

DEFAULT_BUDGET = 5 * 10**7
SCHEMA = "braidtower/1"


class BudgetExceeded(EnumerationOverflow):
    """Raised before enumeration when the search estimate exceeds the budget."""

    def __init__(self, budget: int, estimate: int):
        RuntimeError.__init__(self, f"search estimate {estimate} exceeds budget {budget}")
        self.cap = budget
        self.partial_bound = estimate
        self.budget = budget
        self.estimate = estimate


@dataclass(frozen=True)
class ClassSpec:
    """A multiset of conjugacy classes of ``group``, given by representatives."""

    group: FiniteGroup
    reps: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.reps) < 3:
            raise ValueError("need at least three classes")
        for x in self.reps:
            if not 0 <= x < self.group.n:
                raise ValueError(f"representative {x} is not in the group")

    @property
    def r(self) -> int:
        return len(self.reps)

    @cached_property
    def class_ids(self) -> tuple[int, ...]:
        cls = self.group.class_data[0]
        return tuple(sorted(int(cls[x]) for x in self.reps))

    def members(self, cid: int) -> np.ndarray:
        return np.nonzero(self.group.class_data[0] == cid)[0]

    def search_estimate(self) -> int:
        sizes = {c: self.members(c).size for c in set(self.class_ids)}
        worst = max(sizes.values())
        return len(set(self.class_ids)) * worst ** (self.r - 2) * len(_arrangements(self.class_ids))


def _arrangements(ids: Sequence[int]) -> list[tuple[int, ...]]:
    return sorted(set(permutations(ids)))


class Canonicalizer:
    """Inner (and optionally automorphism-twisted) canonical forms for one group."""

    def __init__(self, G: FiniteGroup):
        self.G = G
        n = G.n
        allx = np.arange(n)
        # conj[h, x] = h^-1 x h
        self.conj = G.mul[G.mul[G.inv][:, allx], allx[:, None]] if n <= 4096 else None
        cls, to_rep, reps = G.class_data
        self.cls = cls
        self.to_rep = to_rep
        self._cent: dict[int, np.ndarray] = {}

    def conjugate(self, t: Sequence[int], h: int) -> tuple[int, ...]:
        if self.conj is not None:
            row = self.conj[h]
            return tuple(int(row[x]) for x in t)
        return tuple(self.G.conj(x, h) for x in t)

    def centralizer(self, x: int) -> np.ndarray:
        c = self._cent.get(x)
        if c is None:
            c = self.G.centralizer(x)
            self._cent[x] = c
        return c

    def canon(self, t: Sequence[int]) -> tuple[int, ...]:
        G = self.G
        h = int(self.to_rep[t[0]])
        rep = G.conj(t[0], h)
        hz = G.mul[h, self.centralizer(rep)]
        rows = self.conj[hz][:, list(t)]
        best = rows[np.lexsort(rows.T[::-1])[0]]
        return tuple(int(x) for x in best)

    def canon_with_conjugator(self, t: Sequence[int]) -> tuple[tuple[int, ...], int]:
        G = self.G
        h = int(self.to_rep[t[0]])
        rep = G.conj(t[0], h)
        hz = G.mul[h, self.centralizer(rep)]
        rows = self.conj[hz][:, list(t)]
        k = np.lexsort(rows.T[::-1])[0]
        return tuple(int(x) for x in rows[k]), int(hz[k])


def _generation_oracle(G: FiniteGroup):
    """Memoised test that a set of elements generates G (Frattini shortcut if known)."""
    frat = [(p, q) for key, (p, q) in G.quotients.items() if key.startswith("frattini")]
    memo: dict[tuple[int, ...], bool] = {}

    def gens_ok(elems: Iterable[int]) -> bool:
        if frat:
            proj, Q = frat[0]
            key = tuple(sorted({int(proj[e]) for e in elems}))
            target = Q
        else:
            key = tuple(sorted({int(e) for e in elems}))
            target = G
        v = memo.get(key)
        if v is None:
            v = target.closure(key).size == target.n
            memo[key] = v
        return v

    return gens_ok


class NielsenClasses:
    """The inner Nielsen classes of a class spec, canonically indexed."""

    def __init__(self, spec: ClassSpec, tuples: np.ndarray, canon: Canonicalizer):
        self.spec = spec
        self.G = spec.group
        self.canonicalizer = canon
        order = np.lexsort(tuples.T[::-1]) if len(tuples) else np.array([], dtype=int)
        self.tuples = tuples[order] if len(tuples) else tuples.reshape(0, spec.r)
        self.index = {tuple(int(x) for x in row): i for i, row in enumerate(self.tuples)}

    def __len__(self) -> int:
        return len(self.tuples)

    @property
    def r(self) -> int:
        return self.spec.r

    def find(self, t: Sequence[int]) -> int:
        return self.index[self.canonicalizer.canon(t)]

    def tuple(self, i: int) -> tuple[int, ...]:
        return tuple(int(x) for x in self.tuples[i])

    def mpr(self, i: int) -> int:
        t = self.tuples[i]
        return self.G.element_order(int(self.G.mul[t[1], t[2]]))

    @cached_property
    def mprs(self) -> np.ndarray:
        t = self.tuples
        return self.G.element_orders[self.G.mul[t[:, 1], t[:, 2]]]

    def is_hm(self, i: int) -> bool:
        return is_hm_tuple(self.G, self.tuples[i])

    # braid action on inner classes ---------------------------------------------
    def braid_perm(self, i: int) -> np.ndarray:
        """Permutation of inner classes induced by q_i (1-based)."""
        cache = self.__dict__.setdefault("_qperm", {})
        if i not in cache:
            if not 1 <= i < self.r:
                raise ValueError(f"q{i} is not a generator for r={self.r}")
            G = self.G
            out = np.empty(len(self), dtype=np.int64)
            for k, row in enumerate(self.tuples):
                t = [int(x) for x in row]
                a, b = t[i - 1], t[i]
                t[i - 1] = int(G.mul[G.mul[a, b], G.inv[a]])
                t[i] = a
                out[k] = self.find(t)
            cache[i] = out
        return cache[i]

    def classify_hm(self, projection: tuple[np.ndarray, FiniteGroup] | None = None) -> list[str]:
        """Per-class tags: 'HM', 'nearHM', 'complement' (of an HM/nearHM class) or 'none'.

        The complement of g is (g)q2^(L/2) with L the length of its q2 orbit."""
        from .realpts import khat

        G = self.G
        tags = ["none"] * len(self)
        hm = [self.is_hm(i) for i in range(len(self))]
        near = [False] * len(self)
        if projection is not None:
            proj, Q = projection
            invols = np.nonzero(G.element_orders == 2)[0]
            conj = self.canonicalizer.conj
            for i in range(len(self)):
                if hm[i]:
                    continue
                t = self.tuples[i]
                if not is_hm_tuple(Q, proj[t]):
                    continue
                target = np.array(khat(G, t, 0))
                if (conj[invols][:, t] == target).all(axis=1).any():
                    near[i] = True
        q2 = self.braid_perm(2)
        for i in range(len(self)):
            if hm[i]:
                tags[i] = "HM"
            elif near[i]:
                tags[i] = "nearHM"
        # the complement is halfway round the q2 orbit
        for i in range(len(self)):
            if tags[i] not in ("HM", "nearHM"):
                continue
            orbit = [i]
            j = int(q2[i])
            while j != i:
                orbit.append(j)
                j = int(q2[j])
            if len(orbit) % 2 == 0:
                j = orbit[len(orbit) // 2]
                if tags[j] == "none":
                    tags[j] = "complement"
        return tags

    def to_json(self, mode: str = "inner", tags: Sequence[str] | None = None) -> dict:
        G = self.G
        label = (lambda x: str(G.labels[x])) if G.labels is not None else str
        return {
            "schema": SCHEMA,
            "group": G.name,
            "classes": [label(x) for x in self.spec.reps],
            "mode": mode,
            "count": len(self),
            "nielsen": [
                {
                    "entries": [label(int(x)) for x in row],
                    "mpr": int(self.mprs[i]),
                    "hm_tag": tags[i] if tags else ("HM" if self.is_hm(i) else "none"),
                }
                for i, row in enumerate(self.tuples)
            ],
        }


def is_hm_tuple(G: FiniteGroup, t: Sequence[int]) -> bool:
    r = len(t)
    if r % 2:
        return False
    return all(int(t[2 * i + 1]) == int(G.inv[t[2 * i]]) for i in range(r // 2))


def enumerate_inner(spec: ClassSpec, budget: int = DEFAULT_BUDGET) -> NielsenClasses:
    """All inner classes of ni(G, C) with C taken in any order."""
    G = spec.group
    est = spec.search_estimate()
    if est > budget:
        raise BudgetExceeded(budget, est)
    canon = Canonicalizer(G)
    gens_ok = _generation_oracle(G)
    cls = canon.cls
    r = spec.r
    found: set[tuple[int, ...]] = set()
    for arr in _arrangements(spec.class_ids):
        g1 = int(spec.members(arr[0])[0])
        # partial products over positions 2..r-1
        prods = np.array([g1])
        partial = np.array([[g1]])
        for pos in range(1, r - 1):
            mem = spec.members(arr[pos])
            prods_new = G.mul[prods][:, mem].ravel()
            partial = np.concatenate(
                [np.repeat(partial, mem.size, axis=0), np.tile(mem, len(partial))[:, None]], axis=1
            )
            prods = prods_new
        last = G.inv[prods]
        ok = cls[last] == arr[-1]
        cand = np.concatenate([partial[ok], last[ok][:, None]], axis=1)
        for row in cand:
            t = tuple(int(x) for x in row)
            if not gens_ok(t):
                continue
            found.add(canon.canon(t))
    tuples = np.array(sorted(found), dtype=np.int64).reshape(-1, r)
    return NielsenClasses(spec, tuples, canon)


# ---------------------------------------------------------------------------
# equivalences as orbit partitions
# ---------------------------------------------------------------------------


class ClassSet:
    """A partition of the inner classes into equivalence classes.

    ``block[i]`` is the class containing inner class i; representatives are
    the least canonical tuples in each block.
    """

    def __init__(self, nc: NielsenClasses, block: np.ndarray, mode: str):
        self.nc = nc
        self.mode = mode
        self.block = block
        self.size = int(block.max()) + 1 if len(block) else 0
        self.members = [np.nonzero(block == b)[0] for b in range(self.size)]
        self.rep_index = np.array([m.min() for m in self.members], dtype=np.int64)

    def __len__(self) -> int:
        return self.size

    def rep(self, b: int) -> tuple[int, ...]:
        return self.nc.tuple(int(self.rep_index[b]))

    def induced(self, perm: np.ndarray) -> np.ndarray:
        """Permutation of blocks induced by a permutation of inner classes."""
        img = self.block[perm]
        out = np.full(self.size, -1, dtype=np.int64)
        for b, m in enumerate(self.members):
            targets = np.unique(img[m])
            if targets.size != 1:
                raise ValueError(f"action is not well defined on {self.mode} classes")
            out[b] = targets[0]
        return out

    def braid_perm(self, i: int) -> np.ndarray:
        return self.induced(self.nc.braid_perm(i))


def orbit_partition(n: int, perms: Sequence[np.ndarray]) -> np.ndarray:
    """Orbit labels (0..k-1, ordered by least member) under a set of permutations."""
    label = np.full(n, -1, dtype=np.int64)
    k = 0
    for start in range(n):
        if label[start] >= 0:
            continue
        label[start] = k
        stack = [start]
        while stack:
            x = stack.pop()
            for p in perms:
                y = int(p[x])
                if label[y] < 0:
                    label[y] = k
                    stack.append(y)
        k += 1
    return label


def compose(*perms: np.ndarray) -> np.ndarray:
    """Right-action composition: apply the first permutation first."""
    out = np.arange(len(perms[0]))
    for p in perms:
        out = p[out]
    return out


def inverse_perm(p: np.ndarray) -> np.ndarray:
    out = np.empty_like(p)
    out[p] = np.arange(len(p))
    return out


def automorphism_perms(nc: NielsenClasses, auts: Sequence[np.ndarray]) -> list[np.ndarray]:
    """Permutations of inner classes induced by group automorphisms (arrays on G)."""
    out = []
    for a in auts:
        p = np.array([nc.find(a[row]) for row in nc.tuples], dtype=np.int64)
        out.append(p)
    return out


def qpp_perms(nc: NielsenClasses) -> list[np.ndarray]:
    """Generators q1 q3^-1 and (q1 q2 q3)^2 of Q'' on inner classes (r = 4)."""
    if nc.r != 4:
        raise ValueError("Q'' is defined for r = 4")
    q1, q2, q3 = (nc.braid_perm(i) for i in (1, 2, 3))
    sh = compose(q1, q2, q3)
    return [compose(q1, inverse_perm(q3)), compose(sh, sh)]


def inner_classes(nc: NielsenClasses) -> ClassSet:
    return ClassSet(nc, np.arange(len(nc)), "inner")


def absolute_classes(nc: NielsenClasses, auts: Sequence[np.ndarray]) -> ClassSet:
    return ClassSet(nc, orbit_partition(len(nc), automorphism_perms(nc, auts)), "absolute")


def reduced_classes(nc: NielsenClasses, auts: Sequence[np.ndarray] = ()) -> ClassSet:
    perms = automorphism_perms(nc, auts) + qpp_perms(nc)
    mode = "reduced-absolute" if auts else "reduced-inner"
    return ClassSet(nc, orbit_partition(len(nc), perms), mode)


def enumerate_nielsen(spec: ClassSpec, mode: str = "inner", auts: Sequence[np.ndarray] = (), budget: int = DEFAULT_BUDGET) -> ClassSet:
    """Enumerate and partition: mode is inner, absolute, reduced-inner or reduced-absolute."""
    nc = enumerate_inner(spec, budget)
    if mode == "inner":
        return inner_classes(nc)
    if mode == "absolute":
        return absolute_classes(nc, auts)
    if mode == "reduced-inner":
        return reduced_classes(nc)
    if mode == "reduced-absolute":
        return reduced_classes(nc, auts)
    raise ValueError(f"unknown mode {mode!r}")


def conjugation_automorphisms(G: FiniteGroup, outer: Sequence[Perm]) -> list[np.ndarray]:
    """Automorphisms of a perm-backed G given by conjugating perms (normalizer elements)."""
    out = []
    for h in outer:
        arr = np.empty(G.n, dtype=np.int64)
        for x, p in enumerate(G.labels):  # type: ignore[arg-type]
            arr[x] = G.index[p.conj(h).images]  # type: ignore[attr-defined]
        out.append(arr)
    return out


# ---------------------------------------------------------------------------
# near H-M synthesis and class algebra counting
# ---------------------------------------------------------------------------


def near_hm_synthesize(G: FiniteGroup, g1: int, g2: int) -> tuple[int, int, int, int]:
    """(g1, c' g1^-1 c', c g2 c, g2^-1) with c = (g1 g2)^5 and c' = c^(g2^-1).

    ``c'`` is ``g2 c g2^-1``, the conjugate of c by g2^-1.
    """
    proj, Q = G.quotients["frattini:A5"]
    if Q.element_order(int(Q.mul[proj[g1], proj[g2]])) != 5:
        raise ValueError("image of g1 g2 must have order 5")
    c = G.power(int(G.mul[g1, g2]), 5)
    cp = G.conj(c, int(G.inv[g2]))
    t = (g1, G.prod([cp, G.inv[g1], cp]), G.prod([c, g2, c]), int(G.inv[g2]))
    if G.prod(t) != 0:
        raise ValueError("synthesized tuple does not have product one")
    return t


def class_product_count(G: FiniteGroup, class_reps: Sequence[int], g: int) -> int:
    """#{(u_1..u_r) : u_i in class of class_reps[i], u_1...u_r g = 1} by convolution."""
    if not class_reps:
        raise ValueError("need at least one class")
    cls = G.class_data[0]
    f = np.zeros(G.n, dtype=object)
    f[0] = 1
    allx = np.arange(G.n)
    for rep in class_reps:
        if not 0 <= rep < G.n:
            raise ValueError("class representative not in the group")
        members = np.nonzero(cls == cls[rep])[0]
        new = np.zeros(G.n, dtype=object)
        for u in members:
            # new[y] += f[y u^-1]
            new += f[G.mul[allx, G.inv[u]]]
        f = new
    return int(f[G.inv[g]])


# ---------------------------------------------------------------------------
# dihedral reference family
# ---------------------------------------------------------------------------


def euler_phi(n: int) -> int:
    return sum(1 for k in range(1, n + 1) if gcd(k, n) == 1)


def affine_normalizer(n: int) -> list[Perm]:
    """AGL(1, n) = {x -> a x + b : gcd(a, n) = 1} on Z/n."""
    return [Perm([(a * x + b) % n for x in range(n)]) for a in range(1, n) if gcd(a, n) == 1 for b in range(n)]


@dataclass
class DihedralReport:
    p: int
    k: int
    absolute: int
    inner: int
    q2_widths: list[int] = field(default_factory=list)
    normalizer_order: int = 0


def dihedral_reference(p: int, k: int) -> DihedralReport:
    from .grouptower import dihedral

    n = p ** (k + 1)
    if p % 2 == 0 or n > 343:
        raise ValueError("need an odd prime p with p^(k+1) <= 343")
    G = dihedral(n)
    invol = [x for x in range(G.n) if G.element_order(x) == 2][0]
    spec = ClassSpec(G, (invol,) * 4)
    nc = enumerate_inner(spec)
    N = affine_normalizer(n)
    gens = [G.labels[g] for g in G.generators]  # type: ignore[index]
    elems = {q.images for q in G.labels}  # type: ignore[union-attr]
    if not all(x.conj(h).images in elems for h in N for x in gens):
        raise AssertionError("AGL(1,n) does not normalize D_n")
    auts = conjugation_automorphisms(G, N)
    ab = absolute_classes(nc, auts)
    q2 = ab.braid_perm(2)
    widths = sorted(Counter(orbit_partition(len(ab), [q2]).tolist()).values())
    return DihedralReport(p, k, len(ab), len(nc), widths, len(N))


def dump_json(cs: ClassSet, tags: Sequence[str] | None = None) -> str:
    nc = cs.nc
    data = nc.to_json(cs.mode, tags)
    if cs.mode != "inner":
        data["count"] = len(cs)
        keep = set(cs.rep_index.tolist())
        data["nielsen"] = [e for i, e in enumerate(data["nielsen"]) if i in keep]
    return json.dumps(data, indent=2)
