"""Braid group actions on Nielsen tuples and classes.

q_i replaces (g_i, g_{i+1}) by (g_i g_{i+1} g_i^-1, g_i).  On reduced classes
(r = 4) the generators of M4-bar are gamma_0 = q1 q2, gamma_1 = q1 q2 q1 and
gamma_inf = q2, composed left to right; sh = q1 q2 q3.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .grouptower import FiniteGroup
from .nielsen import ClassSet, NielsenClasses, compose, orbit_partition, qpp_perms

# ---------------------------------------------------------------------------
# tuples
# ---------------------------------------------------------------------------


def parse_word(text: str) -> list[int]:
    """'q1 q2^-1 q3' -> [1, -2, 3]."""
    out = []
    for tok in text.replace("*", " ").split():
        tok = tok.strip()
        if not tok.startswith("q"):
            raise ValueError(f"bad braid letter {tok!r}")
        inv = tok.endswith("^-1")
        body = tok[1:-3] if inv else tok[1:]
        if not body.isdigit():
            raise ValueError(f"bad braid letter {tok!r}")
        out.append(-int(body) if inv else int(body))
    return out


def braid_apply(G: FiniteGroup, word: Sequence[int], t: Sequence[int]) -> tuple[int, ...]:
    """Apply letters (i for q_i, -i for its inverse) left to right."""
    t = [int(x) for x in t]
    r = len(t)
    mul, inv = G.mul, G.inv
    for letter in word:
        i = abs(letter)
        if not 1 <= i < r:
            raise ValueError(f"q{i} out of range for r={r}")
        a, b = t[i - 1], t[i]
        if letter > 0:
            t[i - 1], t[i] = int(mul[mul[a, b], inv[a]]), a
        else:
            # inverse: (a, b) -> (b, b^-1 a b)
            t[i - 1], t[i] = b, int(mul[mul[inv[b], a], b])
    return tuple(t)


D_WORD = (1, 2, 3, 3, 2, 1)


# ---------------------------------------------------------------------------
# Q'' and M4-bar
# ---------------------------------------------------------------------------


def qpp_orbit(nc: NielsenClasses, i: int) -> list[int]:
    """Q''-orbit of inner class i, after checking (q1 q3^-1)^2 acts trivially."""
    a, b = qpp_perms(nc)
    z = compose(a, a)
    if not np.array_equal(z, np.arange(len(nc))):
        raise AssertionError("(q1 q3^-1)^2 acts nontrivially on inner classes")
    label = orbit_partition(len(nc), [a, b])
    return np.nonzero(label == label[i])[0].tolist()


@dataclass
class ReducedAction:
    """gamma_0, gamma_1, gamma_inf and sh as permutations of reduced classes."""

    classes: ClassSet
    g0: np.ndarray
    g1: np.ndarray
    ginf: np.ndarray
    sh: np.ndarray

    @classmethod
    def of(cls, rc: ClassSet) -> "ReducedAction":
        q1, q2, q3 = (rc.braid_perm(i) for i in (1, 2, 3))
        return cls(rc, compose(q1, q2), compose(q1, q2, q1), q2, compose(q1, q2, q3))

    def orbits(self) -> list[np.ndarray]:
        """M4-bar orbits, ordered by least member."""
        label = orbit_partition(len(self.classes), [self.ginf, self.sh, self.g0, self.g1])
        return [np.nonzero(label == k)[0] for k in range(int(label.max()) + 1)]

    def restrict(self, orbit: Sequence[int]) -> "OrbitAction":
        orbit = np.asarray(orbit)
        pos = {int(x): k for k, x in enumerate(orbit)}

        def res(p: np.ndarray) -> np.ndarray:
            return np.array([pos[int(p[x])] for x in orbit], dtype=np.int64)

        return OrbitAction(self.classes, orbit, res(self.g0), res(self.g1), res(self.ginf), res(self.sh))


@dataclass
class OrbitAction:
    """Branch cycles of one M4-bar orbit, on local indices 0..N-1."""

    classes: ClassSet
    points: np.ndarray
    g0: np.ndarray
    g1: np.ndarray
    ginf: np.ndarray
    sh: np.ndarray

    def __len__(self) -> int:
        return len(self.points)


def mbar4_orbits(rc: ClassSet) -> list[OrbitAction]:
    act = ReducedAction.of(rc)
    return [act.restrict(o) for o in act.orbits()]


# ---------------------------------------------------------------------------
# cusps
# ---------------------------------------------------------------------------


@dataclass
class CuspOrbit:
    members: list[int]  # local indices in the M4-bar orbit
    u: int  # middle product order
    v: int  # width
    a: int = 0  # label among cusps sharing (u, v)
    hm_tag: str = "none"

    @property
    def label(self) -> tuple[int, int, int]:
        return (self.u, self.v, self.a)


def _cycles(p: np.ndarray) -> list[list[int]]:
    seen = np.zeros(len(p), dtype=bool)
    out = []
    for s in range(len(p)):
        if seen[s]:
            continue
        c = []
        x = s
        while not seen[x]:
            seen[x] = True
            c.append(x)
            x = int(p[x])
        out.append(c)
    return out


def cusp_orbits(orb: OrbitAction, tags: Sequence[str] | None = None) -> list[CuspOrbit]:
    """gamma_inf orbits with (u, v; a) labels; a counts up by least canonical member."""
    rc = orb.classes
    nc = rc.nc
    cusps = []
    for cyc in _cycles(orb.ginf):
        inner = [int(rc.rep_index[orb.points[x]]) for x in cyc]
        us = {int(nc.mprs[i]) for i in inner}
        if len(us) != 1:
            raise AssertionError("middle product order varies along a cusp")
        tag = "none"
        if tags is not None:
            # any inner class in the reduced classes of this cusp
            members = np.concatenate([rc.members[orb.points[x]] for x in cyc])
            found = {tags[i] for i in members.tolist()}
            for t in ("HM", "nearHM", "complement"):
                if t in found:
                    tag = t
                    break
        cusps.append(CuspOrbit(sorted(cyc), us.pop(), len(cyc), 0, tag))
    cusps.sort(key=lambda c: (c.u, c.v, c.members[0]))
    counter: Counter = Counter()
    for c in cusps:
        counter[(c.u, c.v)] += 1
        c.a = counter[(c.u, c.v)]
    return cusps


def width_multiset(orb: OrbitAction) -> list[int]:
    return sorted(len(c) for c in _cycles(orb.ginf))


def cycle_shape(p: np.ndarray) -> dict[int, int]:
    """{length: count} over nontrivial and trivial cycles."""
    return dict(sorted(Counter(len(c) for c in _cycles(p)).items()))


# ---------------------------------------------------------------------------
# sh-incidence
# ---------------------------------------------------------------------------


@dataclass
class ShIncidence:
    cusps: list[CuspOrbit]
    matrix: np.ndarray
    blocks: list[list[int]] = field(default_factory=list)

    def submatrix(self, idx: Sequence[int]) -> np.ndarray:
        idx = list(idx)
        return self.matrix[np.ix_(idx, idx)]


def sh_incidence(orb: OrbitAction, cusps: Sequence[CuspOrbit] | None = None, sh: np.ndarray | None = None) -> ShIncidence:
    """A[i][j] = |(O_i) sh intersect O_j| over the cusps of an orbit."""
    cusps = list(cusps) if cusps is not None else cusp_orbits(orb)
    sh = orb.sh if sh is None else sh
    where = np.empty(len(orb), dtype=np.int64)
    for k, c in enumerate(cusps):
        where[c.members] = k
    A = np.zeros((len(cusps), len(cusps)), dtype=np.int64)
    for k, c in enumerate(cusps):
        for x in c.members:
            A[k, where[sh[x]]] += 1
    # blocks: connected components of the incidence graph
    n = len(cusps)
    adj = [set(np.nonzero(A[i] + A[:, i])[0].tolist()) for i in range(n)]
    comp = [-1] * n
    blocks = []
    for s in range(n):
        if comp[s] >= 0:
            continue
        stack, members = [s], []
        comp[s] = len(blocks)
        while stack:
            x = stack.pop()
            members.append(x)
            for y in adj[x]:
                if comp[y] < 0:
                    comp[y] = len(blocks)
                    stack.append(y)
        blocks.append(sorted(members))
    return ShIncidence(cusps, A, blocks)


def matrices_equivalent(A: np.ndarray, B: np.ndarray) -> bool:
    """Equality up to simultaneous row/column permutation (backtracking)."""
    A, B = np.asarray(A), np.asarray(B)
    n = len(A)
    if A.shape != B.shape:
        return False
    if sorted(np.diag(A)) != sorted(np.diag(B)):
        return False
    sigA = [(A[i, i], tuple(sorted(A[i])), tuple(sorted(A[:, i]))) for i in range(n)]
    sigB = [(B[i, i], tuple(sorted(B[i])), tuple(sorted(B[:, i]))) for i in range(n)]
    if sorted(sigA) != sorted(sigB):
        return False
    assign = [-1] * n
    used = [False] * n

    def bt(i: int) -> bool:
        if i == n:
            return True
        for j in range(n):
            if used[j] or sigA[i] != sigB[j]:
                continue
            ok = all(A[i, k] == B[j, assign[k]] and A[k, i] == B[assign[k], j] for k in range(i))
            if ok and A[i, i] == B[j, j]:
                assign[i] = j
                used[j] = True
                if bt(i + 1):
                    return True
                used[j] = False
        assign[i] = -1
        return False

    return bt(0)


def sh_incidence_general(nc: NielsenClasses, gamma_index: int = 2) -> tuple[np.ndarray, list[list[int]]]:
    """Incidence of sh_r = q1...q_{r-1} against q_v orbits on inner classes (general r)."""
    r = nc.r
    sh = compose(*(nc.braid_perm(i) for i in range(1, r)))
    g = nc.braid_perm(gamma_index)
    cyc = _cycles(g)
    where = np.empty(len(nc), dtype=np.int64)
    for k, c in enumerate(cyc):
        where[c] = k
    A = np.zeros((len(cyc), len(cyc)), dtype=np.int64)
    for k, c in enumerate(cyc):
        for x in c:
            A[k, where[sh[x]]] += 1
    return A, cyc


# ---------------------------------------------------------------------------
# orbit shortening and twist-orbit lengths
# ---------------------------------------------------------------------------


def shortening_type(nc: NielsenClasses, rc: ClassSet, inner_index: int) -> int:
    """mu = (inner q2-orbit length) / (reduced gamma_inf width) at one inner class."""
    q2 = nc.braid_perm(2)
    n_in = 1
    x = int(q2[inner_index])
    while x != inner_index:
        x = int(q2[x])
        n_in += 1
    q2r = rc.braid_perm(2)
    b = int(rc.block[inner_index])
    n_red = 1
    y = int(q2r[b])
    while y != b:
        y = int(q2r[y])
        n_red += 1
    if n_in % n_red:
        raise AssertionError("inner orbit length is not a multiple of the reduced width")
    return n_in // n_red


SHORTENING_NAMES = {1: "none", 2: "two", 4: "total"}


@dataclass
class TwistLength:
    predicted: int
    iterated: int
    o: int
    xyswitch: bool


def q2_orbit_length(G: FiniteGroup, a: int, b: int) -> TwistLength:
    """Length of the orbit of (a, b) under (x, y) -> (x y x^-1, x), by formula and by iteration."""
    if a == b:
        raise ValueError("entries must differ")
    mul, inv = G.mul, G.inv
    g = int(mul[a, b])
    d = G.element_order(g)
    cent = [k for k in range(1, d + 1) if (lambda z: mul[z, a] == mul[a, z] and mul[z, b] == mul[b, z])(G.power(g, k))]
    o = min(cent)  # least k with (ab)^k centralizing a and b
    switch = False
    if o % 2:
        y = G.power(int(mul[b, a]), (o - 1) // 2)
        switch = G.element_order(int(mul[y, b])) == 2
    predicted = o if switch else 2 * o
    x, yv = a, b
    steps = 0
    while True:
        x, yv = int(mul[mul[x, yv], inv[x]]), x
        steps += 1
        if (x, yv) == (a, b):
            break
    return TwistLength(predicted, steps, o, switch)
