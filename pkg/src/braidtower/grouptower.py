"""Concrete finite groups and the level-1 Frattini extension of A5.

Every group used downstream is a :class:`FiniteGroup`: elements are the
integers ``0..N-1`` (``0`` is the identity) with a dense multiplication
table.  Perm-backed groups order their elements by image tuple; the
cocycle-backed G1 encodes ``(m, g)`` as ``32*g + m``.

M(A5) is GF(2)^6 modulo the all-ones vector, the coordinates being the right
cosets of a fixed dihedral D5 in A5.  Vectors are 6-bit ints; the canonical
representative of a class has bit 0 clear, so ``m >> 1`` indexes M by 0..31.
A5 acts on the right, and extensions multiply as

    (m1, g1)(m2, g2) = (m1^g2 + m2 + c(g1, g2), g1 g2).
"""

from __future__ import annotations

import hashlib
import struct
from collections import deque
from functools import cached_property
from itertools import permutations
from pathlib import Path
from typing import Callable, Iterable, Sequence

import numpy as np

from .permcore import Perm, PermGroup

ALL_ONES = 0b111111


class CertificationError(RuntimeError):
    """A constructed object failed one of its defining checks."""


class FiniteGroup:
    """A finite group on ``0..N-1`` with a multiplication table."""

    def __init__(self, table: np.ndarray, name: str = "", labels: Sequence | None = None):
        table = np.asarray(table)
        n = table.shape[0]
        if table.shape != (n, n):
            raise ValueError("table must be square")
        if not (np.array_equal(table[0], np.arange(n)) and np.array_equal(table[:, 0], np.arange(n))):
            raise ValueError("element 0 must be the identity")
        self.mul = table.astype(np.int32)
        self.n = n
        self.name = name
        self.labels = list(labels) if labels is not None else None
        inv = np.empty(n, dtype=np.int32)
        rows, cols = np.nonzero(self.mul == 0)
        inv[rows] = cols
        self.inv = inv
        self.quotients: dict[str, tuple[np.ndarray, "FiniteGroup"]] = {}
        self.perm_rep: Callable[[int], Perm] | None = None

    def __len__(self) -> int:
        return self.n

    def order(self) -> int:
        return self.n

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name or '?'}, order={self.n})"

    # arithmetic ------------------------------------------------------------
    def prod(self, elems: Iterable[int]) -> int:
        out = 0
        for e in elems:
            out = int(self.mul[out, e])
        return out

    def conj(self, x: int, h: int) -> int:
        """``h^-1 x h``."""
        return int(self.mul[self.mul[self.inv[h], x], h])

    def power(self, x: int, k: int) -> int:
        if k < 0:
            x, k = int(self.inv[x]), -k
        out = 0
        while k:
            if k & 1:
                out = int(self.mul[out, x])
            x = int(self.mul[x, x])
            k >>= 1
        return out

    @cached_property
    def element_orders(self) -> np.ndarray:
        orders = np.zeros(self.n, dtype=np.int64)
        cur = np.arange(self.n)
        k = 1
        idx = np.arange(self.n)
        while (orders == 0).any():
            done = (cur == 0) & (orders == 0)
            orders[done] = k
            cur = self.mul[cur, idx]
            k += 1
        return orders

    def element_order(self, x: int) -> int:
        return int(self.element_orders[x])

    # subgroups ---------------------------------------------------------------
    def closure(self, gens: Iterable[int]) -> np.ndarray:
        """Sorted elements of the subgroup generated by ``gens``."""
        gens = np.unique(np.fromiter(gens, dtype=np.int64))
        member = np.zeros(self.n, dtype=bool)
        member[0] = True
        frontier = np.array([0])
        while frontier.size:
            new = np.unique(self.mul[frontier][:, gens].ravel())
            new = new[~member[new]]
            member[new] = True
            frontier = new
        return np.nonzero(member)[0]

    def generates(self, gens: Iterable[int]) -> bool:
        gens = list(gens)
        for key, (proj, quo) in self.quotients.items():
            if key.startswith("frattini"):
                return quo.generates(int(proj[g]) for g in gens)
        return self.closure(gens).size == self.n

    def normal_closure(self, elems: Iterable[int]) -> np.ndarray:
        elems = np.unique(np.fromiter(elems, dtype=np.int64))
        allx = np.arange(self.n)
        conjs = self.mul[self.mul[self.inv[allx]][:, elems], allx[:, None]]
        return self.closure(np.unique(conjs))

    def derived_subgroup(self) -> np.ndarray:
        gens = self.generators
        comms = [self.prod([self.inv[a], self.inv[b], a, b]) for a in gens for b in gens]
        return self.normal_closure(comms + [0])

    def is_perfect(self) -> bool:
        return self.derived_subgroup().size == self.n

    def center(self) -> np.ndarray:
        gens = np.array(self.generators)
        allx = np.arange(self.n)
        ok = np.all(self.mul[allx][:, gens] == self.mul[gens][:, allx].T, axis=1)
        return np.nonzero(ok)[0]

    def centralizer(self, x: int) -> np.ndarray:
        allx = np.arange(self.n)
        return np.nonzero(self.mul[allx, x] == self.mul[x, allx])[0]

    @cached_property
    def generators(self) -> list[int]:
        """A small deterministic generating set (greedy over element order)."""
        gens: list[int] = []
        cur = np.array([0])
        for x in range(1, self.n):
            if cur.size == self.n:
                break
            if not np.isin(x, cur):
                gens.append(x)
                cur = self.closure(gens)
        # prune redundant generators
        i = 0
        while i < len(gens):
            trial = gens[:i] + gens[i + 1 :]
            if trial and self.closure(trial).size == self.n:
                gens = trial
            else:
                i += 1
        return gens

    @cached_property
    def generating_pair(self) -> tuple[int, int]:
        """Lexicographically least generating pair (raises for non-2-generated groups)."""
        for a in range(1, self.n):
            for b in range(a + 1, self.n):
                if self.closure([a, b]).size == self.n:
                    return a, b
        raise ValueError("group is not 2-generated")

    # conjugacy ---------------------------------------------------------------
    @cached_property
    def class_data(self) -> tuple[np.ndarray, np.ndarray, list[int]]:
        """(class index per element, conjugator to class rep, class reps).

        The representative of each class is its least element; the stored
        conjugator ``h`` satisfies ``h^-1 x h == rep``.
        """
        cls = -np.ones(self.n, dtype=np.int64)
        to_rep = np.zeros(self.n, dtype=np.int64)
        reps: list[int] = []
        allh = np.arange(self.n)
        for x in range(self.n):
            if cls[x] >= 0:
                continue
            reps.append(x)
            # elements h rep h^-1, with conjugator h^-1 taking them back to rep
            ys = self.mul[self.mul[allh, x], self.inv[allh]]
            first = {}
            for h, y in zip(allh.tolist(), ys.tolist()):
                if y not in first:
                    first[y] = h
            for y, h in first.items():
                cls[y] = len(reps) - 1
                to_rep[y] = h
        return cls, to_rep, reps

    def class_of(self, x: int) -> np.ndarray:
        cls = self.class_data[0]
        return np.nonzero(cls == cls[x])[0]

    def class_rep(self, x: int) -> int:
        cls, _, reps = self.class_data
        return reps[cls[x]]

    def classes(self) -> list[np.ndarray]:
        cls, _, reps = self.class_data
        return [np.nonzero(cls == i)[0] for i in range(len(reps))]

    # structure helpers --------------------------------------------------------
    def quotient(self, normal: Sequence[int], name: str = "") -> tuple[np.ndarray, "FiniteGroup"]:
        """Quotient by a normal subgroup: (projection array, quotient group)."""
        normal = np.asarray(sorted(set(int(x) for x in normal)))
        coset = -np.ones(self.n, dtype=np.int64)
        reps = []
        for x in range(self.n):
            if coset[x] < 0:
                members = self.mul[normal, x]
                if (coset[members] >= 0).any():
                    raise ValueError("subgroup is not normal")
                coset[members] = len(reps)
                reps.append(x)
        reps_a = np.array(reps)
        table = coset[self.mul[reps_a][:, reps_a]]
        q = FiniteGroup(table, name=name)
        # normality check: coset of a product is independent of representatives
        for g in self.generators:
            if not np.array_equal(coset[self.mul[normal, g]], np.full(len(normal), coset[g])):
                raise ValueError("subgroup is not normal")
            if not np.array_equal(coset[self.mul[g, normal]], np.full(len(normal), coset[g])):
                raise ValueError("subgroup is not normal")
        return coset, q

    def coset_action(self, sub: Sequence[int]) -> tuple[np.ndarray, list[Perm]]:
        """Right action on right cosets ``H x``: (coset id per element, images of generators...).

        Returns the coset index of every element and a function-free list
        ``perm_of[g]`` for all elements g, as Perms of degree (G:H).
        """
        sub = np.asarray(sorted(set(int(x) for x in sub)))
        coset = -np.ones(self.n, dtype=np.int64)
        reps = []
        for x in range(self.n):
            if coset[x] < 0:
                coset[self.mul[sub, x]] = len(reps)
                reps.append(x)
        reps_a = np.array(reps)
        images = coset[self.mul[reps_a]]  # shape (k, n): coset of rep_i * g
        perms = [Perm(images[:, g].tolist(), check=False) for g in range(self.n)]
        return coset, perms


def group_from_perms(gens: Sequence[Perm], name: str = "", cap: int = 10**6) -> FiniteGroup:
    """Enumerate a permutation group into a table group (elements sorted)."""
    elems = PermGroup(gens).elements(cap)
    index = {p.images: i for i, p in enumerate(elems)}
    imgs = np.array([p.images for p in elems], dtype=np.int64)
    n = len(elems)
    table = np.empty((n, n), dtype=np.int32)
    for j, q in enumerate(elems):
        composed = np.asarray(q.images)[imgs]  # x then q, for every x
        table[:, j] = [index[tuple(r)] for r in composed.tolist()]
    g = FiniteGroup(table, name=name, labels=elems)
    g.perm_rep = lambda x, _e=elems: _e[x]
    g.index = index  # type: ignore[attr-defined]
    return g


def element_index(G: FiniteGroup, p: Perm) -> int:
    """Index of a Perm in a perm-backed group."""
    try:
        return G.index[p.images]  # type: ignore[attr-defined]
    except (AttributeError, KeyError):
        raise ValueError(f"{p} is not an element of {G.name or 'the group'}") from None


def alternating(n: int) -> FiniteGroup:
    gens = [Perm.from_cycles([[1, 2, 3]], n)]
    if n > 3:
        gens.append(Perm.from_cycles([list(range(1, n + 1))], n) if n % 2 else Perm.from_cycles([list(range(2, n + 1))], n))
    return group_from_perms(gens, name=f"A{n}")


def symmetric(n: int) -> FiniteGroup:
    return group_from_perms([Perm.from_cycles([[1, 2]], n), Perm.from_cycles([list(range(1, n + 1))], n)], name=f"S{n}")


def dihedral_perms(n: int) -> list[Perm]:
    """Generators of D_n acting on n points (rotation, reflection x -> -x)."""
    rot = Perm([(i + 1) % n for i in range(n)])
    ref = Perm([(-i) % n for i in range(n)])
    return [rot, ref]


def dihedral(n: int) -> FiniteGroup:
    return group_from_perms(dihedral_perms(n), name=f"D{n}")


def perm_normalizer(G: FiniteGroup, degree: int) -> list[Perm]:
    """Elements of the normalizer of a perm-backed G in S_degree (small degree only)."""
    gens = [G.labels[g] for g in G.generators]  # type: ignore[index]
    elems = set(p.images for p in G.labels)  # type: ignore[union-attr]
    out = []
    for img in permutations(range(degree)):
        h = Perm(img, check=False)
        if all(g.conj(h).images in elems for g in gens):
            out.append(h)
    return out


# ---------------------------------------------------------------------------
# M(A5)
# ---------------------------------------------------------------------------

D5_GENS = ("(1 3 4 2 5)", "(1 2)(3 4)")


def canon_m(v: int) -> int:
    return v ^ ALL_ONES if v & 1 else v


class GF2Module:
    """M(A5): GF(2)^6 / <1...1> with A5 permuting D5-cosets."""

    def __init__(self, A5: FiniteGroup):
        self.group = A5
        d5 = [element_index(A5, Perm.parse(t, 5)) for t in D5_GENS]
        self.d5 = A5.closure(d5)
        if self.d5.size != 10:
            raise CertificationError("D5 generators do not give a group of order 10")
        coset, perms = A5.coset_action(self.d5)
        self.coset_perm = perms  # Perm of degree 6 per A5 element
        # act[v, g] for all 64 raw vectors, canonicalized
        act = np.zeros((64, A5.n), dtype=np.int64)
        for g in range(A5.n):
            img = perms[g].images
            for v in range(64):
                w = 0
                for i in range(6):
                    if v >> i & 1:
                        w |= 1 << img[i]
                act[v, g] = canon_m(w)
        self.act_raw = act
        self.elements = np.array([2 * i for i in range(32)])  # canonical reps
        self.dim = 5

    def act(self, m: int, g: int) -> int:
        return int(self.act_raw[m, g])

    @staticmethod
    def in_V(m: int) -> bool:
        return bin(m).count("1") % 2 == 0

    @cached_property
    def V(self) -> list[int]:
        return [m for m in self.elements.tolist() if self.in_V(m)]

    def orbits(self) -> list[list[int]]:
        """A5-orbits on M \\ {0}, sorted by size descending."""
        seen: set[int] = set()
        out = []
        for m in self.elements.tolist()[1:]:
            if m in seen:
                continue
            orb = sorted({self.act(m, g) for g in range(self.group.n)})
            seen.update(orb)
            out.append(orb)
        return sorted(out, key=lambda o: (-len(o), o))

    @cached_property
    def named_orbits(self) -> dict[str, list[int]]:
        """'V' (15), 'M3' (10), 'M5' (6): the nonzero orbit labels."""
        orbs = {len(o): o for o in self.orbits()}
        if sorted(orbs) != [6, 10, 15]:
            raise CertificationError(f"unexpected orbit sizes {sorted(orbs)}")
        return {"V": orbs[15], "M3": orbs[10], "M5": orbs[6]}

    def orbit_name(self, m: int) -> str:
        if m == 0:
            return "0"
        for k, o in self.named_orbits.items():
            if m in o:
                return k
        raise ValueError(m)

    def fixed_vectors(self, g: int) -> list[int]:
        return [m for m in self.elements.tolist() if self.act(m, g) == m]

    def matrix(self, g: int) -> list[int]:
        """Action of g on the 5 canonical coordinates (bits 1..5) as column masks."""
        return [self.act(1 << (i + 1), g) >> 1 for i in range(5)]


def build_MA5(A5: FiniteGroup | None = None) -> GF2Module:
    A5 = A5 if A5 is not None else alternating(5)
    M = GF2Module(A5)
    M.named_orbits  # certifies 15/10/6
    return M


# ---------------------------------------------------------------------------
# Second cohomology by linear algebra over GF(2)
# ---------------------------------------------------------------------------


class GF2Elim:
    """Incremental row echelon form over GF(2) with int bitmask rows."""

    def __init__(self) -> None:
        self.pivots: dict[int, int] = {}  # pivot bit -> row

    def reduce(self, row: int) -> int:
        while row:
            top = row.bit_length() - 1
            p = self.pivots.get(top)
            if p is None:
                return row
            row ^= p
        return 0

    def add(self, row: int) -> bool:
        row = self.reduce(row)
        if row:
            self.pivots[row.bit_length() - 1] = row
            return True
        return False

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def nullspace(self, nvars: int) -> list[int]:
        """Basis of the solution space of the rows, as bitmasks (RREF based)."""
        piv = dict(self.pivots)
        for b in sorted(piv):  # back-substitute to reduced form
            r = piv[b]
            for b2 in piv:
                if b2 != b and piv[b2] >> b & 1:
                    piv[b2] ^= r
        free = [v for v in range(nvars) if v not in piv]
        basis = []
        for f in free:
            vec = 1 << f
            for b, r in piv.items():
                if r >> f & 1:
                    vec |= 1 << b
            basis.append(vec)
        return basis


class Cocycle2:
    """A normalized 2-cocycle table c[g, h] in canonical M-vectors."""

    def __init__(self, table: np.ndarray, h2_dim: int, coboundary_dim: int, cocycle_dim: int):
        self.table = table
        self.h2_dim = h2_dim
        self.coboundary_dim = coboundary_dim
        self.cocycle_dim = cocycle_dim

    def check_identity(self, M: GF2Module) -> bool:
        """c(g,h)^x + c(gh,x) == c(h,x) + c(g,hx) for all triples."""
        G = M.group
        c = self.table
        n = G.n
        g = np.arange(n)[:, None, None]
        h = np.arange(n)[None, :, None]
        x = np.arange(n)[None, None, :]
        lhs = M.act_raw[c[g, h], x] ^ c[G.mul[g, h], x]
        rhs = c[h, x] ^ c[g, G.mul[h, x]]
        return bool(np.array_equal(lhs, rhs))

    def content_hash(self) -> str:
        return hashlib.sha256(self.table.astype(np.uint8).tobytes()).hexdigest()


def _form_act(M: GF2Module, form: list[int], g: int) -> list[int]:
    """Apply g to an M-valued linear form given as 5 coordinate bitmasks."""
    cols = M.matrix(g)
    out = [0] * 5
    for i in range(5):
        col = cols[i]
        for j in range(5):
            if col >> j & 1:
                out[j] ^= form[i]
    return out


def solve_H2(M: GF2Module) -> Cocycle2:
    """Find a cocycle representing a nonzero class in H^2(A5, M).

    Unknowns are the values c(g, x) for x in a two-element generating set;
    the cocycle identity determines the rest along a BFS tree, and the
    non-tree edges give the linear constraints.
    """
    G = M.group
    n = G.n
    xs = list(G.generating_pair)
    nvars = n * 2 * 5

    def var_form(g: int, k: int) -> list[int]:
        base = (g * 2 + k) * 5
        return [1 << (base + i) for i in range(5)]

    # forms[g][h] : c(g, h) as 5 bitmasks
    forms: list[dict[int, list[int]]] = [{0: [0] * 5} for _ in range(n)]
    elim = GF2Elim()
    order = [0]
    seen = {0}
    tree: dict[int, tuple[int, int]] = {}
    queue = deque([0])
    edges = []
    while queue:
        h = queue.popleft()
        for k, x in enumerate(xs):
            hx = int(G.mul[h, x])
            if hx not in seen:
                seen.add(hx)
                tree[hx] = (h, k)
                order.append(hx)
                queue.append(hx)
            else:
                edges.append((h, k, hx))
    if len(seen) != n:
        raise CertificationError("chosen generators do not generate A5")

    def derived(g: int, h: int, k: int) -> list[int]:
        # c(g, hx) = c(g,h)^x + c(gh, x) + c(h, x)
        x = xs[k]
        t1 = _form_act(M, forms[g][h], x)
        t2 = var_form(int(G.mul[g, h]), k)
        t3 = var_form(h, k)
        return [t1[i] ^ t2[i] ^ t3[i] for i in range(5)]

    for hx in order[1:]:
        h, k = tree[hx]
        for g in range(n):
            forms[g][hx] = derived(g, h, k)
    # c(g, 1) = 0 is built in, c(1, x) = 0 is imposed; non-tree edges must agree
    for k in range(2):
        for v in var_form(0, k):
            elim.add(v)
    for h, k, hx in edges:
        for g in range(n):
            d = derived(g, h, k)
            cur = forms[g][hx]
            for i in range(5):
                elim.add(d[i] ^ cur[i])
    z_basis = elim.nullspace(nvars)
    # coboundaries of normalized 1-cochains, in the same coordinates
    bound = GF2Elim()
    for f_elem in range(1, n):
        for bit in range(5):
            vec = 0
            for g in range(n):
                for k, x in enumerate(xs):
                    # delta f(g, x) = f(g)^x + f(x) + f(gx)
                    val = 0
                    if g == f_elem:
                        val ^= M.act(1 << (bit + 1), x) >> 1
                    if x == f_elem:
                        val ^= 1 << bit
                    if int(G.mul[g, x]) == f_elem:
                        val ^= 1 << bit
                    base = (g * 2 + k) * 5
                    for i in range(5):
                        if val >> i & 1:
                            vec |= 1 << (base + i)
            bound.add(vec)
    b_dim = bound.rank
    z_dim = len(z_basis)
    chosen = None
    probe = GF2Elim()
    probe.pivots = dict(bound.pivots)
    for z in z_basis:
        if probe.reduce(z):
            chosen = z
            break
    if chosen is None:
        raise CertificationError("no nontrivial cohomology class found")

    table = np.zeros((n, n), dtype=np.int64)
    for g in range(n):
        for h in range(n):
            form = forms[g][h]
            v = 0
            for i in range(5):
                if (form[i] & chosen).bit_count() & 1:
                    v |= 1 << (i + 1)
            table[g, h] = v
    coc = Cocycle2(table, h2_dim=z_dim - b_dim, coboundary_dim=b_dim, cocycle_dim=z_dim)
    if not coc.check_identity(M):
        raise CertificationError("solved table violates the cocycle identity")
    return coc


_CACHE_MAGIC = b"BTCOC1"


def save_cocycle(coc: Cocycle2, path: Path) -> None:
    body = coc.table.astype(np.uint8).tobytes()
    header = _CACHE_MAGIC + struct.pack("<iiii", coc.table.shape[0], coc.h2_dim, coc.coboundary_dim, coc.cocycle_dim)
    digest = hashlib.sha256(header + body).digest()
    path.write_bytes(header + body + digest)


def load_cocycle(path: Path) -> Cocycle2 | None:
    """Read a cached cocycle; ``None`` when missing, stale or corrupt."""
    try:
        raw = path.read_bytes()
    except OSError:
        return None
    if len(raw) < 22 + 32 or not raw.startswith(_CACHE_MAGIC):
        return None
    payload, digest = raw[:-32], raw[-32:]
    if hashlib.sha256(payload).digest() != digest:
        return None
    n, h2, bd, zd = struct.unpack("<iiii", payload[6:22])
    body = np.frombuffer(payload[22:], dtype=np.uint8)
    if body.size != n * n:
        return None
    return Cocycle2(body.reshape(n, n).astype(np.int64), h2, bd, zd)


def cocycle_cache_path() -> Path:
    return Path(__file__).resolve().parent / "data" / "h2_a5_cocycle.bin"


# ---------------------------------------------------------------------------
# G1 = first characteristic 2-Frattini quotient of A5
# ---------------------------------------------------------------------------


def extension_group(M: GF2Module, coc: Cocycle2, name: str = "G1") -> FiniteGroup:
    A = M.group
    n0 = A.n
    idx = np.arange(32 * n0)
    g = idx // 32
    m = (idx % 32) * 2
    g1, g2 = g[:, None], g[None, :]
    m1, m2 = m[:, None], m[None, :]
    mm = M.act_raw[m1, g2] ^ m2 ^ coc.table[g1, g2]
    gg = A.mul[g1, g2]
    table = gg * 32 + mm // 2
    G = FiniteGroup(table, name=name)
    proj = g.astype(np.int64)
    G.quotients["frattini:A5"] = (proj, A)
    G.module = M  # type: ignore[attr-defined]
    G.cocycle = coc  # type: ignore[attr-defined]
    return G


def m_of(x: int) -> int:
    """Canonical M-vector of an encoded G1 element."""
    return (x % 32) * 2


def a5_of(x: int) -> int:
    return x // 32


def build_G1(use_cache: bool = True, certify: bool = True) -> FiniteGroup:
    A5 = alternating(5)
    M = build_MA5(A5)
    coc = None
    path = cocycle_cache_path()
    if use_cache:
        coc = load_cocycle(path)
    if coc is None or coc.table.shape != (60, 60) or not coc.check_identity(M):
        coc = solve_H2(M)
        if use_cache:
            try:
                path.parent.mkdir(parents=True, exist_ok=True)
                save_cocycle(coc, path)
            except OSError:
                pass
    G = extension_group(M, coc)
    if certify:
        certify_G1(G)
    return G


def kernel_M(G: FiniteGroup) -> np.ndarray:
    return np.arange(32)


def kernel_V(G: FiniteGroup) -> np.ndarray:
    M: GF2Module = G.module  # type: ignore[attr-defined]
    return np.array([v // 2 for v in M.V] + [0])


def certify_G1(G: FiniteGroup) -> dict[str, object]:
    """Run the defining checks; raise CertificationError naming the failure."""
    proj, A = G.quotients["frattini:A5"]
    report: dict[str, object] = {}
    orders = G.element_orders
    aord = A.element_orders
    if G.n != 1920:
        raise CertificationError(f"order: expected 1920, got {G.n}")
    for g in range(A.n):
        lifts = orders[g * 32 : g * 32 + 32]
        o = aord[g]
        if o % 2 == 0:
            if not np.all(lifts == 2 * o):
                raise CertificationError(f"involution lifting: a lift of an order-{o} element has order != {2 * o}")
        elif o > 1:
            if set(lifts.tolist()) - {o, 2 * o} or (lifts == o).sum() != 16:
                raise CertificationError(f"odd-order lifting failed over an order-{o} element")
    if not G.is_perfect():
        raise CertificationError("perfect: derived subgroup is proper")
    if G.center().size != 1:
        raise CertificationError("centerless: nontrivial center")
    _, Q = G.quotient(kernel_V(G), name="G1/V")
    q_orders = Q.element_orders
    if Q.n != 120 or not Q.is_perfect() or int((q_orders == 2).sum()) != 1:
        raise CertificationError("G1/V is not SL2(5)-like (order 120, perfect, one involution)")
    # Frattini property: all lifts of one generating pair generate G1
    a, b = A.generating_pair
    for ma in range(32):
        for mb in range(0, 32, 7):
            if G.closure([a * 32 + ma, b * 32 + mb]).size != G.n:
                raise CertificationError("Frattini: a lift of a generating pair is not generating")
    report["order"] = G.n
    report["involutions"] = int((orders == 2).sum())
    report["h2_dim"] = G.cocycle.h2_dim  # type: ignore[attr-defined]
    return report


def pullback_subgroup(G: FiniteGroup, H0: Sequence[int]) -> np.ndarray:
    """Full preimage of a subgroup of the Frattini quotient."""
    proj, A = G.quotients["frattini:A5"]
    H0 = sorted(set(int(h) for h in H0))
    if A.closure(H0).size != len(H0):
        raise ValueError("H0 is not a subgroup")
    return np.nonzero(np.isin(proj, H0))[0]


def subgroup_as_group(G: FiniteGroup, elems: Sequence[int], name: str = "") -> tuple[FiniteGroup, np.ndarray]:
    """Re-index a subgroup as its own FiniteGroup; returns (group, embedding)."""
    elems = np.asarray(sorted(int(e) for e in elems))
    pos = -np.ones(G.n, dtype=np.int64)
    pos[elems] = np.arange(elems.size)
    table = pos[G.mul[elems][:, elems]]
    if (table < 0).any():
        raise ValueError("not closed under multiplication")
    H = FiniteGroup(table, name=name)
    for key, (proj, quo) in G.quotients.items():
        if key.startswith("frattini"):
            img = np.unique(proj[elems])
            Qs, emb = subgroup_as_group(quo, img, name=quo.name + "|sub") if img.size != quo.n else (quo, np.arange(quo.n))
            back = -np.ones(quo.n, dtype=np.int64)
            back[emb] = np.arange(emb.size)
            H.quotients[key] = (back[proj[elems]], Qs)
    return H, elems


def a4_pullback(G: FiniteGroup) -> tuple[FiniteGroup, np.ndarray]:
    """Preimage in G of the stabilizer A4 of the point 5 in the Frattini quotient A5."""
    proj, A = G.quotients["frattini:A5"]
    A4 = [x for x in range(A.n) if A.labels[x].images[4] == 4]  # type: ignore[index]
    return subgroup_as_group(G, pullback_subgroup(G, A4), name=f"{G.name}|A4")


# ---------------------------------------------------------------------------
# Spin-separating coset representation of G1
# ---------------------------------------------------------------------------


class SpinSepRep:
    def __init__(self, G: FiniteGroup, sub: np.ndarray, alpha: int, beta: int):
        self.group = G
        self.sub = sub
        self.alpha = alpha
        self.beta = beta
        _, perms = G.coset_action(sub)
        self.perms = perms
        self.degree = perms[0].degree

    def __call__(self, x: int) -> Perm:
        return self.perms[x]


def spin_sep_rep(G: FiniteGroup) -> SpinSepRep:
    """Degree-40 rep on cosets of <alpha', beta> (order 48, image S3 in A5)."""
    proj, A = G.quotients["frattini:A5"]
    M: GF2Module = G.module  # type: ignore[attr-defined]
    orders = G.element_orders
    _, _, reps = G.class_data
    beta_reps = [r for r in reps if orders[r] == 3]
    alpha_cands = [x for x in range(G.n) if orders[x] == 4]
    for beta in beta_reps:
        for alpha in alpha_cands:
            H = G.closure([alpha, beta])
            if H.size != 48:
                continue
            img = np.unique(proj[H])
            if img.size != 6 or A.closure(img.tolist()).size != 6:
                continue
            if int((A.element_orders[img] == 2).sum()) != 3:  # S3, not C6
                continue
            rep = SpinSepRep(G, H, alpha, beta)
            if not _certify_spin_sep(rep, M):
                continue
            return rep
    raise CertificationError("no spin-separating (alpha', beta) pair found")


def _certify_spin_sep(rep: SpinSepRep, M: GF2Module) -> bool:
    G = rep.group
    gens = G.generators
    if any(not rep(g).is_even() for g in gens):
        return False
    # faithful: only the identity acts trivially
    trivial = [x for x in range(G.n) if rep(x).is_identity()]
    if trivial != [0]:
        return False
    return trace_triple(rep, M) == (4, 20, 8)


def trace_triple(rep: SpinSepRep, M: GF2Module) -> tuple[int, int, int]:
    """Fixed-point counts on (M3', M5', V\\{0}), requiring constancy on each."""
    out = []
    for name in ("M3", "M5", "V"):
        fixes = {rep(m // 2).fixed_points() for m in M.named_orbits[name]}
        if len(fixes) != 1:
            raise CertificationError(f"trace not constant on {name}")
        out.append(fixes.pop())
    return tuple(out)  # type: ignore[return-value]


def commuting_involution_profile(m: Perm, mp: Perm) -> tuple[int, int, int, int]:
    """(a(m,m'), a(m',m), b(m,m'), c(m,m')) for commuting involutions.

    a counts 2-cycles of one with no support in the other, b counts shared
    2-cycles, c counts K4-pairs.
    """
    if m * mp != mp * m:
        raise ValueError("involutions do not commute")
    tc = [frozenset(c) for c in m.cycles()]
    tcp = [frozenset(c) for c in mp.cycles()]
    if any(len(c) != 2 for c in tc + tcp):
        raise ValueError("not an involution")
    supp, suppp = set().union(*tc) if tc else set(), set().union(*tcp) if tcp else set()
    a = sum(1 for c in tc if not c & suppp)
    ap = sum(1 for c in tcp if not c & supp)
    shared = set(tc) & set(tcp)
    b = len(shared)
    # remaining 2-cycles of m pair up into K4-pairs
    rest = [c for c in tc if c not in shared and c & suppp]
    if len(rest) % 2:
        raise CertificationError("K4-pair extraction failed")
    c = len(rest) // 2
    return a, ap, b, c


# ---------------------------------------------------------------------------
# Tower arithmetic
# ---------------------------------------------------------------------------


def tower_arith(p: int, rk0: int, g0: int, k: int) -> tuple[int, int]:
    """Iterate rk_{k+1} = 1 + (rk_k - 1) p^rk_k and g_{k+1} - 1 = p^rk_k (g_k - 1)."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    rk, g = rk0, g0
    for _ in range(k):
        rk, g = 1 + (rk - 1) * p**rk, 1 + p**rk * (g - 1)
    return rk, g
