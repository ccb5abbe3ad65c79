"""The double cover of S_n in which transpositions lift to involutions.

Generators s_i (lifting the adjacent transposition (i i+1)) satisfy
s_i^2 = 1, s_i s_j = -s_j s_i for |i - j| >= 2, and the braid relation
with sign +1.  An element is ``sign * W(pi)`` where ``W(pi)`` is the word
produced by insertion sort.

Multiplication uses a crossing-count cocycle.  Think of a reduced word as
wires being crossed.  For a reduced word w let N(w) count pairs of
crossings with disjoint wire pairs that occur in decreasing lexicographic
order; then ``(-1)^N(w) * w`` does not depend on the reduced word (a far
commutation flips N by one, a braid move keeps it).  Appending a letter
that crosses wires a < b multiplies by ``(-1)^D`` with D the number of
currently crossed pairs (c, d) disjoint from {a, b} with c > a, whether the
length goes up or down.

:class:`RewriteEngine` reduces words by the three relations literally and
:class:`CliffordDense` multiplies in the Clifford algebra; both serve as
references for small n.
"""

from __future__ import annotations

from collections import deque
from functools import lru_cache

import numpy as np

from .permcore import Perm, PermGroup

# ---------------------------------------------------------------------------
# canonical words and the crossing-count cocycle
# ---------------------------------------------------------------------------


def arrangement(p: Perm) -> list[int]:
    """Wire at each position after applying a word for p to the identity."""
    return list(p.inverse().images)


def canonical_word(p: Perm) -> tuple[int, ...]:
    """Insertion-sort word (0-based letters i for s_i swapping positions i, i+1)."""
    arr = arrangement(p)
    swaps = []
    for i in range(1, len(arr)):
        j = i
        while j > 0 and arr[j - 1] > arr[j]:
            arr[j - 1], arr[j] = arr[j], arr[j - 1]
            swaps.append(j - 1)
            j -= 1
    return tuple(reversed(swaps))


class _PairIndex:
    """Lexicographic bit positions of pairs (c, d), c < d, and the masks used for D."""

    def __init__(self, n: int):
        self.n = n
        rowstart = [0] * (n + 1)
        for c in range(n):
            rowstart[c + 1] = rowstart[c] + (n - 1 - c)
        self.rowstart = rowstart
        self.rowmask = []
        for c in range(n):
            self.rowmask.append(((1 << (n - 1 - c)) - 1) << rowstart[c])
        self.colmask = []
        for d in range(n):
            m = 0
            for c in range(d):
                m |= 1 << self.bit(c, d)
            self.colmask.append(m)

    def bit(self, c: int, d: int) -> int:
        return self.rowstart[c] + (d - c - 1)


@lru_cache(maxsize=None)
def _pair_index(n: int) -> _PairIndex:
    return _PairIndex(n)


def _run(arr: list[int], crossed: int, word, idx: _PairIndex) -> tuple[int, int]:
    """Apply letters to (arr, crossed) in place; return (parity of sum D, crossed)."""
    rowstart, rowmask, colmask = idx.rowstart, idx.rowmask, idx.colmask
    total = 0
    for i in word:
        a, b = arr[i], arr[i + 1]
        arr[i], arr[i + 1] = b, a
        if a > b:
            a, b = b, a
        shift = rowstart[a + 1]
        d = (crossed >> shift).bit_count()
        d -= (crossed & rowmask[b]).bit_count()
        d -= ((crossed & colmask[b]) >> shift).bit_count()
        total += d
        crossed ^= 1 << idx.bit(a, b)
    return total & 1, crossed


@lru_cache(maxsize=200_000)
def _state(p_images: tuple[int, ...]) -> tuple[int, int]:
    """(K(p) mod 2, crossed-pair bitset) of the canonical word of p."""
    p = Perm(p_images, check=False)
    n = p.degree
    arr = list(range(n))
    k, crossed = _run(arr, 0, canonical_word(p), _pair_index(n))
    return k, crossed


def _product_phase(a: Perm, b: Perm) -> int:
    """Exponent e (mod 2) with W(a) W(b) = (-1)^e W(ab)."""
    n = a.degree
    ka, crossed = _state(a.images)
    arr = arrangement(a)
    d, _ = _run(arr, crossed, canonical_word(b), _pair_index(n))
    kab, _ = _state((a * b).images)
    return (ka + d + kab) & 1


class SpinElement:
    """``sign * W(perm)`` in the double cover of S_n."""

    __slots__ = ("perm", "sign")

    def __init__(self, perm: Perm, sign: int = 1):
        if sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        self.perm = perm
        self.sign = sign

    @classmethod
    def identity(cls, n: int) -> "SpinElement":
        return cls(Perm.identity(n), 1)

    @classmethod
    def zhat(cls, n: int) -> "SpinElement":
        """The central element of order 2 in the kernel."""
        return cls(Perm.identity(n), -1)

    @classmethod
    def generator(cls, i: int, n: int) -> "SpinElement":
        """s_i lifting (i i+1), 1-based i."""
        return cls(Perm.from_cycles([[i, i + 1]], n), 1)

    @classmethod
    def transposition(cls, i: int, j: int, n: int) -> "SpinElement":
        """[i j] = s_{j-1} ... s_{i+1} s_i s_{i+1} ... s_{j-1} for i < j (1-based)."""
        if i > j:
            i, j = j, i
        out = cls.identity(n)
        word = list(range(j - 1, i, -1)) + [i] + list(range(i + 1, j))
        for k in word:
            out = out * cls.generator(k, n)
        return out

    @property
    def n(self) -> int:
        return self.perm.degree

    def __mul__(self, other: "SpinElement") -> "SpinElement":
        if self.n != other.n:
            raise ValueError("degree mismatch")
        e = _product_phase(self.perm, other.perm)
        return SpinElement(self.perm * other.perm, self.sign * other.sign * (-1) ** e)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, SpinElement) and self.perm == other.perm and self.sign == other.sign

    def __hash__(self) -> int:
        return hash((self.perm, self.sign))

    def __pow__(self, k: int) -> "SpinElement":
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        out = SpinElement.identity(self.n)
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def inverse(self) -> "SpinElement":
        pinv = self.perm.inverse()
        e = _product_phase(self.perm, pinv)
        # W(p) W(p^-1) = (-1)^e, so (s W(p))^-1 = s (-1)^e W(p^-1)
        return SpinElement(pinv, self.sign * (-1) ** e)

    def is_identity(self) -> bool:
        return self.sign == 1 and self.perm.is_identity()

    def is_zhat(self) -> bool:
        return self.sign == -1 and self.perm.is_identity()

    def order(self) -> int:
        d = self.perm.order()
        return d if (self ** d).is_identity() else 2 * d

    def __repr__(self) -> str:
        return f"{'+' if self.sign == 1 else '-'}W{self.perm}"


def spin_mul(a: SpinElement, b: SpinElement) -> SpinElement:
    return a * b


def lift(p: Perm) -> SpinElement:
    return SpinElement(p, 1)


def order_of_lift(g: Perm) -> int:
    """Order of either lift of an even permutation (the canonical one for odd order)."""
    if not g.is_even():
        raise ValueError(f"{g} is an odd permutation")
    d = g.order()
    if d % 2:
        return d
    return SpinElement(g, 1).order()


def canonical_odd_lift(g: Perm) -> SpinElement:
    """The lift of an odd-order element having the same order."""
    d = g.order()
    if d % 2 == 0:
        raise ValueError(f"{g} has even order {d}")
    if not g.is_even():
        raise ValueError(f"{g} is an odd permutation")
    x = SpinElement(g, 1)
    return x if (x ** d).is_identity() else SpinElement(g, -1)


def product_sign(tup) -> int:
    """Sign of the product of canonical lifts of odd-order entries with product 1."""
    tup = list(tup)
    if not tup:
        raise ValueError("empty tuple")
    n = tup[0].degree
    prod = Perm.identity(n)
    for g in tup:
        prod = prod * g
    if not prod.is_identity():
        raise ValueError("entries do not multiply to the identity")
    out = SpinElement.identity(n)
    for g in tup:
        out = out * canonical_odd_lift(g)
    return out.sign


def omega(g: Perm) -> int:
    return sum((len(c) ** 2 - 1) // 8 for c in g.cycles())


def index(g: Perm) -> int:
    """n minus the number of orbits of <g>."""
    return g.degree - len(g.cycle_type())


def serre_formula(tup) -> tuple[int, bool]:
    """(sign, applicable): (-1)^(sum omega) for transitive genus-0 odd-order tuples."""
    tup = list(tup)
    n = tup[0].degree
    sign = (-1) ** sum(omega(g) for g in tup)
    applicable = (
        all(g.order() % 2 for g in tup)
        and sum(index(g) for g in tup) == 2 * (n - 1)
        and PermGroup(tup, n).is_transitive()
    )
    return sign, applicable


def quaternion_check(a: Perm, b: Perm) -> bool:
    """Lifts of distinct commuting involutions generate Q8."""
    x, y = lift(a), lift(b)
    seen = {SpinElement.identity(a.degree)}
    frontier = list(seen)
    while frontier:
        nxt = []
        for e in frontier:
            for g in (x, y):
                f = e * g
                if f not in seen:
                    seen.add(f)
                    nxt.append(f)
        frontier = nxt
    orders = sorted(e.order() for e in seen)
    return len(seen) == 8 and orders == [1, 2, 4, 4, 4, 4, 4, 4]


# ---------------------------------------------------------------------------
# literal rewriting reference
# ---------------------------------------------------------------------------


class RewriteEngine:
    """Reduces words with s_i^2 -> 1 (+), far commutation (-), braid move (+).

    Reduced words of one permutation are connected by moves, so equality
    with the canonical word is decided by a signed search over that graph.
    Exponential in n; for small n only.
    """

    def __init__(self, n: int):
        self.n = n

    def _moves(self, w: tuple[int, ...]):
        for k in range(len(w) - 1):
            i, j = w[k], w[k + 1]
            if abs(i - j) >= 2:
                yield w[:k] + (j, i) + w[k + 2 :], -1
            if k + 2 < len(w) and abs(i - j) == 1 and w[k + 2] == i:
                yield w[:k] + (j, i, j) + w[k + 3 :], 1

    def _search(self, start: tuple[int, ...], goal) -> tuple[tuple[int, ...], int]:
        """Signed BFS from a reduced word to the first word satisfying goal."""
        signs = {start: 1}
        queue = deque([start])
        while queue:
            w = queue.popleft()
            if goal(w):
                return w, signs[w]
            for v, s in self._moves(w):
                sv = signs[w] * s
                if v in signs:
                    if signs[v] != sv:
                        raise AssertionError(f"inconsistent signs reaching {v}")
                    continue
                signs[v] = sv
                queue.append(v)
        raise AssertionError("goal not reachable")

    @staticmethod
    def _is_reduced_after(arr: list[int], i: int) -> bool:
        return arr[i] < arr[i + 1]

    def reduce(self, word) -> tuple[tuple[int, ...], int]:
        """(reduced word, sign) with word == sign * reduced word."""
        cur: tuple[int, ...] = ()
        sign = 1
        arr = list(range(self.n))
        for i in word:
            if self._is_reduced_after(arr, i):
                cur = cur + (i,)
            else:
                w, s = self._search(cur, lambda v: v[-1] == i)
                sign *= s
                cur = w[:-1]
            arr[i], arr[i + 1] = arr[i + 1], arr[i]
        return cur, sign

    def mul(self, a: SpinElement, b: SpinElement) -> SpinElement:
        word = canonical_word(a.perm) + canonical_word(b.perm)
        red, s = self.reduce(word)
        target = canonical_word(a.perm * b.perm)
        _, s2 = self._search(red, lambda v: v == target)
        return SpinElement(a.perm * b.perm, a.sign * b.sign * s * s2)


# ---------------------------------------------------------------------------
# dense Clifford oracle
# ---------------------------------------------------------------------------


class CliffordDense:
    """Dense Clifford algebra on x_1..x_n with x_i^2 = 1, x_i x_j = -x_j x_i.

    An element is an integer coefficient vector over blades (bitmasks)
    divided by sqrt(2)**exp.  s_i maps to (x_i - x_{i+1}) / sqrt(2).
    """

    def __init__(self, n: int):
        if not 1 <= n <= 8:
            raise ValueError("dense oracle supports n <= 8")
        self.n = n
        size = 1 << n
        a = np.arange(size)[:, None]
        b = np.arange(size)[None, :]
        sign = np.zeros((size, size), dtype=np.int64)
        for i in range(n):
            # bits of a above i, times bit i of b
            above = (a >> (i + 1)) & ((1 << n) - 1)
            sign += ((b >> i) & 1) * _popcount(above)
        self.sign = np.where(sign % 2, -1, 1)
        self.xor = a ^ b
        self.size = size

    def mul(self, x: tuple[np.ndarray, int], y: tuple[np.ndarray, int]) -> tuple[np.ndarray, int]:
        cx, ex = x
        cy, ey = y
        terms = cx[:, None] * cy[None, :] * self.sign
        out = np.zeros(self.size, dtype=np.int64)
        np.add.at(out, self.xor.ravel(), terms.ravel())
        return out, ex + ey

    def mul_batch(self, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
        """Row-wise products of coefficient arrays (exponents handled by caller)."""
        k = X.shape[0]
        terms = X[:, :, None] * Y[:, None, :] * self.sign[None]
        flat = (np.arange(k)[:, None] * self.size + self.xor.ravel()[None, :]).ravel()
        out = np.zeros(k * self.size, dtype=np.int64)
        np.add.at(out, flat, terms.ravel())
        return out.reshape(k, self.size)

    def one(self) -> tuple[np.ndarray, int]:
        v = np.zeros(self.size, dtype=np.int64)
        v[0] = 1
        return v, 0

    def s(self, i: int) -> tuple[np.ndarray, int]:
        """Image of s_i (0-based, swapping positions i, i+1)."""
        v = np.zeros(self.size, dtype=np.int64)
        v[1 << i] = 1
        v[1 << (i + 1)] = -1
        return v, 1

    @staticmethod
    def sorting_word(images: tuple[int, ...]) -> list[int]:
        """Insertion-sort word for the permutation with the given 0-based images.

        Written independently of the production word builder: positions of
        wires are tracked directly and each wire is walked left.
        """
        n = len(images)
        wire_at = [0] * n
        for x, y in enumerate(images):
            wire_at[y] = x
        emitted = []
        for i in range(1, n):
            j = i
            while j and wire_at[j - 1] > wire_at[j]:
                wire_at[j - 1], wire_at[j] = wire_at[j], wire_at[j - 1]
                emitted.append(j - 1)
                j -= 1
        emitted.reverse()
        return emitted

    def element(self, images: tuple[int, ...], sign: int) -> tuple[np.ndarray, int]:
        v = self.one()
        for i in self.sorting_word(images):
            v = self.mul(v, self.s(i))
        return v[0] * sign, v[1]

    @staticmethod
    def equal(x: tuple[np.ndarray, int], y: tuple[np.ndarray, int]) -> bool:
        (cx, ex), (cy, ey) = x, y
        if (ex - ey) % 2:
            return False
        if ex > ey:
            cy = cy * 2 ** ((ex - ey) // 2)
        else:
            cx = cx * 2 ** ((ey - ex) // 2)
        return bool(np.array_equal(cx, cy))


def _popcount(arr: np.ndarray) -> np.ndarray:
    out = np.zeros_like(arr)
    x = arr.copy()
    while (x > 0).any():
        out += x & 1
        x >>= 1
    return out


def clifford_oracle_check(n: int, pairs: int | None = None, seed: int = 0) -> dict[str, int]:
    """Compare spin multiplication against the dense oracle.

    All pairs of the 2 * n! elements when ``pairs`` is None, else that many
    random pairs.  Raises AssertionError on a mismatch.
    """
    if not 1 <= n <= 8:
        raise ValueError("n must be at most 8")
    from itertools import permutations

    cl = CliffordDense(n)
    perms = [tuple(p) for p in permutations(range(n))]
    pindex = {p: k for k, p in enumerate(perms)}
    dense = []
    exps = []
    for p in perms:
        c, e = cl.element(p, 1)
        dense.append(c)
        exps.append(e)
    dense_arr = np.array(dense)
    exps_arr = np.array(exps)
    m = len(perms)
    if pairs is None:
        ia, ib = np.divmod(np.arange(4 * m * m), 2 * m)
        sa, ia = 1 - 2 * (ia % 2), ia // 2
        sb, ib = 1 - 2 * (ib % 2), ib // 2
    else:
        rng = np.random.default_rng(seed)
        ia = rng.integers(0, m, pairs)
        ib = rng.integers(0, m, pairs)
        sa = rng.choice([-1, 1], pairs)
        sb = rng.choice([-1, 1], pairs)
    mismatches = 0
    batch = 512
    for start in range(0, len(ia), batch):
        A = ia[start : start + batch]
        B = ib[start : start + batch]
        prod = cl.mul_batch(dense_arr[A], dense_arr[B]) * (sa[start : start + batch] * sb[start : start + batch])[:, None]
        for k in range(len(A)):
            x = SpinElement(Perm(perms[A[k]], check=False), int(sa[start + k]))
            y = SpinElement(Perm(perms[B[k]], check=False), int(sb[start + k]))
            z = x * y
            zk = pindex[z.perm.images]
            want = (dense_arr[zk] * z.sign, int(exps_arr[zk]))
            got = (prod[k], int(exps_arr[A[k]] + exps_arr[B[k]]))
            if not CliffordDense.equal(got, want):
                mismatches += 1
    if mismatches:
        raise AssertionError(f"{mismatches} mismatches against the Clifford oracle at n={n}")
    return {"n": n, "pairs": len(ia), "mismatches": 0}
