"""Permutations, permutation groups, Schreier-Sims and conjugacy classes.

Permutations act on the right: ``(x)(a*b) == ((x)a)b``.  Cycle notation is
1-based; internally images are stored 0-based.
"""

from __future__ import annotations

import re
from collections import deque
from functools import reduce
from math import gcd
from typing import Iterable, Sequence

DEFAULT_CAP = 10**7


class PermParseError(ValueError):
    """Raised for malformed cycle notation; ``token`` names the culprit."""

    def __init__(self, message: str, token: str):
        super().__init__(f"{message}: {token!r}")
        self.token = token


class EnumerationOverflow(RuntimeError):
    """Closure enumeration exceeded its cap.

    ``partial_bound`` is the number of elements found before stopping, a
    lower bound for the group order.
    """

    def __init__(self, cap: int, partial_bound: int):
        super().__init__(f"group enumeration exceeded cap {cap} (found at least {partial_bound} elements)")
        self.cap = cap
        self.partial_bound = partial_bound


_TOKEN = re.compile(r"\(|\)|[^\s()]+")


class Perm:
    """An immutable permutation of {1..n}."""

    __slots__ = ("_img", "_hash")

    def __init__(self, images: Iterable[int], *, base: int = 0, check: bool = True):
        img = tuple(int(i) - base for i in images)
        if check and sorted(img) != list(range(len(img))):
            raise ValueError(f"not a permutation: {img}")
        self._img = img
        self._hash = hash(img)

    # construction ---------------------------------------------------------
    @classmethod
    def identity(cls, n: int) -> "Perm":
        return cls(range(n), check=False)

    @classmethod
    def parse(cls, text: str, n: int) -> "Perm":
        """Parse disjoint-cycle notation such as ``"(1 2 3)(4 5)"``."""
        img = list(range(n))
        seen: set[int] = set()
        tokens = _TOKEN.findall(text.strip())
        rest = _TOKEN.sub("", text).strip()
        if rest:
            raise PermParseError("unexpected characters", rest.split()[0])
        cycle: list[int] | None = None
        for tok in tokens:
            if tok == "(":
                if cycle is not None:
                    raise PermParseError("nested parenthesis", tok)
                cycle = []
            elif tok == ")":
                if cycle is None:
                    raise PermParseError("unmatched parenthesis", tok)
                for a, b in zip(cycle, cycle[1:] + cycle[:1]):
                    img[a] = b
                cycle = None
            else:
                if cycle is None:
                    raise PermParseError("point outside a cycle", tok)
                try:
                    p = int(tok, 10)
                except ValueError:
                    raise PermParseError("not an integer", tok) from None
                if p < 1 or p > n:
                    raise PermParseError(f"point out of range 1..{n}", tok)
                if p in seen:
                    raise PermParseError("repeated point", tok)
                seen.add(p)
                cycle.append(p - 1)
        if cycle is not None:
            raise PermParseError("unclosed parenthesis", "(")
        return cls(img, check=False)

    @classmethod
    def from_cycles(cls, cycles: Sequence[Sequence[int]], n: int) -> "Perm":
        """Build from 1-based cycles."""
        img = list(range(n))
        for c in cycles:
            for a, b in zip(c, list(c[1:]) + [c[0]]):
                img[a - 1] = b - 1
        return cls(img)

    # basic protocol ---------------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self._img)

    @property
    def images(self) -> tuple[int, ...]:
        """0-based image tuple."""
        return self._img

    def __call__(self, x: int) -> int:
        """Image of a 1-based point."""
        return self._img[x - 1] + 1

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Perm) and self._img == other._img

    def __lt__(self, other: "Perm") -> bool:
        return self._img < other._img

    def __hash__(self) -> int:
        return self._hash

    def __mul__(self, other: "Perm") -> "Perm":
        if self.degree != other.degree:
            raise ValueError(f"degree mismatch: {self.degree} vs {other.degree}")
        o = other._img
        return Perm([o[i] for i in self._img], check=False)

    def __invert__(self) -> "Perm":
        return self.inverse()

    def inverse(self) -> "Perm":
        inv = [0] * len(self._img)
        for i, j in enumerate(self._img):
            inv[j] = i
        return Perm(inv, check=False)

    def __pow__(self, k: int) -> "Perm":
        if k < 0:
            return self.inverse() ** (-k)
        result = Perm.identity(self.degree)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conj(self, h: "Perm") -> "Perm":
        """``h^-1 * self * h``."""
        return h.inverse() * self * h

    # structure ----------------------------------------------------------------
    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, 1-based, each starting at its least point."""
        seen = [False] * len(self._img)
        out = []
        for i in range(len(self._img)):
            if seen[i] or self._img[i] == i:
                seen[i] = True
                continue
            c = []
            j = i
            while not seen[j]:
                seen[j] = True
                c.append(j + 1)
                j = self._img[j]
            out.append(tuple(c))
        return out

    def cycle_type(self) -> tuple[int, ...]:
        """All cycle lengths including fixed points, descending."""
        seen = [False] * len(self._img)
        lens = []
        for i in range(len(self._img)):
            if seen[i]:
                continue
            k = 0
            j = i
            while not seen[j]:
                seen[j] = True
                j = self._img[j]
                k += 1
            lens.append(k)
        return tuple(sorted(lens, reverse=True))

    def order(self) -> int:
        return reduce(lambda a, b: a * b // gcd(a, b), self.cycle_type(), 1)

    def is_even(self) -> bool:
        return sum(k - 1 for k in self.cycle_type()) % 2 == 0

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self._img))

    def fixed_points(self) -> int:
        return sum(1 for i, j in enumerate(self._img) if i == j)

    def support(self) -> list[int]:
        return [i + 1 for i, j in enumerate(self._img) if i != j]

    def __str__(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)

    def __repr__(self) -> str:
        return f"Perm.parse({str(self)!r}, {self.degree})"


# ---------------------------------------------------------------------------
# Schreier-Sims
# ---------------------------------------------------------------------------


def _mul(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(b[i] for i in a)


def _inv(a: tuple[int, ...]) -> tuple[int, ...]:
    inv = [0] * len(a)
    for i, j in enumerate(a):
        inv[j] = i
    return tuple(inv)


class BSGS:
    """Deterministic Schreier-Sims stabilizer chain (the textbook restart loop)."""

    def __init__(self, gens: Sequence[Perm], n: int):
        self.n = n
        ident = tuple(range(n))
        self._ident = ident
        self.strong: list[tuple[int, ...]] = []
        self.base: list[int] = []
        for g in gens:
            if g.images != ident and g.images not in self.strong:
                self.strong.append(g.images)
        for s in self.strong:
            if all(s[b] == b for b in self.base):
                self.base.append(next(i for i in range(n) if s[i] != i))
        self.trans: list[dict[int, tuple[int, ...]]] = []
        self._build()

    def _level_gens(self, i: int) -> list[tuple[int, ...]]:
        fix = self.base[:i]
        return [s for s in self.strong if all(s[b] == b for b in fix)]

    def _orbit(self, i: int) -> dict[int, tuple[int, ...]]:
        gens = self._level_gens(i)
        b = self.base[i]
        trans = {b: self._ident}
        queue = deque([b])
        while queue:
            x = queue.popleft()
            tx = trans[x]
            for g in gens:
                y = g[x]
                if y not in trans:
                    trans[y] = _mul(tx, g)
                    queue.append(y)
        return trans

    def _strip(self, g: tuple[int, ...], start: int = 0) -> tuple[tuple[int, ...], int]:
        for i in range(start, len(self.base)):
            t = self.trans[i].get(g[self.base[i]])
            if t is None:
                return g, i
            g = _mul(g, _inv(t))
        return g, len(self.base)

    def _build(self) -> None:
        k = len(self.base)
        self.trans = [self._orbit(i) for i in range(k)]
        i = k - 1
        while i >= 0:
            restart = False
            gens = self._level_gens(i)
            for x, tx in list(self.trans[i].items()):
                for s in gens:
                    sg = _mul(_mul(tx, s), _inv(self.trans[i][s[x]]))
                    h, j = self._strip(sg, i + 1)
                    if j < len(self.base) or h != self._ident:
                        self.strong.append(h)
                        if j == len(self.base):
                            self.base.append(next(p for p in range(self.n) if h[p] != p))
                            self.trans.append({})
                        for lv in range(i + 1, j + 1):
                            self.trans[lv] = self._orbit(lv)
                        i = j
                        restart = True
                        break
                if restart:
                    break
            if not restart:
                i -= 1

    def order(self) -> int:
        out = 1
        for t in self.trans:
            out *= len(t)
        return out

    def contains(self, p: Perm) -> bool:
        h, d = self._strip(p.images)
        return d == len(self.base) and h == self._ident


class PermGroup:
    """A permutation group given by generators."""

    def __init__(self, gens: Sequence[Perm], degree: int | None = None):
        gens = list(gens)
        if not gens and degree is None:
            raise ValueError("empty generator list needs an explicit degree")
        n = degree if degree is not None else gens[0].degree
        for g in gens:
            if g.degree != n:
                raise ValueError(f"degree mismatch: {g.degree} vs {n}")
        self.degree = n
        self.gens = gens
        self._bsgs: BSGS | None = None
        self._elements: list[Perm] | None = None

    @property
    def bsgs(self) -> BSGS:
        if self._bsgs is None:
            self._bsgs = BSGS(self.gens, self.degree)
        return self._bsgs

    def order(self) -> int:
        return self.bsgs.order()

    def __contains__(self, p: Perm) -> bool:
        return self.bsgs.contains(p)

    def elements(self, cap: int = DEFAULT_CAP) -> list[Perm]:
        """All elements by closure, sorted by image tuple."""
        if self._elements is None:
            ident = tuple(range(self.degree))
            seen = {ident}
            queue = deque([ident])
            gimgs = [g.images for g in self.gens]
            while queue:
                x = queue.popleft()
                for g in gimgs:
                    y = _mul(x, g)
                    if y not in seen:
                        seen.add(y)
                        if len(seen) > cap:
                            raise EnumerationOverflow(cap, len(seen))
                        queue.append(y)
            self._elements = [Perm(t, check=False) for t in sorted(seen)]
        return self._elements

    def is_transitive(self) -> bool:
        if self.degree == 0:
            return True
        seen = {0}
        queue = deque([0])
        while queue:
            x = queue.popleft()
            for g in self.gens:
                y = g.images[x]
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return len(seen) == self.degree

    def is_even(self) -> bool:
        return all(g.is_even() for g in self.gens)

    def orbits(self) -> list[list[int]]:
        """Orbits on 1-based points."""
        seen: set[int] = set()
        out = []
        for s in range(self.degree):
            if s in seen:
                continue
            orb = [s]
            seen.add(s)
            i = 0
            while i < len(orb):
                for g in self.gens:
                    y = g.images[orb[i]]
                    if y not in seen:
                        seen.add(y)
                        orb.append(y)
                i += 1
            out.append(sorted(x + 1 for x in orb))
        return out


def conjugacy_classes(elements: Sequence[Perm]) -> list[list[Perm]]:
    """Classes of an enumerated group, each sorted, ordered by least member."""
    eset = set(elements)
    seen: set[Perm] = set()
    classes = []
    for g in sorted(elements):
        if g in seen:
            continue
        cls = {g.conj(h) for h in elements}
        if not cls <= eset:
            raise ValueError("element set is not closed under conjugation")
        seen |= cls
        classes.append(sorted(cls))
    return classes


def centralizer(elements: Sequence[Perm], g: Perm) -> list[Perm]:
    if g not in set(elements):
        raise ValueError(f"{g} is not in the group")
    return [h for h in elements if h * g == g * h]


def conj_class_and_centralizer(elements: Sequence[Perm], g: Perm):
    """(class of g, centralizer of g, sizes of all classes)."""
    cen = centralizer(elements, g)
    cls = sorted({g.conj(h) for h in elements})
    sizes = sorted(len(c) for c in conjugacy_classes(elements))
    return cls, cen, sizes
