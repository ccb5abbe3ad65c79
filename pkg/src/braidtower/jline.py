"""Reduced Hurwitz spaces as covers of the j-line.

An M4-bar orbit of reduced classes gives the branch cycles (gamma_0,
gamma_1, gamma_inf) of its cover of the j-line; genus follows from
Riemann-Hurwitz and the monodromy group is the group they generate.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .braidact import OrbitAction, _cycles, cusp_orbits, shortening_type
from .nielsen import ClassSet, NielsenClasses, qpp_perms
from .permcore import Perm, PermGroup


class GenusError(ArithmeticError):
    """Riemann-Hurwitz gave a non-integral or negative genus."""


@dataclass
class JCover:
    gamma0: Perm
    gamma1: Perm
    gammainf: Perm
    widths: list[int] = field(default_factory=list)

    @property
    def degree(self) -> int:
        return self.gamma0.degree

    @property
    def tr0(self) -> int:
        return self.gamma0.fixed_points()

    @property
    def tr1(self) -> int:
        return self.gamma1.fixed_points()

    def genus(self) -> int:
        return genus(self)

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "genus": self.genus(),
            "cusp_widths": sorted(self.widths),
            "tr0": self.tr0,
            "tr1": self.tr1,
            "monodromy_order": monodromy_order(self),
        }


def branch_cycles(orb: OrbitAction) -> JCover:
    g0, g1, gi = (Perm(p.tolist(), check=True) for p in (orb.g0, orb.g1, orb.ginf))
    if not (g0 * g1 * gi).is_identity():
        raise AssertionError("gamma_0 gamma_1 gamma_inf is not the identity")
    return JCover(g0, g1, gi, sorted(len(c) for c in _cycles(orb.ginf)))


def genus_from_shapes(n: int, tr0: int, tr1: int, widths: Sequence[int]) -> int:
    """2(n + g - 1) = 2(n - tr0)/3 + (n - tr1)/2 + sum(v - 1)."""
    if sum(widths) != n:
        raise GenusError(f"cusp widths sum to {sum(widths)}, not {n}")
    rhs = Fraction(2 * (n - tr0), 3) + Fraction(n - tr1, 2) + sum(v - 1 for v in widths)
    g = rhs / 2 - n + 1
    if g.denominator != 1 or g < 0:
        raise GenusError(f"Riemann-Hurwitz gives genus {g} (n={n}, tr0={tr0}, tr1={tr1}, widths={sorted(widths)})")
    return int(g)


def genus(cover: JCover) -> int:
    n = cover.degree
    if not (cover.gamma0 ** 3).is_identity() or not (cover.gamma1 ** 2).is_identity():
        raise GenusError("gamma_0 must have order dividing 3 and gamma_1 order dividing 2")
    return genus_from_shapes(n, cover.tr0, cover.tr1, cover.widths)


def monodromy_order(cover: JCover) -> int:
    if cover.degree > 512:
        raise ValueError("degree above 512")
    return PermGroup([cover.gamma0, cover.gamma1, cover.gammainf], cover.degree).order()


def moduli_fineness(nc: NielsenClasses, rc: ClassSet, orb: OrbitAction) -> str:
    """'fine', 'b-fine' or 'not-b-fine' for an orbit of reduced inner classes."""
    a, b = qpp_perms(nc)
    inner = np.concatenate([rc.members[p] for p in orb.points])
    from .nielsen import orbit_partition

    label = orbit_partition(len(nc), [a, b])
    sizes = np.bincount(label)[label[inner]]
    if not np.all(sizes == 4):
        return "not-b-fine"
    cover = branch_cycles(orb)
    if cover.tr0 == 0 and cover.tr1 == 0:
        return "fine"
    return "b-fine"


# ---------------------------------------------------------------------------
# relative structure between levels
# ---------------------------------------------------------------------------


def level_projection(upper: ClassSet, lower: ClassSet, proj: np.ndarray) -> np.ndarray:
    """Reduced class below each reduced class of the upper level (proj maps group elements)."""
    lnc = lower.nc
    out = np.empty(len(upper), dtype=np.int64)
    for b in range(len(upper)):
        t = proj[np.array(upper.rep(b))]
        out[b] = lower.block[lnc.find(t)]
    # well defined on whole blocks
    for b, m in enumerate(upper.members):
        for i in m[:4]:
            t = proj[upper.nc.tuples[i]]
            if lower.block[lnc.find(t)] != out[b]:
                raise AssertionError("projection is not constant on a reduced class")
    return out


@dataclass
class RelativeMonodromy:
    order: int
    block_size: int
    center_order: int
    generators: list[Perm]


def relative_monodromy(orb: OrbitAction, below: np.ndarray) -> RelativeMonodromy:
    """Action of the stabilizer of one fiber on that fiber.

    ``below[x]`` is the lower-level point under local point x.  Schreier
    generators for the block stabilizer come from a spanning tree of the
    block action.
    """
    gens = [tuple(int(v) for v in p) for p in (orb.g0, orb.g1, orb.ginf)]
    n = len(orb)
    blocks_of = {}
    for x in range(n):
        blocks_of.setdefault(int(below[x]), []).append(x)
    sizes = {len(v) for v in blocks_of.values()}
    if len(sizes) != 1:
        raise AssertionError("fibers have different sizes")
    block0 = int(below[0])
    ident = tuple(range(n))

    def mul(a, b):
        return tuple(b[i] for i in a)

    def inv(a):
        out = [0] * len(a)
        for i, j in enumerate(a):
            out[j] = i
        return tuple(out)

    trans = {block0: ident}
    queue = [block0]
    while queue:
        b = queue.pop(0)
        u = trans[b]
        rep = blocks_of[b][0]
        for g in gens:
            c = int(below[g[rep]])
            if c not in trans:
                trans[c] = mul(u, g)
                queue.append(c)
    # the block image of an element is read off one point's image
    schreier = []
    for b, u in trans.items():
        rep = blocks_of[b][0]
        for g in gens:
            ug = mul(u, g)
            c = int(below[ug[blocks_of[block0][0]]])
            s = mul(ug, inv(trans[c]))
            schreier.append(s)
    fiber = blocks_of[block0]
    pos = {x: k for k, x in enumerate(fiber)}
    restricted = []
    for s in schreier:
        if any(int(below[s[x]]) != block0 for x in fiber):
            raise AssertionError("Schreier generator does not stabilise the fiber")
        restricted.append(Perm([pos[s[x]] for x in fiber]))
    restricted = sorted(set(restricted))
    H = PermGroup(restricted, len(fiber))
    elems = H.elements()
    center = [z for z in elems if all(z * g == g * z for g in restricted)]
    return RelativeMonodromy(H.order(), len(fiber), len(center), restricted)


@dataclass
class RelativeCusp:
    upper: tuple[int, int]  # (u', v')
    lower: tuple[int, int]  # (u, v)
    ind: int
    alpha_upper: int
    alpha_lower: int
    beta: int
    mu_upper: int
    mu_lower: int

    @property
    def factored(self) -> Fraction:
        return Fraction(self.alpha_upper * self.beta * self.mu_lower, self.alpha_lower * self.mu_upper)


def _inner_q2_length(nc: NielsenClasses, i: int) -> int:
    q2 = nc.braid_perm(2)
    k, x = 1, int(q2[i])
    while x != i:
        x = int(q2[x])
        k += 1
    return k


def relative_cusp_indices(upper_orb: OrbitAction, lower_orb: OrbitAction, below: np.ndarray) -> list[RelativeCusp]:
    """Ramification of each upper cusp over the lower cusp beneath it, two ways."""
    urc, lrc = upper_orb.classes, lower_orb.classes
    unc, lnc = urc.nc, lrc.nc
    lower_local = {int(p): k for k, p in enumerate(lower_orb.points)}
    lcusps = cusp_orbits(lower_orb)
    lwhere = {}
    for c in lcusps:
        for m in c.members:
            lwhere[m] = c
    out = []
    for c in cusp_orbits(upper_orb):
        x = c.members[0]
        lower_point = lower_local.get(int(below[upper_orb.points[x]]))
        if lower_point is None:
            raise ValueError("upper cusp does not lie over the given lower orbit")
        lc = lwhere[lower_point]
        ui = int(urc.rep_index[upper_orb.points[x]])
        # an inner class below ui lying in the lower reduced class
        li = int(lrc.rep_index[lower_orb.points[lower_point]])
        a_up = _inner_q2_length(unc, ui) // c.u
        a_lo = _inner_q2_length(lnc, li) // lc.u
        mu_up = shortening_type(unc, urc, ui)
        mu_lo = shortening_type(lnc, lrc, li)
        if c.v % lc.v:
            raise AssertionError("upper width is not a multiple of the lower width")
        rc = RelativeCusp((c.u, c.v), (lc.u, lc.v), c.v // lc.v, a_up, a_lo, c.u // lc.u, mu_up, mu_lo)
        if rc.factored != rc.ind:
            raise AssertionError(f"index factorisation {rc.factored} differs from width ratio {rc.ind}")
        out.append(rc)
    return out
