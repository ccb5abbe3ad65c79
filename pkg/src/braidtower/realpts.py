"""Complex conjugation operators on Nielsen tuples and real points.

For r = 4, r1 = 0 or 4 real branch points put j in (1, oo) and r1 = 2 puts
j in (-oo, 1).  A reduced class is real over an interval when its Q''-orbit
(and outer-automorphism orbit, in absolute mode) contains khat of a member.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .braidact import OrbitAction, _cycles
from .grouptower import FiniteGroup

INTERVAL_VARIANTS = {"(1,inf)": (0, 4), "(-inf,1)": (2,)}
INTERVALS = ("(1,inf)", "(0,1)", "(-inf,0)")


def khat(G: FiniteGroup, t: Sequence[int], r1: int) -> tuple[int, ...]:
    """Complex conjugation operator for r1 real branch points and (r - r1)/2 conjugate pairs.

    Real entries come first and conjugate pairs after them; each real entry
    is inverted and conjugated by the product of the later entries, each pair
    is swapped, inverted and conjugated by the product of the later pairs.
    """
    t = [int(x) for x in t]
    r = len(t)
    if r1 < 0 or (r - r1) % 2 or r1 > r:
        raise ValueError(f"cannot split {r} branch points with {r1} real ones")
    inv, mul = G.inv, G.mul
    out = [0] * r
    tail = 0
    for j in range(r - 2, r1 - 1, -2):
        a, b = t[j], t[j + 1]
        out[j] = G.conj(int(inv[b]), tail)
        out[j + 1] = G.conj(int(inv[a]), tail)
        tail = int(mul[mul[a, b], tail])
    for i in range(r1 - 1, -1, -1):
        out[i] = G.conj(int(inv[t[i]]), tail)
        tail = int(mul[t[i], tail])
    return tuple(out)


class OrbitNotReal(LookupError):
    """khat carries the orbit to a different orbit, so its component has no real points."""


class RepresentativeDependence(AssertionError):
    """Members of one reduced class disagree about being real."""


def real_reduced_classes(orb: OrbitAction, r1: int) -> list[int]:
    """Local indices of the reduced classes in an orbit that are real for the khat variant.

    Every inner class in each reduced class is tested; they must agree.
    """
    rc = orb.classes
    nc = rc.nc
    G = nc.G
    out = []
    for k, b in enumerate(orb.points):
        verdicts = set()
        for i in rc.members[b]:
            img = khat(G, nc.tuples[i], r1)
            verdicts.add(int(rc.block[nc.find(img)]) == int(b))
        if len(verdicts) != 1:
            raise RepresentativeDependence(f"reduced class {int(b)} has mixed real verdicts")
        if verdicts.pop():
            out.append(k)
    return out


def conjugation_perm(orb: OrbitAction, r1: int) -> np.ndarray:
    """Permutation of the orbit's local points induced by khat with r1 real branch points."""
    rc = orb.classes
    nc = rc.nc
    pos = {int(p): k for k, p in enumerate(orb.points)}
    out = np.empty(len(orb.points), dtype=np.int64)
    for k, b in enumerate(orb.points):
        img = khat(nc.G, nc.tuples[rc.rep_index[b]], r1)
        dest = pos.get(int(rc.block[nc.find(img)]))
        if dest is None:
            raise OrbitNotReal("khat maps the orbit to another orbit")
        out[k] = dest
    return out


def _compose(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return b[a]


def _inverts(c: np.ndarray, g: np.ndarray) -> bool:
    inv = np.empty_like(g)
    inv[g] = np.arange(len(g))
    return bool(np.array_equal(c[g[c]], inv))


def interval_conjugations(orb: OrbitAction) -> dict[str, np.ndarray]:
    """Complex conjugation on one fiber for each real interval of the j-line.

    khat with four real points inverts gamma_1 and gamma_inf, so it is the
    operator for (1, oo).  Crossing j = 1 or j = oo multiplies it by the
    loop around that point.
    """
    c = conjugation_perm(orb, 4)
    n = len(c)
    ident = np.arange(n)
    if not np.array_equal(c[c], ident):
        raise AssertionError("khat does not induce an involution")
    if not (_inverts(c, orb.g1) and _inverts(c, orb.ginf)):
        raise AssertionError("khat with four real points does not invert gamma_1 and gamma_inf")
    c01 = _compose(c, orb.g1)
    cm0 = _compose(c, orb.ginf)
    for cc, gs in ((c01, (orb.g0, orb.g1)), (cm0, (orb.g0, orb.ginf))):
        if not np.array_equal(cc[cc], ident) or not all(_inverts(cc, g) for g in gs):
            raise AssertionError("derived conjugation fails to invert its boundary loops")
    return {"(1,inf)": c, "(0,1)": c01, "(-inf,0)": cm0}


def real_counts(orb: OrbitAction) -> dict[str, int]:
    """Number of real points over each interval, checked against the khat variants.

    The two (1, oo) variants and the (-oo, 1) variant use their own base
    configurations, so only the counts are comparable across them.
    """
    try:
        conj = interval_conjugations(orb)
    except OrbitNotReal:
        counts = dict.fromkeys(INTERVALS, 0)
    else:
        counts = {k: int(np.count_nonzero(c == np.arange(len(c)))) for k, c in conj.items()}
    n0, n4 = len(real_reduced_classes(orb, 0)), len(real_reduced_classes(orb, 4))
    n2 = len(real_reduced_classes(orb, 2))
    if not (counts["(1,inf)"] == n0 == n4 and counts["(0,1)"] == counts["(-inf,0)"] == n2):
        raise AssertionError(f"real point counts disagree: {counts} vs khat {n0}, {n4}, {n2}")
    return counts


# ---------------------------------------------------------------------------
# component walk
# ---------------------------------------------------------------------------

# interval -> its two boundary points
_ENDS = {"(1,inf)": ("1", "inf"), "(0,1)": ("0", "1"), "(-inf,0)": ("inf", "0")}


class PairingError(RuntimeError):
    """The real arcs do not pair up according to the local parity rule."""


@dataclass
class RealLocusReport:
    real: dict[str, list[int]]
    pairings: list[tuple[str, int, int, list[tuple[str, int]]]] = field(default_factory=list)
    components: int = 0

    def to_json(self) -> dict:
        return {
            "real_points": self.real,
            "components": self.components,
            "pairings": [
                {"over": e, "cycle": k, "length": v, "arcs": [list(a) for a in arcs]} for e, k, v, arcs in self.pairings
            ],
        }


def real_components(orb: OrbitAction) -> RealLocusReport:
    """Count components of the real locus by walking arcs through their endpoints.

    An arc is (interval, real point).  Its end over a boundary point e is the
    cycle of gamma_e through the point.  Every cycle met by an arc must meet
    exactly two; for odd cycle length they lie over the two intervals on
    either side of e, for even length over the same interval.
    """
    try:
        conj = interval_conjugations(orb)
    except OrbitNotReal:
        return RealLocusReport(dict.fromkeys(INTERVALS, []))
    loops = {"0": orb.g0, "1": orb.g1, "inf": orb.ginf}
    where = {}
    for e, g in loops.items():
        m = {}
        for k, c in enumerate(_cycles(g)):
            for x in c:
                m[x] = (k, len(c))
        where[e] = m
    real = {iv: np.nonzero(c == np.arange(len(c)))[0].tolist() for iv, c in conj.items()}
    arcs = [(iv, x) for iv, xs in real.items() for x in xs]
    incident: dict[tuple[str, int], list[tuple[str, int]]] = {}
    for iv, x in arcs:
        for e in _ENDS[iv]:
            incident.setdefault((e, where[e][x][0]), []).append((iv, x))
    report = RealLocusReport(real)
    for (e, k), lst in sorted(incident.items()):
        length = next(v for kk, v in where[e].values() if kk == k)
        report.pairings.append((e, k, length, lst))
        if len(lst) != 2:
            raise PairingError(f"{len(lst)} real arcs end at the {e}-cycle {k}")
        same = lst[0][0] == lst[1][0]
        if length % 2 and same:
            raise PairingError(f"odd {e}-cycle {k} joins arcs over one interval")
        if length % 2 == 0 and not same:
            raise PairingError(f"even {e}-cycle {k} joins arcs over different intervals")
    parent = {a: a for a in arcs}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for a, b in incident.values():
        parent[find(a)] = find(b)
    report.components = len({find(a) for a in arcs})
    return report


# ---------------------------------------------------------------------------
# H-M classification of real classes
# ---------------------------------------------------------------------------


def conjugators(G: FiniteGroup, t: Sequence[int], target: Sequence[int]) -> list[int]:
    """All c with c^-1 t c == target entrywise (c is an involution or 1 when c t c = target)."""
    allx = np.arange(G.n)
    ok = np.ones(G.n, dtype=bool)
    for a, b in zip(t, target):
        ok &= G.mul[G.mul[G.inv[allx], a], allx] == b
    return np.nonzero(ok)[0].tolist()


def hm_real_classification(G: FiniteGroup, t: Sequence[int], tag: str, spin_rep=None) -> tuple[str, int]:
    """Classify a level-1 tuple fixed by khat with conjugate pairs up to conjugation.

    Returns (kind, order) where order is that of the conjugating element, or of
    its lift through the spin cover for near H-M tuples.
    """
    from .spincover import order_of_lift

    cs = conjugators(G, t, khat(G, t, 0))
    if not cs:
        raise ValueError("tuple is not real for khat with conjugate pairs")
    if tag == "HM":
        if 0 not in cs:
            raise AssertionError("H-M tuple with nontrivial conjugation")
        return "cover-point-all-real", 1
    c = cs[0]
    if tag == "nearHM":
        if spin_rep is None:
            raise ValueError("near H-M classification needs the spin-separating representation")
        return "near-HM-no-real-point", order_of_lift(spin_rep(c))
    return "other", G.element_order(c)


def hm_real_census(orb: OrbitAction, tags: Sequence[str], spin_rep=None) -> dict[str, int]:
    """Kinds of the reduced classes real over (1, oo) for khat with conjugate pairs.

    A real class holding an H-M or near H-M tuple is classified by its
    conjugator.  Another real class in the gamma_inf orbit of one of those
    counts as a complement; anything else is 'other'.
    """
    rc = orb.classes
    nc = rc.nc
    G = nc.G
    real = real_reduced_classes(orb, 0)
    special = set()
    for k, b in enumerate(orb.points):
        if any(tags[i] in ("HM", "nearHM") for i in rc.members[b]):
            special.add(k)
    cusp_of = {}
    for j, cyc in enumerate(_cycles(orb.ginf)):
        for x in cyc:
            cusp_of[x] = j
    special_cusps = {cusp_of[k] for k in special}
    out: dict[str, int] = {}
    for k in real:
        b = orb.points[k]
        marked = [i for i in rc.members[b] if tags[i] in ("HM", "nearHM")]
        if marked:
            kind, order = hm_real_classification(G, nc.tuples[marked[0]], tags[marked[0]], spin_rep)
            if kind == "near-HM-no-real-point" and order != 4:
                raise AssertionError(f"near H-M conjugator lifts to order {order}")
        elif cusp_of[k] in special_cusps:
            kind = "complement"
        else:
            kind = "other"
        out[kind] = out.get(kind, 0) + 1
    return out


def interval_summary(orbs: Sequence[OrbitAction]) -> list[dict[str, int]]:
    return [real_counts(o) for o in orbs]

