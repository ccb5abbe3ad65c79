"""Command-line interface: ``braidtower <task> --group G --classes C [options]``.

Exit codes: 0 success, 1 certification or reproduction failure, 2 usage
error or budget abort.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from . import braidact, grouptower, jline, liftinv, nielsen, realpts
from .grouptower import CertificationError, FiniteGroup, element_index
from .nielsen import SCHEMA, BudgetExceeded, ClassSet, ClassSpec
from .permcore import Perm, PermParseError

TASKS = ("nielsen", "orbits", "cusps", "shinc", "genus", "real", "lift", "monodromy")
MODES = ("inner", "absolute", "reduced-inner", "reduced-absolute")
SUITES = ("level0", "level1", "dihedral", "obstruction", "a4tower")


class SpecError(ValueError):
    """A group or class string that does not parse; ``pos`` is the offending offset."""

    def __init__(self, msg: str, text: str, pos: int):
        super().__init__(f"{msg} at position {pos}: {text!r}")
        self.pos = pos


# ---------------------------------------------------------------------------
# groups and class specs
# ---------------------------------------------------------------------------


@dataclass
class GroupContext:
    group: FiniteGroup
    degree: int  # degree of the points used in class strings
    to_point: Callable[[Perm], int]  # element over a permutation
    embedding: liftinv.Embedding | None
    embedding_name: str
    nprime: list[Perm] = field(default_factory=list)
    projection: tuple[np.ndarray, FiniteGroup] | None = None


_G1_CACHE: dict[str, FiniteGroup] = {}


def _g1() -> FiniteGroup:
    if "G1" not in _G1_CACHE:
        _G1_CACHE["G1"] = grouptower.build_G1()
    return _G1_CACHE["G1"]


def _split_top(text: str) -> list[tuple[str, int]]:
    """Split on commas outside parentheses, keeping each piece's offset."""
    out, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise SpecError("unbalanced ')'", text, i)
        elif ch == "," and depth == 0:
            out.append((text[start:i], start))
            start = i + 1
    if depth:
        raise SpecError("unbalanced '('", text, len(text))
    out.append((text[start:], start))
    return out


def _perm(text: str, n: int, where: str, pos: int) -> Perm:
    try:
        return Perm.parse(text.strip(), n)
    except (PermParseError, ValueError) as e:
        raise SpecError(f"bad permutation ({e})", where, pos) from None


def _degree_of(text: str) -> int:
    pts = [int(x) for x in re.findall(r"\d+", text)]
    return max(pts) if pts else 1


def resolve_group(text: str) -> GroupContext:
    t = text.strip()
    m = re.fullmatch(r"([AS])(\d+)", t)
    if m:
        n = int(m.group(2))
        if not 3 <= n <= 8:
            raise SpecError("degree must be between 3 and 8", text, 1)
        G = grouptower.alternating(n) if m.group(1) == "A" else grouptower.symmetric(n)
        nprime = [Perm.parse("(1 2)", n)] if m.group(1) == "A" else []
        emb = G.perm_rep if m.group(1) == "A" else None
        return GroupContext(G, n, lambda p, G=G: element_index(G, p), emb, "standard", nprime)
    m = re.fullmatch(r"D(\d+)", t)
    if m:
        n = int(m.group(1))
        if n < 3 or n > 400:
            raise SpecError("dihedral degree must be between 3 and 400", text, 1)
        G = grouptower.dihedral(n)
        nprime = nielsen.affine_normalizer(n) if n % 2 else []
        return GroupContext(G, n, lambda p, G=G: element_index(G, p), None, "none", nprime)
    if t in ("G1A5", "G1A5|A4"):
        G1 = _g1()
        proj, A5 = G1.quotients["frattini:A5"]
        sp = grouptower.spin_sep_rep(G1)
        if t == "G1A5":
            H, emb = G1, np.arange(G1.n)
            embedding: liftinv.Embedding = sp
        else:
            H, emb = grouptower.a4_pullback(G1)
            embedding = lambda x, emb=emb, sp=sp: sp(int(emb[x]))  # noqa: E731
        hproj = proj[emb]
        orders = H.element_orders

        def over(p: Perm, H=H, hproj=hproj, orders=orders) -> int:
            img = element_index(A5, p)
            d = p.order()
            cands = np.nonzero((hproj == img) & (orders == d))[0]
            if d % 2 == 0 or cands.size == 0:
                raise ValueError(f"{p} has no lift of the same odd order")
            return int(cands[0])

        return GroupContext(H, 5, over, embedding, "spin-separating degree 40", [], (hproj, A5))
    if t.startswith("("):
        n = _degree_of(t)
        gens = [_perm(piece, n, text, pos) for piece, pos in _split_top(t)]
        G = grouptower.group_from_perms(gens, name=t)
        even = all(g.is_even() for g in gens)
        return GroupContext(G, n, lambda p, G=G: element_index(G, p), G.perm_rep if even else None, "standard", [])
    raise SpecError("unknown group", text, 0)


_NAMED = {
    "3cyc": "(1 2 3)",
    "3+": "(1 2 3)",
    "3-": "(1 3 2)",
    "5cyc": "(1 2 3 4 5)",
    "5+": "(1 2 3 4 5)",
    "5-": "(1 3 5 2 4)",
}


def parse_classes(ctx: GroupContext, text: str) -> ClassSpec:
    """Comma-separated class tokens, each optionally followed by ``*k``.

    A token is a permutation in cycle notation, a name from 3cyc, 3+, 3-,
    5cyc, 5+, 5-, or ``inv`` (an involution of a dihedral group).
    """
    G = ctx.group
    reps: list[int] = []
    for piece, pos in _split_top(text):
        tok = piece.strip()
        if not tok:
            raise SpecError("empty class token", text, pos)
        mult = 1
        m = re.fullmatch(r"(.*?)\s*\*\s*(\d+)", tok)
        if m:
            tok, mult = m.group(1).strip(), int(m.group(2))
            if mult < 1:
                raise SpecError("multiplicity must be positive", text, pos)
        if tok == "inv":
            invols = np.nonzero(G.element_orders == 2)[0]
            if invols.size == 0:
                raise SpecError("group has no involution", text, pos)
            x = int(invols[0])
        else:
            cyc = _NAMED.get(tok, tok)
            if not cyc.startswith("("):
                raise SpecError(f"unknown class token {tok!r}", text, pos)
            p = _perm(cyc, ctx.degree, text, pos)
            try:
                x = ctx.to_point(p)
            except (KeyError, ValueError) as e:
                raise SpecError(f"{tok} is not in {G.name} ({e})", text, pos) from None
        reps.extend([x] * mult)
    if len(reps) < 2:
        raise SpecError("need at least two entries", text, 0)
    return ClassSpec(G, tuple(reps))


def parse_nprime(ctx: GroupContext, text: str | None) -> list[Perm]:
    if text is None:
        return ctx.nprime
    return [_perm(piece, ctx.degree, text, pos) for piece, pos in _split_top(text) if piece.strip()]


# ---------------------------------------------------------------------------
# pipeline
# ---------------------------------------------------------------------------


@dataclass
class Job:
    ctx: GroupContext
    spec: ClassSpec
    mode: str
    nprime: list[Perm]
    budget: int
    _nc: nielsen.NielsenClasses | None = None
    _sets: dict[str, ClassSet] = field(default_factory=dict)
    _tags: list[str] | None = None

    @property
    def nc(self) -> nielsen.NielsenClasses:
        if self._nc is None:
            self._nc = nielsen.enumerate_inner(self.spec, self.budget)
        return self._nc

    def auts(self) -> list[np.ndarray]:
        if not self.nprime:
            raise SpecError("absolute equivalence needs --nprime for this group", self.ctx.group.name, 0)
        return nielsen.conjugation_automorphisms(self.ctx.group, self.nprime)

    def classes(self, mode: str) -> ClassSet:
        if mode not in self._sets:
            if mode == "inner":
                cs = nielsen.inner_classes(self.nc)
            elif mode == "absolute":
                cs = nielsen.absolute_classes(self.nc, self.auts())
            elif mode == "reduced-inner":
                cs = nielsen.reduced_classes(self.nc)
            else:
                cs = nielsen.reduced_classes(self.nc, self.auts())
            self._sets[mode] = cs
        return self._sets[mode]

    def reduced_mode(self) -> str:
        return {"inner": "reduced-inner", "absolute": "reduced-absolute"}.get(self.mode, self.mode)

    def orbits(self) -> list[braidact.OrbitAction]:
        if self.nc.r != 4:
            raise SpecError("reduced orbit tasks need exactly four entries", "", 0)
        return braidact.mbar4_orbits(self.classes(self.reduced_mode()))

    @property
    def tags(self) -> list[str] | None:
        if self._tags is None and self.nc.r == 4 and len(self.nc):
            self._tags = self.nc.classify_hm(self.ctx.projection)
        return self._tags


def _shape(p: np.ndarray) -> dict[str, int]:
    return {str(k): v for k, v in braidact.cycle_shape(p).items()}


def task_nielsen(job: Job) -> dict:
    cs = job.classes(job.mode)
    out = {"mode": job.mode, "count": len(cs), "inner_count": len(job.nc)}
    if job.nc.r >= 2 and len(job.nc):
        perms = [cs.braid_perm(i) for i in range(1, job.nc.r)]
        sizes = np.bincount(nielsen.orbit_partition(len(cs), perms)).tolist()
        out["braid_orbit_sizes"] = sorted(sizes)
    return out


def task_orbits(job: Job) -> dict:
    res = []
    for o in job.orbits():
        res.append({"size": len(o), "gamma_0": _shape(o.g0), "gamma_1": _shape(o.g1), "gamma_inf": _shape(o.ginf)})
    return {"mode": job.reduced_mode(), "orbits": res}


def task_cusps(job: Job) -> dict:
    res = []
    for o in job.orbits():
        cu = braidact.cusp_orbits(o, job.tags)
        res.append([{"u": c.u, "v": c.v, "a": c.a, "tag": c.hm_tag} for c in cu])
    return {"mode": job.reduced_mode(), "cusps": res}


def task_shinc(job: Job) -> dict:
    res = []
    for o in job.orbits():
        cu = braidact.cusp_orbits(o, job.tags)
        S = braidact.sh_incidence(o, cu)
        res.append({"labels": [list(c.label) for c in cu], "matrix": S.matrix.tolist()})
    return {"mode": job.reduced_mode(), "shinc": res}


def task_genus(job: Job) -> dict:
    res = []
    for o in job.orbits():
        cv = jline.branch_cycles(o)
        res.append({"degree": cv.degree, "genus": cv.genus(), "cusp_widths": cv.widths, "tr0": cv.tr0, "tr1": cv.tr1})
    return {"mode": job.reduced_mode(), "genus": res}


def task_monodromy(job: Job) -> dict:
    return {"mode": job.reduced_mode(), "orders": [jline.monodromy_order(jline.branch_cycles(o)) for o in job.orbits()]}


def task_real(job: Job, r1: int | None = None) -> dict:
    res = []
    for o in job.orbits():
        entry: dict = {"size": len(o), "counts": realpts.real_counts(o), "components": realpts.real_components(o).components}
        if r1 is not None:
            try:
                entry[f"real_classes_r1={r1}"] = realpts.real_reduced_classes(o, r1)
            except ValueError as e:
                raise SpecError(str(e), str(r1), 0) from None
        res.append(entry)
    return {"mode": job.reduced_mode(), "real": res}


def task_lift(job: Job) -> dict:
    emb = job.ctx.embedding
    if emb is None:
        raise SpecError("no spin-separating embedding for this group", job.ctx.group.name, 0)
    rep = liftinv.orbit_report(job.nc, emb, job.ctx.embedding_name)
    out = rep.to_json()
    if job.nc.r == 4 and len(job.nc):
        s = liftinv.class_invariants(job.nc, emb)
        cs = job.classes(job.reduced_mode())
        vals = []
        for o in braidact.mbar4_orbits(cs):
            inner = np.concatenate([cs.members[b] for b in o.points])
            v = sorted(set(s[inner].tolist()))
            vals.append(v[0] if len(v) == 1 else "mixed")
        out["reduced_orbit_invariants"] = vals
    return out


TASK_FUNCS: dict[str, Callable[[Job], dict]] = {
    "nielsen": task_nielsen,
    "orbits": task_orbits,
    "cusps": task_cusps,
    "shinc": task_shinc,
    "genus": task_genus,
    "real": task_real,
    "lift": task_lift,
    "monodromy": task_monodromy,
}


# ---------------------------------------------------------------------------
# text output
# ---------------------------------------------------------------------------


def _text(task: str, res: dict) -> str:
    lines = []
    if task == "nielsen":
        lines.append(f"{res['mode']} classes: {res['count']}")
        if "braid_orbit_sizes" in res:
            lines.append(f"braid orbits: {res['braid_orbit_sizes']}")
    elif task == "orbits":
        for k, o in enumerate(res["orbits"]):
            lines.append(f"orbit {k}: size {o['size']}  gamma_inf {o['gamma_inf']}  gamma_0 {o['gamma_0']}  gamma_1 {o['gamma_1']}")
    elif task == "cusps":
        for k, cu in enumerate(res["cusps"]):
            labels = ", ".join(f"O({c['u']},{c['v']};{c['a']})" + ("" if c["tag"] == "none" else f"[{c['tag']}]") for c in cu)
            lines.append(f"orbit {k}: {labels}")
    elif task == "shinc":
        for k, sh in enumerate(res["shinc"]):
            labels = [f"O({u},{v};{a})" for u, v, a in sh["labels"]]
            w = max(len(s) for s in labels)
            lines.append(f"orbit {k}:")
            for lab, row in zip(labels, sh["matrix"]):
                lines.append(f"  {lab:>{w}} " + " ".join(f"{x:2d}" for x in row))
    elif task == "genus":
        for k, g in enumerate(res["genus"]):
            lines.append(f"orbit {k}: degree {g['degree']}, genus {g['genus']}, cusp widths {g['cusp_widths']}")
    elif task == "monodromy":
        for k, n in enumerate(res["orders"]):
            lines.append(f"orbit {k}: monodromy order {n}")
    elif task == "real":
        for k, r in enumerate(res["real"]):
            lines.append(f"orbit {k}: real points {r['counts']}, components {r['components']}")
    elif task == "lift":
        for k, o in enumerate(res["orbits"]):
            flag = " obstructed" if o["obstructed"] else ""
            lines.append(f"braid orbit {k}: size {o['size']}, s = {o['s']:+d}{flag}")
        if "reduced_orbit_invariants" in res:
            lines.append(f"reduced orbits: {res['reduced_orbit_invariants']}")
    return "\n".join(lines)


def _emit(payload: dict, as_json: bool, text: str) -> None:
    if as_json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


# ---------------------------------------------------------------------------
# reproduce suites
# ---------------------------------------------------------------------------


@dataclass
class Check:
    name: str
    expected: object
    computed: object
    source: str

    @property
    def ok(self) -> bool:
        return self.expected == self.computed


SHINC_LEVEL0 = np.array(
    [[0, 2, 1, 1, 1], [2, 0, 1, 1, 1], [1, 1, 0, 1, 0], [1, 1, 1, 0, 0], [1, 1, 0, 0, 0]]
)
SHINC_LEVEL1_WIDTH20 = np.array(
    [
        [0, 0, 0, 4, 0, 0, 2, 2],
        [0, 0, 4, 0, 2, 2, 0, 0],
        [0, 4, 0, 0, 0, 0, 2, 2],
        [4, 0, 0, 0, 2, 2, 0, 0],
        [0, 2, 0, 2, 0, 0, 0, 4],
        [0, 2, 0, 2, 0, 0, 4, 0],
        [2, 0, 2, 0, 0, 4, 0, 0],
        [2, 0, 2, 0, 4, 0, 0, 0],
    ]
)


LEVEL1_CUSPS = [
    {"(6,12)": 8, "(2,4)": 6, "(10,20)HM": 4, "(10,20)nearHM": 4, "(1,2)": 2, "(2,2)": 2},
    {"(2,4)": 8, "(6,6)": 8, "(10,10)": 8, "(6,12)": 4, "(10,20)": 4},
]


def _a5_3cyc():
    A5 = grouptower.alternating(5)
    return A5, element_index(A5, Perm.parse("(1 2 3)", 5))


def suite_level0() -> list[Check]:
    A5, c3 = _a5_3cyc()
    nc = nielsen.enumerate_inner(ClassSpec(A5, (c3,) * 4))
    ab = nielsen.absolute_classes(nc, nielsen.conjugation_automorphisms(A5, [Perm.parse("(1 2)", 5)]))
    red = nielsen.reduced_classes(nc)
    (oa,) = braidact.mbar4_orbits(ab)
    (oi,) = braidact.mbar4_orbits(red)
    inner_orbits = len(set(liftinv.braid_orbits(nc).tolist()))
    S = braidact.sh_incidence(oi).matrix
    ca, ci = jline.branch_cycles(oa), jline.branch_cycles(oi)
    ra, ri = realpts.real_counts(oa), realpts.real_counts(oi)
    rep = liftinv.orbit_report(nc, A5.perm_rep)
    return [
        Check("absolute classes", 9, len(ab), "list of absolute classes at level 0"),
        Check("inner classes", 18, len(nc), "inner Nielsen class at level 0"),
        Check("inner braid orbits", 1, inner_orbits, "transitivity on the level-0 class"),
        Check("absolute cusp widths", [1, 3, 5], ca.widths, "absolute j-line cover"),
        Check("inner reduced cusp widths", [2, 3, 3, 5, 5], ci.widths, "inner reduced j-line cover"),
        Check("sh-incidence up to relabeling", True, braidact.matrices_equivalent(S, SHINC_LEVEL0), "level-0 sh-incidence table"),
        Check("genera", (0, 0), (ca.genus(), ci.genus()), "both level-0 covers have genus 0"),
        Check("monodromy orders", (181440, 2**9 * 181440), (jline.monodromy_order(ca), jline.monodromy_order(ci)), "level-0 geometric monodromy"),
        Check("gamma_1 fixed points", (1, 0), (ca.tr1, ci.tr1), "absolute vs inner gamma_1"),
        Check("absolute real points per interval", [3, 3, 3], [ra[k] for k in realpts.INTERVALS], "real points of the absolute space"),
        Check("inner real points (1,oo), (0,1), (-oo,0)", [4, 2, 2], [ri[k] for k in realpts.INTERVALS], "real points of the inner space"),
        Check("lifting invariant", [1], rep.values, "single orbit with invariant +1"),
    ]


@dataclass
class Level1:
    G: FiniteGroup
    nc0: nielsen.NielsenClasses
    red0: ClassSet
    nc: nielsen.NielsenClasses
    red: ClassSet
    tags: list[str]
    orbits: list[braidact.OrbitAction]


def build_level1() -> Level1:
    A5, c3 = _a5_3cyc()
    nc0 = nielsen.enumerate_inner(ClassSpec(A5, (c3,) * 4))
    red0 = nielsen.reduced_classes(nc0)
    G = _g1()
    proj, _ = G.quotients["frattini:A5"]
    lift3 = int(np.nonzero((proj == c3) & (G.element_orders == 3))[0][0])
    nc = nielsen.enumerate_inner(ClassSpec(G, (lift3,) * 4))
    red = nielsen.reduced_classes(nc)
    tags = nc.classify_hm(G.quotients["frattini:A5"])
    orbs = braidact.mbar4_orbits(red)
    # O+ first: the orbit holding the H-M classes
    hm_blocks = {int(red.block[i]) for i, t in enumerate(tags) if t == "HM"}
    orbs.sort(key=lambda o: not hm_blocks & {int(b) for b in o.points})
    return Level1(G, nc0, red0, nc, red, tags, orbs)


def suite_level1() -> list[Check]:
    L = build_level1()
    G, nc, red = L.G, L.nc, L.red
    proj, _ = G.quotients["frattini:A5"]
    sp = grouptower.spin_sep_rep(G)
    plus, minus = L.orbits
    covers = [jline.branch_cycles(o) for o in L.orbits]
    below = jline.level_projection(red, L.red0, proj)
    rel = [jline.relative_monodromy(o, below[o.points]).order for o in L.orbits]
    cu = braidact.cusp_orbits(plus, L.tags)
    S = braidact.sh_incidence(plus, cu)
    w20 = [k for k, c in enumerate(cu) if c.v == 20]
    s = liftinv.class_invariants(nc, sp)
    inv = [sorted(set(s[np.concatenate([red.members[b] for b in o.points])].tolist())) for o in L.orbits]
    census = realpts.hm_real_census(plus, L.tags, sp)
    kinds = [dict(Counter(f"({c.u},{c.v})" + ("" if c.hm_tag == "none" else c.hm_tag) for c in braidact.cusp_orbits(o, L.tags))) for o in L.orbits]
    counts = {k: L.tags.count(k) for k in ("HM", "nearHM")}
    return [
        Check("inner classes", 2304, len(nc), "level-1 inner Nielsen class"),
        Check("Q'' orbit lengths", {4}, {len(m) for m in red.members}, "Q'' acts faithfully at level 1"),
        Check("H-M and near H-M classes", {"HM": 16, "nearHM": 16}, counts, "H-M and near H-M counts"),
        Check("reduced orbit sizes", [288, 288], [len(o) for o in L.orbits], "two orbits of 1152 inner classes"),
        Check("O+ gamma_inf shape", {2: 4, 4: 6, 12: 8, 20: 8}, braidact.cycle_shape(plus.ginf), "GAP cycle listing for O+"),
        Check("O- gamma_inf shape", {4: 8, 6: 8, 10: 8, 12: 4, 20: 4}, braidact.cycle_shape(minus.ginf), "GAP cycle listing for O-"),
        Check("genera", [12, 9], [c.genus() for c in covers], "genus 12 and genus 9 components"),
        Check("relative monodromy orders", [192, 192], rel, "level 1 over level 0"),
        Check("cusp census", LEVEL1_CUSPS, kinds, "cusp types (mpr, width) on O+ and O-"),
        Check("width-20 sh-incidence block", True, braidact.matrices_equivalent(S.submatrix(w20), SHINC_LEVEL1_WIDTH20), "width-20 sh-incidence table of O+"),
        Check("lifting invariants", [[1], [-1]], inv, "+1 on O+, -1 on O-"),
        Check("real points over (1,oo)", [16, 0], [realpts.real_counts(o)["(1,inf)"] for o in L.orbits], "16 real points on O+"),
        Check("real points over (-oo,1)", [0, 0], [realpts.real_counts(o)["(0,1)"] + realpts.real_counts(o)["(-inf,0)"] for o in L.orbits], "no real points below j = 1"),
        Check("real components", [1, 0], [realpts.real_components(o).components for o in L.orbits], "one real component on O+"),
        Check("real class kinds on O+", {"cover-point-all-real": 4, "near-HM-no-real-point": 4, "complement": 8}, census, "H-M, near H-M and complements"),
    ]


DIHEDRAL_WIDTHS = {(5, 0): [1, 5], (5, 1): [1, 1, 1, 1, 1, 25], (7, 0): [1, 7]}


def suite_dihedral() -> list[Check]:
    out = []
    for p, k in ((5, 0), (5, 1), (7, 0)):
        r = nielsen.dihedral_reference(p, k)
        n = p ** (k + 1)
        out.append(Check(f"D_{n} absolute", p ** (k + 1) + p**k, r.absolute, "modular curve count p^(k+1)+p^k"))
        out.append(Check(f"D_{n} inner", (p ** (k + 1) + p**k) * nielsen.euler_phi(n) // 2, r.inner, "inner count"))
        out.append(Check(f"D_{n} widths contain 1 and {n}", True, 1 in r.q2_widths and n in r.q2_widths, "cusp widths"))
        out.append(Check(f"D_{n} q2 widths", DIHEDRAL_WIDTHS[(p, k)], r.q2_widths, "q2 orbit lengths on absolute classes"))
    return out


def suite_obstruction() -> list[Check]:
    A5 = grouptower.alternating(5)
    reps = liftinv.a5_obstruction_suite(A5)

    def summary(name: str) -> tuple[int, list[int]]:
        return reps[name].count, reps[name].values

    return [
        Check("5+5-3", (6, [1]), summary("5+5-3"), "six classes, all +1"),
        Check("5+^3", (1, [-1]), summary("5+^3"), "one class with -1"),
        Check("5+^2 3", (3, [-1]), summary("5+^2 3"), "three classes with -1"),
        Check("5+^2 5-", (0, []), summary("5+^2 5-"), "empty class"),
        Check("5+^2 5-^2 orbit invariants", [-1, 1], reps["5+^2 5-^2"].values, "one obstructed orbit, one not"),
        Check("5+5-3^2 orbit invariants", [-1, 1], reps["5+5-3^2"].values, "one obstructed orbit, one not"),
        Check("5+5-3^2 has no H-M rep", False, any(o.has_hm for o in reps["5+5-3^2"].orbits), "no H-M rep"),
    ]


def suite_a4tower() -> list[Check]:
    A4 = grouptower.group_from_perms([Perm.parse("(1 2 3)", 4), Perm.parse("(1 2)(3 4)", 4)], name="A4")
    cp, cm = element_index(A4, Perm.parse("(1 2 3)", 4)), element_index(A4, Perm.parse("(1 3 2)", 4))
    nc0 = nielsen.enumerate_inner(ClassSpec(A4, (cp, cp, cm, cm)))
    rep0 = liftinv.orbit_report(nc0, A4.perm_rep)
    red0 = nielsen.reduced_classes(nc0)
    ctx = resolve_group("G1A5|A4")
    H = ctx.group
    hp, hm = ctx.to_point(Perm.parse("(1 2 3)", 5)), ctx.to_point(Perm.parse("(1 3 2)", 5))
    nc = nielsen.enumerate_inner(ClassSpec(H, (hp, hp, hm, hm)))
    red = nielsen.reduced_classes(nc)
    s = liftinv.class_invariants(nc, ctx.embedding)
    rows = []
    for o in braidact.mbar4_orbits(red):
        inner = np.concatenate([red.members[b] for b in o.points])
        sv = set(s[inner].tolist())
        real = sum(realpts.real_counts(o).values())
        rows.append((sv.pop() if len(sv) == 1 else 0, jline.branch_cycles(o).genus(), real))
    plus = sorted(g for sv, g, _ in rows if sv == 1)
    minus = sorted(g for sv, g, _ in rows if sv == -1)
    return [
        Check("level-0 braid orbit invariants", [-1, 1], rep0.values, "two level-0 orbits separated by the invariant"),
        Check("level-0 Q'' orbit length", {2}, {len(m) for m in red0.members}, "Q'' acts through Z/2"),
        Check("pullback order", 384, H.n, "pullback of A4 in G1"),
        Check("level-1 orbits", 6, len(rows), "six components"),
        Check("genera with s = +1", [1, 1, 3], plus, "two H-M components of genus 1, one of genus 3"),
        Check("genera with s = -1", [0, 0, 3], minus, "two genus 0 components and one of genus 3"),
        Check("real points only where s = +1", True, all(real == 0 for sv, _, real in rows if sv != 1) and any(real for sv, _, real in rows if sv == 1), "no real points on the minus side"),
    ]


SUITE_FUNCS: dict[str, Callable[[], list[Check]]] = {
    "level0": suite_level0,
    "level1": suite_level1,
    "dihedral": suite_dihedral,
    "obstruction": suite_obstruction,
    "a4tower": suite_a4tower,
}


def _jsonable(x):
    if isinstance(x, (set, frozenset)):
        return sorted(x)
    if isinstance(x, tuple):
        return list(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, np.generic):
        return x.item()
    return x


def run_suite(name: str, as_json: bool) -> int:
    checks = SUITE_FUNCS[name]()
    failed = [c for c in checks if not c.ok]
    if as_json:
        payload = {
            "schema": SCHEMA,
            "suite": name,
            "passed": not failed,
            "checks": [
                {"name": c.name, "ok": c.ok, "expected": _jsonable(c.expected), "computed": _jsonable(c.computed), "source": c.source}
                for c in checks
            ],
        }
        print(json.dumps(payload, sort_keys=True))
    else:
        for c in checks:
            if c.ok:
                print(f"PASS {c.name}: {c.computed}")
            else:
                print(f"FAIL {c.name}: expected {c.expected} ({c.source}), computed {c.computed}")
        print(f"{name}: {'pass' if not failed else 'FAIL'} ({len(checks) - len(failed)}/{len(checks)})")
    return 1 if failed else 0


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------


def _threads(args: argparse.Namespace) -> int:
    env = os.environ.get("BT_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return max(1, args.threads)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="braidtower", description="Nielsen classes, braid orbits and j-line covers.")
    sub = p.add_subparsers(dest="command", required=True)

    def job_args(sp: argparse.ArgumentParser, default_mode: str) -> None:
        sp.add_argument("--group", required=True, help="A5, S6, D25, G1A5, G1A5|A4 or generators '(1 2 3),(1 2)(3 4)'")
        sp.add_argument("--classes", required=True, help="e.g. '3cyc*4' or '(1 2 3 4 5),(1 3 5 2 4),3cyc,3cyc'")
        sp.add_argument("--mode", choices=MODES, default=default_mode)
        sp.add_argument("--nprime", help="generators of N' for absolute equivalence, comma separated")
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        sp.add_argument("--max-elements", type=int, default=nielsen.DEFAULT_BUDGET, help="abort when the search estimate exceeds this")
        sp.add_argument("--threads", type=int, default=1, help="worker count (BT_THREADS overrides)")

    for task in TASKS:
        sp = sub.add_parser(task)
        job_args(sp, "inner")
        if task == "real":
            sp.add_argument("--r1", type=int, choices=(0, 2, 4), help="also list classes real for this many real branch points")
            sp.add_argument("--r2", type=int, choices=(0, 1, 2), help="number of complex conjugate pairs (alternative to --r1)")
    sp = sub.add_parser("run", help="run several tasks on one job")
    job_args(sp, "inner")
    sp.add_argument("--tasks", default="nielsen", help="comma separated subset of " + ",".join(TASKS))
    sp = sub.add_parser("tower", help="rank and genus along a tower")
    sp.add_argument("--p", type=int, default=2)
    sp.add_argument("--rk", type=int, default=5, help="rank at level 0")
    sp.add_argument("--g0", type=int, default=21, help="genus at level 0")
    sp.add_argument("--levels", type=int, default=2)
    sp.add_argument("--json", action="store_true")
    sp = sub.add_parser("reproduce", help="recompute a golden suite and diff it")
    sp.add_argument("suite", choices=SUITES)
    sp.add_argument("--skip-stretch", action="store_true", help="skip the a4tower suite")
    sp.add_argument("--json", action="store_true")
    sp.add_argument("--threads", type=int, default=1)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "tower":
            rows = []
            for k in range(args.levels + 1):
                rk, g = grouptower.tower_arith(args.p, args.rk, args.g0, k)
                rows.append({"level": k, "rank": rk, "genus": g})
            _emit({"schema": SCHEMA, "tower": rows}, args.json, "\n".join(f"level {r['level']}: rank {r['rank']}, genus {r['genus']}" for r in rows))
            return 0
        if args.command == "reproduce":
            if args.suite == "a4tower" and args.skip_stretch:
                print("a4tower: skipped (stretch)")
                return 0
            return run_suite(args.suite, args.json)
        threads = _threads(args)
        ctx = resolve_group(args.group)
        spec = parse_classes(ctx, args.classes)
        job = Job(ctx, spec, args.mode, parse_nprime(ctx, args.nprime), args.max_elements)
        tasks = [t.strip() for t in args.tasks.split(",")] if args.command == "run" else [args.command]
        for t in tasks:
            if t not in TASK_FUNCS:
                raise SpecError(f"unknown task {t!r}", args.tasks, 0)
        results = {}
        for t in tasks:
            if t == "real":
                r1 = getattr(args, "r1", None)
                r2 = getattr(args, "r2", None)
                if r1 is None and r2 is not None:
                    r1 = 4 - 2 * r2
                results[t] = task_real(job, r1)
            else:
                results[t] = TASK_FUNCS[t](job)
        payload = {"schema": SCHEMA, "group": args.group, "classes": args.classes, "threads": threads, "results": results}
        _emit(payload, args.json, "\n".join(_text(t, results[t]) for t in tasks))
        return 0
    except SpecError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except BudgetExceeded as e:
        print(f"budget exceeded: {e}; raise --max-elements to run it", file=sys.stderr)
        return 2
    except (CertificationError, liftinv.MixedInvariant, realpts.PairingError) as e:
        print(f"certification failed: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
