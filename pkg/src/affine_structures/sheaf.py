"""Sheaves on a basis, extensions of affine structures, canonical structures.

Every space carrying an affine atlas here is finite and discrete (spectra
of finite rings and of fields are discrete), so a sheaf of rings is
determined by its stalks: the sections over an open V are the tuples of
stalk elements indexed by the points of V. Basic sections are stored as
concrete rings together with their projections to the stalks, which makes
restriction maps computable by matching stalk tuples.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product

from .atlas import (
    AffineChart,
    AtlasData,
    StructureHandle,
    distinguished_element,
    enumerate_charts,
    transition_isos,
    validate_atlas,
)
from .errors import NotAdmissible, NotExtensionsOfSameStructure
from .pseudogroup import Pseudogroup, Universe, close
from .rings import Ring, RingHom, RingIso, compose, find_isos, identity, localize
from .spectrum import Homeo, TopSpace, homeomorphisms, localization_embedding, spec


def _stalk_localization(A: Ring, p: str):
    """(A_p, canonical map A -> A_p) for a point p of spec A."""
    f = distinguished_element(A, [p])
    return localize(A, f)


@dataclass
class BasisSheaf:
    space: TopSpace
    basis: list  # ordered basic opens
    sections: dict  # open -> Ring
    proj: dict  # open -> {point: tuple of stalk indices}
    stalks: dict  # point -> Ring
    _lookup: dict = field(default_factory=dict, repr=False)
    _res: dict = field(default_factory=dict, repr=False)

    def stalk_tuple(self, V, a: int) -> tuple:
        pts = sorted(V)
        return tuple(self.proj[V][x][a] for x in pts)

    def _index(self, V):
        if V not in self._lookup:
            R = self.sections[V]
            size = R.size if R.is_finite else None
            if size is None:
                self._lookup[V] = None
            else:
                self._lookup[V] = {self.stalk_tuple(V, a): a for a in range(size)}
        return self._lookup[V]

    def restriction(self, V, W) -> RingHom:
        """res_{V -> W} for basic opens W <= V."""
        V, W = frozenset(V), frozenset(W)
        key = (V, W)
        if key in self._res:
            return self._res[key]
        if not W <= V:
            raise ValueError("restriction needs W inside V")
        RV, RW = self.sections[V], self.sections[W]
        if RV.is_finite:
            look = self._index(W)
            wpts = sorted(W)
            table = [look[tuple(self.proj[V][x][a] for x in wpts)] for a in range(RV.size)]
            hom = RingHom(RV, RW, table)
        else:
            # one-point opens over a field: compose projection with inverse projection
            (x,) = tuple(W) if len(W) == 1 else (min(W),)
            pv, pw = self.proj[V][x], self.proj[W][x]
            hom = compose(pw.inverse, pv)
        self._res[key] = hom
        return hom

    def chains(self):
        for W in self.basis:
            for V in self.basis:
                if W <= V:
                    for U in self.basis:
                        if V <= U:
                            yield U, V, W

    def functoriality_failures(self) -> list:
        bad = []
        for V in self.basis:
            r = self.restriction(V, V)
            if r.table != identity(self.sections[V]).table:
                bad.append(("identity", sorted(V)))
        for U, V, W in self.chains():
            if compose(self.restriction(V, W), self.restriction(U, V)).table != self.restriction(U, W).table:
                bad.append(("compose", sorted(U), sorted(V), sorted(W)))
        return bad

    def sections_over(self, V) -> list:
        """Sections on an arbitrary open, as compatible families over the
        maximal basic opens inside V (agreement on every pairwise overlap)."""
        V = frozenset(V)
        cover = [B for B in self.basis if B <= V]
        cover = [B for B in cover if not any(B < C for C in cover)]
        out = []
        choices = [range(self.sections[B].size) for B in cover]
        for pick in product(*choices):
            ok = True
            for (B1, a1), (B2, a2) in combinations(zip(cover, pick), 2):
                for x in B1 & B2:
                    if self.proj[B1][x][a1] != self.proj[B2][x][a2]:
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                out.append(tuple(zip((tuple(sorted(B)) for B in cover), pick)))
        return out


@dataclass
class Scheme:
    space: TopSpace
    sheaf: BasisSheaf
    declared: StructureHandle
    theta: dict  # (chart index, point) -> RingIso from the chart's local ring onto the stalk
    name: str = ""

    @property
    def stalks(self):
        return self.sheaf.stalks

    def section(self, V) -> Ring:
        return self.sheaf.sections[frozenset(V)]


def _basic_opens(charts) -> list:
    """Chart opens first, then transported distinguished opens, each with its source."""
    seen = {}
    for i, c in enumerate(charts):
        seen.setdefault(c.open_set, ("chart", i, None))
    for i, c in enumerate(charts):
        for D, f in spec(c.ring).distinguished_opens().items():
            if D:
                seen.setdefault(c.preimage(D), ("local", i, f))
    return list(seen.items())


def _iso_candidates(gamma: Pseudogroup, witnesses):
    def cands(A, B):
        got = list(gamma.isos_between(A, B)) if gamma is not None else []
        for s in find_isos(A, B, witnesses):
            if s not in got:
                got.append(s)
        return got

    return cands


def build_extension(X: TopSpace, h: StructureHandle, order=None, witnesses=()) -> Scheme:
    """The locally ringed space extending an admissible structure.

    ``order`` is an optional permutation of chart indices; it changes which
    chart serves as reference at each point and the basis ordering, not the
    result up to isomorphism. Raises NotAdmissible with a conflict record.
    """
    charts = list(h.charts)
    idx = list(order) if order is not None else list(range(len(charts)))
    ordered = [charts[i] for i in idx]
    for a, b in combinations(range(len(ordered)), 2):
        ca, cb = ordered[a], ordered[b]
        if ca.open_set == cb.open_set and ca.ring != cb.ring:
            raise NotAdmissible(
                f"open {sorted(ca.open_set)} carries both {ca.ring.id} and {cb.ring.id}",
                {"open": sorted(ca.open_set), "charts": sorted((idx[a], idx[b])), "rings": [ca.ring.id, cb.ring.id]},
            )
    cands = _iso_candidates(h.gamma, witnesses)
    stalks, theta, loc = {}, {}, {}
    for x in X.points:
        holders = [k for k, c in enumerate(ordered) if x in c.open_set]
        if not holders:
            raise NotAdmissible(f"point {x} lies in no chart", {"point": x})
        ref = holders[0]
        for k in holders:
            c = ordered[k]
            L, can = _stalk_localization(c.ring, c.phi_map[x])
            loc[(idx[k], x)] = can
            if k == ref:
                stalks[x] = L
                theta[(idx[k], x)] = identity(L)
                continue
            found = cands(L, stalks[x])
            if not found:
                raise NotAdmissible(
                    f"local rings at {x} differ: {stalks[x].id} vs {L.id}",
                    {"point": x, "charts": sorted((idx[ref], idx[k])), "rings": [ordered[ref].ring.id, c.ring.id]},
                )
            theta[(idx[k], x)] = found[0]
    basis, sections, proj = [], {}, {}
    for V, (kind, k, f) in _basic_opens(ordered):
        c = ordered[k]
        ci = idx[k]
        if kind == "chart":
            R, pt = c.ring, c.phi_map
        else:
            R, _ = localize(c.ring, f)
            back = {q: r for r, q in localization_embedding(c.ring, f).items()}
            pt = {x: back[q] for x, q in c.phi_map.items() if q in back}
        basis.append(V)
        sections[V] = R
        proj[V] = {}
        for x in V:
            L, to_local = _stalk_localization(R, pt[x])
            th = theta[(ci, x)]
            if R.is_finite:
                proj[V][x] = tuple(th.table[to_local.table[a]] for a in range(R.size))
            else:
                proj[V][x] = compose(th, to_local)
    sheaf = BasisSheaf(X, basis, sections, proj, stalks)
    for V in basis:
        R = sections[V]
        if R.is_finite and len(sheaf._index(V)) != R.size:
            raise AssertionError(f"sections over {sorted(V)} do not embed into the stalks")
    return Scheme(X, sheaf, h, theta)


# --------------------------------------------------------------------------
# scheme isomorphisms


@dataclass
class SchemeIso:
    source: Scheme
    target: Scheme
    points: dict  # source point -> target point
    stalk_isos: dict  # source point -> RingIso O_x -> O'_{h(x)}

    def section_iso(self, V):
        """F(V) -> F'(h(V)) when h(V) is basic in the target, else None."""
        s, t = self.source.sheaf, self.target.sheaf
        V = frozenset(V)
        hV = frozenset(self.points[x] for x in V)
        if hV not in t.sections:
            return None
        RV, RT = s.sections[V], t.sections[hV]
        if not RV.is_finite:
            (x,) = tuple(V)
            return compose(t.proj[hV][self.points[x]].inverse, compose(self.stalk_isos[x], s.proj[V][x]))
        look = t._index(hV)
        tpts = sorted(hV)
        inv = {self.points[x]: x for x in V}
        table = []
        for a in range(RV.size):
            key = tuple(self.stalk_isos[inv[y]].table[s.proj[V][inv[y]][a]] for y in tpts)
            table.append(look[key])
        return RingIso(RV, RT, table)

    def problems(self) -> list:
        out = []
        h = Homeo.of(self.source.space, self.target.space, self.points)
        out.extend(h.problems())
        if out:
            return out
        for x, th in self.stalk_isos.items():
            if th.domain != self.source.stalks[x] or th.codomain != self.target.stalks[self.points[x]]:
                out.append(f"stalk map at {x} has wrong ends")
        if out:
            return out
        s = self.source.sheaf
        isos = {}
        for V in s.basis:
            iso = self.section_iso(V)
            if iso is not None:
                if iso.domain.is_finite and len(set(iso.table)) != len(iso.table):
                    out.append(f"section map on {sorted(V)} is not bijective")
                isos[V] = iso
        t = self.target.sheaf
        for V, iv in isos.items():
            for W, iw in isos.items():
                if W <= V:
                    left = compose(iw, s.restriction(V, W))
                    right = compose(t.restriction(frozenset(self.points[x] for x in V), frozenset(self.points[x] for x in W)), iv)
                    if left.table != right.table:
                        out.append(f"restriction {sorted(V)} -> {sorted(W)} does not commute")
        return out

    def is_valid(self) -> bool:
        return not self.problems()


def extensions_isomorphic(s1: Scheme, s2: Scheme) -> SchemeIso:
    """The isomorphism between two extensions of one structure: identity on
    points, and on stalks the composite of the two chart identifications."""
    a, b = s1.declared, s2.declared
    if s1.space != s2.space or set(a.charts) != set(b.charts) or not a.gamma.same_as(b.gamma):
        raise NotExtensionsOfSameStructure("schemes extend different structures")
    pos2 = {c: i for i, c in enumerate(b.charts)}
    stalk_isos = {}
    for x in s1.space.points:
        i = next(i for i, c in enumerate(a.charts) if x in c.open_set)
        j = pos2[a.charts[i]]
        stalk_isos[x] = compose(s2.theta[(j, x)], s1.theta[(i, x)].inverse)
    iso = SchemeIso(s1, s2, {x: x for x in s1.space.points}, stalk_isos)
    problems = iso.problems()
    if problems:
        raise AssertionError(f"extension comparison failed: {problems[0]}")
    return iso


def find_scheme_iso(s1: Scheme, s2: Scheme, witnesses=()) -> SchemeIso | None:
    """Brute-force search for an isomorphism of schemes."""
    for h in homeomorphisms(s1.space, s2.space):
        m = h.as_dict
        stalk_isos = {}
        for x in s1.space.points:
            found = find_isos(s1.stalks[x], s2.stalks[m[x]], witnesses)
            if not found:
                break
            stalk_isos[x] = found[0]
        else:
            iso = SchemeIso(s1, s2, m, stalk_isos)
            if iso.is_valid():
                return iso
    return None


# --------------------------------------------------------------------------
# affine schemes


def affine_atlas(A: Ring, universe: Universe | None = None) -> AtlasData:
    S = spec(A)
    chart = AffineChart.of(S.points, A, {p: p for p in S.points})
    return AtlasData(S.space, [chart], close([A], [], universe or Universe([A.root])))


def affine_scheme(A: Ring, universe: Universe | None = None) -> Scheme:
    data = affine_atlas(A, universe)
    s = build_extension(data.space, StructureHandle(data, note=f"spec {A.id}"))
    s.name = f"Spec {A.id}"
    return s


# --------------------------------------------------------------------------
# canonical structures


@dataclass
class CanonicalGamma:
    flavor: str  # "maximal" or "generated-from-subset"
    gamma: Pseudogroup
    roots: tuple  # universe root ids whose charts were selected
    charts: list  # the selected in-scheme charts


def in_scheme_charts(s: Scheme, universe: Universe) -> list:
    """Charts on opens of s whose ring is locally isomorphic to the structure sheaf."""
    out = []
    for c in enumerate_charts(s.space, universe.all_rings()):
        if all(find_isos(_stalk_localization(c.ring, p)[0], s.stalks[x], universe.witnesses) for x, p in c.phi):
            out.append(c)
    return out


def overlap_isos(ca: AffineChart, cb: AffineChart, witnesses=()) -> list:
    """Every iso (A_a)_{f} -> (A_b)_{g} over a nonempty W inside both opens
    whose spectral map matches the chart transition."""
    common = sorted(ca.open_set & cb.open_set)
    out = []
    cands = lambda A, B: find_isos(A, B, witnesses)
    for r in range(1, len(common) + 1):
        for W in combinations(common, r):
            for t in transition_isos(cb, ca, frozenset(W), cands):
                if t not in out:
                    out.append(t)
    return out


def canonical_generators(s: Scheme, universe: Universe, roots=None) -> CanonicalGamma:
    """Identities of the selected chart rings and every overlap iso between
    selected charts, closed. ``roots=None`` selects every root (maximal)."""
    allc = in_scheme_charts(s, universe)
    chosen = universe.ids if roots is None else tuple(roots)
    if not chosen:
        raise ValueError("an empty selection generates no pseudogroup")
    sel = [c for c in allc if c.ring.root.id in chosen]
    rings = []
    for c in sel:
        if c.ring not in rings:
            rings.append(c.ring)
    isos = []
    for ca in sel:
        for cb in sel:
            for t in overlap_isos(ca, cb, universe.witnesses):
                if t not in isos:
                    isos.append(t)
    gamma = close(rings, isos, universe)
    flavor = "maximal" if set(chosen) == set(universe.ids) else "generated-from-subset"
    return CanonicalGamma(flavor, gamma, tuple(sorted(chosen)), sel)


def representative_rings(s: Scheme, charts) -> dict:
    """One ring per open among ``charts``: the scheme's own section ring when
    a chart carries it, otherwise the first ring met. Rings are nominal, so
    a scheme can only carry one of several isomorphic copies on an open."""
    out = {}
    for c in charts:
        U = c.open_set
        own = s.sheaf.sections.get(U)
        if own is not None and c.ring == own:
            out[U] = c.ring
        else:
            out.setdefault(U, c.ring)
    return out


def _gamma_charts(g: CanonicalGamma, s: Scheme, universe: Universe) -> list:
    charts = [c for c in in_scheme_charts(s, universe) if c.ring.id in g.gamma.rings]
    reps = representative_rings(s, charts)
    return [c for c in charts if c.ring == reps[c.open_set]]


def a_star(g: CanonicalGamma, s: Scheme, universe: Universe) -> AtlasData:
    return AtlasData(s.space, _gamma_charts(g, s, universe), g.gamma)


def relative_canonical_structure(g: CanonicalGamma, s: Scheme, universe: Universe) -> StructureHandle:
    """Saturate a_star with every in-scheme chart over gamma compatible with it."""
    from .atlas import compatible

    base = a_star(g, s, universe)
    charts = list(base.charts)
    changed = True
    while changed:
        changed = False
        for c in _gamma_charts(g, s, universe):
            if c in charts:
                continue
            trial = AtlasData(s.space, charts + [c], g.gamma)
            if validate_atlas(trial).ok and compatible(trial, base, g.gamma).ok:
                charts.append(c)
                changed = True
    return StructureHandle(AtlasData(s.space, charts, g.gamma), note=f"relative canonical over universe {universe.stamp()}")


def canonical_pseudogroups(s: Scheme, universe: Universe) -> list:
    """Canonical pseudogroups generated from every nonempty set of universe
    roots that has charts in s and whose a_star is a valid atlas. Distinct
    pseudogroups only; the first generating root set is kept."""
    out = []
    ids = universe.ids
    for r in range(1, len(ids) + 1):
        for roots in combinations(ids, r):
            if not any(c.ring.root.id in roots for c in in_scheme_charts(s, universe)):
                continue
            g = canonical_generators(s, universe, roots)
            if not validate_atlas(a_star(g, s, universe)).ok:
                continue
            if not any(g.gamma.same_as(o.gamma) for o in out):
                out.append(g)
    return out


@dataclass
class AssociateResult:
    scheme: Scheme | None
    iso: SchemeIso | None
    conflict: dict | None = None

    @property
    def admissible(self) -> bool:
        return self.scheme is not None


def associate_scheme(s: Scheme, h: StructureHandle, universe: Universe | None = None) -> AssociateResult:
    witnesses = universe.witnesses if universe is not None else ()
    try:
        t = build_extension(s.space, h, witnesses=witnesses)
    except NotAdmissible as exc:
        return AssociateResult(None, None, exc.conflict)
    stalk_isos = {}
    for x in s.space.points:
        found = find_isos(t.stalks[x], s.stalks[x], witnesses)
        if not found:
            return AssociateResult(t, None, {"point": x})
        stalk_isos[x] = found[0]
    iso = SchemeIso(t, s, {x: x for x in s.space.points}, stalk_isos)
    return AssociateResult(t, iso if iso.is_valid() else None)


@dataclass
class UniquenessReport:
    canonical_unique: bool
    relative_unique: bool
    gammas: list

    @property
    def consistent(self) -> bool:
        return self.canonical_unique == self.relative_unique

    @property
    def unique(self) -> bool:
        return self.canonical_unique and self.relative_unique


def unique_structure_check(s: Scheme, universe: Universe) -> UniquenessReport:
    gs = canonical_pseudogroups(s, universe)
    canon = {frozenset(a_star(g, s, universe).charts) for g in gs}
    rel = {frozenset(relative_canonical_structure(g, s, universe).charts) for g in gs}
    return UniquenessReport(len(canon) <= 1, len(rel) <= 1, gs)
