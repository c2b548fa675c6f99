"""Gluing spectra into spaces, structure sets on a space and the relations
between them, and the constructions recovering homeomorphisms and scheme
isomorphisms from those relations."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product

from . import limits
from .atlas import (
    AffineChart,
    AtlasData,
    StructureHandle,
    distinguished_element,
    enumerate_charts,
    same_structure,
    transport_chart,
    validate_atlas,
)
from .errors import (
    MissingDeckWitness,
    NotAdmissible,
    NotHomeomorphism,
    NotInjective,
    NotOpen,
    NotSurjective,
    NotWellDefined,
    PreconditionFailed,
    RelationMismatch,
    TooLarge,
    UniverseMismatch,
)
from .pseudogroup import Universe, close, induced_localization_iso
from .rings import Ring, RingIso, compose, find_isos
from .sheaf import (
    Scheme,
    SchemeIso,
    _stalk_localization,
    a_star,
    build_extension,
    canonical_generators,
    canonical_pseudogroups,
    find_scheme_iso,
    relative_canonical_structure,
)
from .spectrum import Homeo, TopSpace, disjoint_union, spec, spec_homeo

# --------------------------------------------------------------------------
# quotients of disjoint unions of spectra


@dataclass
class GlueScenario:
    charts: list  # (tag, Ring)
    identifications: list = field(default_factory=list)  # ((tag, p), (tag, q))
    isos: dict = field(default_factory=dict)  # index of identification -> RingIso

    def ring_of(self, tag) -> Ring:
        for t, R in self.charts:
            if t == tag:
                return R
        raise KeyError(tag)

    def problems(self) -> list:
        out = []
        tags = [t for t, _ in self.charts]
        if len(set(tags)) != len(tags):
            out.append("duplicate chart tags")
        for (t1, p), (t2, q) in self.identifications:
            for t, pt in ((t1, p), (t2, q)):
                if t not in tags or pt not in spec(self.ring_of(t)).points:
                    out.append(f"{t}|{pt} is not a point of the scenario")
        return out


class UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            lo, hi = sorted((ra, rb))
            self.parent[hi] = lo

    def classes(self) -> list:
        groups = {}
        for x in self.parent:
            groups.setdefault(self.find(x), []).append(x)
        return sorted(tuple(sorted(g)) for g in groups.values())


@dataclass
class QuotientSpace:
    sigma: TopSpace
    classes: list  # tuples of sigma points, each sorted; representative = first
    space: TopSpace  # points are representatives

    @property
    def proj(self) -> dict:
        return {z: c[0] for c in self.classes for z in c}

    def preimage(self, reps) -> frozenset:
        reps = set(reps)
        return frozenset(z for c in self.classes if c[0] in reps for z in c)

    def law_holds(self) -> bool:
        """A class set is open iff its preimage is open (all subsets checked)."""
        reps = [c[0] for c in self.classes]
        for r in range(len(reps) + 1):
            for sub in combinations(reps, r):
                if (frozenset(sub) in self.space.opens) != self.sigma.is_open(self.preimage(sub)):
                    return False
        return True

    def image_openness_agrees(self) -> bool:
        """Whether 'image of an open is open' gives the same family of opens."""
        p = self.proj
        images = {frozenset(p[z] for z in o) for o in self.sigma.opens}
        return images == set(self.space.opens)


def _quotient(sigma: TopSpace, uf: UnionFind) -> QuotientSpace:
    classes = uf.classes()
    cap = limits.current.max_classes
    if len(classes) > cap:
        raise TooLarge(f"quotient capped at {cap} classes")
    reps = [c[0] for c in classes]
    members = {c[0]: frozenset(c) for c in classes}
    opens = set()
    for r in range(len(reps) + 1):
        for sub in combinations(reps, r):
            pre = frozenset().union(*[members[x] for x in sub]) if sub else frozenset()
            if sigma.is_open(pre):
                opens.add(frozenset(sub))
    return QuotientSpace(sigma, classes, TopSpace(tuple(reps), frozenset(opens)))


def build_quotient(sc: GlueScenario) -> QuotientSpace:
    problems = sc.problems()
    if problems:
        raise ValueError(problems[0])
    sigma = disjoint_union([(t, spec(R).space) for t, R in sc.charts])
    uf = UnionFind(sigma.points)
    for (t1, p), (t2, q) in sc.identifications:
        uf.union(f"{t1}|{p}", f"{t2}|{q}")
    return _quotient(sigma, uf)


def _split(z: str):
    tag, _, p = z.partition("|")
    return tag, p


def rho_check(q: QuotientSpace, X: TopSpace, assignments: dict) -> Homeo:
    """The map classes -> X sending tag|p to phi_tag^{-1}(p), verified a homeomorphism.

    ``assignments`` maps each scenario tag to a chart of X.
    """
    inv = {tag: {p: x for x, p in c.phi} for tag, c in assignments.items()}
    rho = {}
    for c in q.classes:
        images = set()
        for z in c:
            tag, p = _split(z)
            if tag not in inv:
                raise NotSurjective(f"scenario chart {tag} has no chart of X assigned", witness=(tag,))
            images.add(inv[tag][p])
        if len(images) != 1:
            raise NotInjective(f"class {list(c)} is sent to several points {sorted(images)}", witness=tuple(c))
        rho[c[0]] = images.pop()
    seen = {}
    for r, x in rho.items():
        if x in seen:
            raise NotInjective(f"classes {seen[x]} and {r} both go to {x}", witness=(seen[x], r))
        seen[x] = r
    missing = X.point_set - set(seen)
    if missing:
        raise NotSurjective(f"points {sorted(missing)} are not covered", witness=tuple(sorted(missing)))
    h = Homeo.of(q.space, X, rho)
    problems = h.problems()
    if problems:
        raise NotOpen(problems[0], witness=tuple(problems))
    return h


def scenario_from_charts(X: TopSpace, charts, prefix="c") -> tuple:
    """Glue data for a family of charts of X: tag every chart and identify
    points of their spectra that name the same point of X."""
    tags = [f"{prefix}{i}" for i in range(len(charts))]
    idents = []
    for (ta, ca), (tb, cb) in combinations(zip(tags, charts), 2):
        for x, p in ca.phi:
            for y, r in cb.phi:
                if x == y:
                    idents.append(((ta, p), (tb, r)))
    sc = GlueScenario([(t, c.ring) for t, c in zip(tags, charts)], idents)
    return sc, dict(zip(tags, charts))


# --------------------------------------------------------------------------
# recovering a homeomorphism from matched charts


def _relation(points_of: dict) -> UnionFind:
    """Identify sigma points sent to the same target point."""
    uf = UnionFind(points_of)
    first = {}
    for z in sorted(points_of):
        x = points_of[z]
        if x in first:
            uf.union(first[x], z)
        else:
            first[x] = z
    return uf


def tau_from_equality(xd: tuple, yd: tuple, matching) -> Homeo:
    """tau: X -> Y from pairs (i, j) of charts of X and Y carrying the same ring.

    ``xd`` and ``yd`` are (space, charts). The disjoint union of the shared
    spectra carries two relations (same point of X, same point of Y); tau is
    defined when they coincide.
    """
    X, xcharts = xd
    Y, ycharts = yd
    parts, to_x, to_y = [], {}, {}
    for n, (i, j) in enumerate(matching):
        cx, cy = xcharts[i], ycharts[j]
        if cx.ring != cy.ring:
            raise NotWellDefined(f"matched charts {i} and {j} carry different rings", witness=(i, j))
        tag = f"m{n}"
        parts.append((tag, spec(cx.ring).space))
        ix = {p: x for x, p in cx.phi}
        iy = {p: y for y, p in cy.phi}
        for p in spec(cx.ring).points:
            to_x[f"{tag}|{p}"] = ix[p]
            to_y[f"{tag}|{p}"] = iy[p]
    for name, S, img in (("X", X, to_x), ("Y", Y, to_y)):
        missing = S.point_set - set(img.values())
        if missing:
            raise NotSurjective(f"matched charts miss points {sorted(missing)} of {name}", witness=tuple(sorted(missing)))
    sigma = disjoint_union(parts)
    zs = sorted(to_x)
    for a, b in combinations(zs, 2):
        if (to_x[a] == to_x[b]) != (to_y[a] == to_y[b]):
            raise NotWellDefined(f"{a} and {b} are identified on one side only", witness=(a, b))
    qx = _quotient(sigma, _relation(to_x))
    rx = {c[0]: to_x[c[0]] for c in qx.classes}
    tau = {rx[c[0]]: to_y[c[0]] for c in qx.classes}
    h = Homeo.of(X, Y, tau)
    problems = h.problems()
    if problems:
        raise NotHomeomorphism(problems[0], witness=tuple(problems))
    return h


def find_tau(xd: tuple, yd: tuple):
    """Search for chart matchings (equal rings) covering X whose point maps
    agree; returns (tau, matching) or raises the last failure seen."""
    X, xcharts = xd
    _, ycharts = yd
    partners = [[j for j, cy in enumerate(ycharts) if cy.ring == cx.ring] for cx in xcharts]
    last = [NotSurjective("no matching of equal-ring charts covers X", witness=())]

    def induced(i, j):
        iy = {p: y for y, p in ycharts[j].phi}
        return {x: iy[p] for x, p in xcharts[i].phi}

    def rec(tau, matching):
        todo = [x for x in X.points if x not in tau]
        if not todo:
            try:
                return tau_from_equality(xd, yd, matching), matching
            except (NotWellDefined, NotHomeomorphism, NotSurjective) as exc:
                last[0] = exc
                return None
        x = todo[0]
        for i, cx in enumerate(xcharts):
            if x not in cx.open_set:
                continue
            for j in partners[i]:
                m = induced(i, j)
                if any(tau.get(a, b) != b for a, b in m.items()):
                    continue
                new = dict(tau)
                new.update(m)
                if len(set(new.values())) != len(new):
                    continue
                got = rec(new, matching + [(i, j)])
                if got is not None:
                    return got
        return None

    got = rec({}, [])
    if got is None:
        raise last[0]
    return got


# --------------------------------------------------------------------------
# structure sets


@dataclass
class StructureSetDescription:
    space: TopSpace
    universe: Universe
    handles: list
    flavor: str = "admissible"
    origins: list = field(default_factory=list)  # generating root ids per handle

    @property
    def note(self) -> str:
        return f"restricted to universe {self.universe.stamp()}"

    def charts(self):
        for h_i, h in enumerate(self.handles):
            for c_i, c in enumerate(h.charts):
                yield h_i, c_i, c


def _admissible(X, charts, gamma, witnesses) -> bool:
    try:
        build_extension(X, StructureHandle(AtlasData(X, list(charts), gamma)), witnesses=witnesses)
    except NotAdmissible:
        return False
    return True


def _root_pseudogroup(roots, universe: Universe):
    rings = []
    for R in roots:
        for L in universe.restrict([R.id]).all_rings():
            if L not in rings:
                rings.append(L)
    isos = []
    for A in rings:
        for B in rings:
            isos.extend(find_isos(A, B, universe.witnesses))
    return close(rings, isos, universe)


def admissible_structures(X: TopSpace, universe: Universe) -> StructureSetDescription:
    """Maximal valid admissible atlases whose pseudogroup is generated by all
    isomorphisms among the localizations of some set of universe roots."""
    cap = limits.current.max_structure_points
    if len(X.points) > cap:
        raise TooLarge(f"structure enumeration capped at {cap} points")
    found, origins = [], []
    roots = universe.roots
    for r in range(1, len(roots) + 1):
        for sel in combinations(roots, r):
            gamma = _root_pseudogroup(sel, universe)
            cands = enumerate_charts(X, list(gamma.rings.values()))
            if not cands:
                continue
            if len(cands) > limits.current.max_candidate_charts:
                raise TooLarge(f"{len(cands)} candidate charts exceed cap {limits.current.max_candidate_charts}")
            maximal = []
            for size in range(len(cands), 0, -1):
                for sub in combinations(range(len(cands)), size):
                    s = set(sub)
                    if any(s <= m for m in maximal):
                        continue
                    charts = [cands[i] for i in sub]
                    if any(a.open_set == b.open_set and a.ring != b.ring for a, b in combinations(charts, 2)):
                        continue
                    data = AtlasData(X, charts, gamma)
                    if validate_atlas(data).ok and _admissible(X, charts, gamma, universe.witnesses):
                        maximal.append(s)
            for m in maximal:
                charts = [cands[i] for i in sorted(m)]
                h = StructureHandle(AtlasData(X, charts, gamma), note=f"generated by {[R.id for R in sel]}")
                if any(set(charts) == set(o.charts) for o in found):
                    continue
                if any(o.gamma.same_as(gamma) and same_structure(o, h) for o in found):
                    continue
                found.append(h)
                origins.append(tuple(R.id for R in sel))
    return StructureSetDescription(X, universe, found, "admissible", origins)


def relative_canonical_structures(s: Scheme, universe: Universe) -> StructureSetDescription:
    handles, origins = [], []
    for g in canonical_pseudogroups(s, universe):
        handles.append(relative_canonical_structure(g, s, universe))
        origins.append(g.roots)
    return StructureSetDescription(s.space, universe, handles, "relative-canonical", origins)


def enumerate_structures(X: TopSpace, universe: Universe, flavor="admissible", scheme: Scheme | None = None):
    if flavor == "admissible":
        return admissible_structures(X, universe)
    if flavor == "relative-canonical":
        if scheme is None:
            raise ValueError("relative-canonical flavor needs a scheme")
        return relative_canonical_structures(scheme, universe)
    raise ValueError(f"unknown flavor {flavor!r}")


def transport_structure(h: StructureHandle, homeo: Homeo) -> StructureHandle:
    charts = [transport_chart(c, homeo) for c in h.charts]
    return StructureHandle(AtlasData(homeo.target, charts, h.gamma), note=h.note)


def transport_set(ax: StructureSetDescription, homeo: Homeo) -> StructureSetDescription:
    return StructureSetDescription(homeo.target, ax.universe, [transport_structure(h, homeo) for h in ax.handles], ax.flavor, list(ax.origins))


# --------------------------------------------------------------------------
# relations between structure sets


@dataclass
class RelationResult:
    holds: bool
    witnesses: list = field(default_factory=list)
    failure: dict | None = None
    universe: list = field(default_factory=list)

    def __bool__(self):
        return self.holds


def subset_rel(ax: StructureSetDescription, ay: StructureSetDescription, strict=False) -> RelationResult:
    """Every chart ring on the X side appears (nominally) as a chart ring on the Y side."""
    if strict and ax.universe.stamp() != ay.universe.stamp():
        raise UniverseMismatch(f"{ax.universe.stamp()} vs {ay.universe.stamp()}")
    stamp = sorted(set(ax.universe.stamp()) | set(ay.universe.stamp()))
    where = {}
    for h_j, c_j, c in ay.charts():
        where.setdefault(c.ring.id, (h_j, c_j))
    out = RelationResult(True, universe=stamp)
    for h_i, c_i, c in ax.charts():
        hit = where.get(c.ring.id)
        if hit is None:
            return RelationResult(False, out.witnesses, {"structure": h_i, "chart": c_i, "ring": c.ring.id}, stamp)
        out.witnesses.append({"from": (h_i, c_i), "to": hit, "ring": c.ring.id})
    return out


def structure_sets_equal(ax, ay) -> bool:
    return subset_rel(ax, ay).holds and subset_rel(ay, ax).holds


@dataclass
class DeckTransformation:
    delta: RingIso

    @property
    def induced(self) -> dict:
        """spec B -> spec A as a point map."""
        h = spec_homeo(self.delta)
        return {b: a for a, b in h.mapping}


def _deck_isos(decks) -> list:
    out = []
    for d in decks:
        s = d.delta if isinstance(d, DeckTransformation) else d
        if s not in out:
            out.append(s)
    return out


def _isos_between(A: Ring, B: Ring, decks, universe_witnesses=()):
    """Isos A -> B from decks (and their induced localizations) or, for
    finite rings and identical number fields, by search."""
    got = []
    for s in decks:
        if s.domain == A and s.codomain == B:
            got.append(s)
        elif s.domain == A.root and s.codomain == B.root and A.is_finite and A is not A.root:
            t = induced_localization_iso(s, A.idempotent)
            if t.codomain == B:
                got.append(t)
    if A.is_finite or A == B:
        for s in find_isos(A, B, universe_witnesses):
            if s not in got:
                got.append(s)
    return got


def _needs_deck(A: Ring, B: Ring) -> bool:
    return not A.is_finite and not B.is_finite and A != B and A.degree == B.degree


@dataclass
class UnlhdReport:
    holds: bool
    conditions: dict  # name -> (bool, detail)
    universe: list

    def __bool__(self):
        return self.holds

    @property
    def failed(self):
        for name in ("local_isomorphism", "covering", "filtering"):
            if not self.conditions.get(name, (True,))[0]:
                return name
        return None


def unlhd_rel(ax0: StructureSetDescription, ay0: StructureSetDescription, decks=()) -> UnlhdReport:
    decks = _deck_isos(decks)
    stamp = sorted(set(ax0.universe.stamp()) | set(ay0.universe.stamp()))
    wit = list(ax0.universe.witnesses) + list(ay0.universe.witnesses)
    yrings = []
    for _, _, c in ay0.charts():
        if c.ring not in yrings:
            yrings.append(c.ring)
    xrings = []
    for _, _, c in ax0.charts():
        if c.ring not in xrings:
            xrings.append(c.ring)
    conds = {}
    # local isomorphism
    partner = {}
    for A in xrings:
        hits = []
        missing_deck = False
        for B in yrings:
            isos = _isos_between(A, B, decks, wit)
            if isos:
                hits.append((B, isos))
            elif _needs_deck(A, B):
                missing_deck = True
        if not hits:
            if missing_deck:
                raise MissingDeckWitness(f"an isomorphism out of {A.id} needs a supplied deck transformation")
            conds["local_isomorphism"] = (False, {"ring": A.id, "reason": _no_iso_reason(A, yrings)})
            return UnlhdReport(False, conds, stamp)
        partner[A.id] = hits
    conds["local_isomorphism"] = (True, {a: [B.id for B, _ in h] for a, h in partner.items()})
    # covering
    iso_targets = {B.id for hits in partner.values() for B, _ in hits}
    covered = set()
    for _, _, c in ay0.charts():
        if c.ring.id in iso_targets:
            covered |= c.open_set
    missing = ay0.space.point_set - covered
    conds["covering"] = (not missing, {"uncovered": sorted(missing)})
    if missing:
        return UnlhdReport(False, conds, stamp)
    # filtering: coincident points of X must have a common transported image in Y
    def targets(c: AffineChart, x):
        out = set()
        p = c.phi_map[x]
        for B, isos in partner[c.ring.id]:
            for _, _, cy in ay0.charts():
                if cy.ring != B:
                    continue
                back = {q: y for y, q in cy.phi}
                for s in isos:
                    out.add(back[spec_homeo(s)(p)])
        return out

    xcharts = [c for _, _, c in ax0.charts()]
    for a, ca in enumerate(xcharts):
        for b, cb in enumerate(xcharts):
            if a >= b:
                continue
            for x in sorted(ca.open_set & cb.open_set):
                if not targets(ca, x) & targets(cb, x):
                    conds["filtering"] = (False, {"charts": (a, b), "point": x})
                    return UnlhdReport(False, conds, stamp)
    conds["filtering"] = (True, {})
    return UnlhdReport(True, conds, stamp)


def _no_iso_reason(A, yrings) -> str:
    if not A.is_finite and all((not B.is_finite and B.degree != A.degree) or B.is_finite for B in yrings):
        return "dimension"
    return "no isomorphism"


def cong_rel(ax0, ay0, decks_fwd=(), decks_bwd=()) -> tuple:
    fwd = unlhd_rel(ax0, ay0, decks_fwd)
    bwd = unlhd_rel(ay0, ax0, decks_bwd)
    return fwd.holds and bwd.holds, fwd, bwd


def inverse_decks(decks) -> list:
    return [s.inverse for s in _deck_isos(decks)]


# --------------------------------------------------------------------------
# scheme isomorphisms from the relations


@dataclass
class TauCertificate:
    iso: SchemeIso
    sigma_x_classes: list
    sigma_y_classes: list
    pairs: list  # (X chart index, Y chart index, deck description)


def _maximal_a_star(s: Scheme, universe: Universe) -> AtlasData:
    g = canonical_generators(s, universe)
    return a_star(g, s, universe)


def tau_scheme(sx: Scheme, sy: Scheme, ux: Universe, uy: Universe, decks) -> TauCertificate:
    """A scheme isomorphism X -> Y assembled from deck transformations.

    Σ is built from the charts of A*(Γ^max_Y); Σ* from the X charts paired
    with a deck into a Y chart ring. tau exists when 'same point of X' and
    'decks land on the same point of Y' agree on Σ*.
    """
    decks = _deck_isos(decks)
    ax0 = relative_canonical_structures(sx, ux)
    ay0 = relative_canonical_structures(sy, uy)
    ok, fwd, bwd = cong_rel(ax0, ay0, decks, inverse_decks(decks))
    if not ok:
        bad = fwd if not fwd.holds else bwd
        raise PreconditionFailed(f"structure sets are not congruent ({bad.failed})", witness=bad.conditions)
    Ay = _maximal_a_star(sy, uy).charts
    Ax = _maximal_a_star(sx, ux).charts
    to_y = {}
    for n, c in enumerate(Ay):
        for y, p in c.phi:
            to_y[f"y{n}|{p}"] = y
    qy = _quotient(disjoint_union([(f"y{n}", spec(c.ring).space) for n, c in enumerate(Ay)]), _relation(to_y))
    # candidate (Y chart, iso) pairs per X chart
    options = []
    for i, cx in enumerate(Ax):
        opts = []
        for n, cy in enumerate(Ay):
            for s in _isos_between(cx.ring, cy.ring, decks):
                opts.append((n, s))
        options.append(opts)
    used = [i for i, o in enumerate(options) if o]
    covered = set().union(*[Ax[i].open_set for i in used]) if used else set()
    if covered != sx.space.point_set:
        raise PreconditionFailed("charts paired with decks do not cover X", witness=sorted(sx.space.point_set - covered))
    wit = list(ux.witnesses) + list(uy.witnesses) + list(decks) + [d.inverse for d in decks]
    last = None
    count = 0
    for pick in product(*[options[i] for i in used]):
        count += 1
        if count > 4096:
            break
        to_x, to_sigma = {}, {}
        for i, (n, s) in zip(used, pick):
            cx, cy = Ax[i], Ay[n]
            h = spec_homeo(s)
            for x, p in cx.phi:
                z = f"x{i}|{p}"
                to_x[z] = x
                to_sigma[z] = f"y{n}|{h(p)}"
        zs = sorted(to_x)
        mismatch = None
        for a, b in combinations(zs, 2):
            if (to_x[a] == to_x[b]) != (to_y[to_sigma[a]] == to_y[to_sigma[b]]):
                mismatch = (a, b)
                break
        if mismatch:
            last = mismatch
            continue
        tau = {to_x[z]: to_y[to_sigma[z]] for z in zs}
        stalk_isos = {}
        for z in zs:
            x = to_x[z]
            if x in stalk_isos:
                continue
            i = int(z.split("|")[0][1:])
            k = used.index(i)
            n, s = pick[k]
            stalk_isos[x] = _stalk_iso(sx, sy, Ax[i], x, s, tau[x], wit)
        iso = SchemeIso(sx, sy, tau, stalk_isos)
        if iso.is_valid():
            sigx = _quotient(disjoint_union([(f"x{i}", spec(Ax[i].ring).space) for i in used]), _relation(to_x))
            return TauCertificate(iso, sigx.classes, qy.classes, [(i, n, f"{s.domain.id}->{s.codomain.id}") for i, (n, s) in zip(used, pick)])
        last = ("stalks", tuple(sorted(tau.items())))
    raise RelationMismatch("no deck choice makes the two relations agree", witness=last)


def _stalk_iso(sx, sy, cx, x, s, y, wit):
    """O^X_x -> O^Y_y through the chart local ring at x and the deck s."""
    p = cx.phi_map[x]
    Lx, _ = _stalk_localization(cx.ring, p)
    mid = induced_localization_iso(s, distinguished_element(cx.ring, [p])) if cx.ring.is_finite else s
    a = find_isos(sx.stalks[x], Lx, wit)
    b = find_isos(mid.codomain, sy.stalks[y], wit)
    if not a or not b:
        raise RelationMismatch(f"no stalk identification at {x}", witness=(x, y))
    return compose(b[0], compose(mid, a[0]))


def decks_from_scheme_iso(iso: SchemeIso) -> list:
    """Section isomorphisms of a scheme iso on basic opens, usable as decks."""
    out = []
    for V in iso.source.sheaf.basis:
        s = iso.section_iso(V)
        if s is not None and s not in out:
            out.append(s)
    return out


def classify_by_extension(ax: StructureSetDescription) -> list:
    """Partition handles by isomorphism of their extensions; [(indices, scheme)]."""
    schemes = []
    for h in ax.handles:
        schemes.append(build_extension(ax.space, h, witnesses=ax.universe.witnesses))
    classes = []
    for i, s in enumerate(schemes):
        for cls in classes:
            if find_scheme_iso(schemes[cls[0]], s, ax.universe.witnesses) is not None:
                cls.append(i)
                break
        else:
            classes.append([i])
    return [(tuple(c), schemes[c[0]]) for c in classes]
