"""Affine charts, atlases and their validation."""

from __future__ import annotations

from dataclasses import dataclass, field

from . import limits
from .errors import GammaMismatch, SpaceMismatch, TooLarge
from .pseudogroup import Pseudogroup
from .rings import Ring, localize
from .spectrum import (
    Homeo,
    TopSpace,
    homeomorphisms,
    localization_embedding,
    spec,
    spec_functor,
)


@dataclass(frozen=True)
class AffineChart:
    open_set: frozenset
    ring: Ring
    phi: tuple  # sorted (space point, spectrum point) pairs

    @classmethod
    def of(cls, open_set, ring, phi: dict) -> AffineChart:
        return cls(frozenset(open_set), ring, tuple(sorted(phi.items())))

    @property
    def phi_map(self) -> dict:
        return dict(self.phi)

    def image(self, subset) -> frozenset:
        m = self.phi_map
        return frozenset(m[x] for x in subset)

    def preimage(self, points) -> frozenset:
        points = frozenset(points)
        return frozenset(x for x, p in self.phi if p in points)

    def homeo(self, space: TopSpace) -> Homeo:
        return Homeo.of(space.subspace(self.open_set), spec(self.ring).space, self.phi_map)

    def sort_key(self):
        return (len(self.open_set), sorted(self.open_set), self.ring.id, self.phi)

    def __repr__(self):
        return f"Chart({sorted(self.open_set)} -> {self.ring.id})"


@dataclass
class AtlasData:
    space: TopSpace
    charts: list
    gamma: Pseudogroup


@dataclass
class StructureHandle:
    """Stands for the complete atlas determined by a validated base atlas."""

    base: AtlasData
    note: str = ""

    @classmethod
    def validated(cls, base: AtlasData, note: str = "") -> StructureHandle:
        report = validate_atlas(base)
        if not report.ok:
            raise ValueError(f"atlas is not valid: {report.violations[0]}")
        return cls(base, note)

    @property
    def space(self):
        return self.base.space

    @property
    def gamma(self):
        return self.base.gamma

    @property
    def charts(self):
        return self.base.charts


@dataclass
class Violation:
    code: str
    detail: dict

    def __str__(self):
        inner = ", ".join(f"{k}={v}" for k, v in self.detail.items())
        return f"{self.code}({inner})"


@dataclass
class AtlasReport:
    violations: list = field(default_factory=list)
    warnings: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


# --------------------------------------------------------------------------
# transitions


def distinguished_element(A: Ring, pts):
    """An f with D(f) = pts, or None if pts is not distinguished."""
    return spec(A).distinguished_opens().get(frozenset(pts))


def transition_isos(ci: AffineChart, cj: AffineChart, W, candidates) -> list:
    """Isos (A_j)_{f_j} -> (A_i)_{f_i} among ``candidates`` whose spectral map
    agrees with the point transition phi_j o phi_i^{-1} on W.

    Returns [] unless phi_i(W) and phi_j(W) are both distinguished.
    """
    fi = distinguished_element(ci.ring, ci.image(W))
    fj = distinguished_element(cj.ring, cj.image(W))
    if fi is None or fj is None:
        return []
    Li, _ = localize(ci.ring, fi)
    Lj, _ = localize(cj.ring, fj)
    emb_i = localization_embedding(ci.ring, fi)  # spec Li -> spec Ai
    emb_j = localization_embedding(cj.ring, fj)
    back_i = {v: k for k, v in emb_i.items()}
    back_j = {v: k for k, v in emb_j.items()}
    pi, pj = ci.phi_map, cj.phi_map
    want = {back_i[pi[y]]: back_j[pj[y]] for y in W}
    out = []
    for s in candidates(Lj, Li):
        # s: Lj -> Li induces spec Li -> spec Lj
        if spec_functor(s) == want:
            out.append(s)
    return out


def gamma_candidates(gamma: Pseudogroup):
    return lambda A, B: gamma.isos_between(A, B)


def overlap_witness(ci, cj, charts, x, candidates):
    """A chart W of ``charts`` through x inside both opens, with a matching iso."""
    common = ci.open_set & cj.open_set
    for w, cw in enumerate(charts):
        if x in cw.open_set and cw.open_set <= common:
            isos = transition_isos(ci, cj, cw.open_set, candidates)
            if isos:
                return w, isos[0]
    return None


def _agrees(cw: AffineChart, ci: AffineChart, gamma) -> bool:
    return bool(transition_isos(ci, cw, cw.open_set, gamma_candidates(gamma)))


def validate_atlas(data: AtlasData) -> AtlasReport:
    X, charts, gamma = data.space, data.charts, data.gamma
    rep = AtlasReport()
    broken = False
    for i, c in enumerate(charts):
        if not c.open_set or not X.is_open(c.open_set):
            rep.violations.append(Violation("chart.open", {"chart": i}))
            broken = True
            continue
        if c.ring.id not in gamma.rings:
            rep.violations.append(Violation("chart.ring", {"chart": i, "ring": c.ring.id}))
        problems = c.homeo(X).problems()
        if problems:
            rep.violations.append(Violation("chart.homeo", {"chart": i, "problem": problems[0]}))
            broken = True
    if broken:
        return rep
    covered = frozenset().union(*[c.open_set for c in charts]) if charts else frozenset()
    missing = X.point_set - covered
    if missing:
        rep.violations.append(Violation("cover", {"points": sorted(missing)}))
    cands = gamma_candidates(gamma)
    for i, ci in enumerate(charts):
        for j, cj in enumerate(charts):
            if i >= j:
                continue
            for x in sorted(ci.open_set & cj.open_set):
                if overlap_witness(ci, cj, charts, x, cands) is None:
                    rep.violations.append(Violation("overlap", {"pair": (i, j), "point": x}))
    # transported distinguished opens must form a base
    basics = set()
    for c in charts:
        for D in spec(c.ring).distinguished_opens():
            if D:
                basics.add(c.preimage(D))
    for o in X.opens:
        if o and frozenset().union(*[b for b in basics if b <= o]) != o:
            rep.violations.append(Violation("base", {"open": sorted(o)}))
    # charts standing as W for a pair but matching neither restriction
    for w, cw in enumerate(charts):
        for i, ci in enumerate(charts):
            for j, cj in enumerate(charts):
                inside = i < j and w not in (i, j) and cw.open_set <= ci.open_set & cj.open_set
                if inside and not _agrees(cw, ci, gamma) and not _agrees(cw, cj, gamma):
                    rep.warnings.append(Violation("overlap.disagree", {"chart": w, "pair": (i, j)}))
    return rep


# --------------------------------------------------------------------------
# compatibility


@dataclass
class Compatibility:
    ok: bool
    witnesses: list = field(default_factory=list)
    failure: dict | None = None

    def __bool__(self):
        return self.ok


def compatible(a: AtlasData, b: AtlasData, gamma: Pseudogroup) -> Compatibility:
    if a.space != b.space:
        raise SpaceMismatch("atlases live on different spaces")
    shared = [c for c in a.charts if c in b.charts]
    cands = gamma_candidates(gamma)
    out = Compatibility(True)
    for i, ci in enumerate(a.charts):
        for j, cj in enumerate(b.charts):
            for x in sorted(ci.open_set & cj.open_set):
                hit = overlap_witness(ci, cj, shared, x, cands)
                if hit is None:
                    return Compatibility(False, out.witnesses, {"a_chart": i, "b_chart": j, "point": x})
                out.witnesses.append({"a_chart": i, "b_chart": j, "point": x, "via": a.charts.index(shared[hit[0]])})
    return out


def same_structure(h1: StructureHandle, h2: StructureHandle) -> bool:
    if h1.space != h2.space:
        raise SpaceMismatch("structures live on different spaces")
    if not h1.gamma.same_as(h2.gamma):
        raise GammaMismatch("structures use different pseudogroups")
    return compatible(h1.base, h2.base, h1.gamma).ok


def enumerate_charts(X: TopSpace, rings) -> list:
    """Every chart (U, phi, A) with U a nonempty open and A among ``rings``."""
    cap = limits.current.max_points
    if len(X.points) > cap:
        raise TooLarge(f"chart enumeration capped at {cap} points")
    out = []
    for U in X.nonempty_opens():
        sub = X.subspace(U)
        for A in rings:
            target = spec(A).space
            if len(target.points) != len(U):
                continue
            for h in homeomorphisms(sub, target):
                out.append(AffineChart(U, A, h.mapping))
    return out


def transport_chart(c: AffineChart, h: Homeo) -> AffineChart:
    """The chart carried along a homeomorphism h of the underlying spaces."""
    m = h.as_dict
    return AffineChart.of({m[x] for x in c.open_set}, c.ring, {m[x]: p for x, p in c.phi})
