"""Closed sets of ring isomorphisms (pseudogroups) and their saturation."""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass, field

from .errors import UniverseEscape
from .rings import Ring, RingHom, RingIso, compose, identity, localize


@dataclass
class Universe:
    """A declared finite family of root rings plus number-field iso witnesses.

    Localizations of the roots belong to the universe implicitly.
    """

    roots: list
    witnesses: list = field(default_factory=list)

    def __post_init__(self):
        seen = set()
        for r in self.roots:
            if r.id in seen:
                raise ValueError(f"duplicate ring id {r.id!r} in universe")
            seen.add(r.id)

    @property
    def ids(self) -> tuple:
        return tuple(r.id for r in self.roots)

    def stamp(self) -> list:
        return sorted(self.ids)

    def contains(self, A: Ring) -> bool:
        return A.root.id in self.ids

    def all_rings(self) -> list:
        """Roots and their nonzero localizations, in a fixed order."""
        out = []
        for R in self.roots:
            for L in _localization_family(R):
                if L not in out:
                    out.append(L)
        return out

    def restrict(self, ids) -> Universe:
        ids = set(ids)
        return Universe([r for r in self.roots if r.id in ids], self.witnesses)


def _localization_family(R: Ring) -> list:
    if not R.is_finite:
        return [R]
    out = [R]
    for e in R.idempotents:
        if e not in (R.zero, R.one):
            out.append(localize(R, R.elements[e])[0])
    return out


def induced_localization_iso(sigma: RingIso, f) -> RingIso:
    """sigma restricted to dom_f -> rang_{sigma(f)}."""
    A, B = sigma.domain, sigma.codomain
    LA, _ = localize(A, f)
    if not A.is_finite:
        return sigma
    LB, _ = localize(B, sigma(A.coerce(f)))
    if LA is A:
        return sigma
    table = [LB.idx(sigma(c)) for c in LA.elements]
    return RingIso(LA, LB, table)


def describe(iso: RingHom) -> str:
    D = iso.domain
    if D.is_finite:
        gens = D.generators or (D.one,)
        parts = [f"{D.fmt(D.elements[g])}->{iso.codomain.fmt(iso.codomain.elements[iso.table[g]])}" for g in gens]
    else:
        parts = [f"x->{iso.codomain.fmt(iso.table)}"]
    return f"{D.id}->{iso.codomain.id} [{', '.join(parts)}]"


@dataclass
class Pseudogroup:
    rings: dict  # id -> Ring
    isos: dict  # key -> RingIso
    universe: Universe | None = None
    base_field: Ring | None = None
    structure_maps: dict = field(default_factory=dict)  # ring id -> RingHom from base_field
    report: list = field(default_factory=list)  # (rule, description, multiplicity)

    @property
    def ring_ids(self) -> frozenset:
        return frozenset(self.rings)

    def __contains__(self, item) -> bool:
        if isinstance(item, RingHom):
            return item.key in self.isos
        if isinstance(item, Ring):
            return item.id in self.rings
        return item in self.rings

    def isos_between(self, A: Ring, B: Ring) -> list:
        return [s for s in self.isos.values() if s.domain == A and s.codomain == B]

    def sorted_isos(self) -> list:
        return [self.isos[k] for k in sorted(self.isos, key=lambda k: (k[0], k[1], tuple(map(str, k[2]))))]

    def generators_like(self):
        """Rings and isos as a generator set (for re-closing)."""
        return list(self.rings.values()), list(self.isos.values())

    def same_as(self, other: Pseudogroup) -> bool:
        return self.ring_ids == other.ring_ids and set(self.isos) == set(other.isos)

    def issubset(self, other: Pseudogroup) -> bool:
        return self.ring_ids <= other.ring_ids and set(self.isos) <= set(other.isos)


def contains_iso(gamma: Pseudogroup, sigma: RingIso) -> bool:
    return sigma.key in gamma.isos


def close(rings: Iterable[Ring] = (), isos: Iterable[RingIso] = (), universe: Universe | None = None, base_field=None, structure_maps=None) -> Pseudogroup:
    """Least pseudogroup containing the given rings (as identities) and isos.

    Saturates inverses, identities, isomorphisms induced on localizations
    and composites through a shared domain until nothing new appears.
    Localizations that produce the zero ring are skipped.
    """
    rings = list(rings)
    isos = list(isos)
    ring_map = {}
    iso_map = {}
    report = []
    counts = {}

    def check_universe(A):
        if universe is not None and not universe.contains(A):
            raise UniverseEscape(f"ring {A.id} lies outside the universe {universe.stamp()}")

    def add_ring(A, rule):
        if A.id not in ring_map:
            check_universe(A)
            ring_map[A.id] = A
            report.append((rule, f"ring {A.id}", None))
            return True
        return False

    def add_iso(s, rule):
        k = s.key
        if k in iso_map:
            return False
        s = s if isinstance(s, RingIso) else RingIso(s.domain, s.codomain, s.table)
        iso_map[k] = s
        report.append((rule, describe(s), k))
        return True

    for A in rings:
        add_ring(A, "generator")
    for s in isos:
        add_ring(s.domain, "member")
        add_ring(s.codomain, "member")
        add_iso(s, "generator")

    changed = True
    while changed:
        changed = False
        # identities for every ring present
        for A in list(ring_map.values()):
            changed |= add_iso(identity(A), "identity")
        # inverses
        for s in list(iso_map.values()):
            changed |= add_iso(s.inverse, "inverse")
        # induced isos on localizations at every idempotent
        for s in list(iso_map.values()):
            A = s.domain
            if not A.is_finite:
                continue
            for e in A.idempotents:
                if e in (A.zero, A.one):
                    continue
                t = induced_localization_iso(s, A.elements[e])
                changed |= add_ring(t.domain, "localization")
                changed |= add_ring(t.codomain, "localization")
                changed |= add_iso(t, "localization")
        # composites: beta . alpha^{-1} for alpha, beta sharing a domain
        new = []
        for group in _group_by_domain(iso_map).values():
            for a in group:
                ainv = a.inverse
                for b in group:
                    new.append(compose(b, ainv))
        for t in new:
            changed |= add_iso(t, "composite")

    # multiplicity: number of shared domains through which an iso factors
    for group in _group_by_domain(iso_map).values():
        for a in group:
            for b in group:
                k = compose(b, a.inverse).key
                counts.setdefault(k, set()).add(a.domain.id)
    report = [(rule, d, len(counts.get(k, ())) or 1) for rule, d, k in report]
    return Pseudogroup(ring_map, iso_map, universe, base_field, dict(structure_maps or {}), report)


def _group_by_domain(iso_map) -> dict:
    out = {}
    for s in iso_map.values():
        out.setdefault(s.domain.id, []).append(s)
    return out


# --------------------------------------------------------------------------
# axiom checks (independent of the saturation loop)


def axiom_violations(gamma: Pseudogroup) -> list:
    """Exhaustively re-check the five closure conditions; [] if all hold."""
    out = []
    isos = list(gamma.isos.values())
    for s in isos:
        if s.domain.id not in gamma.rings or s.codomain.id not in gamma.rings:
            out.append(("member", describe(s)))
        if s.inverse.key not in gamma.isos:
            out.append(("inverse", describe(s)))
        if identity(s.domain).key not in gamma.isos:
            out.append(("identity", s.domain.id))
        A = s.domain
        if A.is_finite:
            for i, c in enumerate(A.elements):
                if i == A.zero or A.idempotent_power(i) == A.zero:
                    continue
                t = induced_localization_iso(s, c)
                if t.key not in gamma.isos:
                    out.append(("localization", f"{describe(s)} at {A.fmt(c)}"))
    for a in isos:
        for b in isos:
            if a.domain == b.domain and compose(b, a.inverse).key not in gamma.isos:
                out.append(("composite", f"{describe(a)} / {describe(b)}"))
    return out


def is_closed(gamma: Pseudogroup) -> bool:
    return not axiom_violations(gamma)


# --------------------------------------------------------------------------
# algebras over a base field


def canonical_structure_map(k: Ring, A: Ring):
    """The evident k-algebra structure on A, or None."""
    if k.is_finite:
        if not (k.is_field() and k.size == k.characteristic):
            return None  # only prime fields have a canonical map
        if not A.is_finite or A.characteristic != k.characteristic:
            return None
        return RingHom(k, A, [A.idx(A.coerce(int(c[0]))) for c in k.elements])
    if A.is_finite:
        return None
    if k == A:
        return identity(k)
    if k.degree == 1:
        return RingHom(k, A, A.coerce(k.gen[0]))
    return None


def is_k_pseudogroup(gamma: Pseudogroup, k: Ring) -> bool:
    maps = {}
    for A in gamma.rings.values():
        s = gamma.structure_maps.get(A.id) or canonical_structure_map(k, A)
        if s is None:
            return False
        maps[A.id] = s
    for sigma in gamma.isos.values():
        sa, sb = maps[sigma.domain.id], maps[sigma.codomain.id]
        if k.is_finite:
            if compose(sigma, sa).table != sb.table:
                return False
        elif sigma(sa.table) != sb.table:
            return False
    return True
