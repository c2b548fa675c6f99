"""Finite topological spaces and prime spectra."""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass, field
from itertools import permutations

from . import limits
from .errors import TooLarge
from .rings import (
    FiniteRing,
    Ring,
    RingHom,
    enumerate_ideals,
    ideal_label,
    is_prime_ideal,
    localize,
)


def _closure_under_unions(base: Iterable[frozenset]) -> frozenset:
    opens = {frozenset()}
    for b in base:
        opens |= {o | b for o in opens}
    return frozenset(opens)


@dataclass(frozen=True)
class TopSpace:
    points: tuple
    opens: frozenset

    @classmethod
    def discrete(cls, points) -> TopSpace:
        points = tuple(points)
        return cls(points, _closure_under_unions(frozenset([p]) for p in points))

    @classmethod
    def from_base(cls, points, base) -> TopSpace:
        """Topology generated by a family of subsets (closed under finite meets)."""
        points = tuple(points)
        fam = {frozenset(b) for b in base} | {frozenset(points)}
        changed = True
        while changed:
            changed = False
            for a in list(fam):
                for b in list(fam):
                    if a & b not in fam:
                        fam.add(a & b)
                        changed = True
        return cls(points, _closure_under_unions(fam))

    def __post_init__(self):
        if len(set(self.points)) != len(self.points):
            raise ValueError("duplicate point names")

    @property
    def point_set(self) -> frozenset:
        return frozenset(self.points)

    def is_open(self, s) -> bool:
        return frozenset(s) in self.opens

    def check(self) -> list:
        """Problems with the open-set family, empty if it is a topology."""
        full = self.point_set
        problems = []
        if frozenset() not in self.opens:
            problems.append("empty set is not open")
        if full not in self.opens:
            problems.append("whole space is not open")
        for o in self.opens:
            if not o <= full:
                problems.append(f"open set {sorted(o)} has unknown points")
        for a in self.opens:
            for b in self.opens:
                if a | b not in self.opens:
                    problems.append(f"union of {sorted(a)} and {sorted(b)} is not open")
                if a & b not in self.opens:
                    problems.append(f"intersection of {sorted(a)} and {sorted(b)} is not open")
        return problems

    def smallest_open(self, x) -> frozenset:
        return frozenset.intersection(*[o for o in self.opens if x in o])

    def nonempty_opens(self) -> list:
        return sorted((o for o in self.opens if o), key=lambda o: (len(o), sorted(o)))

    def subspace(self, subset) -> TopSpace:
        subset = frozenset(subset)
        pts = tuple(p for p in self.points if p in subset)
        return TopSpace(pts, frozenset(o & subset for o in self.opens))

    def is_discrete(self) -> bool:
        return all(frozenset([p]) in self.opens for p in self.points)


@dataclass(frozen=True)
class Homeo:
    source: TopSpace
    target: TopSpace
    mapping: tuple  # sorted (source point, target point) pairs

    @classmethod
    def of(cls, source, target, mapping: dict) -> Homeo:
        return cls(source, target, tuple(sorted(mapping.items())))

    @property
    def as_dict(self) -> dict:
        return dict(self.mapping)

    def __call__(self, x):
        return self.as_dict[x]

    def image(self, s) -> frozenset:
        m = self.as_dict
        return frozenset(m[x] for x in s)

    def preimage(self, s) -> frozenset:
        s = frozenset(s)
        return frozenset(x for x, y in self.mapping if y in s)

    def inverse(self) -> Homeo:
        return Homeo.of(self.target, self.source, {y: x for x, y in self.mapping})

    def then(self, other: Homeo) -> Homeo:
        m = self.as_dict
        o = other.as_dict
        return Homeo.of(self.source, other.target, {x: o[m[x]] for x in m})

    def problems(self) -> list:
        m = self.as_dict
        out = []
        if set(m) != self.source.point_set:
            out.append("not defined on every source point")
        if sorted(m.values()) != sorted(self.target.points) or len(set(m.values())) != len(m):
            out.append("not a bijection onto the target")
            return out
        for o in self.source.opens:
            if self.image(o) not in self.target.opens:
                out.append(f"image of {sorted(o)} is not open")
        for o in self.target.opens:
            if self.preimage(o) not in self.source.opens:
                out.append(f"preimage of {sorted(o)} is not open")
        return out

    def is_valid(self) -> bool:
        return not self.problems()


def homeomorphisms(X: TopSpace, Y: TopSpace):
    """Every homeomorphism X -> Y (brute force over bijections)."""
    if len(X.points) != len(Y.points) or len(X.opens) != len(Y.opens):
        return
    cap = limits.current.max_points
    if len(X.points) > cap:
        raise TooLarge(f"homeomorphism search capped at {cap} points")
    for perm in permutations(Y.points):
        h = Homeo.of(X, Y, dict(zip(X.points, perm)))
        if all(h.image(o) in Y.opens for o in X.opens):
            yield h


def is_homeomorphic_bruteforce(X: TopSpace, Y: TopSpace):
    """A homeomorphism X -> Y, or None."""
    return next(homeomorphisms(X, Y), None)


def disjoint_union(parts) -> TopSpace:
    """Disjoint union of (tag, space) pairs; points become "tag|p"."""
    points, opens_by_part = [], []
    for tag, X in parts:
        points.extend(f"{tag}|{p}" for p in X.points)
        opens_by_part.append([frozenset(f"{tag}|{p}" for p in o) for o in X.opens])
    opens = {frozenset()}
    for fam in opens_by_part:
        opens = {a | b for a in opens for b in fam}
    return TopSpace(tuple(points), frozenset(opens))


# --------------------------------------------------------------------------
# prime spectra


@dataclass
class Spectrum:
    ring: Ring
    space: TopSpace
    primes: dict  # point label -> frozenset of element indices (finite rings)
    _d_cache: dict = field(default_factory=dict, repr=False)

    @property
    def points(self):
        return self.space.points

    def D(self, f) -> frozenset:
        """Points whose prime does not contain f."""
        A = self.ring
        if not A.is_finite:
            f = A.coerce(f)
            return frozenset() if f == A.zero_coords else frozenset(self.points)
        i = A.idx(A.coerce(f))
        if i not in self._d_cache:
            self._d_cache[i] = frozenset(p for p, P in self.primes.items() if i not in P)
        return self._d_cache[i]

    def distinguished_opens(self) -> dict:
        """Map each distinguished open to the first element (by index) defining it."""
        A = self.ring
        if not A.is_finite:
            return {frozenset(self.points): A.one_coords, frozenset(): A.zero_coords}
        out = {}
        for i, c in enumerate(A.elements):
            out.setdefault(self.D(c), c)
        return out

    def point_of(self, members) -> str:
        members = frozenset(members)
        for p, P in self.primes.items():
            if P == members:
                return p
        raise KeyError("not a prime of this ring")


def prime_members(A: FiniteRing, e: int) -> frozenset:
    """The prime ideal attached to a primitive idempotent e: {a : ea nilpotent}."""
    out = set()
    for a in range(A.size):
        p = A.mul_t[e][a]
        for _ in range(A.size):
            if p == A.zero:
                out.add(a)
                break
            p = A.mul_t[p][A.mul_t[e][a]]
    return frozenset(out)


def spec(A: Ring) -> Spectrum:
    cached = getattr(A, "_spectrum", None)
    if cached is not None:
        return cached
    if not A.is_finite:
        X = TopSpace(("(0)",), frozenset([frozenset(), frozenset(["(0)"])]))
        S = Spectrum(A, X, {"(0)": frozenset()})
    else:
        primes = {}
        for e in A.primitive_idempotents:
            P = prime_members(A, e)
            primes[ideal_label(A, P)] = P
        order = sorted(primes, key=lambda p: sorted(primes[p]))
        primes = {p: primes[p] for p in order}
        S = Spectrum(A, TopSpace(tuple(order), frozenset([frozenset()])), primes)
        base = [S.D(c) for c in A.elements]
        S.space = TopSpace.from_base(order, base)
    A._spectrum = S
    return S


def spec_oracle(A: FiniteRing) -> tuple:
    """Spectrum by brute force over all ideals: (prime member sets, open sets)."""
    primes = [I.members for I in enumerate_ideals(A) if is_prime_ideal(A, I.members)]
    base = [frozenset(P for P in primes if a not in P) for a in range(A.size)]
    opens = {frozenset()}
    for b in base:
        opens |= {o | b for o in opens}
    return frozenset(primes), frozenset(opens)


def spec_functor(sigma: RingHom) -> Homeo | dict:
    """spec B -> spec A for sigma: A -> B, P -> sigma^{-1}(P), as a dict of labels."""
    A, B = sigma.domain, sigma.codomain
    SA, SB = spec(A), spec(B)
    if not A.is_finite:
        return {q: "(0)" for q in SB.points}
    out = {}
    for q, Q in SB.primes.items():
        pre = frozenset(a for a in range(A.size) if sigma.table[a] in Q)
        out[q] = SA.point_of(pre)
    return out


def spec_homeo(sigma: RingHom) -> Homeo:
    """For an isomorphism sigma: A -> B, the induced homeomorphism spec A -> spec B."""
    m = spec_functor(sigma)
    return Homeo.of(spec(sigma.domain).space, spec(sigma.codomain).space, {a: b for b, a in m.items()})


def localization_embedding(A: Ring, f) -> dict:
    """Points of spec A_f sent to points of spec A by the canonical map."""
    _, can = localize(A, f)
    return spec_functor(can)
