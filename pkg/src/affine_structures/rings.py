"""Small commutative rings with nominal identity.

Finite rings are stored as full addition/multiplication tables over an
enumerated element list; elements are addressed by their coordinate tuples
(``coords``) at the public surface and by table indices internally.
Number fields are stored as ``Q[x]/(f)`` with exact ``Fraction`` coordinates.

Two rings are equal iff their presentation ids are equal, whatever their
structure.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import product
from math import gcd

from . import limits
from .errors import (
    MalformedPresentation,
    NotAdditive,
    NotMultiplicative,
    ReducibleModulus,
    SizeLimitExceeded,
    SizeMismatch,
    TooLarge,
    UnitNotPreserved,
    ZeroElement,
)

# --------------------------------------------------------------------------
# presentations


@dataclass(frozen=True)
class Zmod:
    n: int


@dataclass(frozen=True)
class GaloisQuotient:
    """F_p[x]/(f); f monic, coefficients low degree first."""

    p: int
    f: tuple


@dataclass(frozen=True)
class PolyQuotient:
    """(Z/n)[x]/(f) for monic f, no irreducibility required."""

    n: int
    f: tuple


@dataclass(frozen=True)
class Product:
    factors: tuple


@dataclass(frozen=True)
class NumberField:
    f: tuple
    irreducibility_assertion: bool = False


@dataclass(frozen=True)
class LocalizationOf:
    parent: str
    element: tuple


Ctor = Zmod | GaloisQuotient | PolyQuotient | Product | NumberField | LocalizationOf


@dataclass(frozen=True)
class RingPresentation:
    id: str
    ctor: Ctor


# --------------------------------------------------------------------------
# polynomial helpers (coefficients low degree first)


def _trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return c


def _polymulmod(a, b, f, mod=None):
    """a*b reduced modulo the monic polynomial f; mod=None means exact."""
    d = len(f) - 1
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            prod[i + j] += x * y
    for k in range(len(prod) - 1, d - 1, -1):
        c = prod[k]
        if c == 0:
            continue
        for j in range(d + 1):
            prod[k - d + j] -= c * f[j]
    out = prod[:d] + [0] * (d - len(prod))
    if mod is not None:
        out = [x % mod for x in out]
    return tuple(out)


def _poly_divides_mod_p(g, f, p):
    """True iff monic g divides f over F_p."""
    r = [x % p for x in f]
    dg = len(g) - 1
    for k in range(len(r) - 1, dg - 1, -1):
        c = r[k]
        if c:
            for j in range(dg + 1):
                r[k - dg + j] = (r[k - dg + j] - c * g[j]) % p
    return not any(r[:dg])


def is_irreducible_mod_p(f, p) -> bool:
    d = len(f) - 1
    for deg in range(1, d // 2 + 1):
        for tail in product(range(p), repeat=deg):
            if _poly_divides_mod_p(tuple(tail) + (1,), f, p):
                return False
    return True


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % q for q in range(2, int(n**0.5) + 1))


def _divisors(n: int):
    n = abs(n)
    return [d for d in range(1, n + 1) if n % d == 0]


def rational_roots(f) -> list:
    """Rational roots of a polynomial with Fraction coefficients."""
    c = [Fraction(x) for x in f]
    den = 1
    for x in c:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in c]
    roots = []
    if ints[0] == 0:
        roots.append(Fraction(0))
        k = 0
        while ints[k] == 0:
            k += 1
        ints = ints[k:]
    if len(ints) == 1:
        return roots
    for p in _divisors(ints[0]):
        for q in _divisors(ints[-1]):
            for r in (Fraction(p, q), Fraction(-p, q)):
                if r not in roots and sum(a * r**i for i, a in enumerate(ints)) == 0:
                    roots.append(r)
    return sorted(roots)


# --------------------------------------------------------------------------
# rings


class Ring:
    is_finite = False

    def __init__(self, presentation: RingPresentation):
        self.presentation = presentation

    @property
    def id(self) -> str:
        return self.presentation.id

    @property
    def root(self) -> Ring:
        return self

    def __eq__(self, other):
        return isinstance(other, Ring) and other.id == self.id

    def __hash__(self):
        return hash(("ring", self.id))

    def __repr__(self):
        return f"<{type(self).__name__} {self.id}>"


class FiniteRing(Ring):
    is_finite = True

    def __init__(self, presentation, elements, add, mul, zero, one, fmt, encode, root=None, idempotent=None):
        super().__init__(presentation)
        self.elements = list(elements)
        self.index = {c: i for i, c in enumerate(self.elements)}
        self.add_t = add
        self.mul_t = mul
        self.zero = zero
        self.one = one
        self._fmt = fmt
        self._encode = encode
        self._root = root
        # idempotent (as coords of the root ring) cutting this ring out of its root
        self.idempotent = idempotent
        n = len(self.elements)
        self.neg_t = [0] * n
        for a in range(n):
            row = add[a]
            for b in range(n):
                if row[b] == zero:
                    self.neg_t[a] = b
                    break
        self._loc_cache = {}

    @property
    def root(self):
        return self._root if self._root is not None else self

    @property
    def size(self) -> int:
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    # element-level arithmetic on coords
    def idx(self, c) -> int:
        try:
            return self.index[c]
        except KeyError:
            raise ValueError(f"{c!r} is not an element of {self.id}") from None

    def coerce(self, x):
        """Coords of ``x``; an int k means k*1."""
        if isinstance(x, int):
            acc = self.zero
            one = self.one if x >= 0 else self.neg_t[self.one]
            for _ in range(abs(x)):
                acc = self.add_t[acc][one]
            return self.elements[acc]
        self.idx(x)
        return x

    def add(self, a, b):
        return self.elements[self.add_t[self.idx(a)][self.idx(b)]]

    def mul(self, a, b):
        return self.elements[self.mul_t[self.idx(a)][self.idx(b)]]

    def neg(self, a):
        return self.elements[self.neg_t[self.idx(a)]]

    @property
    def zero_coords(self):
        return self.elements[self.zero]

    @property
    def one_coords(self):
        return self.elements[self.one]

    def fmt(self, c) -> str:
        return self._fmt(c)

    def encode(self, c):
        return self._encode(c)

    # structural data
    @cached_property
    def characteristic(self) -> int:
        k, acc = 1, self.one
        while acc != self.zero:
            acc = self.add_t[acc][self.one]
            k += 1
        return k if self.size > 1 else 1

    @cached_property
    def idempotents(self) -> list:
        return [i for i in range(self.size) if self.mul_t[i][i] == i]

    @cached_property
    def primitive_idempotents(self) -> list:
        nonzero = [e for e in self.idempotents if e != self.zero]
        out = []
        for e in nonzero:
            if not any(f != e and self.mul_t[e][f] == f for f in nonzero):
                out.append(e)
        return out

    @cached_property
    def units(self) -> frozenset:
        return frozenset(a for a in range(self.size) if self.one in self.mul_t[a])

    def is_field(self) -> bool:
        return self.size > 1 and len(self.units) == self.size - 1

    def idempotent_power(self, a: int) -> int:
        """The unique idempotent in the multiplicative semigroup generated by a."""
        p = a
        for _ in range(self.size + 1):
            if self.mul_t[p][p] == p:
                return p
            p = self.mul_t[p][a]
        raise AssertionError("no idempotent power found")

    def subring_closure(self, seeds: Iterable[int]) -> set:
        got = {self.zero, self.one, *seeds}
        frontier = list(got)
        while frontier:
            a = frontier.pop()
            for b in list(got):  # noqa: PERF101, got grows inside the loop
                for c in (self.add_t[a][b], self.mul_t[a][b]):
                    if c not in got:
                        got.add(c)
                        frontier.append(c)
        return got

    @cached_property
    def generators(self) -> tuple:
        """Greedy ring generating set (indices), 1 excluded."""
        gens = []
        got = self.subring_closure(gens)
        for a in range(self.size):
            if len(got) == self.size:
                break
            if a not in got:
                gens.append(a)
                got = self.subring_closure(gens)
        return tuple(gens)

    @cached_property
    def signatures(self) -> list:
        """Isomorphism-invariant fingerprint of every element."""
        n = self.size
        sig = []
        for a in range(n):
            order, acc = 1, a
            while acc != self.zero:
                acc = self.add_t[acc][a]
                order += 1
            ann = sum(1 for b in range(n) if self.mul_t[a][b] == self.zero)
            principal = len(set(self.mul_t[a]))
            seen, p, k = {}, a, 1
            while p not in seen:
                seen[p] = k
                p = self.mul_t[p][a]
                k += 1
            sig.append((order, ann, principal, seen[p], k - seen[p], self.mul_t[a][a] == a))
        return sig


class NumberFieldRing(Ring):
    """Q[x]/(f) with exact rational coordinates."""

    def __init__(self, presentation, f, verified: bool):
        super().__init__(presentation)
        self.f = tuple(Fraction(c) for c in f)
        self.degree = len(self.f) - 1
        self.irreducibility_verified = verified

    @property
    def zero_coords(self):
        return (Fraction(0),) * self.degree

    @property
    def one_coords(self):
        return (Fraction(1),) + (Fraction(0),) * (self.degree - 1)

    @property
    def gen(self):
        if self.degree == 1:
            return (-self.f[0],)
        return (Fraction(0), Fraction(1)) + (Fraction(0),) * (self.degree - 2)

    def coerce(self, x):
        if isinstance(x, (int, Fraction)):
            return (Fraction(x),) + (Fraction(0),) * (self.degree - 1)
        x = tuple(Fraction(c) for c in x)
        if len(x) != self.degree:
            raise ValueError(f"{x!r} is not an element of {self.id}")
        return x

    def add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def neg(self, a):
        return tuple(-x for x in a)

    def mul(self, a, b):
        return _polymulmod(a, b, self.f)

    def power(self, a, k):
        acc = self.one_coords
        for _ in range(k):
            acc = self.mul(acc, a)
        return acc

    def eval_poly(self, coeffs, at):
        acc = self.zero_coords
        for c in reversed(coeffs):
            acc = self.add(self.mul(acc, at), self.coerce(c))
        return acc

    def fmt(self, c) -> str:
        terms = []
        for i, x in enumerate(c):
            if x == 0:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            coef = str(x)
            if mono and x == 1:
                coef = ""
            elif mono:
                coef = f"{coef}*"
            terms.append(f"{coef}{mono}")
        return "+".join(terms) if terms else "0"

    def encode(self, c):
        return [str(x) for x in c]


# --------------------------------------------------------------------------
# construction


def _zmod_fmt(c):
    return str(c[0])


def _poly_fmt(c):
    terms = []
    for i, x in enumerate(c):
        if x == 0:
            continue
        mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
        terms.append(mono if (mono and x == 1) else f"{x}{mono}")
    return "+".join(terms) if terms else "0"


def _table_ring(presentation, elements, addf, mulf, zero, one, fmt, encode):
    index = {c: i for i, c in enumerate(elements)}
    add = [[index[addf(a, b)] for b in elements] for a in elements]
    mul = [[index[mulf(a, b)] for b in elements] for a in elements]
    return FiniteRing(presentation, elements, add, mul, index[zero], index[one], fmt, encode)


def expected_size(ctor, rings=None) -> int:
    if isinstance(ctor, Zmod):
        return ctor.n
    if isinstance(ctor, (GaloisQuotient, PolyQuotient)):
        base = ctor.p if isinstance(ctor, GaloisQuotient) else ctor.n
        return base ** (len(ctor.f) - 1)
    if isinstance(ctor, Product):
        s = 1
        for p in ctor.factors:
            s *= expected_size(p.ctor, rings)
        return s
    raise MalformedPresentation(f"{type(ctor).__name__} has no fixed size")


def make_ring(presentation: RingPresentation, rings=None) -> Ring:
    """Build the ring denoted by ``presentation``.

    ``rings`` maps ids to already-built rings; it is only consulted for
    ``LocalizationOf`` presentations.
    """
    ctor = presentation.ctor
    cap = limits.current.max_ring_size
    if isinstance(ctor, NumberField):
        return _make_number_field(presentation)
    if isinstance(ctor, LocalizationOf):
        if rings is None or ctor.parent not in rings:
            raise MalformedPresentation(f"unknown parent ring {ctor.parent!r}")
        parent = rings[ctor.parent]
        ring, _ = localize(parent, ctor.element)
        return ring
    if isinstance(ctor, Product):
        if not ctor.factors:
            raise MalformedPresentation("empty product")
    elif isinstance(ctor, Zmod):
        if ctor.n < 2:
            raise MalformedPresentation("Zmod needs n >= 2")
    elif isinstance(ctor, (GaloisQuotient, PolyQuotient)):
        f = ctor.f
        base = ctor.p if isinstance(ctor, GaloisQuotient) else ctor.n
        if len(f) < 2 or f[-1] != 1:
            raise MalformedPresentation("modulus must be monic of degree >= 1")
        if base < 2:
            raise MalformedPresentation("coefficient modulus must be >= 2")
        if isinstance(ctor, GaloisQuotient) and not _is_prime(base):
            raise MalformedPresentation(f"{base} is not prime")
    else:
        raise MalformedPresentation(f"unknown constructor {ctor!r}")
    size = expected_size(ctor)
    if size > cap:
        raise SizeLimitExceeded(f"{presentation.id}: {size} elements exceeds cap {cap}")

    if isinstance(ctor, Zmod):
        n = ctor.n
        return FiniteRing(
            presentation,
            [(r,) for r in range(n)],
            [[(a + b) % n for b in range(n)] for a in range(n)],
            [[(a * b) % n for b in range(n)] for a in range(n)],
            0,
            1 % n,
            _zmod_fmt,
            lambda c: c[0],
        )
    if isinstance(ctor, (GaloisQuotient, PolyQuotient)):
        base = ctor.p if isinstance(ctor, GaloisQuotient) else ctor.n
        f = tuple(c % base for c in ctor.f)
        if isinstance(ctor, GaloisQuotient) and not is_irreducible_mod_p(f, base):
            raise ReducibleModulus(f"{presentation.id}: modulus reducible over F_{base}")
        d = len(f) - 1
        elements = [tuple(c) for c in product(range(base), repeat=d)]
        zero = (0,) * d
        one = (1 % base,) + (0,) * (d - 1)
        return _table_ring(
            presentation,
            elements,
            lambda a, b: tuple((x + y) % base for x, y in zip(a, b)),
            lambda a, b: _polymulmod(a, b, f, base),
            zero,
            one,
            _poly_fmt,
            list,
        )
    # Product
    comps = [make_ring(p, rings) for p in ctor.factors]
    for c in comps:
        if not c.is_finite:
            raise MalformedPresentation("products of number fields are not supported")
    idx_tuples = list(product(*[range(c.size) for c in comps]))
    pos = {t: i for i, t in enumerate(idx_tuples)}
    elements = [tuple(c.elements[i] for c, i in zip(comps, t)) for t in idx_tuples]
    add = [[pos[tuple(c.add_t[x][y] for c, x, y in zip(comps, s, t))] for t in idx_tuples] for s in idx_tuples]
    mul = [[pos[tuple(c.mul_t[x][y] for c, x, y in zip(comps, s, t))] for t in idx_tuples] for s in idx_tuples]
    zero = pos[tuple(c.zero for c in comps)]
    one = pos[tuple(c.one for c in comps)]

    def fmt(e):
        return "(" + ",".join(c.fmt(x) for c, x in zip(comps, e)) + ")"

    def encode(e):
        return [c.encode(x) for c, x in zip(comps, e)]

    return FiniteRing(presentation, elements, add, mul, zero, one, fmt, encode)


def _make_number_field(presentation) -> NumberFieldRing:
    ctor = presentation.ctor
    try:
        f = tuple(Fraction(c) for c in ctor.f)
    except (TypeError, ValueError) as exc:
        raise MalformedPresentation(str(exc)) from None
    if len(f) < 2 or f[-1] != 1:
        raise MalformedPresentation("number field modulus must be monic of degree >= 1")
    d = len(f) - 1
    if d <= 3:
        # reducible in degree <= 3 iff a rational root exists
        if d > 1 and rational_roots(f):
            raise ReducibleModulus(f"{presentation.id}: modulus has a rational root")
        verified = True
    else:
        if not ctor.irreducibility_assertion:
            raise ReducibleModulus(f"{presentation.id}: degree {d} modulus needs an irreducibility assertion")
        verified = False
    return NumberFieldRing(presentation, f, verified)


def ring(id: str, ctor) -> Ring:
    """Shorthand for ``make_ring(RingPresentation(id, ctor))``."""
    return make_ring(RingPresentation(id, ctor))


# --------------------------------------------------------------------------
# homomorphisms


class RingHom:
    """A ring homomorphism given by a full element table (finite domain) or
    by the image of the generator (number-field domain)."""

    def __init__(self, domain: Ring, codomain: Ring, table):
        self.domain = domain
        self.codomain = codomain
        self.table = tuple(table)

    @property
    def key(self):
        return (self.domain.id, self.codomain.id, self.table)

    def __eq__(self, other):
        return isinstance(other, RingHom) and other.key == self.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"<{type(self).__name__} {self.domain.id}->{self.codomain.id}>"

    def index_map(self, i: int) -> int:
        return self.table[i]

    def __call__(self, c):
        if self.domain.is_finite:
            return self.codomain.elements[self.table[self.domain.idx(c)]]
        c = self.domain.coerce(c)
        return self.codomain.eval_poly(c, self.table)


class RingIso(RingHom):
    _inverse = None

    @property
    def inverse(self) -> RingIso:
        if self._inverse is None:
            if self.domain.is_finite:
                inv = [0] * len(self.table)
                for a, b in enumerate(self.table):
                    inv[b] = a
                other = RingIso(self.codomain, self.domain, inv)
            else:
                other = RingIso(self.codomain, self.domain, _nf_inverse_image(self))
            other._inverse = self
            self._inverse = other
        return self._inverse


def identity(A: Ring) -> RingIso:
    if A.is_finite:
        return RingIso(A, A, range(A.size))
    return RingIso(A, A, A.gen)


def compose(g: RingHom, f: RingHom) -> RingHom:
    """g after f."""
    if f.codomain != g.domain:
        raise ValueError(f"cannot compose {g!r} after {f!r}")
    cls = RingIso if isinstance(f, RingIso) and isinstance(g, RingIso) else RingHom
    if f.domain.is_finite:
        return cls(f.domain, g.codomain, [g.table[b] for b in f.table])
    return cls(f.domain, g.codomain, g(f(f.domain.gen)))


def _solve(matrix, rhs):
    """Solve M x = rhs over Q (M square, invertible)."""
    n = len(matrix)
    m = [list(row) + [r] for row, r in zip(matrix, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            raise ValueError("singular matrix")
        m[col], m[piv] = m[piv], m[col]
        pv = m[col][col]
        m[col] = [x / pv for x in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                fac = m[r][col]
                m[r] = [x - fac * y for x, y in zip(m[r], m[col])]
    return tuple(m[r][n] for r in range(n))


def _nf_inverse_image(sigma: RingIso):
    A, B = sigma.domain, sigma.codomain
    # column j = image of x^j
    cols = [sigma(A.power(A.gen, j)) for j in range(A.degree)]
    matrix = [[cols[j][i] for j in range(A.degree)] for i in range(B.degree)]
    return _solve(matrix, B.gen)


def _law_check(A: FiniteRing, B: FiniteRing, table):
    n = A.size
    for a in range(n):
        for b in range(n):
            if table[A.add_t[a][b]] != B.add_t[table[a]][table[b]]:
                raise NotAdditive(
                    f"f({A.fmt(A.elements[a])}+{A.fmt(A.elements[b])}) != f(a)+f(b)",
                    witness=(A.elements[a], A.elements[b]),
                )
            if table[A.mul_t[a][b]] != B.mul_t[table[a]][table[b]]:
                raise NotMultiplicative(
                    f"f({A.fmt(A.elements[a])}*{A.fmt(A.elements[b])}) != f(a)*f(b)",
                    witness=(A.elements[a], A.elements[b]),
                )
    if table[A.one] != B.one:
        raise UnitNotPreserved(f"1 maps to {B.fmt(B.elements[table[A.one]])}", witness=(A.one_coords,))


def _extend(A: FiniteRing, B: FiniteRing, seed: dict, injective=False):
    """Close a partial index map under + and *; None on conflict."""
    m = dict(seed)
    if injective and len(set(m.values())) != len(m):
        return None
    used = set(m.values())
    frontier = list(m)
    while frontier:
        a = frontier.pop()
        for b in list(m):
            for c, img in ((A.add_t[a][b], B.add_t[m[a]][m[b]]), (A.mul_t[a][b], B.mul_t[m[a]][m[b]])):
                old = m.get(c)
                if old is None:
                    if injective and img in used:
                        return None
                    m[c] = img
                    used.add(img)
                    frontier.append(c)
                elif old != img:
                    return None
    return m


def check_hom(A: Ring, B: Ring, images: dict) -> RingHom:
    """Verify that the generator images extend to a ring homomorphism.

    For finite rings ``images`` maps generator coords to coords in ``B``
    (missing generators are an error; 1 may be included); for number fields
    it maps the generator coords to its image.
    """
    if A.is_finite != B.is_finite:
        raise NotAdditive("no ring map between a finite ring and a number field")
    if not A.is_finite:
        (w,) = images.values()
        w = B.coerce(w)
        if B.eval_poly(A.f, w) != B.zero_coords:
            raise NotMultiplicative("generator image is not a root of the defining polynomial", witness=(w,))
        return RingHom(A, B, w)
    seed = {A.idx(k): B.idx(v) for k, v in images.items()}
    m = dict(seed)
    # closure with explicit conflict reporting
    frontier = list(m)
    while frontier:
        a = frontier.pop()
        for b in list(m):
            for op, c, img in (
                ("+", A.add_t[a][b], B.add_t[m[a]][m[b]]),
                ("*", A.mul_t[a][b], B.mul_t[m[a]][m[b]]),
            ):
                old = m.get(c)
                if old is None:
                    m[c] = img
                    frontier.append(c)
                elif old != img:
                    cls = NotAdditive if op == "+" else NotMultiplicative
                    raise cls(
                        f"{A.fmt(A.elements[a])}{op}{A.fmt(A.elements[b])} forced to two images",
                        witness=(A.elements[a], A.elements[b]),
                    )
    if len(m) != A.size:
        raise MalformedPresentation("images do not determine the map on every element")
    table = [m[i] for i in range(A.size)]
    _law_check(A, B, table)
    return RingHom(A, B, table)


def iso_search(A: Ring, B: Ring, witnesses: Sequence = ()) -> list:
    """All isomorphisms A -> B.

    Finite rings: exhaustive backtracking over generator images.
    Number fields: only the supplied witnesses (generator images or
    RingIso objects) are verified, after a dimension screen.
    """
    if A.is_finite != B.is_finite:
        return []
    if not A.is_finite:
        if A.degree != B.degree:
            return []
        found = []
        if A == B:
            found.append(identity(A))
        for w in witnesses:
            if isinstance(w, RingHom):
                if w.domain != A or w.codomain != B:
                    continue
                w = w.table
            try:
                hom = check_hom(A, B, {A.gen: w})
            except (NotMultiplicative, ValueError):
                continue
            iso = RingIso(A, B, hom.table)
            if iso not in found:
                found.append(iso)
        return found
    if A.size != B.size:
        raise SizeMismatch(f"|{A.id}|={A.size} but |{B.id}|={B.size}")
    cap = limits.current.max_search_size
    if A.size > cap:
        raise TooLarge(f"exhaustive iso search capped at {cap} elements")
    sa, sb = A.signatures, B.signatures
    gens = A.generators
    cands = [[b for b in range(B.size) if sb[b] == sa[g]] for g in gens]
    out = []

    def rec(k, partial):
        if k == len(gens):
            if len(partial) == A.size:
                table = [partial[i] for i in range(A.size)]
                _law_check(A, B, table)
                out.append(RingIso(A, B, table))
            return
        for b in cands[k]:
            if gens[k] in partial and partial[gens[k]] != b:
                continue
            seed = dict(partial)
            seed[gens[k]] = b
            ext = _extend(A, B, seed, injective=True)
            if ext is not None:
                rec(k + 1, ext)

    base = _extend(A, B, {A.zero: B.zero, A.one: B.one}, injective=True)
    if base is not None:
        rec(0, base)
    return sorted(out, key=lambda s: s.table)


def find_isos(A: Ring, B: Ring, witnesses: Sequence = ()) -> list:
    """Like :func:`iso_search` but quiet: returns [] instead of raising on
    size mismatch, and chains witness isos for number fields."""
    if A == B and not A.is_finite:
        return [identity(A)]
    if A.is_finite != B.is_finite:
        return []
    if A.is_finite:
        if A.size != B.size:
            return []
        if A.size == 1:
            return [RingIso(A, B, [0])]
        return iso_search(A, B)
    if A.degree != B.degree:
        return []
    return iso_search(A, B, _witness_paths(A, B, witnesses))


def _witness_paths(A, B, witnesses):
    """Isos A -> B obtainable from witnesses by inversion and composition."""
    edges = {}
    for w in witnesses:
        if not isinstance(w, RingIso) or w.domain.is_finite:
            continue
        for e in (w, w.inverse):
            edges.setdefault(e.domain, []).append(e)
    paths = {A: [identity(A)]}
    frontier = [A]
    while frontier:
        nxt = []
        for C in frontier:
            for e in edges.get(C, []):
                if e.codomain not in paths:
                    paths[e.codomain] = [compose(e, p) for p in paths[C]]
                    nxt.append(e.codomain)
        frontier = nxt
    return paths.get(B, [])


# --------------------------------------------------------------------------
# localization


def localize(A: Ring, f) -> tuple:
    """Return (A_f, canonical map A -> A_f).

    Finite rings: A_f is realized as eA for the idempotent power e of f,
    named after its root ring and e, so equal localizations coincide
    nominally. Localizing at an element whose idempotent power is 1
    returns A itself. Fields localize to themselves.
    """
    if not A.is_finite:
        f = A.coerce(f)
        if f == A.zero_coords:
            raise ZeroElement(f"cannot localize {A.id} at 0")
        return A, identity(A)
    fi = A.idx(A.coerce(f))
    if fi == A.zero:
        raise ZeroElement(f"cannot localize {A.id} at 0")
    e = A.idempotent_power(fi)
    if e == A.one:
        return A, identity(A)
    root = A.root
    ec = A.elements[e]
    key = ec
    L = root._loc_cache.get(key)
    if L is None:
        L = _idempotent_subring(root, root.idx(ec))
        root._loc_cache[key] = L
    table = [L.idx(A.elements[A.mul_t[e][a]]) for a in range(A.size)]
    return L, RingHom(A, L, table)


def localization_at_idempotent(A: FiniteRing, e: int):
    return localize(A, A.elements[e]) if e != A.zero else zero_localization(A)


def zero_localization(A: FiniteRing):
    """A_f for nilpotent f: the zero ring."""
    root = A.root
    key = root.zero_coords
    L = root._loc_cache.get(key)
    if L is None:
        L = _idempotent_subring(root, root.zero)
        root._loc_cache[key] = L
    return L, RingHom(A, L, [0] * A.size)


def _idempotent_subring(R: FiniteRing, e: int) -> FiniteRing:
    members = sorted({R.mul_t[e][a] for a in range(R.size)})
    pos = {a: i for i, a in enumerate(members)}
    elements = [R.elements[a] for a in members]
    add = [[pos[R.add_t[a][b]] for b in members] for a in members]
    mul = [[pos[R.mul_t[a][b]] for b in members] for a in members]
    ec = R.elements[e]
    pres = RingPresentation(f"{R.id}[{R.fmt(ec)}]", LocalizationOf(R.id, ec))
    return FiniteRing(pres, elements, add, mul, pos[R.zero], pos[e], R._fmt, R._encode, root=R, idempotent=ec)


def localizations(A: Ring) -> list:
    """Every nonzero localization of A (one per nonzero idempotent), A first."""
    if not A.is_finite:
        return [A]
    out = [A]
    for e in A.idempotents:
        if e not in (A.zero, A.one):
            out.append(localize(A, A.elements[e])[0])
    return out


# --------------------------------------------------------------------------
# ideals


class Ideal:
    def __init__(self, ring: FiniteRing, elements: Iterable[int]):
        self.ring = ring
        self.members = frozenset(elements)

    @property
    def elements(self):
        return frozenset(self.ring.elements[i] for i in self.members)

    def __eq__(self, other):
        return isinstance(other, Ideal) and other.ring == self.ring and other.members == self.members

    def __hash__(self):
        return hash((self.ring.id, self.members))

    def __len__(self):
        return len(self.members)

    def __repr__(self):
        return f"Ideal({self.ring.id}, {ideal_label(self.ring, self.members)})"


def _additive_closure(A: FiniteRing, seeds):
    got = {A.zero, *seeds}
    frontier = list(got)
    while frontier:
        a = frontier.pop()
        for b in list(got):  # noqa: PERF101, got grows inside the loop
            c = A.add_t[a][b]
            if c not in got:
                got.add(c)
                frontier.append(c)
    return frozenset(got)


def enumerate_ideals(A: Ring) -> set:
    """All ideals, by exhaustive search over additive subgroups."""
    if not A.is_finite:
        return {"0", "A"}  # pragma: no cover - fields are handled by callers
    cap = limits.current.max_search_size
    if A.size > cap:
        raise TooLarge(f"ideal enumeration capped at {cap} elements")
    n = A.size
    subgroups = {frozenset([A.zero])}
    frontier = list(subgroups)
    while frontier:
        nxt = []
        for H in frontier:
            for a in range(n):
                if a not in H:
                    K = _additive_closure(A, H | {a})
                    if K not in subgroups:
                        subgroups.add(K)
                        nxt.append(K)
        frontier = nxt
    ideals = set()
    for H in subgroups:
        if all(A.mul_t[r][h] in H for h in H for r in range(n)):
            ideals.add(Ideal(A, H))
    return ideals


def is_prime_ideal(A: FiniteRing, members) -> bool:
    if A.one in members:
        return False
    return all(a in members or b in members for a in range(A.size) for b in range(A.size) if A.mul_t[a][b] in members)


def ideal_label(A: Ring, members) -> str:
    """Deterministic name "(g1,g2,...)" built from a greedy generating set."""
    if not A.is_finite:
        return "(0)"
    members = frozenset(members)
    gens = []
    got = frozenset([A.zero])
    for a in sorted(members):
        if a not in got:
            gens.append(a)
            got = _additive_closure(A, {A.mul_t[r][g] for g in gens for r in range(A.size)})
        if got == members:
            break
    if not gens:
        return "(0)"
    return "(" + ",".join(A.fmt(A.elements[g]) for g in gens) + ")"
