"""Rings and small scenarios shared across the test modules."""

from __future__ import annotations

import itertools
import pathlib

from affine_structures.rings import (
    GaloisQuotient,
    NumberField,
    PolyQuotient,
    Product,
    RingPresentation,
    Zmod,
    make_ring,
    ring,
)

FIXTURES = pathlib.Path(__file__).resolve().parent.parent / "fixtures"

# exit code per command, in the order of COMMANDS
EXIT_CODES = {
    "example_two_cubic_fields.json": "0001000000",
    "glue_mismatch.json": "0000212222",
    "glue_points.json": "0000202222",
    "rational_vs_quadratic.json": "0000000100",
    "stock_rings.json": "0000202222",
    "two_points_z3.json": "0000000000",
    "z6_affine.json": "0000000000",
    "z6_renamed.json": "0000000000",
    "z6_vs_z4xz9.json": "0000000100",
}


def product_ring(id, *ctors):
    factors = tuple(RingPresentation(f"{id}.{i}", c) for i, c in enumerate(ctors))
    return make_ring(RingPresentation(id, Product(factors)))


def stock_finite():
    """The stock finite rings, each built fresh so caches do not leak."""
    out = [ring(f"Z{n}", Zmod(n)) for n in range(2, 13)]
    out += [
        ring("F4", GaloisQuotient(2, (1, 1, 1))),
        ring("F8", GaloisQuotient(2, (1, 1, 0, 1))),
        ring("F9", GaloisQuotient(3, (1, 0, 1))),
        product_ring("Z2xZ3", Zmod(2), Zmod(3)),
        ring("Z4[x]/(x^2)", PolyQuotient(4, (0, 0, 1))),
    ]
    return out


def cubic_pair():
    """Two nominally distinct presentations of Q(2^(1/3))."""
    k = ring("k", NumberField((-2, 0, 0, 1)))
    kp = ring("kp", NumberField((-2, 0, 0, 1)))
    return k, kp


def naive_ideals(A):
    """Every ideal of a finite ring, by testing every subset containing 0."""
    n = A.size
    others = [i for i in range(n) if i != A.zero]
    found = []
    for r in range(len(others) + 1):
        for combo in itertools.combinations(others, r):
            s = frozenset((A.zero, *combo))
            if all(A.add_t[a][b] in s for a in s for b in s) and all(
                A.neg_t[a] in s for a in s
            ) and all(A.mul_t[x][a] in s for a in s for x in range(n)):
                found.append(s)
    return found


def naive_primes(A):
    out = []
    for P in naive_ideals(A):
        if A.one in P:
            continue
        if all(a in P or b in P for a in range(A.size) for b in range(A.size) if A.mul_t[a][b] in P):
            out.append(P)
    return out


def generator_sets():
    """Named (rings, isos, universe) generator sets for closure checks."""
    from affine_structures.pseudogroup import Universe
    from affine_structures.rings import iso_search

    Z6 = ring("Z6", Zmod(6))
    Z6p = ring("Z6p", Zmod(6))
    Z2x3 = product_ring("Z2xZ3", Zmod(2), Zmod(3))
    Z33 = product_ring("Z3xZ3", Zmod(3), Zmod(3))
    Z12 = ring("Z12", Zmod(12))
    F4 = ring("F4", GaloisQuotient(2, (1, 1, 1)))
    F8 = ring("F8", GaloisQuotient(2, (1, 1, 0, 1)))
    F9 = ring("F9", GaloisQuotient(3, (1, 0, 1)))
    R = ring("Z4[x]/(x^2)", PolyQuotient(4, (0, 0, 1)))
    Z2x2x2 = product_ring("Z2^3", Zmod(2), Zmod(2), Zmod(2))
    k, kp = cubic_pair()
    (sigma,) = iso_search(k, kp, [(0, 1, 0)])
    cubic = Universe([k, kp], [sigma])
    return {
        "gamma1": ([k], [], cubic),
        "gamma2": ([k], [sigma], cubic),
        "z6": ([Z6], [], Universe([Z6])),
        "z6_rename": ([], iso_search(Z6, Z6p), Universe([Z6, Z6p])),
        "z6_product": ([], iso_search(Z6, Z2x3), Universe([Z6, Z2x3])),
        "z3xz3_swap": ([], iso_search(Z33, Z33), Universe([Z33])),
        "z12": ([Z12], [], Universe([Z12])),
        "frobenius_f4": ([], iso_search(F4, F4), Universe([F4])),
        "frobenius_f8": ([], iso_search(F8, F8)[1:2], Universe([F8])),
        "f9": ([], iso_search(F9, F9), Universe([F9])),
        "dual_numbers": ([], iso_search(R, R)[1:2], Universe([R])),
        "z2_cubed": ([], iso_search(Z2x2x2, Z2x2x2)[1:3], Universe([Z2x2x2])),
    }


def cubic_setup():
    """Universe, the two pseudogroups and the one-point charts for k, k'."""
    from affine_structures.atlas import AffineChart
    from affine_structures.pseudogroup import Universe, close
    from affine_structures.rings import iso_search
    from affine_structures.spectrum import TopSpace

    k, kp = cubic_pair()
    (sigma,) = iso_search(k, kp, [(0, 1, 0)])
    U = Universe([k, kp], [sigma])
    P = TopSpace.discrete(["u"])
    cu = AffineChart.of({"u"}, k, {"u": "(0)"})
    cv = AffineChart.of({"u"}, kp, {"u": "(0)"})
    return {
        "k": k, "kp": kp, "sigma": sigma, "universe": U, "space": P, "cu": cu, "cv": cv,
        "gamma1": close([k], [], U), "gamma2": close([k], [sigma], U),
    }


def two_point_z3():
    """spec Z/3 disjoint union spec Z/3 over the universe {Z/3, Z/3 x Z/3}."""
    from affine_structures.atlas import AffineChart, AtlasData, StructureHandle
    from affine_structures.pseudogroup import Universe, close
    from affine_structures.sheaf import build_extension
    from affine_structures.spectrum import TopSpace

    Z3 = ring("Z3", Zmod(3))
    Z33 = product_ring("Z3xZ3", Zmod(3), Zmod(3))
    U = Universe([Z3, Z33])
    Y = TopSpace.discrete(["a", "b"])
    charts = [AffineChart.of({"a"}, Z3, {"a": "(0)"}), AffineChart.of({"b"}, Z3, {"b": "(0)"})]
    s = build_extension(Y, StructureHandle(AtlasData(Y, charts, close([Z3], [], U))))
    return s, U


def relabel(X, names):
    """A discrete copy of X with points renamed, and the renaming homeomorphism."""
    from affine_structures.spectrum import Homeo, TopSpace

    m = dict(zip(X.points, names))
    Y = TopSpace(tuple(names), frozenset(frozenset(m[x] for x in o) for o in X.opens))
    return Y, Homeo.of(X, Y, m)


def glue_cases():
    """Chart families on small schemes, each paired with a relabeled copy.

    Returns name -> ((X, charts), (Y, charts), hidden homeomorphism X -> Y).
    """
    from affine_structures.atlas import AffineChart, transport_chart
    from affine_structures.rings import localize
    from affine_structures.spectrum import TopSpace, spec

    cases = {}

    def add(name, X, charts, names):
        Y, h = relabel(X, names)
        cases[name] = ((X, charts), (Y, [transport_chart(c, h) for c in charts]), h)

    Z6 = ring("Z6", Zmod(6))
    X6 = spec(Z6).space
    L2, L3 = localize(Z6, (2,))[0], localize(Z6, (3,))[0]
    D2 = AffineChart.of({"(3)"}, L2, {"(3)": "(0)"})
    D3 = AffineChart.of({"(2)"}, L3, {"(2)": "(0)"})
    whole = AffineChart.of(X6.points, Z6, {p: p for p in X6.points})
    add("z6_by_d2_d3", X6, [D2, D3], ["p", "q"])
    add("z6_whole_and_d2", X6, [whole, D2], ["q", "p"])

    Z3 = ring("Z3", Zmod(3))
    Y2 = TopSpace.discrete(["a", "b"])
    add("z3_two_points", Y2, [AffineChart.of({"a"}, Z3, {"a": "(0)"}), AffineChart.of({"b"}, Z3, {"b": "(0)"})], ["b2", "a2"])

    Z30 = ring("Z30", Zmod(30))
    S30 = spec(Z30)
    X30 = S30.space
    charts = [AffineChart.of(X30.points, Z30, {p: p for p in X30.points})]
    for f in [(6,), (10,), (15,)]:
        L, _ = localize(Z30, f)
        from affine_structures.spectrum import localization_embedding

        emb = localization_embedding(Z30, f)
        charts.append(AffineChart.of(S30.D(f), L, {x: q for q, x in emb.items()}))
    add("z30_by_three_opens", X30, charts[1:], ["u", "v", "w"])
    add("z30_whole_and_open", X30, charts[:2], ["w", "u", "v"])

    Q = ring("Q", NumberField((0, 1)))
    add("rational_point", TopSpace.discrete(["o"]), [AffineChart.of({"o"}, Q, {"o": "(0)"})], ["o2"])
    return cases


def forward_cases():
    """(space, universe, new point names) for transporting structure sets."""
    from affine_structures.pseudogroup import Universe
    from affine_structures.spectrum import TopSpace, spec

    Z6 = ring("Z6", Zmod(6))
    Z2x3 = product_ring("Z2xZ3", Zmod(2), Zmod(3))
    Z2, Z3 = ring("Z2", Zmod(2)), ring("Z3", Zmod(3))
    Z33 = product_ring("Z3xZ3", Zmod(3), Zmod(3))
    Q, K = ring("Q", NumberField((0, 1))), ring("K", NumberField((-2, 0, 1)))
    return {
        "spec_z6": (spec(Z6).space, Universe([Z6]), ["p", "q"]),
        "spec_z6_two_presentations": (spec(Z6).space, Universe([Z6, Z2x3]), ["q", "p"]),
        "two_points_z3": (TopSpace.discrete(["a", "b"]), Universe([Z3, Z33]), ["b", "a"]),
        "one_point_fields": (TopSpace.discrete(["o"]), Universe([Q, K]), ["o2"]),
        "three_points": (TopSpace.discrete(["a", "b", "c"]), Universe([Z2, Z3]), ["c", "a", "b"]),
    }
