from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from support import cubic_pair, naive_ideals, product_ring, stock_finite

from affine_structures import limits
from affine_structures.errors import (
    MalformedPresentation,
    NotAdditive,
    NotMultiplicative,
    ReducibleModulus,
    SizeLimitExceeded,
    SizeMismatch,
    TooLarge,
    ZeroElement,
)
from affine_structures.rings import (
    GaloisQuotient,
    NumberField,
    PolyQuotient,
    Zmod,
    check_hom,
    compose,
    enumerate_ideals,
    find_isos,
    identity,
    is_irreducible_mod_p,
    iso_search,
    localizations,
    localize,
    rational_roots,
    ring,
)

STOCK = stock_finite()
BY_ID = {A.id: A for A in STOCK}


def divisor_count(n):
    return sum(1 for d in range(1, n + 1) if n % d == 0)


def test_ring_axioms_hold_for_stock_rings():
    for A in STOCK:
        n = A.size
        for a in range(n):
            assert A.add_t[a][A.zero] == a
            assert A.mul_t[a][A.one] == a
            assert A.add_t[a][A.neg_t[a]] == A.zero
            for b in range(n):
                assert A.add_t[a][b] == A.add_t[b][a]
                assert A.mul_t[a][b] == A.mul_t[b][a]
        # associativity and distributivity on a sample of triples
        for a in range(0, n, 3):
            for b in range(n):
                for c in range(0, n, 2):
                    assert A.mul_t[A.mul_t[a][b]][c] == A.mul_t[a][A.mul_t[b][c]]
                    assert A.mul_t[a][A.add_t[b][c]] == A.add_t[A.mul_t[a][b]][A.mul_t[a][c]]


def test_sizes_and_characteristics():
    expect = {"F4": (4, 2), "F8": (8, 2), "F9": (9, 3), "Z2xZ3": (6, 6), "Z4[x]/(x^2)": (16, 4)}
    for n in range(2, 13):
        expect[f"Z{n}"] = (n, n)
    for rid, (size, char) in expect.items():
        assert (BY_ID[rid].size, BY_ID[rid].characteristic) == (size, char)


def test_fields_are_recognized():
    fields = {A.id for A in STOCK if A.is_field()}
    assert fields == {"Z2", "Z3", "Z5", "Z7", "Z11", "F4", "F8", "F9"}


def test_ideal_enumeration_matches_subset_search():
    for A in STOCK:
        got = {I.members for I in enumerate_ideals(A)}
        assert got == set(naive_ideals(A)), A.id


def test_ideal_counts_of_cyclic_rings_are_divisor_counts():
    for n in range(2, 13):
        assert len(enumerate_ideals(BY_ID[f"Z{n}"])) == divisor_count(n)


def test_idempotent_counts():
    # Z/n has 2^(number of prime factors) idempotents
    expect = {2: 2, 3: 2, 4: 2, 5: 2, 6: 4, 7: 2, 8: 2, 9: 2, 10: 4, 11: 2, 12: 4}
    for n, k in expect.items():
        assert len(BY_ID[f"Z{n}"].idempotents) == k
    assert len(BY_ID["Z2xZ3"].idempotents) == 4
    assert len(BY_ID["Z4[x]/(x^2)"].idempotents) == 2


def test_automorphism_counts():
    # Frobenius generates Aut(F_{p^d}); x -> a x + 2b with a a unit for Z/4[x]/(x^2)
    expect = {"F4": 2, "F8": 3, "F9": 2, "Z4[x]/(x^2)": 4, "Z12": 1, "Z2xZ3": 1}
    for rid, k in expect.items():
        A = BY_ID[rid]
        assert len(iso_search(A, A)) == k, rid
    Z33 = product_ring("Z3xZ3", Zmod(3), Zmod(3))
    assert len(iso_search(Z33, Z33)) == 2


def test_iso_search_between_presentations():
    Z6 = ring("Z6", Zmod(6))
    P = product_ring("Z2xZ3", Zmod(2), Zmod(3))
    (iso,) = iso_search(Z6, P)
    assert iso((1,)) == ((1,), (1,))
    assert iso((4,)) == ((0,), (1,))
    assert iso_search(ring("Z4", Zmod(4)), product_ring("Z2xZ2", Zmod(2), Zmod(2))) == []
    with pytest.raises(SizeMismatch):
        iso_search(Z6, ring("Z7", Zmod(7)))


def test_iso_search_respects_search_cap():
    A = ring("Z4[x]/(x^2)", PolyQuotient(4, (0, 0, 1)))
    with limits.override(max_search_size=8), pytest.raises(TooLarge):
        iso_search(A, A)
    assert find_isos(A, ring("Z16", Zmod(16))) == []


def test_check_hom_reports_conflicts():
    Z6, Z3, Z4, Z2 = (ring(f"Z{n}", Zmod(n)) for n in (6, 3, 4, 2))
    hom = check_hom(Z6, Z3, {(1,): (1,)})
    assert [hom((a,)) for a in range(6)] == [(a % 3,) for a in range(6)]
    with pytest.raises((NotAdditive, NotMultiplicative)) as err:
        check_hom(Z6, Z4, {(1,): (1,)})
    assert err.value.witness
    with pytest.raises((NotAdditive, NotMultiplicative)):
        check_hom(Z2, Z4, {(1,): (1,)})


def test_galois_modulus_must_be_irreducible():
    with pytest.raises(ReducibleModulus):
        ring("bad", GaloisQuotient(2, (1, 0, 1)))
    assert is_irreducible_mod_p((1, 1, 0, 1), 2)
    assert not is_irreducible_mod_p((0, 1, 1), 2)


def test_malformed_presentations():
    with pytest.raises(MalformedPresentation):
        ring("Z1", Zmod(1))
    with pytest.raises(MalformedPresentation):
        ring("G", GaloisQuotient(4, (1, 1, 1)))
    with pytest.raises(MalformedPresentation):
        ring("P", PolyQuotient(4, (0, 2)))
    with limits.override(max_ring_size=20), pytest.raises(SizeLimitExceeded):
        ring("F27", GaloisQuotient(3, (1, 2, 0, 1)))


def test_number_field_arithmetic_is_exact():
    k, _ = cubic_pair()
    a = k.gen
    assert k.power(a, 3) == k.coerce(2)
    inv = k.power(a, 2)
    assert k.mul(a, inv) == k.coerce(2)
    assert rational_roots((-2, 0, 0, 1)) == []
    assert rational_roots((Fraction(-1, 4), 0, 1)) == [Fraction(-1, 2), Fraction(1, 2)]
    with pytest.raises(ReducibleModulus):
        ring("r", NumberField((-4, 0, 1)))
    with pytest.raises(ReducibleModulus):
        ring("q4", NumberField((2, 0, 0, 0, 1)))
    assert ring("q4", NumberField((2, 0, 0, 0, 1), irreducibility_assertion=True)).degree == 4


def test_number_field_isos_need_witnesses():
    k, kp = cubic_pair()
    assert iso_search(k, kp) == []
    (sigma,) = iso_search(k, kp, [(0, 1, 0)])
    assert sigma.inverse.domain == kp
    assert compose(sigma.inverse, sigma) == identity(k)
    # a non-root generator image is rejected
    assert iso_search(k, kp, [(1, 1, 0)]) == []


def test_localization_is_idempotent_cut():
    Z6 = ring("Z6", Zmod(6))
    L2, can2 = localize(Z6, (2,))
    L3, _ = localize(Z6, (3,))
    assert (L2.id, L2.size, L3.id, L3.size) == ("Z6[4]", 3, "Z6[3]", 2)
    assert can2((1,)) == L2.one_coords
    assert localize(Z6, (4,))[0] is L2
    assert localize(Z6, (5,))[0] is Z6
    with pytest.raises(ZeroElement):
        localize(Z6, (0,))
    assert [L.id for L in localizations(Z6)] == ["Z6", "Z6[3]", "Z6[4]"]


def test_localization_of_nilpotent_is_zero_ring():
    Z4 = ring("Z4", Zmod(4))
    L, can = localize(Z4, (2,))
    assert L.size == 1
    assert set(can.table) == {0}


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(STOCK), st.data())
def test_localizing_twice_equals_localizing_at_product(A, data):
    f = data.draw(st.sampled_from(A.elements))
    g = data.draw(st.sampled_from(A.elements))
    fg = A.mul(f, g)
    if A.idx(fg) == A.zero or A.size == 1:
        return
    Lf, canf = localize(A, f)
    if Lf.size == 1 or canf(g) == Lf.zero_coords:
        return
    Lfg, _ = localize(Lf, canf(g))
    assert Lfg.size == localize(A, fg)[0].size
    # the canonical map is a ring homomorphism sending 1 to 1
    assert canf(A.one_coords) == Lf.one_coords
    for a in A.elements:
        assert canf(A.mul(a, g)) == Lf.mul(canf(a), canf(g))


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([A for A in STOCK if A.size <= 9]), st.data())
def test_automorphisms_form_a_group(A, data):
    autos = iso_search(A, A)
    s = data.draw(st.sampled_from(autos))
    t = data.draw(st.sampled_from(autos))
    assert compose(s, t) in autos
    assert s.inverse in autos
    assert compose(s, s.inverse) == identity(A)
    for a in A.elements:
        for b in A.elements[:4]:
            assert s(A.mul(a, b)) == A.mul(s(a), s(b))
            assert s(A.add(a, b)) == A.add(s(a), s(b))
