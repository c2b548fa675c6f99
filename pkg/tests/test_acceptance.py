"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line."""

from __future__ import annotations

import itertools
import time

from support import (
    EXIT_CODES,
    FIXTURES,
    cubic_setup,
    forward_cases,
    generator_sets,
    glue_cases,
    relabel,
    stock_finite,
    two_point_z3,
)

from affine_structures.atlas import (
    AtlasData,
    StructureHandle,
    transport_chart,
    validate_atlas,
)
from affine_structures.cli import COMMANDS, run_command
from affine_structures.errors import NotAdmissible
from affine_structures.gluing import (
    build_quotient,
    cong_rel,
    enumerate_structures,
    find_tau,
    relative_canonical_structures,
    rho_check,
    scenario_from_charts,
    structure_sets_equal,
    tau_scheme,
    transport_set,
    unlhd_rel,
)
from affine_structures.pseudogroup import (
    Universe,
    axiom_violations,
    close,
    contains_iso,
)
from affine_structures.rings import (
    Product,
    RingHom,
    RingPresentation,
    Zmod,
    iso_search,
    localize,
    make_ring,
    ring,
)
from affine_structures.scenario import dumps, parse_scenario, parse_text, serialize
from affine_structures.sheaf import (
    a_star,
    affine_scheme,
    associate_scheme,
    build_extension,
    canonical_generators,
    canonical_pseudogroups,
    extensions_isomorphic,
    relative_canonical_structure,
    unique_structure_check,
)
from affine_structures.spectrum import (
    Homeo,
    localization_embedding,
    spec,
    spec_functor,
    spec_oracle,
)


def verdict(capsys, number, title, ok, detail):
    with capsys.disabled():
        print(f"\nACCEPTANCE {number} {'PASS' if ok else 'FAIL'}: {title} ({detail})")
    assert ok, detail


def _projection(P, i, factor):
    return RingHom(P, factor, [factor.idx(c[i]) for c in P.elements])


def test_criterion_1_spectrum_oracle(capsys):
    start = time.perf_counter()
    stock = stock_finite()
    bad = []
    for A in stock:
        S = spec(A)
        primes, opens = spec_oracle(A)
        got = {frozenset(S.primes[p] for p in o) for o in S.space.opens}
        if frozenset(S.primes.values()) != primes or got != set(opens):
            bad.append(A.id)
    pairs = 0
    for A, B in itertools.combinations_with_replacement(stock, 2):
        if A.size * B.size > 256:
            continue
        P = make_ring(RingPresentation(f"{A.id}x{B.id}", Product((A.presentation, B.presentation))))
        # spec of each factor embeds through its projection; together they cover spec P
        ia = spec_functor(_projection(P, 0, A))
        ib = spec_functor(_projection(P, 1, B))
        images_a, images_b = set(ia.values()), set(ib.values())
        disjoint_cover = (
            len(images_a) == len(ia) and len(images_b) == len(ib)
            and not images_a & images_b and images_a | images_b == set(spec(P).points)
        )
        if not disjoint_cover or not spec(P).space.is_discrete():
            bad.append(P.id)
        pairs += 1
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 10
    verdict(capsys, 1, "spectrum equals ideal oracle; product spectra are disjoint unions", ok,
            f"{len(stock)} rings, {pairs} products, {elapsed:.2f}s, mismatches {bad}")


def test_criterion_2_localization_law(capsys):
    start = time.perf_counter()
    checked, bad = 0, []
    for A in stock_finite():
        X = spec(A).space
        for f in A.elements:
            if A.idx(f) == A.zero:
                continue
            L, _ = localize(A, f)
            D = spec(A).D(f)
            emb = localization_embedding(A, f)
            h = Homeo.of(spec(L).space, X.subspace(D), emb)
            if set(emb.values()) != D or not h.is_valid():
                bad.append((A.id, A.fmt(f)))
            checked += 1
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 10
    verdict(capsys, 2, "spec of every localization is homeomorphic to D(f)", ok,
            f"{checked} elements, {elapsed:.2f}s, failures {bad}")


def test_criterion_3_pseudogroup_closure(capsys):
    sets = generator_sets()
    bad = []
    for name, (rings, isos, universe) in sets.items():
        gamma = close(rings, isos, universe)
        again = close(*gamma.generators_like(), universe)
        if axiom_violations(gamma) or not again.same_as(gamma):
            bad.append(name)
    ok = len(sets) >= 10 and "gamma1" in sets and "gamma2" in sets and not bad
    verdict(capsys, 3, "closure passes all five axioms and is idempotent", ok,
            f"{len(sets)} generator sets, failures {bad}")


def test_criterion_4_example_admissibility(capsys):
    c = cubic_setup()
    P = c["space"]
    s1 = build_extension(P, StructureHandle(AtlasData(P, [c["cu"]], c["gamma1"])))
    conflict = None
    try:
        build_extension(P, StructureHandle(AtlasData(P, [c["cu"], c["cv"]], c["gamma2"])))
    except NotAdmissible as exc:
        conflict = exc.conflict
    expected = {"open": ["u"], "charts": [0, 1], "rings": ["k", "kp"]}
    ok = (
        s1.section({"u"}) == c["k"]
        and conflict == expected
        and validate_atlas(AtlasData(P, [c["cu"], c["cv"]], c["gamma2"])).ok
        and contains_iso(c["gamma2"], c["sigma"])
        and not contains_iso(c["gamma1"], c["sigma"])
    )
    verdict(capsys, 4, "first structure extends, second is rejected with the k/k' conflict", ok,
            f"conflict {conflict}")


def _admissible_fixtures():
    c = cubic_setup()
    Z6 = ring("Z6", Zmod(6))
    X6 = spec(Z6).space
    from affine_structures.atlas import AffineChart

    L2, L3 = localize(Z6, (2,))[0], localize(Z6, (3,))[0]
    charts6 = [
        AffineChart.of(X6.points, Z6, {"(2)": "(2)", "(3)": "(3)"}),
        AffineChart.of({"(3)"}, L2, {"(3)": "(0)"}),
        AffineChart.of({"(2)"}, L3, {"(2)": "(0)"}),
    ]
    g6 = close([Z6], [], Universe([Z6]))
    s2, _ = two_point_z3()
    return {
        "z6_three_charts": (X6, StructureHandle(AtlasData(X6, charts6, g6))),
        "z6_distinguished": (X6, StructureHandle(AtlasData(X6, charts6[1:], g6))),
        "two_points_z3": (s2.space, s2.declared),
        "cubic_first": (c["space"], StructureHandle(AtlasData(c["space"], [c["cu"]], c["gamma1"]))),
    }


def test_criterion_5_extension_uniqueness(capsys):
    fixtures = _admissible_fixtures()
    bad = []
    for name, (X, h) in fixtures.items():
        n = len(h.charts)
        for order in [list(range(n))[::-1], list(range(1, n)) + [0]]:
            a = build_extension(X, h)
            b = build_extension(X, h, order=order)
            if not extensions_isomorphic(a, b).is_valid():
                bad.append((name, order))
    ok = len(fixtures) >= 3 and not bad
    verdict(capsys, 5, "independently ordered extensions are isomorphic", ok,
            f"{len(fixtures)} admissible structures, failures {bad}")


def _scheme_fixtures():
    out = []
    for path in sorted(FIXTURES.glob("*.json")):
        sc = parse_scenario(path)
        for sid, aid in sc.schemes.items():
            h = sc.atlases[aid]
            s = build_extension(h.space, h, witnesses=sc.universe.witnesses)
            out.append((f"{path.stem}:{sid}", s, sc.universe))
    return out


def test_criterion_6_canonical_structures(capsys):
    schemes = _scheme_fixtures()
    problems, associates = [], 0
    for name, s, U in schemes:
        if not validate_atlas(a_star(canonical_generators(s, U), s, U)).ok:
            problems.append((name, "maximal a_star invalid"))
        gammas = canonical_pseudogroups(s, U)
        if not gammas:
            problems.append((name, "no canonical pseudogroup"))
        for g in gammas:
            h = relative_canonical_structure(g, s, U)
            canon = {c.open_set for c in a_star(g, s, U).charts}
            if canon != {c.open_set for c in h.charts}:
                problems.append((name, g.roots, "membership"))
            res = associate_scheme(s, h, U)
            if res.iso is None or not res.iso.is_valid():
                problems.append((name, g.roots, "associate", res.conflict))
            associates += 1
        if not unique_structure_check(s, U).consistent:
            problems.append((name, "uniqueness"))
    s2, U2 = two_point_z3()
    outcomes = [g.roots for g in canonical_pseudogroups(s2, U2)]
    three = outcomes == [("Z3",), ("Z3xZ3",), ("Z3", "Z3xZ3")]
    ok = not problems and three and len(schemes) >= 5
    verdict(capsys, 6, "canonical and relative canonical structures, uniqueness, associate schemes", ok,
            f"{len(schemes)} scheme fixtures, {associates} associate schemes, "
            f"disjoint-union outcomes {outcomes}, problems {problems}")


def test_criterion_7_space_level_relations(capsys):
    slow, bad = [], []
    forward = forward_cases()
    for name, (X, U, names) in forward.items():
        start = time.perf_counter()
        Y, h = relabel(X, names)
        if not structure_sets_equal(transport_set(enumerate_structures(X, U), h), enumerate_structures(Y, U)):
            bad.append(name)
        if time.perf_counter() - start >= 5:
            slow.append(name)
    glue = glue_cases()
    for name, (xd, yd, _) in glue.items():
        start = time.perf_counter()
        tau, matching = find_tau(xd, yd)
        charts_ok = all(transport_chart(xd[1][i], tau) == yd[1][j] for i, j in matching)
        sc, assignments = scenario_from_charts(*xd)
        rho = rho_check(build_quotient(sc), xd[0], assignments)
        if not (tau.is_valid() and charts_ok and rho.is_valid()):
            bad.append(name)
        if time.perf_counter() - start >= 5:
            slow.append(name)
    ok = len(forward) >= 5 and len(glue) >= 5 and "z6_by_d2_d3" in glue and not bad and not slow
    verdict(capsys, 7, "transported structure sets are equal; tau recovered from glue data", ok,
            f"{len(forward)} forward, {len(glue)} converse, failures {bad}, over 5s {slow}")


def test_criterion_8_scheme_level_relations(capsys):
    Z6, Z6p = ring("Z6", Zmod(6)), ring("Z6p", Zmod(6))
    ux, uy = Universe([Z6]), Universe([Z6p])
    cert = tau_scheme(affine_scheme(Z6, ux), affine_scheme(Z6p, uy), ux, uy, iso_search(Z6, Z6p))
    renamed_ok = cert.iso.is_valid()

    X, U, names = forward_cases()["one_point_fields"]
    Q, K = U.roots
    a0 = relative_canonical_structures(affine_scheme(Q, U), U)
    b0 = relative_canonical_structures(affine_scheme(K, U), U)
    rep = unlhd_rel(a0, b0)
    congruent, _, _ = cong_rel(a0, b0)
    Y, _ = relabel(X, names)
    spaces_equal = structure_sets_equal(enumerate_structures(X, U), enumerate_structures(Y, U))
    ok = renamed_ok and not rep.holds and rep.failed == "local_isomorphism" and not congruent and spaces_equal
    verdict(capsys, 8, "renamed Z/6 is isomorphic; Q vs Q(sqrt 2) fails only at the scheme level", ok,
            f"tau valid {renamed_ok}, fields fail at {rep.failed}, spaces equal {spaces_equal}")


def test_criterion_9_cli_contract(capsys):
    valid = sorted(FIXTURES.glob("*.json"))
    invalid = sorted((FIXTURES / "invalid").glob("*.json"))
    bad = []
    for path in valid:
        text = path.read_text(encoding="utf-8")
        if serialize(parse_text(text)) != text:
            bad.append((path.name, "round trip"))
        for cmd, want in zip(COMMANDS, EXIT_CODES.get(path.name, "")):
            code, first = run_command(cmd, path)
            again, second = run_command(cmd, path)
            first.pop("timing")
            second.pop("timing")
            expected_verdict = {0: "holds", 1: "fails", 2: "error"}[code]
            if code != again or dumps(first) != dumps(second):
                bad.append((path.name, cmd, "nondeterministic"))
            if code != int(want) or first["verdict"] != expected_verdict:
                bad.append((path.name, cmd, code))
    for path in invalid:
        for cmd in COMMANDS:
            if run_command(cmd, path)[0] != 2:
                bad.append((path.name, cmd))
    ok = not bad and sorted(p.name for p in valid) == sorted(EXIT_CODES)
    verdict(capsys, 9, "deterministic reports, exit codes and byte-identical round trip", ok,
            f"{len(valid)} fixtures, {len(invalid)} invalid inputs, {len(COMMANDS)} commands, failures {bad}")

