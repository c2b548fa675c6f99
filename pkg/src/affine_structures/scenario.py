"""Scenario files: JSON documents describing rings, spaces, atlases,
schemes, glue data and comparisons.

Parsing normalizes key order and validates every cross reference;
``serialize`` writes the normalized document back, so a file written by
``serialize`` round-trips byte for byte.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .atlas import AffineChart, AtlasData, StructureHandle
from .errors import AffineError, DanglingReference, DuplicateId, ParseError
from .pseudogroup import Pseudogroup, Universe, close
from .rings import (
    GaloisQuotient,
    NumberField,
    PolyQuotient,
    Product,
    Ring,
    RingIso,
    RingPresentation,
    Zmod,
    check_hom,
    localize,
    make_ring,
)
from .spectrum import TopSpace, spec

# key order per object kind; anything else is rejected
SECTIONS = ("name", "description", "rings", "universe", "isos", "spaces", "atlases", "schemes", "glue", "comparisons")
KEYS = {
    "ring": ("id", "kind", "n", "p", "f", "irreducibility_assertion", "factors", "parent", "element"),
    "factor": ("kind", "n", "p", "f", "irreducibility_assertion", "factors"),
    "universe": ("roots", "witnesses"),
    "iso": ("id", "domain", "codomain", "images", "image"),
    "space": ("id", "topology", "points", "opens", "ring"),
    "atlas": ("id", "space", "gamma", "charts"),
    "gamma": ("rings", "isos"),
    "chart": ("open", "ring", "phi"),
    "scheme": ("id", "atlas"),
    "glue": ("id", "space", "charts", "identifications"),
    "glue_chart": ("tag", "ring", "chart"),
    "comparison": ("id", "kind", "x", "y", "decks", "back_decks", "homeomorphism"),
}


def _order(obj, kind, path):
    if not isinstance(obj, dict):
        raise ParseError(f"{path}: expected an object")
    allowed = KEYS[kind]
    for k in obj:
        if k not in allowed:
            raise ParseError(f"{path}: unknown field {k!r}")
    return {k: obj[k] for k in allowed if k in obj}


def _need(obj, key, path):
    if key not in obj:
        raise ParseError(f"{path}: missing field {key!r}")
    return obj[key]


# --------------------------------------------------------------------------
# rings and elements


def _ctor(obj, rid, path):
    kind = _need(obj, "kind", path)
    try:
        if kind == "zmod":
            return Zmod(int(_need(obj, "n", path)))
        if kind == "galois":
            return GaloisQuotient(int(_need(obj, "p", path)), tuple(int(c) for c in _need(obj, "f", path)))
        if kind == "poly_quotient":
            return PolyQuotient(int(_need(obj, "n", path)), tuple(int(c) for c in _need(obj, "f", path)))
        if kind == "number_field":
            return NumberField(
                tuple(Fraction(str(c)) for c in _need(obj, "f", path)),
                bool(obj.get("irreducibility_assertion", False)),
            )
        if kind == "product":
            factors = []
            for i, fo in enumerate(_need(obj, "factors", path)):
                fo = _order(fo, "factor", f"{path}.factors[{i}]")
                factors.append(RingPresentation(f"{rid}.{i}", _ctor(fo, f"{rid}.{i}", f"{path}.factors[{i}]")))
            return Product(tuple(factors))
    except (TypeError, ValueError) as exc:
        raise ParseError(f"{path}: {exc}") from None
    raise ParseError(f"{path}: unknown ring kind {kind!r}")


def encode_element(A: Ring, c):
    return A.encode(c)


def decode_element(A: Ring, value, path="element"):
    if not A.is_finite:
        try:
            if isinstance(value, (int, str)):
                return A.coerce(Fraction(str(value)))
            return A.coerce(tuple(Fraction(str(v)) for v in value))
        except (TypeError, ValueError) as exc:
            raise ParseError(f"{path}: {exc}") from None
    if isinstance(value, int) and not isinstance(A.zero_coords[0], int):
        return A.coerce(value)
    table = getattr(A, "_decode_table", None)
    if table is None:
        table = {json.dumps(A.encode(c)): c for c in A.elements}
        A._decode_table = table
    key = json.dumps(value)
    if key not in table:
        raise ParseError(f"{path}: {value!r} is not an element of {A.id}")
    return table[key]


# --------------------------------------------------------------------------
# the parsed document


@dataclass
class ScenarioFile:
    doc: dict
    rings: dict = field(default_factory=dict)  # id -> Ring (declared ids, aliases allowed)
    universe: Universe | None = None
    isos: dict = field(default_factory=dict)
    spaces: dict = field(default_factory=dict)
    atlases: dict = field(default_factory=dict)  # id -> StructureHandle
    schemes: dict = field(default_factory=dict)  # id -> atlas id
    glue: dict = field(default_factory=dict)  # id -> dict
    comparisons: list = field(default_factory=list)

    def ring_id(self, R: Ring) -> str:
        """The declared id of a ring (its own id when undeclared)."""
        for k, v in self.rings.items():
            if v is R:
                return k
        return R.id


def _ring(sc: ScenarioFile, rid, path):
    if rid not in sc.rings:
        raise DanglingReference(f"{path}: unknown ring {rid!r}")
    return sc.rings[rid]


def _unique(items, path):
    seen = set()
    for i, it in enumerate(items):
        rid = it.get("id")
        if rid is None:
            raise ParseError(f"{path}[{i}]: missing field 'id'")
        if rid in seen:
            raise DuplicateId(f"{path}[{i}]: duplicate id {rid!r}")
        seen.add(rid)


def parse_document(doc: dict) -> ScenarioFile:
    if not isinstance(doc, dict):
        raise ParseError("top level must be an object")
    for k in doc:
        if k not in SECTIONS:
            raise ParseError(f"unknown section {k!r}")
    doc = {k: doc[k] for k in SECTIONS if k in doc}
    sc = ScenarioFile(doc)
    # rings
    rings = [_order(r, "ring", f"rings[{i}]") for i, r in enumerate(doc.get("rings", []))]
    if "rings" in doc:
        doc["rings"] = rings
    _unique(rings, "rings")
    for i, r in enumerate(rings):
        path = f"rings[{i}]"
        rid = r["id"]
        try:
            if r.get("kind") == "localization":
                parent = _ring(sc, _need(r, "parent", path), path)
                elem = decode_element(parent, _need(r, "element", path), f"{path}.element")
                sc.rings[rid] = localize(parent, elem)[0]
                continue
            pres = RingPresentation(rid, _ctor(r, rid, path))
            sc.rings[rid] = make_ring(pres)
        except ParseError:
            raise
        except AffineError as exc:
            raise ParseError(f"{path}: {type(exc).__name__}: {exc}") from None
    # isos (before the universe, whose witnesses reference them)
    isos = [_order(s, "iso", f"isos[{i}]") for i, s in enumerate(doc.get("isos", []))]
    if "isos" in doc:
        doc["isos"] = isos
    _unique(isos, "isos")
    for i, s in enumerate(isos):
        path = f"isos[{i}]"
        A = _ring(sc, _need(s, "domain", path), path)
        B = _ring(sc, _need(s, "codomain", path), path)
        try:
            if A.is_finite:
                images = {
                    decode_element(A, a, f"{path}.images"): decode_element(B, b, f"{path}.images")
                    for a, b in _need(s, "images", path)
                }
            else:
                images = {A.gen: decode_element(B, _need(s, "image", path), f"{path}.image")}
            hom = check_hom(A, B, images)
        except ParseError:
            raise
        except AffineError as exc:
            raise ParseError(f"{path}: {type(exc).__name__}: {exc}") from None
        if A.is_finite and (not B.is_finite or len(set(hom.table)) != B.size or A.size != B.size):
            raise ParseError(f"{path}: map is not bijective")
        if not A.is_finite and (B.is_finite or A.degree != B.degree):
            raise ParseError(f"{path}: map is not an isomorphism")
        sc.isos[s["id"]] = RingIso(A, B, hom.table)
    # universe
    if "universe" in doc:
        u = _order(doc["universe"], "universe", "universe")
        doc["universe"] = u
        roots = [_ring(sc, rid, "universe.roots") for rid in _need(u, "roots", "universe")]
        wits = []
        for wid in u.get("witnesses", []):
            if wid not in sc.isos:
                raise DanglingReference(f"universe.witnesses: unknown iso {wid!r}")
            wits.append(sc.isos[wid])
        sc.universe = Universe(roots, wits)
    # spaces
    spaces = [_order(s, "space", f"spaces[{i}]") for i, s in enumerate(doc.get("spaces", []))]
    if "spaces" in doc:
        doc["spaces"] = spaces
    _unique(spaces, "spaces")
    for i, s in enumerate(spaces):
        sc.spaces[s["id"]] = _space(sc, s, f"spaces[{i}]")
    # atlases
    atlases = [_order(a, "atlas", f"atlases[{i}]") for i, a in enumerate(doc.get("atlases", []))]
    if "atlases" in doc:
        doc["atlases"] = atlases
    _unique(atlases, "atlases")
    for i, a in enumerate(atlases):
        sc.atlases[a["id"]] = _atlas(sc, a, f"atlases[{i}]")
    # schemes
    schemes = [_order(s, "scheme", f"schemes[{i}]") for i, s in enumerate(doc.get("schemes", []))]
    if "schemes" in doc:
        doc["schemes"] = schemes
    _unique(schemes, "schemes")
    for i, s in enumerate(schemes):
        aid = _need(s, "atlas", f"schemes[{i}]")
        if aid not in sc.atlases:
            raise DanglingReference(f"schemes[{i}]: unknown atlas {aid!r}")
        sc.schemes[s["id"]] = aid
    # glue
    glue = [_order(g, "glue", f"glue[{i}]") for i, g in enumerate(doc.get("glue", []))]
    if "glue" in doc:
        doc["glue"] = glue
    _unique(glue, "glue")
    for i, g in enumerate(glue):
        sc.glue[g["id"]] = _glue(sc, g, f"glue[{i}]")
    # comparisons
    comps = [_order(c, "comparison", f"comparisons[{i}]") for i, c in enumerate(doc.get("comparisons", []))]
    if "comparisons" in doc:
        doc["comparisons"] = comps
    _unique(comps, "comparisons")
    for i, c in enumerate(comps):
        sc.comparisons.append(_comparison(sc, c, f"comparisons[{i}]"))
    return sc


def _space(sc, s, path) -> TopSpace:
    topo = _need(s, "topology", path)
    if topo == "spectrum":
        return spec(_ring(sc, _need(s, "ring", path), path)).space
    points = tuple(str(p) for p in _need(s, "points", path))
    try:
        if topo == "discrete":
            return TopSpace.discrete(points)
        if topo == "explicit":
            X = TopSpace(points, frozenset(frozenset(o) for o in _need(s, "opens", path)))
            problems = X.check()
            if problems:
                raise ParseError(f"{path}: {problems[0]}")
            return X
    except ValueError as exc:
        raise ParseError(f"{path}: {exc}") from None
    raise ParseError(f"{path}: unknown topology {topo!r}")


def _gamma(sc, g, path) -> Pseudogroup:
    g = _order(g, "gamma", path)
    rings = [_ring(sc, rid, f"{path}.rings") for rid in g.get("rings", [])]
    isos = []
    for iid in g.get("isos", []):
        if iid not in sc.isos:
            raise DanglingReference(f"{path}.isos: unknown iso {iid!r}")
        isos.append(sc.isos[iid])
    try:
        return close(rings, isos, sc.universe)
    except AffineError as exc:
        raise ParseError(f"{path}: {type(exc).__name__}: {exc}") from None


def _chart(sc, c, X, path) -> AffineChart:
    c = _order(c, "chart", path)
    R = _ring(sc, _need(c, "ring", path), path)
    opened = [str(p) for p in _need(c, "open", path)]
    for p in opened:
        if p not in X.point_set:
            raise DanglingReference(f"{path}.open: unknown point {p!r}")
    phi = {str(k): str(v) for k, v in _need(c, "phi", path).items()}
    if set(phi) != set(opened):
        raise ParseError(f"{path}.phi: must be defined exactly on the open set")
    pts = set(spec(R).points)
    for v in phi.values():
        if v not in pts:
            raise DanglingReference(f"{path}.phi: {v!r} is not a point of spec {R.id}")
    return AffineChart.of(opened, R, phi)


def _atlas(sc, a, path) -> StructureHandle:
    sid = _need(a, "space", path)
    if sid not in sc.spaces:
        raise DanglingReference(f"{path}: unknown space {sid!r}")
    X = sc.spaces[sid]
    a["gamma"] = _order(_need(a, "gamma", path), "gamma", f"{path}.gamma")
    gamma = _gamma(sc, a["gamma"], f"{path}.gamma")
    a["charts"] = [_order(c, "chart", f"{path}.charts[{i}]") for i, c in enumerate(_need(a, "charts", path))]
    charts = [_chart(sc, c, X, f"{path}.charts[{i}]") for i, c in enumerate(a["charts"])]
    return StructureHandle(AtlasData(X, charts, gamma), note=a["id"])


def _glue(sc, g, path) -> dict:
    sid = _need(g, "space", path)
    if sid not in sc.spaces:
        raise DanglingReference(f"{path}: unknown space {sid!r}")
    X = sc.spaces[sid]
    charts, assign = [], {}
    g["charts"] = [_order(c, "glue_chart", f"{path}.charts[{i}]") for i, c in enumerate(_need(g, "charts", path))]
    for i, c in enumerate(g["charts"]):
        cp = f"{path}.charts[{i}]"
        R = _ring(sc, _need(c, "ring", cp), cp)
        tag = str(_need(c, "tag", cp))
        charts.append((tag, R))
        if "chart" in c:
            c["chart"] = _order(c["chart"], "chart", f"{cp}.chart")
            assign[tag] = _chart(sc, c["chart"], X, f"{cp}.chart")
    idents = []
    for i, pair in enumerate(g.get("identifications", [])):
        try:
            (t1, p), (t2, q) = pair
        except (TypeError, ValueError):
            raise ParseError(f"{path}.identifications[{i}]: expected [[tag, point], [tag, point]]") from None
        idents.append(((str(t1), str(p)), (str(t2), str(q))))
    from .gluing import GlueScenario

    scen = GlueScenario(charts, idents)
    problems = scen.problems()
    if problems:
        raise DanglingReference(f"{path}: {problems[0]}")
    return {"space": X, "scenario": scen, "assignments": assign}


def _comparison(sc, c, path) -> dict:
    kind = _need(c, "kind", path)
    x, y = _need(c, "x", path), _need(c, "y", path)
    if kind == "spaces":
        pool = sc.spaces
    elif kind == "schemes":
        pool = sc.schemes
    else:
        raise ParseError(f"{path}: unknown comparison kind {kind!r}")
    for v in (x, y):
        if v not in pool:
            raise DanglingReference(f"{path}: unknown {kind[:-1]} {v!r}")
    decks = {}
    for key in ("decks", "back_decks"):
        decks[key] = []
        for iid in c.get(key, []):
            if iid not in sc.isos:
                raise DanglingReference(f"{path}.{key}: unknown iso {iid!r}")
            decks[key].append(sc.isos[iid])
    homeo = c.get("homeomorphism")
    if homeo is not None:
        homeo = {str(k): str(v) for k, v in homeo.items()}
    return {"id": c["id"], "kind": kind, "x": x, "y": y, "decks": decks["decks"], "back_decks": decks["back_decks"], "homeomorphism": homeo}


# --------------------------------------------------------------------------
# text form


def dumps(doc) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def serialize(sc: ScenarioFile) -> str:
    return dumps(sc.doc)


def parse_text(text: str) -> ScenarioFile:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return parse_document(doc)


def parse_scenario(path) -> ScenarioFile:
    with open(path, encoding="utf-8") as fh:
        return parse_text(fh.read())
