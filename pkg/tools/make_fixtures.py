"""Regenerate the bundled scenario files in fixtures/.

Every document is parsed and written back through the serializer, so the
files on disk are in canonical form.
"""

from __future__ import annotations

import json
import pathlib

from affine_structures.scenario import parse_document, serialize

ROOT = pathlib.Path(__file__).resolve().parent.parent / "fixtures"

Z6 = {"id": "Z6", "kind": "zmod", "n": 6}
CUBE_ROOT_2 = ["-2", "0", "0", "1"]


def chart(open_, ring, phi):
    return {"open": open_, "ring": ring, "phi": phi}


DOCS = {}

DOCS["stock_rings"] = {
    "name": "stock rings",
    "description": "Small rings whose spectra are listed by the spec command.",
    "rings": [{"id": f"Z{n}", "kind": "zmod", "n": n} for n in range(2, 13)]
    + [
        {"id": "F4", "kind": "galois", "p": 2, "f": [1, 1, 1]},
        {"id": "F8", "kind": "galois", "p": 2, "f": [1, 1, 0, 1]},
        {"id": "F9", "kind": "galois", "p": 3, "f": [1, 0, 1]},
        {"id": "Z2xZ3", "kind": "product", "factors": [{"kind": "zmod", "n": 2}, {"kind": "zmod", "n": 3}]},
        {"id": "Z4[x]/(x^2)", "kind": "poly_quotient", "n": 4, "f": [0, 0, 1]},
        {"id": "Q", "kind": "number_field", "f": ["0", "1"]},
    ],
}

DOCS["z6_affine"] = {
    "name": "spec Z/6",
    "description": "The affine scheme of Z/6 with its two distinguished-open charts glued back together.",
    "rings": [
        Z6,
        {"id": "Z6_2", "kind": "localization", "parent": "Z6", "element": 2},
        {"id": "Z6_3", "kind": "localization", "parent": "Z6", "element": 3},
    ],
    "universe": {"roots": ["Z6"]},
    "spaces": [{"id": "X", "topology": "spectrum", "ring": "Z6"}],
    "atlases": [
        {
            "id": "whole",
            "space": "X",
            "gamma": {"rings": ["Z6"]},
            "charts": [chart(["(2)", "(3)"], "Z6", {"(2)": "(2)", "(3)": "(3)"})],
        },
        {
            "id": "distinguished",
            "space": "X",
            "gamma": {"rings": ["Z6"]},
            "charts": [
                chart(["(3)"], "Z6_2", {"(3)": "(0)"}),
                chart(["(2)"], "Z6_3", {"(2)": "(0)"}),
            ],
        },
    ],
    "schemes": [{"id": "S", "atlas": "whole"}],
    "glue": [
        {
            "id": "d2_d3",
            "space": "X",
            "charts": [
                {"tag": "D2", "ring": "Z6_2", "chart": chart(["(3)"], "Z6_2", {"(3)": "(0)"})},
                {"tag": "D3", "ring": "Z6_3", "chart": chart(["(2)"], "Z6_3", {"(2)": "(0)"})},
            ],
            "identifications": [],
        },
        {
            "id": "whole_and_d2",
            "space": "X",
            "charts": [
                {"tag": "A", "ring": "Z6", "chart": chart(["(2)", "(3)"], "Z6", {"(2)": "(2)", "(3)": "(3)"})},
                {"tag": "D2", "ring": "Z6_2", "chart": chart(["(3)"], "Z6_2", {"(3)": "(0)"})},
            ],
            "identifications": [[["A", "(3)"], ["D2", "(0)"]]],
        },
    ],
}

DOCS["example_two_cubic_fields"] = {
    "name": "two presentations of Q(2^(1/3))",
    "description": "One-point space with charts to two nominally distinct copies of the same cubic field.",
    "rings": [
        {"id": "k", "kind": "number_field", "f": CUBE_ROOT_2},
        {"id": "kp", "kind": "number_field", "f": CUBE_ROOT_2},
    ],
    "universe": {"roots": ["k", "kp"], "witnesses": ["sigma"]},
    "isos": [{"id": "sigma", "domain": "k", "codomain": "kp", "image": ["0", "1", "0"]}],
    "spaces": [{"id": "P", "topology": "discrete", "points": ["u"]}],
    "atlases": [
        {"id": "gamma1", "space": "P", "gamma": {"rings": ["k"]}, "charts": [chart(["u"], "k", {"u": "(0)"})]},
        {
            "id": "gamma2",
            "space": "P",
            "gamma": {"rings": ["k"], "isos": ["sigma"]},
            "charts": [chart(["u"], "k", {"u": "(0)"}), chart(["u"], "kp", {"u": "(0)"})],
        },
    ],
    "schemes": [{"id": "spec_k", "atlas": "gamma1"}],
}

DOCS["rational_vs_quadratic"] = {
    "name": "spec Q versus spec Q(sqrt 2)",
    "description": "Two one-point schemes whose spaces carry equal structure sets but whose rings differ.",
    "rings": [
        {"id": "Q", "kind": "number_field", "f": ["0", "1"]},
        {"id": "K", "kind": "number_field", "f": ["-2", "0", "1"]},
    ],
    "universe": {"roots": ["Q", "K"]},
    "spaces": [
        {"id": "P1", "topology": "discrete", "points": ["u"]},
        {"id": "P2", "topology": "discrete", "points": ["v"]},
    ],
    "atlases": [
        {"id": "onQ", "space": "P1", "gamma": {"rings": ["Q"]}, "charts": [chart(["u"], "Q", {"u": "(0)"})]},
        {"id": "onK", "space": "P2", "gamma": {"rings": ["K"]}, "charts": [chart(["v"], "K", {"v": "(0)"})]},
    ],
    "schemes": [{"id": "specQ", "atlas": "onQ"}, {"id": "specK", "atlas": "onK"}],
    "comparisons": [
        {"id": "spaces", "kind": "spaces", "x": "P1", "y": "P2", "homeomorphism": {"u": "v"}},
        {"id": "schemes", "kind": "schemes", "x": "specQ", "y": "specK"},
    ],
}

DOCS["z6_renamed"] = {
    "name": "Z/6 and a renamed copy",
    "description": "The same affine scheme presented through two ring ids, compared through the renaming.",
    "rings": [Z6, {"id": "Z6p", "kind": "zmod", "n": 6}],
    "universe": {"roots": ["Z6", "Z6p"]},
    "isos": [{"id": "rename", "domain": "Z6", "codomain": "Z6p", "images": [[1, 1]]}],
    "spaces": [
        {"id": "X", "topology": "spectrum", "ring": "Z6"},
        {"id": "Y", "topology": "explicit", "points": ["p", "q"], "opens": [[], ["p"], ["q"], ["p", "q"]]},
    ],
    "atlases": [
        {"id": "onX", "space": "X", "gamma": {"rings": ["Z6"]}, "charts": [chart(["(2)", "(3)"], "Z6", {"(2)": "(2)", "(3)": "(3)"})]},
        {"id": "onY", "space": "Y", "gamma": {"rings": ["Z6p"]}, "charts": [chart(["p", "q"], "Z6p", {"p": "(2)", "q": "(3)"})]},
    ],
    "schemes": [{"id": "SX", "atlas": "onX"}, {"id": "SY", "atlas": "onY"}],
    "comparisons": [
        {"id": "spaces", "kind": "spaces", "x": "X", "y": "Y", "homeomorphism": {"(2)": "p", "(3)": "q"}},
        {"id": "schemes", "kind": "schemes", "x": "SX", "y": "SY", "decks": ["rename"]},
    ],
}

DOCS["z6_vs_z4xz9"] = {
    "name": "Z/6 against Z/4 x Z/9",
    "description": "Two-point affine schemes with non-isomorphic rings.",
    "rings": [Z6, {"id": "Z4xZ9", "kind": "product", "factors": [{"kind": "zmod", "n": 4}, {"kind": "zmod", "n": 9}]}],
    "universe": {"roots": ["Z6", "Z4xZ9"]},
    "spaces": [
        {"id": "X", "topology": "spectrum", "ring": "Z6"},
        {"id": "Y", "topology": "spectrum", "ring": "Z4xZ9"},
    ],
    "atlases": [
        {"id": "onX", "space": "X", "gamma": {"rings": ["Z6"]}, "charts": [chart(["(2)", "(3)"], "Z6", {"(2)": "(2)", "(3)": "(3)"})]},
        {
            "id": "onY",
            "space": "Y",
            "gamma": {"rings": ["Z4xZ9"]},
            "charts": [chart(
                    ["((0,1),(2,0))", "((0,3),(1,0))"],
                    "Z4xZ9",
                    {"((0,1),(2,0))": "((0,1),(2,0))", "((0,3),(1,0))": "((0,3),(1,0))"},
                )],
        },
    ],
    "schemes": [{"id": "SX", "atlas": "onX"}, {"id": "SY", "atlas": "onY"}],
    "comparisons": [{"id": "schemes", "kind": "schemes", "x": "SX", "y": "SY"}],
}

DOCS["two_points_z3"] = {
    "name": "spec Z/3 disjoint union spec Z/3",
    "description": "A two-point scheme with a universe offering Z/3 and Z/3 x Z/3.",
    "rings": [
        {"id": "Z3", "kind": "zmod", "n": 3},
        {"id": "Z3xZ3", "kind": "product", "factors": [{"kind": "zmod", "n": 3}, {"kind": "zmod", "n": 3}]},
    ],
    "universe": {"roots": ["Z3", "Z3xZ3"]},
    "spaces": [{"id": "Y", "topology": "discrete", "points": ["a", "b"]}],
    "atlases": [
        {
            "id": "points",
            "space": "Y",
            "gamma": {"rings": ["Z3"]},
            "charts": [chart(["a"], "Z3", {"a": "(0)"}), chart(["b"], "Z3", {"b": "(0)"})],
        }
    ],
    "schemes": [{"id": "S", "atlas": "points"}],
}

DOCS["glue_points"] = {
    "name": "small gluings",
    "description": "Quotients of disjoint unions of spectra checked against target spaces.",
    "rings": [Z6, {"id": "Z3", "kind": "zmod", "n": 3}, {"id": "Q", "kind": "number_field", "f": ["0", "1"]}],
    "spaces": [
        {"id": "one", "topology": "discrete", "points": ["o"]},
        {"id": "two", "topology": "discrete", "points": ["s", "t"]},
    ],
    "glue": [
        {
            "id": "z3_twice",
            "space": "one",
            "charts": [
                {"tag": "L", "ring": "Z3", "chart": chart(["o"], "Z3", {"o": "(0)"})},
                {"tag": "R", "ring": "Z3", "chart": chart(["o"], "Z3", {"o": "(0)"})},
            ],
            "identifications": [[["L", "(0)"], ["R", "(0)"]]],
        },
        {
            "id": "z6_and_q",
            "space": "two",
            "charts": [
                {"tag": "A", "ring": "Z6", "chart": chart(["s", "t"], "Z6", {"s": "(2)", "t": "(3)"})},
                {"tag": "B", "ring": "Q", "chart": chart(["t"], "Q", {"t": "(0)"})},
            ],
            "identifications": [[["A", "(3)"], ["B", "(0)"]]],
        },
    ],
}

DOCS["glue_mismatch"] = {
    "name": "gluing the wrong points",
    "description": "An identification that merges points sent to different points of the target.",
    "rings": [Z6, {"id": "Z3", "kind": "zmod", "n": 3}],
    "spaces": [{"id": "two", "topology": "discrete", "points": ["s", "t"]}],
    "glue": [
        {
            "id": "wrong",
            "space": "two",
            "charts": [
                {"tag": "A", "ring": "Z6", "chart": chart(["s", "t"], "Z6", {"s": "(2)", "t": "(3)"})},
                {"tag": "B", "ring": "Z3", "chart": chart(["t"], "Z3", {"t": "(0)"})},
            ],
            "identifications": [[["A", "(2)"], ["B", "(0)"]]],
        }
    ],
}

INVALID = {
    "dangling_ring": {"rings": [Z6], "universe": {"roots": ["Z7"]}},
    "duplicate_id": {"rings": [Z6, Z6]},
    "reducible_field": {"rings": [{"id": "F", "kind": "galois", "p": 2, "f": [1, 0, 1]}]},
}


def main():
    ROOT.mkdir(exist_ok=True)
    (ROOT / "invalid").mkdir(exist_ok=True)
    for name, doc in DOCS.items():
        text = serialize(parse_document(json.loads(json.dumps(doc))))
        (ROOT / f"{name}.json").write_text(text, encoding="utf-8")
    for name, doc in INVALID.items():
        (ROOT / "invalid" / f"{name}.json").write_text(json.dumps(doc, indent=2) + "\n", encoding="utf-8")


if __name__ == "__main__":
    main()
