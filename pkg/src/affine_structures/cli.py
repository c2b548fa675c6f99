"""Command-line front end: ``affine <command> <scenario.json>``.

Exit codes: 0 when the checked property holds, 1 when it fails (the report
carries witnesses), 2 on unusable input.
"""

from __future__ import annotations

import argparse
import os
import sys
import time

from . import limits
from .atlas import validate_atlas
from .errors import AffineError, NotAdmissible, ParseError
from .gluing import (
    build_quotient,
    classify_by_extension,
    cong_rel,
    enumerate_structures,
    find_tau,
    inverse_decks,
    relative_canonical_structures,
    rho_check,
    structure_sets_equal,
    tau_scheme,
    transport_set,
)
from .pseudogroup import axiom_violations, close
from .scenario import dumps, parse_scenario
from .sheaf import (
    a_star,
    associate_scheme,
    build_extension,
    canonical_pseudogroups,
    relative_canonical_structure,
    unique_structure_check,
)
from .spectrum import Homeo, spec

COMMANDS = (
    "spec",
    "validate-atlas",
    "closure",
    "check-admissible",
    "canonical",
    "glue",
    "compare-spaces",
    "compare-schemes",
    "enumerate",
    "classify",
)


class InputError(Exception):
    pass


def _chart_json(c):
    return {"open": sorted(c.open_set), "ring": c.ring.id, "phi": dict(c.phi)}


def _need_universe(sc):
    if sc.universe is None:
        raise InputError("this command needs a 'universe' section")
    return sc.universe


def _scheme(sc, sid):
    h = sc.atlases[sc.schemes[sid]]
    wit = sc.universe.witnesses if sc.universe else ()
    return build_extension(h.space, h, witnesses=wit)


# --------------------------------------------------------------------------
# commands; each returns (holds, results, witnesses)


def cmd_spec(sc, verbose):
    results = []
    for rid, R in sc.rings.items():
        S = spec(R)
        primes = []
        for p in S.points:
            ideal = sorted(R.fmt(R.elements[i]) for i in S.primes[p]) if R.is_finite else ["0"]
            primes.append({"point": p, "ideal": ideal})
        results.append({"ring": rid, "size": R.size if R.is_finite else None, "primes": primes, "opens": len(S.space.opens)})
    return True, results, []


def cmd_validate_atlas(sc, verbose):
    results, witnesses, ok = [], [], True
    for aid, h in sc.atlases.items():
        rep = validate_atlas(h.base)
        ok &= rep.ok
        results.append({"atlas": aid, "valid": rep.ok, "warnings": [str(w) for w in rep.warnings]})
        witnesses.extend({"atlas": aid, "violation": str(v)} for v in rep.violations)
    return ok, results, witnesses


def cmd_closure(sc, verbose):
    results, witnesses, ok = [], [], True
    for aid, h in sc.atlases.items():
        g = h.gamma
        bad = axiom_violations(g)
        again = close(*g.generators_like(), g.universe)
        idem = again.same_as(g)
        ok &= not bad and idem
        entry = {"atlas": aid, "rings": sorted(g.rings), "isos": len(g.isos), "closed": not bad, "idempotent": idem}
        if verbose:
            entry["provenance"] = [[rule, d, m] for rule, d, m in g.report]
        results.append(entry)
        witnesses.extend({"atlas": aid, "axiom": a, "at": d} for a, d in bad)
    return ok, results, witnesses


def cmd_check_admissible(sc, verbose):
    results, witnesses, ok = [], [], True
    wit = sc.universe.witnesses if sc.universe else ()
    for aid, h in sc.atlases.items():
        rep = validate_atlas(h.base)
        if not rep.ok:
            ok = False
            results.append({"atlas": aid, "valid": False, "admissible": False})
            witnesses.append({"atlas": aid, "violation": str(rep.violations[0])})
            continue
        try:
            s = build_extension(h.space, h, witnesses=wit)
        except NotAdmissible as exc:
            ok = False
            results.append({"atlas": aid, "valid": True, "admissible": False})
            witnesses.append({"atlas": aid, "conflict": exc.conflict, "message": str(exc)})
            continue
        entry = {"atlas": aid, "valid": True, "admissible": True}
        if verbose:
            entry["sections"] = {",".join(sorted(V)): R.id for V, R in s.sheaf.sections.items()}
        results.append(entry)
    return ok, results, witnesses


def cmd_canonical(sc, verbose):
    U = _need_universe(sc)
    results, witnesses, ok = [], [], True
    for sid in sc.schemes:
        s = _scheme(sc, sid)
        gammas = []
        for g in canonical_pseudogroups(s, U):
            atlas = a_star(g, s, U)
            valid = validate_atlas(atlas).ok
            assoc = associate_scheme(s, relative_canonical_structure(g, s, U), U)
            iso_ok = assoc.iso is not None
            ok &= valid and iso_ok
            entry = {"roots": list(g.roots), "flavor": g.flavor, "rings": sorted(g.gamma.rings), "a_star_valid": valid, "associate_admissible": assoc.admissible, "associate_isomorphic": iso_ok}
            if verbose:
                entry["a_star"] = [_chart_json(c) for c in atlas.charts]
            gammas.append(entry)
            if not iso_ok:
                witnesses.append({"scheme": sid, "roots": list(g.roots), "conflict": assoc.conflict})
        u = unique_structure_check(s, U)
        results.append({"scheme": sid, "canonical_pseudogroups": gammas, "unique": u.unique, "uniqueness_consistent": u.consistent})
    return ok, results, witnesses


def cmd_glue(sc, verbose):
    results, witnesses, ok = [], [], True
    for gid, g in sc.glue.items():
        q = build_quotient(g["scenario"])
        entry = {"glue": gid, "classes": [list(c) for c in q.classes], "quotient_law": q.law_holds(), "image_openness_agrees": q.image_openness_agrees()}
        try:
            h = rho_check(q, g["space"], g["assignments"])
            entry["rho"] = dict(h.mapping)
        except AffineError as exc:
            ok = False
            entry["rho"] = None
            witnesses.append({"glue": gid, "error": type(exc).__name__, "message": str(exc), "witness": list(exc.witness or ())})
        results.append(entry)
    return ok, results, witnesses


def _all_charts(ax):
    return [c for _, _, c in ax.charts()]


def cmd_compare_spaces(sc, verbose):
    U = _need_universe(sc)
    results, witnesses, ok = [], [], True
    for comp in sc.comparisons:
        if comp["kind"] != "spaces":
            continue
        X, Y = sc.spaces[comp["x"]], sc.spaces[comp["y"]]
        ax, ay = enumerate_structures(X, U), enumerate_structures(Y, U)
        equal = structure_sets_equal(ax, ay)
        entry = {"comparison": comp["id"], "structures": [len(ax.handles), len(ay.handles)], "structure_sets_equal": equal}
        if comp["homeomorphism"] is not None:
            h = Homeo.of(X, Y, comp["homeomorphism"])
            good = h.is_valid()
            entry["given_homeomorphism_valid"] = good
            entry["transport_equal"] = good and structure_sets_equal(transport_set(ax, h), ay)
            ok &= entry["transport_equal"]
        try:
            tau, matching = find_tau((X, _all_charts(ax)), (Y, _all_charts(ay)))
            entry["tau"] = dict(tau.mapping)
            if verbose:
                entry["matching"] = [list(m) for m in matching]
        except AffineError as exc:
            ok = False
            entry["tau"] = None
            witnesses.append({"comparison": comp["id"], "error": type(exc).__name__, "message": str(exc)})
        ok &= equal
        results.append(entry)
    return ok, results, witnesses


def cmd_compare_schemes(sc, verbose):
    U = _need_universe(sc)
    results, witnesses, ok = [], [], True
    for comp in sc.comparisons:
        if comp["kind"] != "schemes":
            continue
        sx, sy = _scheme(sc, comp["x"]), _scheme(sc, comp["y"])
        ax0, ay0 = relative_canonical_structures(sx, U), relative_canonical_structures(sy, U)
        back = comp["back_decks"] or inverse_decks(comp["decks"])
        holds, fwd, bwd = cong_rel(ax0, ay0, comp["decks"], back)
        entry = {
            "comparison": comp["id"],
            "forward": {k: v[0] for k, v in fwd.conditions.items()},
            "backward": {k: v[0] for k, v in bwd.conditions.items()},
            "congruent": holds,
        }
        if holds:
            try:
                cert = tau_scheme(sx, sy, U, U, comp["decks"])
                entry["tau"] = dict(cert.iso.points)
                if verbose:
                    entry["stalk_isos"] = {x: f"{s.domain.id}->{s.codomain.id}" for x, s in sorted(cert.iso.stalk_isos.items())}
            except AffineError as exc:
                holds = False
                entry["tau"] = None
                witnesses.append({"comparison": comp["id"], "error": type(exc).__name__, "message": str(exc)})
        else:
            bad = fwd if not fwd.holds else bwd
            witnesses.append({"comparison": comp["id"], "failed": bad.failed, "detail": bad.conditions[bad.failed][1]})
        ok &= holds
        results.append(entry)
    return ok, results, witnesses


def cmd_enumerate(sc, verbose):
    U = _need_universe(sc)
    results, ok = [], True
    for xid, X in sc.spaces.items():
        ax = enumerate_structures(X, U)
        entry = {"space": xid, "count": len(ax.handles), "origins": [list(o) for o in ax.origins]}
        if verbose:
            entry["structures"] = [[_chart_json(c) for c in h.charts] for h in ax.handles]
        ok &= bool(ax.handles)
        results.append(entry)
    return ok, results, []


def cmd_classify(sc, verbose):
    U = _need_universe(sc)
    results = []
    for xid, X in sc.spaces.items():
        ax = enumerate_structures(X, U)
        classes = classify_by_extension(ax)
        results.append(
            {
                "space": xid,
                "structures": len(ax.handles),
                "classes": [{"members": list(m), "stalks": {x: R.id for x, R in sorted(s.stalks.items())}} for m, s in classes],
            }
        )
    return True, results, []


HANDLERS = {
    "spec": cmd_spec,
    "validate-atlas": cmd_validate_atlas,
    "closure": cmd_closure,
    "check-admissible": cmd_check_admissible,
    "canonical": cmd_canonical,
    "glue": cmd_glue,
    "compare-spaces": cmd_compare_spaces,
    "compare-schemes": cmd_compare_schemes,
    "enumerate": cmd_enumerate,
    "classify": cmd_classify,
}


# --------------------------------------------------------------------------


def _restrict_universe(sc, ids):
    if not ids:
        return
    U = _need_universe(sc)
    missing = [i for i in ids if i not in U.ids]
    if missing:
        raise InputError(f"--universe names rings outside the declared universe: {missing}")
    sc.universe = U.restrict(ids)


def run_command(cmd, path, universe=None, verbose=False) -> tuple:
    """Run one command; returns (exit code, report dict)."""
    start = time.perf_counter()
    report = {"command": cmd, "scenario": None, "verdict": "error", "universe": [], "results": [], "witnesses": []}
    try:
        sc = parse_scenario(path)
        report["scenario"] = sc.doc.get("name", os.path.basename(str(path)))
        _restrict_universe(sc, universe)
        if sc.universe is not None:
            report["universe"] = sc.universe.stamp()
        holds, results, witnesses = HANDLERS[cmd](sc, verbose)
        report["verdict"] = "holds" if holds else "fails"
        report["results"] = results
        report["witnesses"] = witnesses
        code = 0 if holds else 1
    except (OSError, ParseError, InputError, AffineError) as exc:
        report["witnesses"] = [{"error": type(exc).__name__, "message": str(exc)}]
        code = 2
    report["timing"] = {"seconds": round(time.perf_counter() - start, 4)}
    return code, report


def _env_int(name):
    v = os.environ.get(name)
    return int(v) if v else None


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(prog="affine", description="Affine structures on finite spaces.")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("scenario", help="scenario JSON file")
    ap.add_argument("--universe", default=os.environ.get("AFFINE_UNIVERSE"), help="comma-separated root ring ids")
    ap.add_argument("--max-points", type=int, default=_env_int("AFFINE_MAX_POINTS"))
    ap.add_argument("--max-ring-size", type=int, default=_env_int("AFFINE_MAX_RING_SIZE"))
    ap.add_argument("--report", default=os.environ.get("AFFINE_REPORT"), help="also write the report to this file")
    ap.add_argument("--witnesses", action="store_true", default=bool(os.environ.get("AFFINE_WITNESSES")), help="include full witness detail")
    args = ap.parse_args(argv)
    ids = [s.strip() for s in args.universe.split(",") if s.strip()] if args.universe else None
    with limits.override(max_points=args.max_points, max_ring_size=args.max_ring_size):
        code, report = run_command(args.command, args.scenario, ids, args.witnesses)
    text = dumps(report)
    sys.stdout.write(text)
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write(text)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
