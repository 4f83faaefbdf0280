"""``geoatoms`` command line.

Exit codes: 0 success (``check``: the file describes an atom), 1 not an atom
or a failed verification, 2 unreadable or malformed input, 3 degenerate
arrangement (coincident geodesics, triple point).
"""

from __future__ import annotations

import argparse
import json
import sys

from . import atom_check as ac
from .catalog import Report, Row, verify_theorem1
from .errors import DegenerateInputError, WalkBudgetExceeded
from .geodesic_arrangements import KLEIN, TORUS, build, search_spec
from .specfile import SpecFile, SpecFileError, format_spec, read
from .surface_map import SurfaceKind
from .svg import RenderSpec, render

EXIT_OK, EXIT_NOT_ATOM, EXIT_PARSE, EXIT_DEGENERATE = 0, 1, 2, 3
WALK_BUDGET = 10 ** 5
# surface-specific rejections name the reason better than a bare odd cycle
SPECIFIC = ("odd_selfint_corollary", "torus_even_crossings", "loop_cell", "crossing_parity")


def _load(path):
    try:
        return read(path)
    except OSError as exc:
        raise SpecFileError(f"{path}: {exc.strerror}") from None


def criteria_report(g, c) -> Report:
    """Every criterion that applies to the arrangement, one row each."""
    rep = Report()
    reason = ac.validate_admissible(g, c)
    rep.add("admissible", reason is None, reason or "connected, simple crossings")
    if reason is not None:
        return rep
    verdict = ac.is_atom(g, c)
    inv = verdict.invariants
    rep.add("cellular", verdict.status != "not_cellular",
            f"chi={inv.chi} orientable={'yes' if inv.orientable else 'no'} on {g.surface.label}")
    if verdict.status != "not_cellular":
        if verdict.witness is not None:
            rep.add("two_colorable", False,
                    f"odd face chain {list(verdict.witness.faces)} across edges "
                    f"{list(verdict.witness.edges)}")
        else:
            rep.add("two_colorable", True, "colors " + "".join("wb"[x] for x in verdict.coloring.colors))
    try:
        walk = ac.statement1_check(g, c, budget=WALK_BUDGET)
        if walk is None:
            rep.add("simple_walk_parity", True, "every simple closed walk agrees")
        else:
            rep.add("simple_walk_parity", False,
                    f"walk darts {list(walk.darts)}: u={walk.u}, "
                    f"orientation change={ac.orientation_change(walk, g)}")
    except WalkBudgetExceeded:
        rep.rows.append(Row("simple_walk_parity", "skip", f"more than {WALK_BUDGET} walks"))
    bad = ac.prop1_check(c)
    rep.add("crossing_parity", bad is None,
            "ok" if bad is None else f"curve {bad}: reversal disagrees with crossing parity")
    if g.surface is TORUS and c.num_curves >= 2:
        bad = ac.torus_parity_check(c)
        rep.add("torus_even_crossings", bad is None,
                "ok" if bad is None else f"curve {bad} crosses the others an odd or zero number of times")
    if g.surface is KLEIN:
        rejected = ac.klein_odd_selfint_reject(c)
        rep.add("odd_selfint_corollary", not rejected,
                "single curve with odd self-crossings" if rejected else "not applicable")
        face = ac.klein_loop_cell_check(g)
        rep.add("loop_cell", face is None, "ok" if face is None else f"face {face} is bounded by one loop")
        for k in range(c.num_curves):
            for v in ac.self_crossing_vertices(c, k):
                counts = ac.loop_crossings(c, k, v)
                orient = ac.klein_segment_orientation(c, k, v)
                rep.add(f"split_parity[{k}@{v}]", all(n % 2 for n in counts), f"loop counts {counts}")
                rep.add(f"loop_orientation[{k}@{v}]", orient == (1, 1), f"orientation changes {orient}")
    return rep


def cmd_check(args) -> int:
    sf = _load(args.file)
    try:
        g, c, _ = build(sf.surface, sf.specs)
    except DegenerateInputError as exc:
        print(f"degenerate arrangement: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    verdict = ac.is_atom(g, c)
    rep = criteria_report(g, c)
    failed = [r.name for r in rep.rows if r.status == "fail"]
    reason = None
    if not verdict.is_atom:
        reason = next((n for n in SPECIFIC if n in failed), verdict.reason or verdict.status)
    if args.json:
        out = {
            "surface": sf.surface.label,
            "geodesics": [format_spec(s) for s in sf.specs],
            "status": verdict.status,
            "atom": verdict.is_atom,
            "reason": reason,
            "invariants": None if verdict.invariants is None else {
                "V": verdict.invariants.v, "E": verdict.invariants.e, "F": verdict.invariants.f,
                "chi": verdict.invariants.chi, "orientable": verdict.invariants.orientable,
                "face_degrees": list(verdict.invariants.face_degrees)},
            "curves": c.stats(),
            "criteria": [{"name": r.name, "status": r.status, "detail": r.detail} for r in rep.rows],
            "failed": failed,
        }
        print(json.dumps(out, sort_keys=True))
    else:
        print(f"surface {sf.surface.label}, {len(sf.specs)} geodesic(s)")
        print(f"verdict: {verdict.describe()}")
        if reason is not None:
            print(f"reason: {reason}")
        inv = verdict.invariants
        if inv is not None:
            print(f"invariants: V={inv.v} E={inv.e} F={inv.f} chi={inv.chi} "
                  f"orientable={'yes' if inv.orientable else 'no'} faces={list(inv.face_degrees)}")
        for spec, row in zip(sf.specs, c.stats()):
            print(f"curve {row['curve']} [{format_spec(spec)}]: self_crossings={row['self_crossings']} "
                  f"cross_counts={row['cross_counts']} "
                  f"reverses_orientation={'yes' if row['reverses_orientation'] else 'no'}")
        print("criteria:")
        for line in rep.to_text().splitlines()[:-1]:
            print("  " + line)
        if failed:
            print("failed: " + " ".join(failed))
    return EXIT_OK if verdict.is_atom else EXIT_NOT_ATOM


def cmd_theorem1(args) -> int:
    report = verify_theorem1(bounds=args.bounds)
    sys.stdout.write(report.to_json_lines() if args.json else report.to_text())
    return EXIT_OK if report.ok else EXIT_NOT_ATOM


def _size(text):
    try:
        w, h = text.lower().split("x")
        return int(w), int(h)
    except ValueError:
        raise argparse.ArgumentTypeError(f"size must look like 480x480, got {text!r}") from None


def cmd_render(args) -> int:
    sf = _load(args.file)
    w, h = args.size
    try:
        spec = RenderSpec(width=w, height=h)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    try:
        _, _, arr = build(sf.surface, sf.specs)
    except DegenerateInputError as exc:
        print(f"degenerate arrangement: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    doc = render(arr, spec)
    if args.output in (None, "-"):
        sys.stdout.write(doc)
    else:
        with open(args.output, "w") as fh:
            fh.write(doc)
    return EXIT_OK


def cmd_search(args) -> int:
    surface = SurfaceKind.from_label(args.surface)
    if surface not in (TORUS, KLEIN):
        print("error: search supports torus and klein", file=sys.stderr)
        return EXIT_PARSE
    results = search_spec(surface, curves=args.curves, self_crossings=args.self_crossings,
                          cross=args.cross, max_coord=args.bounds, max_den=args.den,
                          simple=args.simple, atoms_only=args.atoms, limit=args.limit)
    for specs in results:
        print(" ; ".join(format_spec(s) for s in specs))
    print(f"count {len(results)}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="geoatoms",
                                     description="Geodesic atoms on constant-curvature surfaces.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="decide whether a spec file describes an atom")
    p.add_argument("file")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("theorem1", help="re-verify the small geodesic atoms")
    p.add_argument("--bounds", type=int, default=3,
                   help="coordinate bound for the exhaustive demonstrations")
    p.add_argument("--json", action="store_true", help="one JSON object per criterion")
    p.set_defaults(func=cmd_theorem1)

    p = sub.add_parser("render", help="draw the arrangement as SVG")
    p.add_argument("file")
    p.add_argument("-o", "--output")
    p.add_argument("--size", type=_size, default=(480, 480), metavar="WxH")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("search", help="grid search for geodesic parameters")
    p.add_argument("surface", choices=["torus", "klein"])
    p.add_argument("--curves", type=int, default=1)
    p.add_argument("--self", dest="self_crossings", type=int, default=None)
    p.add_argument("--cross", type=int, default=None)
    p.add_argument("--bounds", type=int, default=3, help="max |p|, |q|")
    p.add_argument("--den", type=int, default=4, help="max offset denominator")
    p.add_argument("--simple", action="store_true", help="only non-self-crossing geodesics")
    p.add_argument("--atoms", action="store_true", help="keep only atoms")
    p.add_argument("--limit", type=int, default=None)
    p.set_defaults(func=cmd_search)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SpecFileError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
