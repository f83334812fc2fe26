"""Command-line surface for the movability pipeline.

Exit codes: 0 success, 2 malformed input, 3 enumeration cap exceeded,
4 census/catalog mismatch, 5 construction inapplicable.  Exact subcommands
take no tolerance flags; numeric ones expose the tracker defaults.
"""

from __future__ import annotations

import argparse
import json
import pathlib
import sys
from fractions import Fraction

from .catalog import load_catalog
from .constructions import (
    ConstructionInapplicable,
    deltoid_motion,
    dixon_one,
    grid_construction,
    motion_from_embedding,
    s5_motion,
    two_nac_embedding,
)
from .decide import census, classify
from .graphs import Graph, Graph6Error, encode_graph6, graph_from_json, parse_graph6
from .motion import (
    active_nac_colorings,
    all_valuation_tables,
    labeling_from_json,
    labeling_to_json,
    motion_from_json,
    motion_to_json,
    refix_edge,
    verify_compatibility,
    verify_injectivity,
)
from .nac import (
    EnumerationCapExceeded,
    DEFAULT_ENUMERATION_CAP,
    NacColoring,
    constant_distance_closure,
    enumerate_nac,
    is_nac,
)

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_CAP = 3
EXIT_CENSUS = 4
EXIT_CONSTRUCTION = 5


class CliParseError(ValueError):
    pass


def _read_graph(spec: str) -> Graph:
    """graph6 literal, @file, or '-' for stdin (first line)."""
    try:
        if spec == "-":
            text = sys.stdin.readline().strip()
        elif spec.startswith("@"):
            text = pathlib.Path(spec[1:]).read_text().strip().splitlines()[0]
        else:
            text = spec
        if text.lstrip().startswith("{"):
            return graph_from_json(text)
        return parse_graph6(text)
    except (OSError, Graph6Error, ValueError, KeyError, IndexError) as exc:
        raise CliParseError(f"cannot read graph from {spec!r}: {exc}") from exc


def _read_coloring(g: Graph, path: str) -> NacColoring:
    try:
        return NacColoring.from_json(g, pathlib.Path(path).read_text())
    except (OSError, ValueError, KeyError) as exc:
        raise CliParseError(f"bad coloring file {path}: {exc}") from exc


def _coloring_rows(g: Graph, colorings) -> list[dict]:
    return [
        json.loads(c.to_json()) for c in colorings
    ]


def _print_colorings(g: Graph, colorings, fmt: str):
    if fmt == "json":
        print(json.dumps(_coloring_rows(g, colorings), indent=2))
    else:
        edges = g.sorted_edges()
        print("edge      " + "  ".join(f"d{k}" for k in range(len(colorings))))
        for e in edges:
            row = "  ".join(
                "red " if e in c.red else "blue" for c in colorings
            )
            print(f"{str(e):9s} {row}")


def cmd_nac(args) -> int:
    g = _read_graph(args.graph)
    if args.action == "enum":
        colorings = enumerate_nac(g, non_conjugated=args.non_conjugated, cap=args.cap)
        _print_colorings(g, colorings, args.format)
        return EXIT_OK
    coloring = _read_coloring(g, args.coloring)
    ok = is_nac(g, coloring)
    print(json.dumps({"is_nac": ok}))
    return EXIT_OK


def cmd_cdc(args) -> int:
    g = _read_graph(args.graph)
    report = constant_distance_closure(g, cap=args.cap)
    print(encode_graph6(report.closure))
    for k, added in enumerate(report.added, start=1):
        print(f"iteration {k}: added {list(added)}", file=sys.stderr)
    print(f"iterations: {report.iterations}", file=sys.stderr)
    return EXIT_OK


def cmd_classify(args) -> int:
    g = _read_graph(args.graph)
    verdict = classify(g, cap=args.cap)
    if verdict.kind == "UNDECIDED" and "too large" in (verdict.reason or ""):
        print(verdict.to_json())
        return EXIT_CAP
    out = json.loads(verdict.to_json())
    if verdict.certificate is not None and args.out:
        outdir = pathlib.Path(args.out)
        outdir.mkdir(parents=True, exist_ok=True)
        lab_path = outdir / "labeling.json"
        lab_path.write_text(labeling_to_json(verdict.certificate.labeling))
        out["certificate"]["labeling_path"] = str(lab_path)
        if verdict.certificate.motion is not None:
            motion_path = outdir / "motion.json"
            motion_path.write_text(motion_to_json(verdict.certificate.motion))
            out["certificate"]["motion_path"] = str(motion_path)
    print(json.dumps(out, indent=2))
    return EXIT_OK


def cmd_census(args) -> int:
    if args.graphs == "-":
        lines = sys.stdin.read().splitlines()
    else:
        lines = pathlib.Path(args.graphs).read_text().splitlines()
    if args.catalog:
        catalog = {}
        for path in sorted(pathlib.Path(args.catalog).glob("*.g6")):
            catalog[path.stem] = parse_graph6(path.read_text().strip())
    else:
        catalog = load_catalog()
    report = census(
        lines,
        max_n=args.max_n,
        catalog=catalog,
        jobs=args.jobs,
        progress=sys.stderr if args.progress else None,
    )
    text = report.to_json()
    if args.out:
        pathlib.Path(args.out).write_text(text)
    else:
        print(text)
    print(
        f"maximal classes: {len(report.maximal_classes())}, catalog match: {report.matches_catalog}",
        file=sys.stderr,
    )
    return EXIT_OK if report.matches_catalog else EXIT_CENSUS


def cmd_gen(args) -> int:
    from .smallgraphs import connected_graphs_up_to

    sink = open(args.out, "w") if args.out else sys.stdout
    try:
        for g in connected_graphs_up_to(args.max_n):
            sink.write(encode_graph6(g) + "\n")
    finally:
        if args.out:
            sink.close()
    return EXIT_OK


def _write_motion(args, motion, labeling) -> None:
    outdir = pathlib.Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    (outdir / "labeling.json").write_text(labeling_to_json(labeling))
    if motion is not None:
        (outdir / "motion.json").write_text(motion_to_json(motion))
    print(json.dumps({"out": str(outdir), "files": sorted(p.name for p in outdir.iterdir())}))


def cmd_construct(args) -> int:
    if args.method == "dixon1":
        g = _read_graph(args.graph)
        ok, parts = g.is_bipartite()
        if not ok:
            raise ConstructionInapplicable("graph is not bipartite")
        a, b = parts
        xs = [Fraction(s) for s in args.x.split(",")] if args.x else [
            Fraction(i + 1) for i in range(len(a))
        ]
        ys = [Fraction(s) for s in args.y.split(",")] if args.y else [
            Fraction(i + 1) for i in range(len(b))
        ]
        if len(xs) != len(a) or len(ys) != len(b):
            raise CliParseError("parameter counts do not match the bipartition classes")
        labeling, sampler = dixon_one(
            g, dict(zip(sorted(a), xs)), dict(zip(sorted(b), ys))
        )
        _write_motion(args, None, labeling)
        return EXIT_OK
    if args.method == "grid":
        g = _read_graph(args.graph)
        if args.coloring:
            colorings = [_read_coloring(g, args.coloring)]
        else:
            colorings = enumerate_nac(g, non_conjugated=True, cap=args.cap)
        last_error: Exception | None = None
        for coloring in colorings:
            try:
                _, labeling, motion = grid_construction(g, coloring)
            except ConstructionInapplicable as exc:
                last_error = exc
                continue
            _write_motion(args, motion, labeling)
            return EXIT_OK
        raise last_error or ConstructionInapplicable("no NAC-coloring to try")
    if args.method == "two-nac":
        g = _read_graph(args.graph)
        if args.first and args.second:
            pairs = [(_read_coloring(g, args.first), _read_coloring(g, args.second))]
        else:
            reps = enumerate_nac(g, non_conjugated=True, cap=args.cap)
            pairs = [
                (reps[i], reps[j])
                for i in range(len(reps))
                for j in range(i + 1, len(reps))
            ]
        last_error = None
        for first, second in pairs:
            try:
                embedding = two_nac_embedding(g, first, second, seed=args.seed)
                motion = motion_from_embedding(embedding, deltoid_motion())
            except ConstructionInapplicable as exc:
                last_error = exc
                continue
            outdir = pathlib.Path(args.out)
            outdir.mkdir(parents=True, exist_ok=True)
            (outdir / "embedding.json").write_text(embedding.to_json())
            _write_motion(args, motion, motion.induced_labeling())
            return EXIT_OK
        raise last_error or ConstructionInapplicable("no pair of NAC-colorings to try")
    if args.method == "s5":
        labeling, motion = s5_motion(Fraction(args.a))
        _write_motion(args, motion, labeling)
        return EXIT_OK
    if args.method == "glue":
        from . import gluing

        recipes = {
            "s1": gluing.glued_s1,
            "s2": gluing.glued_s2,
            "s3": gluing.glued_s3,
        }
        construction = recipes[args.recipe]()
        outdir = pathlib.Path(args.out)
        outdir.mkdir(parents=True, exist_ok=True)
        (outdir / "labeling.json").write_text(
            labeling_to_json(construction.result.labeling)
        )
        rows = ["sample," + ",".join(f"x{v},y{v}" for v in range(8))]
        for k, sample in enumerate(construction.result.merged_samples):
            cells = [str(k)]
            for v in range(8):
                cells += [f"{sample[v][0]:.17g}", f"{sample[v][1]:.17g}"]
            rows.append(",".join(cells))
        (outdir / "path.csv").write_text("\n".join(rows) + "\n")
        print(
            json.dumps(
                {
                    "out": str(outdir),
                    "injectivity_margin": construction.result.injectivity_margin,
                    "samples": len(construction.result.merged_samples),
                }
            )
        )
        return EXIT_OK
    raise CliParseError(f"unknown construction {args.method}")


def _load_motion(path: str):
    try:
        return motion_from_json(pathlib.Path(path).read_text())
    except (OSError, ValueError, KeyError) as exc:
        raise CliParseError(f"bad motion file {path}: {exc}") from exc


def cmd_motion(args) -> int:
    if args.action == "track":
        import numpy as np

        from .track import track_motion

        labeling = labeling_from_json(pathlib.Path(args.labeling).read_text())
        start = np.array(json.loads(pathlib.Path(args.start).read_text()), dtype=float)
        u, v = (int(x) for x in args.fixed.split(","))
        path = track_motion(
            labeling,
            start,
            (u, v),
            steps=args.steps,
            step_size=args.step_size,
            tol=args.tol,
        )
        csv = path.to_csv()
        if args.out:
            pathlib.Path(args.out).write_text(csv)
        else:
            sys.stdout.write(csv)
        return EXIT_OK
    motion = _load_motion(args.motion)
    if args.action == "verify":
        labeling = verify_compatibility(motion)
        report = verify_injectivity(motion)
        print(
            json.dumps(
                {
                    "compatible": True,
                    "trivial": motion.is_trivial(),
                    "proper": report.proper,
                    "coinciding_pairs": [list(p) for p in report.coinciding_pairs],
                    "collinear_triples": [list(t) for t in report.collinear_triples],
                    "labeling": json.loads(labeling_to_json(labeling)),
                },
                indent=2,
            )
        )
        return EXIT_OK
    if args.action == "valuations":
        tables = all_valuation_tables(motion)
        if args.format == "json":
            print(
                json.dumps(
                    [
                        {
                            "place": str(t.place),
                            "valuations": {f"{u},{v}": val for (u, v), val in t.values},
                        }
                        for t in tables
                    ],
                    indent=2,
                )
            )
        else:
            places = [t.place for t in tables]
            header = "edge      " + "  ".join(f"{str(p):>6s}" for p in places)
            print(header)
            for e in motion.graph.sorted_edges():
                row = "  ".join(f"{t.as_dict()[e]:6d}" for t in tables)
                print(f"{str(e):9s} {row}")
        return EXIT_OK
    if args.action == "active-nac":
        report = active_nac_colorings(motion)
        ordered = sorted(report.colorings, key=lambda c: sorted(c.red))
        _print_colorings(motion.graph, ordered, args.format)
        if not report.complete:
            print("warning: unresolved places; active set is a lower bound", file=sys.stderr)
        return EXIT_OK
    if args.action == "refix":
        u, v = (int(x) for x in args.edge.split(","))
        refixed = refix_edge(motion, u, v)
        text = motion_to_json(refixed)
        if args.out:
            pathlib.Path(args.out).write_text(text)
        else:
            print(text)
        return EXIT_OK
    raise CliParseError(f"unknown motion action {args.action}")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="movability",
        description="decide and certify movability of small graphs",
    )
    sub = p.add_subparsers(dest="command", required=True)

    nac = sub.add_parser("nac", help="NAC-coloring enumeration and checking")
    nac_sub = nac.add_subparsers(dest="action", required=True)
    nac_enum = nac_sub.add_parser("enum")
    nac_enum.add_argument("graph")
    nac_enum.add_argument("--non-conjugated", action="store_true")
    nac_enum.add_argument("--cap", type=int, default=DEFAULT_ENUMERATION_CAP)
    nac_enum.add_argument("--format", choices=("json", "table"), default="json")
    nac_check = nac_sub.add_parser("check")
    nac_check.add_argument("graph")
    nac_check.add_argument("--coloring", required=True)

    cdc = sub.add_parser("cdc", help="constant distance closure")
    cdc.add_argument("graph")
    cdc.add_argument("--cap", type=int, default=DEFAULT_ENUMERATION_CAP)

    cls = sub.add_parser("classify", help="movability verdict with certificate")
    cls.add_argument("graph")
    cls.add_argument("--cap", type=int, default=DEFAULT_ENUMERATION_CAP)
    cls.add_argument("--out", help="directory for certificate files")

    cen = sub.add_parser("census", help="closure census over a graph6 stream")
    cen.add_argument("--graphs", required=True, help="graph6 file or - for stdin")
    cen.add_argument("--max-n", type=int, default=8)
    cen.add_argument("--catalog", help="directory of .g6 files (default: bundled)")
    cen.add_argument("--jobs", type=int, default=1)
    cen.add_argument("--out")
    cen.add_argument("--progress", action="store_true")

    gen = sub.add_parser("gen", help="generate connected graphs up to isomorphism")
    gen.add_argument("--max-n", type=int, required=True)
    gen.add_argument("--out")

    con = sub.add_parser("construct", help="proper flexible labeling constructions")
    con_sub = con.add_subparsers(dest="method", required=True)
    c_dixon = con_sub.add_parser("dixon1")
    c_dixon.add_argument("graph")
    c_dixon.add_argument("--x", help="comma-separated parameters for the x-axis class")
    c_dixon.add_argument("--y")
    c_dixon.add_argument("--out", required=True)
    c_grid = con_sub.add_parser("grid")
    c_grid.add_argument("graph")
    c_grid.add_argument("--coloring", help="coloring JSON file (default: search)")
    c_grid.add_argument("--cap", type=int, default=DEFAULT_ENUMERATION_CAP)
    c_grid.add_argument("--out", required=True)
    c_two = con_sub.add_parser("two-nac")
    c_two.add_argument("graph")
    c_two.add_argument("--first")
    c_two.add_argument("--second")
    c_two.add_argument("--seed", type=int, default=0)
    c_two.add_argument("--cap", type=int, default=DEFAULT_ENUMERATION_CAP)
    c_two.add_argument("--out", required=True)
    c_s5 = con_sub.add_parser("s5")
    c_s5.add_argument("--a", default="2")
    c_s5.add_argument("--out", required=True)
    c_glue = con_sub.add_parser("glue")
    c_glue.add_argument("--recipe", choices=("s1", "s2", "s3"), required=True)
    c_glue.add_argument("--out", required=True)

    mot = sub.add_parser("motion", help="verification and analysis of motions")
    mot_sub = mot.add_subparsers(dest="action", required=True)
    for action in ("verify", "valuations", "active-nac"):
        mp = mot_sub.add_parser(action)
        mp.add_argument("motion")
        if action in ("valuations", "active-nac"):
            mp.add_argument("--format", choices=("json", "table"), default="table")
    m_refix = mot_sub.add_parser("refix")
    m_refix.add_argument("motion")
    m_refix.add_argument("--edge", required=True, help="u,v")
    m_refix.add_argument("--out")
    m_track = mot_sub.add_parser("track")
    m_track.add_argument("--labeling", required=True)
    m_track.add_argument("--start", required=True, help="JSON [[x,y],...] realization")
    m_track.add_argument("--fixed", required=True, help="u,v")
    m_track.add_argument("--steps", type=int, default=200)
    m_track.add_argument("--step-size", type=float, default=0.05)
    m_track.add_argument("--tol", type=float, default=1e-10)
    m_track.add_argument("--out")
    return p


_HANDLERS = {
    "nac": cmd_nac,
    "cdc": cmd_cdc,
    "classify": cmd_classify,
    "census": cmd_census,
    "gen": cmd_gen,
    "construct": cmd_construct,
    "motion": cmd_motion,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _HANDLERS[args.command](args)
    except CliParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (Graph6Error, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except EnumerationCapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except ConstructionInapplicable as exc:
        print(f"construction inapplicable: {exc}", file=sys.stderr)
        return EXIT_CONSTRUCTION


if __name__ == "__main__":
    sys.exit(main())
