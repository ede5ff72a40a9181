"""Command-line interface.

Subcommands: build, analyze, trace, triangle, relax, export, enumerate,
serve.  Exit codes: 0 success, 1 domain error, 2 usage error.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from . import generators
from .errors import CurvagonError, UnknownSolid
from .specfile import parse_spec, write_spec
from .surface import Surface


def load_surface(args) -> Surface:
    if getattr(args, "preset", None):
        return preset(args.preset)
    if getattr(args, "spec", None):
        return parse_spec(Path(args.spec).read_text())
    raise UnknownSolid("give either --preset or --spec")


def preset(name: str) -> Surface:
    """Named generator presets: any cataloged solid, ``torus-9fold`` or
    ``torus-9fold-N``, and ``football-C-R`` disks."""
    if name.startswith("torus-9fold"):
        rest = name[len("torus-9fold"):]
        sectors = int(rest[1:]) if rest else 9
        return generators.torus_9fold(sectors)
    if name.startswith("football-"):
        parts = name.split("-")
        if len(parts) != 3:
            raise UnknownSolid(f"football preset is football-C-R, got {name!r}")
        return generators.football_disk(int(parts[1]), int(parts[2]))
    return generators.solid(name)


def _add_surface_source(p: argparse.ArgumentParser):
    p.add_argument("--preset", help="generator preset name")
    p.add_argument("--spec", help="surface spec file")


def cmd_build(args) -> int:
    s = load_surface(args)
    text = write_spec(s)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_analyze(args) -> int:
    from .report import render_figures, report_json, report_text

    s = load_surface(args)
    out = report_json(s) if args.format == "json" else report_text(s)
    sys.stdout.write(out)
    if args.figures:
        for path in render_figures(s, args.figures):
            sys.stdout.write(f"figure: {path}\n")
    return 0


def _parse_point(text: str):
    from .geodesics import SurfacePoint

    face, x, y = text.split(",")
    return SurfacePoint(int(face), [float(x), float(y)])


def cmd_trace(args) -> int:
    from .geodesics import trace_ray

    s = load_surface(args)
    start = _parse_point(args.start)
    dx, dy = (float(t) for t in args.direction.split(","))
    path = trace_ray(s, start, (dx, dy), args.length)
    sys.stdout.write(f"status: {path.status}\nlength: {path.length:.9g}\n")
    sys.stdout.write("face\tx0\ty0\tx1\ty1\n")
    for f, a, b in path.segments:
        sys.stdout.write(f"{f}\t{a[0]:.9g}\t{a[1]:.9g}\t{b[0]:.9g}\t{b[1]:.9g}\n")
    return 0


def cmd_triangle(args) -> int:
    from .angles import format_angle
    from .geodesics import check_triangle_theorem, triangle

    s = load_surface(args)
    a, b, c = (_parse_point(t) for t in args.corner)
    t = triangle(s, a, b, c, max_strip=args.max_strip)
    dev, enclosed, holds = check_triangle_theorem(t)
    sys.stdout.write(
        f"angles: {t.angles[0]:.9g} {t.angles[1]:.9g} {t.angles[2]:.9g}\n"
        f"deviation: {dev:.9g}\n"
        f"enclosed_vertices: {' '.join(str(i) for i in t.enclosed_vertices)}\n"
        f"enclosed_defect: {format_angle(enclosed)}\n"
        f"theorem: {'holds' if holds else 'fails'}\n"
    )
    return 0


def cmd_relax(args) -> int:
    from .embedding import export_obj, init_embedding, relax

    s = load_surface(args)
    m, rep = relax(init_embedding(s, args.seed), args.iters, args.tol)
    sys.stderr.write(
        f"iterations: {rep.iterations}\nenergy: {rep.final_energy:.9g}\n"
        f"max_edge_residual: {rep.max_edge_residual:.9g}\n"
        f"gradient_norm: {rep.gradient_norm:.9g}\n"
        f"converged: {str(rep.converged).lower()}\n"
    )
    text = export_obj(m)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_export(args) -> int:
    s = load_surface(args)
    if args.format == "obj":
        from .embedding import export_obj, init_embedding, relax

        m, _ = relax(init_embedding(s, args.seed), args.iters, args.tol)
        text = export_obj(m)
    elif args.format == "svg":
        from .embedding import export_svg, unfold_net

        net = unfold_net(s, tree_strategy=args.tree)
        text = export_svg(net)
    else:  # net: machine-readable placement table
        from .embedding import unfold_net

        net = unfold_net(s, tree_strategy=args.tree)
        lines = [f"root: {net.root}", f"overlaps: {len(net.overlaps)}"]
        for f in sorted(net.placements):
            coords = " ".join(
                f"{x:.9g},{y:.9g}" for x, y in net.placements[f])
            lines.append(f"face {f}: {coords}")
        for a, b in net.cut_edges:
            lines.append(f"cut: {a.face},{a.index} {b.face},{b.index}")
        text = "\n".join(lines) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_enumerate(args) -> int:
    from .angles import format_angle

    configs = generators.enumerate_vertex_configs(
        cls=args.cls, max_sides=args.max_sides, max_count=args.max_count,
        uniform=args.uniform)
    sys.stdout.write("config\tangle_sum\tdefect\tclass\tvertices\n")
    for c in configs:
        sides = "(" + ",".join(str(n) for n in c.sides) + ")"
        # predicted closed-solid vertex count, 720 degrees / defect, where integral
        count = "-"
        if c.defect > 0 and (Fraction(720) / c.defect).denominator == 1:
            count = str(Fraction(720) / c.defect)
        sys.stdout.write(
            f"{sides}\t{format_angle(c.angle_sum)}\t{format_angle(c.defect)}"
            f"\t{c.cls}\t{count}\n")
    sys.stdout.write(f"total: {len(configs)}\n")
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=args.host, port=args.port, log_level="warning")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="curvagons",
                                description="workbench for glued regular-polygon surfaces")
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="emit the spec of a preset or spec file")
    _add_surface_source(b)
    b.add_argument("--out")
    b.set_defaults(func=cmd_build)

    a = sub.add_parser("analyze", help="topology and curvature report")
    _add_surface_source(a)
    a.add_argument("--format", choices=("text", "json"), default="text")
    a.add_argument("--figures", help="directory for rendered figures")
    a.set_defaults(func=cmd_analyze)

    t = sub.add_parser("trace", help="trace a geodesic ray")
    _add_surface_source(t)
    t.add_argument("--start", required=True, metavar="FACE,X,Y")
    t.add_argument("--direction", required=True, metavar="DX,DY")
    t.add_argument("--length", type=float, required=True)
    t.set_defaults(func=cmd_trace)

    tr = sub.add_parser("triangle", help="geodesic triangle and enclosed curvature")
    _add_surface_source(tr)
    tr.add_argument("--corner", action="append", required=True, metavar="FACE,X,Y",
                    help="repeat three times")
    tr.add_argument("--max-strip", type=int, default=8, dest="max_strip")
    tr.set_defaults(func=cmd_triangle)

    r = sub.add_parser("relax", help="relax a 3D embedding, print OBJ")
    _add_surface_source(r)
    r.add_argument("--iters", type=int, default=20000)
    r.add_argument("--tol", type=float, default=1e-8)
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--out")
    r.set_defaults(func=cmd_relax)

    e = sub.add_parser("export", help="export obj, svg cut pattern, or net table")
    _add_surface_source(e)
    e.add_argument("--format", choices=("obj", "svg", "net"), required=True)
    e.add_argument("--tree", choices=("bfs", "dfs"), default="bfs")
    e.add_argument("--iters", type=int, default=20000)
    e.add_argument("--tol", type=float, default=1e-8)
    e.add_argument("--seed", type=int, default=0)
    e.add_argument("--out")
    e.set_defaults(func=cmd_export)

    en = sub.add_parser("enumerate", help="enumerate regular vertex configurations")
    en.add_argument("--class", dest="cls", required=True,
                    choices=("convex", "flat", "hyperbolic"))
    en.add_argument("--max-sides", type=int, default=12, dest="max_sides")
    en.add_argument("--max-count", type=int, default=6, dest="max_count")
    en.add_argument("--uniform", action="store_true")
    en.set_defaults(func=cmd_enumerate)

    sv = sub.add_parser("serve", help="run the session service")
    sv.add_argument("--host", default="127.0.0.1")
    sv.add_argument("--port", type=int, default=8077)
    sv.set_defaults(func=cmd_serve)
    return p


def run_cli(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if e.code else 0
    try:
        return args.func(args)
    except CurvagonError as e:
        sys.stderr.write(f"error [{e.code}]: {e}\n")
        return 1
    except FileNotFoundError as e:
        sys.stderr.write(f"error [file_not_found]: {e}\n")
        return 1


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
