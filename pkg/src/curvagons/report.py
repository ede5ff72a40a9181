"""Human- and machine-readable analysis reports plus rendered figures.

The machine document is plain JSON with every exact angle carried as a
rational string alongside a float convenience value; the text form is a
key: value header plus a tab-delimited per-vertex table.  ``render_figures``
writes matplotlib charts next to whatever delimited output the caller
produces.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .angles import format_angle
from .curvature import topology_report, total_turning, vertex_reports
from .surface import Surface

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def angle_doc(a: Fraction) -> dict:
    return {
        "rational": f"{a.numerator}/{a.denominator}" if a.denominator != 1 else str(a.numerator),
        "float": float(a),
        "display": format_angle(a),
    }


def report_document(s: Surface) -> dict:
    top = topology_report(s)
    verts = []
    for r in vertex_reports(s):
        row = {
            "index": r.index,
            "kind": r.kind,
            "config": list(r.config),
            "angle_sum": angle_doc(r.angle_sum),
        }
        if r.kind == "interior":
            row["defect"] = angle_doc(r.defect)
            if r.defect < 0:
                row["excess"] = angle_doc(-r.defect)
        else:
            row["turning"] = angle_doc(r.turning)
        verts.append(row)
    doc = {
        "counts": {"vertices": top.v, "edges": top.e, "faces": top.f},
        "euler_characteristic": top.chi,
        "closed": top.closed,
        "orientable": top.orientable,
        "genus": top.genus,
        "total_defect": angle_doc(top.total_defect),
        "descartes": (
            "holds" if top.descartes_holds
            else "fails" if top.descartes_holds is not None
            else "not-closed"
        ),
        "boundary_loops": [
            {"slots": [[sl.face, sl.index] for sl in loop.slots],
             "total_turning": angle_doc(total_turning(s, loop))}
            for loop in s.boundary_loops()
        ],
        "vertices": verts,
    }
    return doc


def report_json(s: Surface) -> str:
    return json.dumps(report_document(s), indent=2, sort_keys=True) + "\n"


def report_text(s: Surface) -> str:
    doc = report_document(s)
    c = doc["counts"]
    lines = [
        f"vertices: {c['vertices']}",
        f"edges: {c['edges']}",
        f"faces: {c['faces']}",
        f"euler_characteristic: {doc['euler_characteristic']}",
        f"closed: {str(doc['closed']).lower()}",
        f"orientable: {str(doc['orientable']).lower()}",
        f"genus: {doc['genus'] if doc['genus'] is not None else '-'}",
        f"total_defect: {doc['total_defect']['display']}",
        f"descartes: {doc['descartes']}",
        f"boundary_loops: {len(doc['boundary_loops'])}",
        "",
        "vertex\tkind\tconfig\tangle_sum\tdefect\tturning",
    ]
    for v in doc["vertices"]:
        config = "(" + ",".join(str(k) for k in v["config"]) + ")"
        defect = v["defect"]["display"] if "defect" in v else "-"
        turning = v["turning"]["display"] if "turning" in v else "-"
        lines.append(
            f"{v['index']}\t{v['kind']}\t{config}\t{v['angle_sum']['display']}"
            f"\t{defect}\t{turning}"
        )
    return "\n".join(lines) + "\n"


def render_figures(s: Surface, outdir, prefix: str = "report") -> list[str]:
    """Write matplotlib figures (vertex defect chart, unfolded net) into
    ``outdir``; returns the file paths written."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    written = []

    reports = vertex_reports(s)
    fig, ax = plt.subplots(figsize=(8, 4))
    xs = [r.index for r in reports]
    ys = [float(r.defect) if r.defect is not None else float(r.turning) for r in reports]
    colors = ["tab:blue" if r.kind == "interior" else "tab:gray" for r in reports]
    ax.bar(xs, ys, color=colors)
    ax.axhline(0.0, color="k", linewidth=0.8)
    ax.set_xlabel("vertex")
    ax.set_ylabel("defect (interior) / turning (boundary), degrees")
    ax.set_title("per-vertex curvature")
    path = outdir / f"{prefix}_defects.png"
    fig.savefig(path, dpi=120)
    plt.close(fig)
    written.append(str(path))

    if s.faces and s.is_connected():
        from .embedding import unfold_net

        net = unfold_net(s)
        fig, ax = plt.subplots(figsize=(6, 6))
        for fid in sorted(net.placements):
            chart = net.placements[fid]
            ax.fill(chart[:, 0], chart[:, 1], alpha=0.25,
                    edgecolor="k", linewidth=0.6)
        ax.set_aspect("equal")
        ax.set_title("unfolded net (spanning tree)")
        path = outdir / f"{prefix}_net.png"
        fig.savefig(path, dpi=120)
        plt.close(fig)
        written.append(str(path))
    return written
