"""Command line: ``zariski-no {zariski,polygon,compare} FILE ...``.

Every command prints one JSON document whose leaves are strings.  Exit codes:
0 success, 1 input error, 2 mathematical precondition failure, 3 internal
invariant violation (including a failed soundness check in ``compare``).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .errors import InputError, InvariantViolation, PreconditionError, ZariskiNoError
from .lattice import DivisorClass, intersect
from .locality import check_theorem1, check_theorem2, generate_flags
from .numbers import QuadraticIrrational, decimal_string, encode, format_rational
from .okounkov import NOPolygon, no_polygon
from .workspace import Workspace, load
from .zariski import free_cluster_of, refine_at, zariski_decompose

EXIT_OK, EXIT_INPUT, EXIT_PRECONDITION, EXIT_INVARIANT = 0, 1, 2, 3


def _bool(b) -> str:
    return "true" if b else "false"


def _class(D: DivisorClass) -> dict:
    return {k: format_rational(v) for k, v in D.as_dict().items()}


def _class_text(D: DivisorClass) -> str:
    return " + ".join(f"{format_rational(v)} {k}" for k, v in D.as_dict().items()) or "0"


def _part(part) -> list:
    return [{"curve": c.name, "coefficient": format_rational(a)} for c, a in part]


def _cluster(wc) -> list:
    return [{"point": p.id, "weight": format_rational(w)} for p, w in wc.entries]


def _affine(f) -> dict:
    return {"slope": encode(f[0]), "intercept": encode(f[1])}


def exact_text(x) -> str:
    if isinstance(x, QuadraticIrrational):
        return f"{format_rational(x.a)}+{format_rational(x.b)}*sqrt({x.d})"
    return format_rational(x)


def zariski_document(ws: Workspace, name: str) -> dict:
    U = ws.universe()
    D = ws.divisor(name)
    z = zariski_decompose(D, U)
    doc = {
        "command": "zariski",
        "divisor": name,
        "D": _class(D),
        "P": _class(z.P),
        "P_text": _class_text(z.P),
        "P_squared": format_rational(intersect(z.P, z.P)),
        "N": _part(z.N),
        "certificates": {
            "negative_definite": _bool(z.certificate.negative_definite),
            "orthogonality": [
                {"curve": c.name, "P_dot": format_rational(intersect(z.P, c.cls))} for c, _ in z.N
            ],
            "nef": [{"curve": n, "P_dot": format_rational(v)} for n, v in z.nef_checks],
        },
    }
    O = ws.marked_point
    if O is not None:
        r = refine_at(z, O)
        doc["refined"] = {
            "point": O.id,
            "N_O": _part(r.N_O),
            "N_O_c": _part(r.N_O_c),
            "N_O_sing": _part(r.N_O_sing),
            "N_O_sm": _part(r.N_O_sm),
        }
        try:
            doc["refined"]["initial_free_cluster"] = _cluster(free_cluster_of(r.N_O_sing, O))
        except ZariskiNoError as exc:
            doc["refined"]["initial_free_cluster"] = {"undetermined": str(exc)}
    return doc


def polygon_json(poly: NOPolygon) -> dict:
    return {
        "t_min": encode(poly.t_min),
        "t_max": encode(poly.t_max),
        "P_squared": encode(poly.positive_square),
        "area": encode(poly.area()),
        "vertices": [{"x": encode(x), "y": encode(y)} for x, y in poly.vertices],
        "chambers": [
            {
                "t0": encode(c.t0),
                "t1": encode(c.t1),
                "support": list(c.support),
                "alpha": _affine(c.alpha),
                "beta": _affine(c.beta),
                "coefficients": [
                    {"curve": n, "slope": encode(s), "intercept": encode(i)} for n, s, i in c.coefficients
                ],
            }
            for c in poly.chambers
        ],
    }


def polygon_document(ws: Workspace, divisor: str, flag_name: str) -> tuple[dict, NOPolygon]:
    flag = ws.flag(flag_name)
    poly = no_polygon(ws.divisor(divisor), flag, ws.universe())
    doc = {"command": "polygon", "divisor": divisor, "flag": flag_name, "kind": flag.kind.value}
    doc["flag_data"] = {
        "curve": flag.curve.name,
        "point": flag.point.id,
        "center": flag.center.id,
        "blowup": [p.id for p in flag.blowups],
    }
    doc.update(polygon_json(poly))
    return doc, poly


def render_csv(poly: NOPolygon) -> str:
    rows = ["x,y"] + [f"{exact_text(x)},{exact_text(y)}" for x, y in poly.vertices]
    return "\n".join(rows) + "\n"


def render_svg(poly: NOPolygon, title: str = "") -> str:
    """Outline, axes and exact vertex labels; coordinates are decimal renderings."""
    pts = [(decimal_string(x), decimal_string(y)) for x, y in poly.vertices]
    xs = [x for x, _ in poly.vertices] + [0]
    ys = [y for _, y in poly.vertices] + [0]
    x_hi, y_hi = decimal_string(max(xs) + 1), decimal_string(max(ys) + 1)
    x_lo, y_lo = decimal_string(min(xs) - 1), decimal_string(min(ys) - 1)
    out = [
        '<svg xmlns="http://www.w3.org/2000/svg" width="480" height="480" '
        f'viewBox="{x_lo} {y_lo} {decimal_string(max(xs) - min(xs) + 2)} {decimal_string(max(ys) - min(ys) + 2)}">',
        f"<title>{title}</title>",
        f'<g transform="translate(0 {decimal_string(max(ys) + min(ys))}) scale(1 -1)">',
        f'<line x1="{x_lo}" y1="0" x2="{x_hi}" y2="0" stroke="gray" vector-effect="non-scaling-stroke"/>',
        f'<line x1="0" y1="{y_lo}" x2="0" y2="{y_hi}" stroke="gray" vector-effect="non-scaling-stroke"/>',
        '<polygon points="'
        + " ".join(f"{x},{y}" for x, y in pts)
        + '" fill="lightsteelblue" stroke="navy" vector-effect="non-scaling-stroke"/>',
        "</g>",
    ]
    for (x, y), (ex, ey) in zip(pts, poly.vertices):
        out.append(f"<!-- vertex ({exact_text(ex)}, {exact_text(ey)}) at ({x}, {y}) -->")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _comparison_json(c) -> dict:
    return {"flag": c.flag.describe(), "tag": c.tag, "equal": _bool(c.equal)}


def _report_json(r) -> dict:
    recon = {}
    for side, v in r.reconstruction.items():
        if isinstance(v, dict):
            recon[side] = [{"curve": k, "coefficient": format_rational(a)} for k, a in sorted(v.items())]
        else:
            recon[side] = _cluster(v)
    return {
        "items": {k: _bool(v) for k, v in r.items},
        "sound": _bool(r.ok),
        "failures": list(r.failures),
        "notes": list(r.notes),
        "comparisons": [_comparison_json(c) for c in r.comparisons],
        "reconstruction": recon,
    }


def compare_document(ws: Workspace, left: str, right: str, depth: int, count: int = 1) -> tuple[dict, bool]:
    U = ws.universe()
    O = ws.marked_point
    if O is None:
        raise InputError("the workspace declares no marked point")
    D, D2 = ws.divisor(left), ws.divisor(right)
    family = generate_flags(U, O, depth, count)
    t1 = check_theorem1(D, D2, U, O, family)
    t2 = check_theorem2(D, D2, U, O, family)
    doc = {
        "command": "compare",
        "left": left,
        "right": right,
        "point": O.id,
        "depth": str(depth),
        "family": [{"flag": f.describe(), "tag": t} for t, f in family.flags],
        "locally_equivalent": _bool(t1.item("1")),
        "smooth_equivalent": _bool(t2.item("1")),
        "distinguishing_flags": [c.flag.describe() for c in t1.distinguishing],
        "theorem1": _report_json(t1),
        "theorem2": _report_json(t2),
    }
    return doc, t1.ok and t2.ok


def dump(doc) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="zariski-no", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)
    z = sub.add_parser("zariski", help="Zariski decomposition and its refinement at the marked point")
    z.add_argument("file")
    z.add_argument("--divisor", required=True)
    p = sub.add_parser("polygon", help="Newton-Okounkov polygon of a divisor for a flag")
    p.add_argument("file")
    p.add_argument("--divisor", required=True)
    p.add_argument("--flag", required=True)
    p.add_argument("--svg")
    p.add_argument("--csv")
    c = sub.add_parser("compare", help="locality checks for two divisors on a generated flag family")
    c.add_argument("file")
    c.add_argument("--left", required=True)
    c.add_argument("--right", required=True)
    c.add_argument("--depth", type=int, default=4)
    c.add_argument("--count", type=int, default=1, help="generic points per cluster point")
    c.add_argument("--json", help="also write the document to this path")
    return ap


def _error(code: int, exc: Exception) -> int:
    reason = getattr(exc, "reason", "input" if code == EXIT_INPUT else "error")
    sys.stdout.write(dump({"error": {"exit_code": str(code), "reason": reason, "message": str(exc)}}))
    sys.stderr.write(f"zariski-no: {exc}\n")
    return code


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        try:
            ws = load(args.file)
        except OSError as exc:
            raise InputError(f"cannot read {args.file}: {exc.strerror}") from None
        if args.command == "zariski":
            doc, ok = zariski_document(ws, args.divisor), True
        elif args.command == "polygon":
            doc, poly = polygon_document(ws, args.divisor, args.flag)
            if args.svg:
                Path(args.svg).write_text(render_svg(poly, f"{args.divisor} / {args.flag}"), encoding="utf-8")
            if args.csv:
                Path(args.csv).write_text(render_csv(poly), encoding="utf-8")
            ok = True
        else:
            if args.depth < 1:
                raise PreconditionError("depth must be at least 1")
            doc, ok = compare_document(ws, args.left, args.right, args.depth, args.count)
            if args.json:
                Path(args.json).write_text(dump(doc), encoding="utf-8")
    except InputError as exc:
        return _error(EXIT_INPUT, exc)
    except PreconditionError as exc:
        return _error(EXIT_PRECONDITION, exc)
    except InvariantViolation as exc:
        return _error(EXIT_INVARIANT, exc)
    sys.stdout.write(dump(doc))
    return EXIT_OK if ok else EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
