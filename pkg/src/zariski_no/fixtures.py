"""Ready-made workspaces used by the tests, the acceptance suite and the README.

``plane``       P^2 with a marked point O and a line through it.
``blown_plane`` Bl_O P^2 with a generic point g on the exceptional curve and a
                marked point x elsewhere.
``cusp``        P^2 blown up at 29 points carrying two cuspidal cubics C, C'
                with the same cusp O and tangent direction q.
``cusp_far``    the same plus one more blown-up point e far from everything.
"""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path

from .cluster import BranchData, CurveRecord
from .lattice import SurfaceModel
from .points import ClusterPoint
from .workspace import DivisorSpec, FlagSpec, Workspace, serialize


def _branch(*pairs, truncated=False):
    return BranchData(tuple(pairs), truncated)


def plane(degrees=(1, 2, 3, 4)) -> Workspace:
    O = ClusterPoint("O")
    l1 = ClusterPoint("l1", O)
    pts = {"O": O, "l1": l1}
    model = SurfaceModel(1)
    L = CurveRecord("L", model.hyperplane(), (_branch((O, 1), (l1, 1)),))
    ws = Workspace(1, pts, (), "O", [L])
    for d in degrees:
        ws.divisors[f"D{d}"] = DivisorSpec(f"D{d}", (("H", Fraction(d)),))
    ws.flags["line"] = FlagSpec("line", (), "L", "O")
    ws.probes["O"] = "L"
    return ws


def blown_plane() -> Workspace:
    """The marked point x is a second base point, away from the blown-up O."""
    O = ClusterPoint("O")
    g = ClusterPoint("g", O)
    l1 = ClusterPoint("l1", O)
    x = ClusterPoint("x")
    m1 = ClusterPoint("m1", x)
    pts = {"O": O, "g": g, "l1": l1, "x": x, "m1": m1}
    model = SurfaceModel(1, (O,))
    L = CurveRecord("L", model.divisor({"H": 1, "O": -1}), (_branch((O, 1), (l1, 1)),))
    M = CurveRecord("M", model.hyperplane(), (_branch((x, 1), (m1, 1)),))
    ws = Workspace(1, pts, ("O",), "x", [L, M])
    ws.divisors["D"] = DivisorSpec("D", (("H", Fraction(2)),))
    ws.flags["exc"] = FlagSpec("exc", (), "E_O", "g")
    ws.flags["line"] = FlagSpec("line", (), "L", "l1")
    ws.flags["probe"] = FlagSpec("probe", (), "M", "x")
    ws.probes["x"] = "M"
    return ws


S_POINTS = ("s1", "s2", "s3")
A_POINTS = tuple(f"a{i}" for i in range(1, 14))
B_POINTS = tuple(f"b{i}" for i in range(1, 14))


def cusp(far: bool = False) -> Workspace:
    """Two cuspidal cubics through O with common tangent q and satellite r.

    C passes through s1..s3 and a1..a13, C' through s1..s3 and b1..b13; on the
    29-point blowup C^2 = C'^2 = -7 and C.C' = 6 (all of it at O).  The class
    P_fix = 19H - 6(E_s1+E_s2+E_s3) - 3 sum E_a - 3 sum E_b has P_fix^2 = 19
    and is orthogonal to both cubics.
    """
    O = ClusterPoint("O")
    q = ClusterPoint("q", O)
    r = ClusterPoint("r", q, "O")
    c4 = ClusterPoint("c4", r)
    d4 = ClusterPoint("d4", r)
    l1 = ClusterPoint("l1", O)
    t2 = ClusterPoint("t2", q)
    pts = {p.id: p for p in (O, q, r, c4, d4, l1, t2)}
    blown = list(S_POINTS + A_POINTS + B_POINTS)
    if far:
        blown.append("e")
    for pid in blown:
        pts[pid] = ClusterPoint(pid)
    model = SurfaceModel(1, tuple(pts[p] for p in blown))

    def cubic(name, fourth, extra):
        through = S_POINTS + extra
        cls = model.divisor({"H": 3, **{p: -1 for p in through}})
        branches = (_branch((O, 2), (q, 1), (r, 1), (fourth, 1)),) + tuple(
            _branch((pts[p], 1)) for p in through
        )
        return CurveRecord(name, cls, branches)

    C = cubic("C", c4, A_POINTS)
    C2 = cubic("C'", d4, B_POINTS)
    L = CurveRecord("L", model.hyperplane(), (_branch((O, 1), (l1, 1)),))
    L0 = CurveRecord("L0", model.hyperplane(), (_branch((O, 1), (q, 1), (t2, 1)),))
    lines = []
    for i, j in ((1, 2), (1, 3), (2, 3)):
        a, b = f"s{i}", f"s{j}"
        lines.append(
            CurveRecord(
                f"M{i}{j}",
                model.divisor({"H": 1, a: -1, b: -1}),
                (_branch((pts[a], 1)), _branch((pts[b], 1))),
            )
        )
    ws = Workspace(1, pts, tuple(blown), "O", [C, C2, L, L0] + lines)
    pfix = (("H", Fraction(19)),) + tuple((s, Fraction(-6)) for s in S_POINTS)
    pfix += tuple((p, Fraction(-3)) for p in A_POINTS + B_POINTS)
    one = Fraction(1)
    ws.divisors["Pfix"] = DivisorSpec("Pfix", pfix)
    ws.divisors["D"] = DivisorSpec("D", pfix, (("C", one),))
    ws.divisors["D'"] = DivisorSpec("D'", pfix, (("C'", one),))
    ws.divisors["D2"] = DivisorSpec("D2", pfix, (("C", Fraction(2)),))
    ws.divisors["D3"] = DivisorSpec(
        "D3", pfix + (("H", one),) + tuple((s, -one) for s in S_POINTS), (("C'", one),)
    )
    if far:
        ws.divisors["Dfar"] = DivisorSpec("Dfar", pfix, (("C", one), ("E_e", Fraction(2))))
    ws.flags["smooth_L"] = FlagSpec("smooth_L", (), "L", "O")
    ws.flags["smooth_L0"] = FlagSpec("smooth_L0", (), "L0", "O")
    ws.flags["proper_C"] = FlagSpec("proper_C", ("O", "q", "r"), "C", "c4")
    ws.flags["proper_C'"] = FlagSpec("proper_C'", ("O", "q", "r"), "C'", "d4")
    ws.flags["inf_EO_q"] = FlagSpec("inf_EO_q", ("O",), "E_O", "q")
    ws.probes["O"] = "L"
    ws.probes["q"] = "L0"
    return ws


def cusp_far() -> Workspace:
    return cusp(far=True)


ALL = {
    "plane": plane,
    "blown_plane": blown_plane,
    "cusp": cusp,
    "cusp_far": cusp_far,
}


def write_all(directory) -> list[Path]:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    out = []
    for name, build in ALL.items():
        path = directory / f"{name}.ws"
        path.write_text(serialize(build()), encoding="utf-8")
        out.append(path)
    return out
