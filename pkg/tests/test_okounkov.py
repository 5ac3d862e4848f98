from fractions import Fraction

import pytest

from oracles import (
    area,
    blowup_exceptional_valuation,
    blowup_line_valuation,
    inside,
    normalized_hull,
    plane_line_valuation,
)
from zariski_no.errors import NotAdmissibleError, NotBigError, PreconditionError, UndeterminedError
from zariski_no.cluster import BranchData, CurveRecord, local_intersection
from zariski_no.lattice import SurfaceModel, intersect, transport
from zariski_no.numbers import QuadraticIrrational
from zariski_no.okounkov import (
    FlagKind,
    FlagValuation,
    axis_bottom,
    axis_height,
    branch_flag_sequence,
    flag_valuation,
    infinitesimal_transform,
    leftmost,
    make_flag,
    no_polygon,
    polygons_equal,
)
from zariski_no.points import ClusterPoint
from zariski_no.zariski import CurveUniverse, zariski_decompose

F = Fraction


def test_flag_kinds(plane_ws, blown_ws, cusp_ws):
    assert plane_ws.flag("line").kind is FlagKind.SMOOTH
    assert blown_ws.flag("exc").kind is FlagKind.INFINITESIMAL
    assert cusp_ws.flag("proper_C").kind is FlagKind.PROPER
    assert cusp_ws.flag("proper_C").center.id == "O"
    U = cusp_ws.universe()
    with pytest.raises(NotAdmissibleError):
        make_flag(U, "C", cusp_ws.point("O"))
    with pytest.raises(NotAdmissibleError):
        make_flag(U, "L", cusp_ws.point("q"), [cusp_ws.point("O")])


def test_flag_valuations(cusp_ws):
    U = cusp_ws.universe()
    C = U.record("C")
    assert flag_valuation([(C, 1)], cusp_ws.flag("smooth_L")) == FlagValuation(0, 2)
    # the strict transform of the cusp meets E_O at q and again at the satellite r
    assert flag_valuation([(C, 1)], cusp_ws.flag("inf_EO_q")) == FlagValuation(2, 2)
    assert flag_valuation([(U.record("M12"), 1)], cusp_ws.flag("inf_EO_q")) == FlagValuation(0, 0)
    assert flag_valuation([(C, 1)], cusp_ws.flag("proper_C")) == FlagValuation(1, 6)


def test_plane_triangles(plane_ws):
    U = plane_ws.universe()
    poly = no_polygon(plane_ws.divisor("D3"), plane_ws.flag("line"), U)
    assert poly.vertices == ((0, 0), (3, 0), (0, 3))
    assert leftmost(poly) == 0
    assert axis_height(poly) == 3
    assert poly.t_max == 3


def test_blown_plane_triangles(blown_ws):
    U = blown_ws.universe()
    poly = no_polygon(blown_ws.divisor("D"), blown_ws.flag("exc"), U)
    assert poly.vertices == ((0, 0), (2, 0), (2, 2))
    assert axis_height(poly) == 0
    line = no_polygon(blown_ws.divisor("D"), blown_ws.flag("line"), U)
    assert line.vertices == ((0, 0), (2, 2), (0, 2))


@pytest.mark.parametrize(
    "ws_name,divisor,flag,valuation,degree",
    [("plane", f"D{d}", "line", plane_line_valuation, d) for d in (1, 2, 3, 4)]
    + [
        ("blown_plane", "D", "exc", blowup_exceptional_valuation, 2),
        ("blown_plane", "D", "line", blowup_line_valuation, 2),
    ],
)
def test_monomial_oracle(all_workspaces, ws_name, divisor, flag, valuation, degree):
    ws = all_workspaces[ws_name]
    poly = no_polygon(ws.divisor(divisor), ws.flag(flag), ws.universe())
    verts = list(poly.vertices)
    for k in range(1, 9):
        h = normalized_hull(valuation, degree, k)
        assert all(inside(verts, p) for p in h)
    assert area(h) >= F(9, 10) * poly.area()


def test_cusp_polygons(cusp_ws):
    U = cusp_ws.universe()
    D, D2 = cusp_ws.divisor("D"), cusp_ws.divisor("D'")
    pfix = cusp_ws.divisor("Pfix")
    L = U.curve("L").cls
    pl = no_polygon(D, cusp_ws.flag("smooth_L"), U)
    assert pl.t_min == 0
    assert pl.alpha(0) == 2 and pl.beta(0) == 2 + intersect(pfix, L)
    assert axis_height(pl) == intersect(pfix, L) == 19
    assert 2 * pl.area() == 19
    assert axis_bottom(no_polygon(D, cusp_ws.flag("smooth_L0"), U)) == 3
    assert leftmost(no_polygon(D, cusp_ws.flag("proper_C"), U)) == 1
    assert leftmost(no_polygon(D2, cusp_ws.flag("proper_C"), U)) == 0
    with pytest.raises(PreconditionError):
        axis_height(no_polygon(D, cusp_ws.flag("proper_C"), U))


def test_irrational_mu(cusp_ws):
    U = cusp_ws.universe()
    poly = no_polygon(cusp_ws.divisor("D"), cusp_ws.flag("inf_EO_q"), U)
    assert isinstance(poly.t_max, QuadraticIrrational)
    assert poly.t_max == QuadraticIrrational(2, 3, 19)
    assert 2 * poly.area() == 19


def test_left_edge_law(cusp_ws):
    U = cusp_ws.universe()
    for fname in cusp_ws.flags:
        flag = cusp_ws.flag(fname)
        for dname in ("D", "D'", "D2", "D3"):
            poly = no_polygon(cusp_ws.divisor(dname), flag, U)
            Dt = transport(cusp_ws.divisor(dname), flag.model) - poly.t_min * flag.curve.cls
            z = zariski_decompose(Dt, U, flag.model)
            alpha = sum((a * local_intersection(c, flag.curve, flag.point) for c, a in z.N), F(0))
            assert poly.alpha(poly.t_min) == alpha
            assert poly.beta(poly.t_min) == alpha + intersect(z.P, flag.curve.cls)


def test_scaling(cusp_ws):
    U = cusp_ws.universe()
    D = cusp_ws.divisor("D")
    for fname in ("smooth_L", "proper_C", "inf_EO_q"):
        flag = cusp_ws.flag(fname)
        assert polygons_equal(no_polygon(3 * D, flag, U), no_polygon(D, flag, U).scaled(3))


def test_polygons_equal(plane_ws, blown_ws):
    a = no_polygon(plane_ws.divisor("D3"), plane_ws.flag("line"), plane_ws.universe())
    b = no_polygon(blown_ws.divisor("D"), blown_ws.flag("exc"), blown_ws.universe())
    assert polygons_equal(a, a)
    assert not polygons_equal(a, b)


def test_not_big(cusp_ws):
    U = cusp_ws.universe()
    with pytest.raises(NotBigError):
        no_polygon(U.curve("C").cls, cusp_ws.flag("smooth_L"), U)


def test_branch_flag_sequence(cusp_ws, plane_ws):
    seq = branch_flag_sequence(cusp_ws.universe(), "C", 0, 5)
    assert seq.k0 == 3
    assert len(seq.flags) == 5
    assert all(f.kind is FlagKind.INFINITESIMAL and f.center.id == "O" for f in seq.flags)
    assert seq.proper_flag.kind is FlagKind.PROPER
    line = branch_flag_sequence(plane_ws.universe(), "L", 0, 3)
    assert line.k0 == 0 and len(line.flags) == 3
    O = ClusterPoint("O")
    q = ClusterPoint("q", O)
    P2 = SurfaceModel(1)
    T = CurveRecord("T", P2.divisor({"H": 4}), (BranchData(((O, 2), (q, 2)), truncated=True),))
    with pytest.raises(UndeterminedError):
        branch_flag_sequence(CurveUniverse(P2, (T,)), "T", 0, 3)


def test_infinitesimal_transform():
    assert infinitesimal_transform(FlagValuation(0, 0), 7, 3) == FlagValuation(0, 0)
    assert infinitesimal_transform(FlagValuation(1, 0), 7, 3) == FlagValuation(4, 1)
    assert infinitesimal_transform(FlagValuation(1, 6), 5, 3) == FlagValuation(8, 1)


def test_matrix_lemma(cusp_ws):
    U = cusp_ws.universe()
    seq = branch_flag_sequence(U, "C", 0, 8)
    rec = {c.name: c for c in seq.universe.curves}
    tests = [[("C", 1)], [("C'", 1)], [("L", 1)], [("L0", 1)], [("C", 1), ("C'", 2)], [("C", 2), ("L0", 1), ("M12", 3)]]
    for spec in tests:
        Fd = [(rec[n], k) for n, k in spec]
        proper = flag_valuation(Fd, seq.proper_flag)
        ok = [flag_valuation(Fd, seq.flag(k)) == infinitesimal_transform(proper, k, seq.k0) for k in range(1, 9)]
        k1 = next(k for k in range(1, 9) if all(ok[k - 1 :]))
        assert k1 <= 8
        assert k1 >= seq.k0
