import pytest

from zariski_no.errors import PreconditionError
from zariski_no.locality import (
    INF_FREE,
    INF_SATELLITE,
    PROPER,
    SMOOTH,
    check_theorem1,
    check_theorem2,
    generate_flags,
    reconstruct_free_weights,
    reconstruct_negative_part,
)
from zariski_no.okounkov import axis_height, no_polygon
from zariski_no.points import chain_to, is_free_cluster


@pytest.fixture(scope="module")
def family(cusp_far_ws):
    return generate_flags(cusp_far_ws.universe(), cusp_far_ws.marked_point, depth=4)


def test_family_contents(family):
    described = {f.describe() for _, f in family.flags}
    for expected in (
        "smooth[](L,O)",
        "smooth[](L0,O)",
        "proper[O,q,r](C,c4)",
        "proper[O,q,r](C',d4)",
        "infinitesimal[O](E_O,q)",
        "infinitesimal[O,q](E_q,r)",
        "infinitesimal[O,q,r,c4](E_c4,C.b0.4)",
    ):
        assert expected in described
    assert len(family) >= 15
    assert {t for t, _ in family.flags} == {SMOOTH, PROPER, INF_FREE, INF_SATELLITE}
    for tag, f in family.flags:
        assert f.center.id == "O"
        if tag == INF_FREE:
            assert is_free_cluster(chain_to(f.point))


def test_family_deterministic(cusp_far_ws, family):
    again = generate_flags(cusp_far_ws.universe(), cusp_far_ws.marked_point, depth=4)
    assert [f.describe() for _, f in again.flags] == [f.describe() for _, f in family.flags]


def test_plane_family(plane_ws):
    fam = generate_flags(plane_ws.universe(), plane_ws.marked_point, depth=2)
    assert [f.describe() for f in fam.tagged(SMOOTH)] == ["smooth[](L,O)"]
    with pytest.raises(PreconditionError):
        generate_flags(plane_ws.universe(), plane_ws.marked_point, depth=0)


def test_theorem1(cusp_far_ws, family):
    U, O, d = cusp_far_ws.universe(), cusp_far_ws.marked_point, cusp_far_ws.divisor
    far = check_theorem1(d("D"), d("Dfar"), U, O, family)
    assert far.ok and all(v for _, v in far.items)
    same = check_theorem1(d("D"), d("D"), U, O, family)
    assert same.ok and all(v for _, v in same.items)
    cusp = check_theorem1(d("D"), d("D'"), U, O, family)
    assert cusp.ok
    assert not cusp.item("1")
    assert all(c.equal for c in cusp.comparisons if c.tag == SMOOTH)
    diff = {c.flag.describe(): c for c in cusp.distinguishing}
    c = diff["proper[O,q,r](C,c4)"]
    assert c.left[0][0] == 1 and c.right[0][0] == 0


def test_theorem2(cusp_far_ws, family):
    U, O, d = cusp_far_ws.universe(), cusp_far_ws.marked_point, cusp_far_ws.divisor
    cusp = check_theorem2(d("D"), d("D'"), U, O, family)
    assert cusp.ok and all(v for _, v in cusp.items)
    assert check_theorem2(d("D"), d("Dfar"), U, O, family).ok
    moved = check_theorem2(d("D"), d("D3"), U, O, family)
    assert moved.ok and not moved.item("1") and not moved.item("3")
    smooth = [f for t, f in family.flags if t == SMOOTH]
    heights = [(axis_height(no_polygon(d("D"), f, family.universe)), axis_height(no_polygon(d("D3"), f, family.universe))) for f in smooth]
    assert any(a != b for a, b in heights)


def test_reconstruct_negative_part(cusp_ws, plane_ws):
    U, O = cusp_ws.universe(), cusp_ws.marked_point
    assert reconstruct_negative_part(cusp_ws.divisor("D"), U, O) == {"C": 1}
    assert reconstruct_negative_part(cusp_ws.divisor("D'"), U, O) == {"C'": 1}
    assert reconstruct_negative_part(plane_ws.divisor("D3"), plane_ws.universe(), plane_ws.marked_point) == {}


def test_reconstruct_free_weights(cusp_ws, plane_ws):
    U, O = cusp_ws.universe(), cusp_ws.marked_point
    probes = cusp_ws.probes
    assert probes == {"O": "L", "q": "L0"}
    assert reconstruct_free_weights(cusp_ws.divisor("D"), U, O, probes).weights == {"O": 2, "q": 1}
    assert reconstruct_free_weights(cusp_ws.divisor("D'"), U, O, probes).weights == {"O": 2, "q": 1}
    assert reconstruct_free_weights(cusp_ws.divisor("D2"), U, O, probes).weights == {"O": 4, "q": 2}
    assert reconstruct_free_weights(cusp_ws.divisor("D"), U, O).weights == {"O": 2, "q": 1}
    assert len(reconstruct_free_weights(plane_ws.divisor("D3"), plane_ws.universe(), plane_ws.marked_point)) == 0
