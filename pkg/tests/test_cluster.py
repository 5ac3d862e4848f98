from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from zariski_no.cluster import (
    BranchData,
    CurveRecord,
    WeightedCluster,
    has_smooth_branch,
    initial_free_points,
    local_intersection,
    strict_transform,
    value_vector,
)
from zariski_no.errors import InputError, PreconditionError, UndeterminedError
from zariski_no.lattice import SurfaceModel, intersect, refine_model
from zariski_no.points import ClusterPoint, PointKind, chain_to, classify, is_free_cluster

O = ClusterPoint("O")
q = ClusterPoint("q", O)
r = ClusterPoint("r", q, "O")
c4 = ClusterPoint("c4", r)
P2 = SurfaceModel(1)


def cusp_record(name="C", tail=c4):
    return CurveRecord(name, P2.divisor({"H": 3}), (BranchData(((O, 2), (q, 1), (r, 1), (tail, 1))),))


def test_classify_and_chains():
    assert classify(q) is PointKind.FREE
    assert classify(r) is PointKind.SATELLITE
    assert classify(O) is PointKind.FREE
    assert chain_to(O) == [O]
    assert chain_to(q) == [O, q]
    assert chain_to(r) == [O, q, r]
    assert is_free_cluster([O, q])
    assert not is_free_cluster([O, q, r])
    assert is_free_cluster([])
    with pytest.raises(InputError):
        ClusterPoint("bad", q, "x")


def test_has_smooth_branch(cusp_ws):
    U = cusp_ws.universe()
    assert not has_smooth_branch(U.record("C"), "O")
    node = CurveRecord(
        "N", P2.divisor({"H": 3}),
        (BranchData(((O, 1), (ClusterPoint("n1", O), 1))), BranchData(((O, 1), (ClusterPoint("n2", O), 1)))),
    )
    assert has_smooth_branch(node, O)
    assert node.multiplicity("O") == 2
    assert not has_smooth_branch(U.record("M12"), "O")


def test_initial_free_points(cusp_ws):
    U = cusp_ws.universe()
    C, C2 = U.record("C"), U.record("C'")
    assert initial_free_points([(C, 1)], "O").weights == {"O": 2, "q": 1}
    assert initial_free_points([(C, 3)], "O").weights == {"O": 6, "q": 3}
    assert initial_free_points([(C, 1), (C2, 1)], "O").weights == {"O": 4, "q": 2}
    with pytest.raises(PreconditionError):
        initial_free_points([(U.record("L"), 1)], "O")


@given(st.fractions(min_value=0, max_value=10, max_denominator=9), st.fractions(min_value=0, max_value=10, max_denominator=9))
def test_initial_free_points_additive(a, b):
    C, C2 = cusp_record(), cusp_record("C'", ClusterPoint("d4", r))
    left = initial_free_points([(C, a), (C2, b)], "O")
    assert left == initial_free_points([(C, a)], "O") + initial_free_points([(C2, b)], "O")


def test_local_intersection_examples(cusp_ws):
    U = cusp_ws.universe()
    C, C2, L, L0 = (U.record(n) for n in ("C", "C'", "L", "L0"))
    assert local_intersection(C, C2, O) == 6
    assert local_intersection(L, C, O) == 2
    assert local_intersection(L0, C, O) == 3
    assert local_intersection(C, C2, "q") == 2
    assert local_intersection(C, U.record("M12"), O) == 0


def test_noether_consistency(cusp_ws):
    U = cusp_ws.universe()
    through = [c for c in U.curves if c.multiplicity("O") > 0]
    for i, a in enumerate(through):
        for b in through[i + 1 :]:
            shared = [p for p in a.points() if b.multiplicity(p.id) > 0 and p.id not in U.model]
            X, _ = refine_model(U.model, shared)
            strict = intersect(strict_transform(a, X).cls, strict_transform(b, X).cls)
            assert strict >= 0
            assert strict + local_intersection(a, b, O) == intersect(a.cls, b.cls)


def test_value_vector_examples():
    C = cusp_record()
    assert value_vector([(C, 1)], SurfaceModel(1, (O, q)))["q"] == 3
    v = value_vector([(C, 1)], SurfaceModel(1, (O, q, r)))
    assert v == {"O": 2, "q": 3, "r": 6}
    far = CurveRecord("F", P2.divisor({"H": 1}), (BranchData(((ClusterPoint("x"), 1),)),))
    assert set(value_vector([(far, 1)], SurfaceModel(1, (O, q, r))).values()) == {0}


def test_value_vector_monotone_and_linear():
    C = cusp_record()
    small = value_vector([(C, 2)], SurfaceModel(1, (O, q)))
    big = value_vector([(C, 2)], SurfaceModel(1, (O, q, r, c4)))
    assert all(big[k] == v for k, v in small.items())
    assert big == {k: 2 * v for k, v in value_vector([(C, 1)], SurfaceModel(1, (O, q, r, c4))).items()}


def test_branch_validation():
    with pytest.raises(InputError):  # multiplicity increases
        BranchData(((O, 1), (q, 2)), truncated=True)
    with pytest.raises(InputError):  # proximity inequality at O
        BranchData(((O, 1), (q, 1), (r, 1)))
    with pytest.raises(InputError):  # ends with multiplicity 2
        BranchData(((O, 2), (q, 2)))
    with pytest.raises(InputError):  # not a chain
        BranchData(((O, 1), (r, 1)))
    with pytest.raises(InputError):  # starts infinitely near
        BranchData(((q, 1),))


def test_class_must_match_branches():
    X = SurfaceModel(1, (O,))
    with pytest.raises(InputError):
        CurveRecord("C", X.divisor({"H": 3, "O": -1}), (BranchData(((O, 2), (q, 1), (r, 1))),))


def test_truncation_is_undetermined():
    T = CurveRecord("T", P2.divisor({"H": 4}), (BranchData(((O, 2), (q, 2)), truncated=True),))
    with pytest.raises(UndeterminedError):
        local_intersection(T, cusp_record(), O)
    with pytest.raises(UndeterminedError):
        initial_free_points([(T, 1)], O)


def test_weighted_cluster():
    with pytest.raises(InputError):
        WeightedCluster(((q, Fraction(1)),))
    a = WeightedCluster(((O, Fraction(2)), (q, Fraction(1))))
    assert (a + a).weights == {"O": 4, "q": 2}
    assert a.scaled(3).weights == {"O": 6, "q": 3}
    assert a.scaled(0) == WeightedCluster()
