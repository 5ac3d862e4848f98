"""Admissible flags, flag valuations and Newton-Okounkov polygons.

Polygons are computed from Zariski decompositions of ``D - t*Y1`` as ``t``
sweeps from the coefficient of ``Y1`` in the negative part of ``D`` up to the
point where the positive part stops being big.  On each chamber the
negative-part coefficients are affine in ``t``; the lower boundary is
``alpha(t) = ord_p(N_t restricted to Y1)`` and the upper one is
``beta(t) = alpha(t) + P_t . Y1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Sequence

from .cluster import (
    BranchData,
    CurveRecord,
    ModelCurve,
    exceptional_curve,
    local_intersection,
    strict_transform,
    value_vector,
)
from .errors import (
    InputError,
    InvariantViolation,
    ModelMismatchError,
    NotAdmissibleError,
    NotBigError,
    PreconditionError,
    UndeterminedError,
)
from .lattice import DivisorClass, SurfaceModel, intersect, refine_model, transport
from .numbers import sqrt_exact
from .points import ClusterPoint, PointKind, classify
from .zariski import CurveUniverse, negative_part_indices

ZERO = Fraction(0)


class FlagKind(Enum):
    SMOOTH = "smooth"
    PROPER = "proper"
    INFINITESIMAL = "infinitesimal"


@dataclass(frozen=True)
class Flag:
    base: SurfaceModel
    model: SurfaceModel
    curve: ModelCurve
    point: ClusterPoint
    kind: FlagKind
    name: str = ""
    records: tuple[CurveRecord, ...] = ()  # universe records, possibly with named continuations

    @property
    def center(self) -> ClusterPoint:
        return self.point.root

    @property
    def blowups(self) -> tuple[ClusterPoint, ...]:
        return tuple(p for p in self.model.points if p.id not in self.base)

    @property
    def key(self) -> tuple:
        return (self.model.key, self.curve.name, self.point.id)

    def describe(self) -> str:
        extra = ",".join(p.id for p in self.blowups)
        return f"{self.kind.value}[{extra}]({self.curve.name},{self.point.id})"


@dataclass(frozen=True)
class FlagValuation:
    nu1: Fraction
    nu2: Fraction

    def __iter__(self):
        return iter((self.nu1, self.nu2))


def make_flag(
    U: CurveUniverse,
    y1,
    p: ClusterPoint,
    blowups: Sequence[ClusterPoint] = (),
    name: str = "",
) -> Flag:
    """Build an admissible flag ``model ⊃ Y1 ⊃ {p}`` over the universe's model.

    ``y1`` is a curve name, a CurveRecord, or a ClusterPoint standing for the
    strict transform of its exceptional curve.
    """
    base = U.model
    model = refine_model(base, list(blowups))[0] if blowups else base
    if not model.lies_on(p):
        raise NotAdmissibleError(f"point {p.id!r} is not a point of the flag's model")
    if isinstance(y1, ClusterPoint):
        y1 = f"E_{y1.id}"
    elif isinstance(y1, CurveRecord):
        y1 = y1.name
    if y1.startswith("E_"):
        qid = y1[2:]
        if qid not in model:
            raise NotAdmissibleError(f"{qid!r} is not blown up on the flag's model")
        curve = exceptional_curve(model, qid)
        if not p.is_proximate_to(qid):
            raise NotAdmissibleError(f"point {p.id!r} does not lie on E_{qid}")
        kind = FlagKind.INFINITESIMAL
    else:
        curve = strict_transform(U.record(y1), model)
        m = curve.multiplicity(p)
        if m == 0:
            raise NotAdmissibleError(f"point {p.id!r} does not lie on {y1}")
        if m > 1:
            raise NotAdmissibleError(f"{y1} is singular at {p.id!r} (multiplicity {m})")
        kind = FlagKind.SMOOTH if model.key == base.key else FlagKind.PROPER
    return Flag(base, model, curve, p, kind, name, U.curves)


def pullback_components(F, flag: Flag) -> dict[str, tuple[ModelCurve, Fraction]]:
    """Components of the total transform of an effective divisor on the flag's model."""
    model = flag.model
    known = {r.name: r for r in flag.records}
    out: dict[str, tuple[ModelCurve, Fraction]] = {}

    def add(c: ModelCurve, k):
        if k == 0:
            return
        prev = out.get(c.name, (c, ZERO))[1]
        out[c.name] = (c, prev + k)

    F = [(known.get(c.name, c) if isinstance(c, CurveRecord) else c, Fraction(k)) for c, k in F]
    for c, k in F:
        if k < 0:
            raise PreconditionError("flag valuations are evaluated on effective divisors only")
        if isinstance(c, CurveRecord):
            add(strict_transform(c, model), k)
        elif c.record is not None:
            add(strict_transform(known.get(c.name, c.record), model), k)
        else:
            add(exceptional_curve(model, c.exceptional.id), k)
    for pid, v in value_vector(F, model).items():
        add(exceptional_curve(model, pid), v)
    return out


def flag_valuation(F, flag: Flag) -> FlagValuation:
    """(nu1, nu2) of an effective divisor ``F = sum k*curve`` of base-model curves."""
    comps = pullback_components(F, flag)
    y = flag.curve
    nu1 = comps.pop(y.name, (y, ZERO))[1]
    nu2 = ZERO
    for c, k in comps.values():
        nu2 += k * local_intersection(c, y, flag.point)
    return FlagValuation(nu1, nu2)


@dataclass(frozen=True)
class Chamber:
    t0: object
    t1: object
    support: tuple[str, ...]
    alpha: tuple[Fraction, Fraction]  # (slope, intercept)
    beta: tuple[Fraction, Fraction]
    coefficients: tuple[tuple[str, Fraction, Fraction], ...]  # (name, slope, intercept)


def _eval(f, t):
    return f[0] * t + f[1]


@dataclass(frozen=True)
class NOPolygon:
    chambers: tuple[Chamber, ...]
    vertices: tuple[tuple[object, object], ...]
    t_min: Fraction
    t_max: object
    positive_square: Fraction
    flag: str = ""

    def area(self):
        return polygon_area(self.vertices)

    def alpha(self, t):
        return _eval(self._chamber_at(t).alpha, t)

    def beta(self, t):
        return _eval(self._chamber_at(t).beta, t)

    def _chamber_at(self, t) -> Chamber:
        for c in self.chambers:
            if c.t0 <= t <= c.t1:
                return c
        raise ValueError(f"t = {t} outside [{self.t_min}, {self.t_max}]")

    def scaled(self, k) -> NOPolygon:
        k = Fraction(k)
        return NOPolygon(
            (),
            tuple((k * x, k * y) for x, y in self.vertices),
            k * self.t_min,
            k * self.t_max,
            k * k * self.positive_square,
            self.flag,
        )


def polygon_area(vertices):
    """Shoelace area (exact) of a vertex list in counterclockwise order."""
    n = len(vertices)
    twice = ZERO
    for i in range(n):
        x0, y0 = vertices[i]
        x1, y1 = vertices[(i + 1) % n]
        twice = twice + (x0 * y1 - x1 * y0)
    return twice / 2


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def canonical_vertices(points) -> tuple:
    """Drop repeated and collinear points; start at the lexicographically least vertex."""
    pts = []
    for q in points:
        if not pts or pts[-1] != q:
            pts.append(q)
    while len(pts) > 1 and pts[0] == pts[-1]:
        pts.pop()
    changed = True
    while changed and len(pts) > 2:
        changed = False
        for i in range(len(pts)):
            o, a, b = pts[i - 1], pts[i], pts[(i + 1) % len(pts)]
            if _cross(o, a, b) == 0:
                del pts[i]
                changed = True
                break
    if not pts:
        return ()
    start = min(range(len(pts)), key=lambda i: _SortKey(pts[i]))
    return tuple(pts[start:] + pts[:start])


class _SortKey:
    __slots__ = ("p",)

    def __init__(self, p):
        self.p = p

    def __lt__(self, other):
        return (self.p[0] < other.p[0]) or (self.p[0] == other.p[0] and self.p[1] < other.p[1])


def _gram_data(U: CurveUniverse, model: SurfaceModel):
    key = ("gram", model.key)
    if key not in U._cache:
        curves = U.model_curves(model)
        classes = [c.cls for c in curves]
        n = len(classes)
        gram = [[ZERO] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                gram[i][j] = gram[j][i] = intersect(classes[i], classes[j])
        U._cache[key] = (curves, classes, gram)
    return U._cache[key]


def no_polygon(D: DivisorClass, flag: Flag, U: CurveUniverse) -> NOPolygon:
    """Newton-Okounkov polygon of ``D`` for ``flag`` by a parametric Zariski sweep."""
    if D.model.key != flag.base.key:
        raise ModelMismatchError("divisor must live on the flag's base model")
    model = flag.model
    Dm = transport(D, model)
    curves, classes, gram = _gram_data(U, model)
    n = len(curves)
    names = [c.name for c in curves]
    try:
        iy = names.index(flag.curve.name)
    except ValueError:
        raise InputError(f"flag curve {flag.curve.name!r} is not in the universe") from None
    Y = classes[iy]
    dvec = [intersect(Dm, c) for c in classes]
    yvec = [gram[iy][j] for j in range(n)]
    loc = [ZERO if j == iy else local_intersection(curves[j], flag.curve, flag.point) for j in range(n)]

    support, a0, _, _ = negative_part_indices(gram, dvec)
    t_min = ZERO
    P = Dm
    for k, i in enumerate(support):
        P = P - a0[k] * classes[i]
        if i == iy:
            t_min = a0[k]
    p_square = intersect(P, P)
    if p_square <= 0:
        raise NotBigError(f"positive part has self-intersection {p_square}; divisor is not big")

    chambers: list[Chamber] = []
    t0 = t_min
    for _ in range(2 * n + 5):
        d0 = [dvec[j] - t0 * yvec[j] for j in range(n)]
        d1 = [-yvec[j] for j in range(n)]
        S, c0, c1, _ = negative_part_indices(gram, d0, d1)
        if iy in S and (c0[S.index(iy)] != 0 or c1[S.index(iy)] != 0):
            raise InvariantViolation("flag curve re-entered the negative part inside the sweep")
        in_S = set(S)
        P0 = Dm - t0 * Y
        P1 = -Y
        for k, i in enumerate(S):
            P0 = P0 - c0[k] * classes[i]
            P1 = P1 - c1[k] * classes[i]
        # affine products P_t . curve_j = q0[j] + s*q1[j], s = t - t0
        q0 = [intersect(P0, classes[j]) for j in range(n)]
        q1 = [intersect(P1, classes[j]) for j in range(n)]
        events = []
        for j in range(n):
            if j not in in_S and j != iy and q1[j] < 0:
                events.append(q0[j] / -q1[j])
        for k in range(len(S)):
            if c1[k] < 0:
                events.append(c0[k] / -c1[k])
        g0 = intersect(P0, P0)
        h = intersect(P0, P1)
        C = intersect(P1, P1)
        disc = h * h - C * g0
        s_mu = None
        if disc >= 0:
            denom = -h + sqrt_exact(disc)
            if denom > 0:
                s_mu = g0 / denom
        s_next = min(events) if events else None
        final = s_mu is not None and (s_next is None or s_mu <= s_next)
        if not final and s_next is None:
            raise NotBigError("sweep found no end; the universe does not bound D - t*Y1")
        s1 = s_mu if final else s_next
        t1 = t0 + s1

        A0 = sum((c0[k] * loc[i] for k, i in enumerate(S)), ZERO)
        A1 = sum((c1[k] * loc[i] for k, i in enumerate(S)), ZERO)
        alpha = (A1, A0 - A1 * t0)
        beta = (A1 + q1[iy], A0 + q0[iy] - (A1 + q1[iy]) * t0)
        coeffs = tuple(
            sorted(
                (names[i], c1[k], c0[k] - c1[k] * t0)
                for k, i in enumerate(S)
                if c0[k] != 0 or c1[k] != 0
            )
        )
        support_names = tuple(name for name, _, _ in coeffs)
        chambers.append(Chamber(t0, t1, support_names, alpha, beta, coeffs))
        if final:
            break
        t0 = t1
    else:
        raise InvariantViolation("sweep exceeded its chamber budget")

    lower = [(chambers[0].t0, _eval(chambers[0].alpha, chambers[0].t0))]
    upper = [(chambers[0].t0, _eval(chambers[0].beta, chambers[0].t0))]
    for c in chambers:
        lower.append((c.t1, _eval(c.alpha, c.t1)))
        upper.append((c.t1, _eval(c.beta, c.t1)))
    for a, b in zip(chambers, chambers[1:]):
        if _eval(a.alpha, a.t1) != _eval(b.alpha, b.t0) or _eval(a.beta, a.t1) != _eval(b.beta, b.t0):
            raise InvariantViolation("polygon boundary is discontinuous at a chamber wall")
    for c in chambers:
        for t in (c.t0, c.t1):
            if _eval(c.alpha, t) > _eval(c.beta, t):
                raise InvariantViolation("alpha exceeds beta")
    vertices = canonical_vertices(lower + upper[::-1])
    return NOPolygon(tuple(chambers), vertices, t_min, chambers[-1].t1, p_square, flag.name)


def leftmost(poly: NOPolygon) -> Fraction:
    return poly.t_min


def axis_height(poly: NOPolygon):
    if poly.t_min != 0:
        raise PreconditionError("the polygon does not start on the vertical axis (t_min > 0)")
    c = poly.chambers[0]
    return _eval(c.beta, ZERO) - _eval(c.alpha, ZERO)


def axis_bottom(poly: NOPolygon):
    """Least y with (0, y) in the polygon."""
    if poly.t_min != 0:
        raise PreconditionError("the polygon does not meet the vertical axis (t_min > 0)")
    return _eval(poly.chambers[0].alpha, ZERO)


def polygons_equal(a: NOPolygon, b: NOPolygon) -> bool:
    return a.vertices == b.vertices


@dataclass(frozen=True)
class BranchFlagSequence:
    curve: CurveRecord
    branch: BranchData
    k0: int
    flags: tuple[Flag, ...]  # flags[k-1] is the flag at level k
    proper_flag: Flag
    universe: CurveUniverse

    def flag(self, k: int) -> Flag:
        return self.flags[k - 1]


def smoothing_index(branch: BranchData) -> int:
    """First index from which every branch point is free with multiplicity 1."""
    k0 = len(branch.chain)
    for i in range(len(branch.chain) - 1, -1, -1):
        p, m = branch.chain[i]
        if m == 1 and classify(p) is PointKind.FREE:
            k0 = i
        else:
            break
    return k0


def fresh_point_id(curve: str, branch_index: int, level: int) -> str:
    return f"{curve}.b{branch_index}.{level}"


def extend_branch(curve: CurveRecord, branch_index: int, length: int) -> CurveRecord:
    """Name enough points of a branch's free continuation to reach ``length`` points."""
    br = curve.branches[branch_index]
    if len(br.chain) >= length:
        return curve
    if br.truncated:
        raise UndeterminedError(
            f"branch {branch_index} of {curve.name!r} is truncated at {br.last.id!r} "
            f"with multiplicity {br.chain[-1][1]}"
        )
    new = []
    parent = br.last
    for level in range(len(br.chain), length):
        p = ClusterPoint(fresh_point_id(curve.name, branch_index, level), parent)
        new.append(p)
        parent = p
    branches = list(curve.branches)
    branches[branch_index] = br.extended(new)
    return curve.with_branches(branches)


def branch_flag_sequence(U: CurveUniverse, curve: str, branch_index: int = 0, depth: int = 1) -> BranchFlagSequence:
    """Flags ``X_k ⊃ E_{p_{k-1}} ⊃ {p_k}`` along a branch, k = 1..depth, plus the proper flag."""
    if depth < 1:
        raise PreconditionError("depth must be at least 1")
    record = U.record(curve)
    if branch_index >= len(record.branches):
        raise InputError(f"curve {curve!r} has no branch {branch_index}")
    br0 = record.branches[branch_index]
    k0 = smoothing_index(br0)
    record = extend_branch(record, branch_index, max(depth, k0) + 1)
    U2 = U.replace([record])
    br = record.branches[branch_index]
    pts = br.points
    base = U.model
    flags = []
    for k in range(1, depth + 1):
        blow = [p for p in pts[:k] if p.id not in base]
        flags.append(make_flag(U2, pts[k - 1], pts[k], blow, name=f"{curve}^({k})"))
    blow = [p for p in pts[:k0] if p.id not in base]
    proper = make_flag(U2, curve, pts[k0], blow, name=f"{curve}~")
    return BranchFlagSequence(record, br, k0, tuple(flags), proper, U2)


def infinitesimal_transform(v: FlagValuation, k: int, k0: int) -> FlagValuation:
    """Apply [[k - k0, 1], [1, 0]] to (nu1, nu2)."""
    return FlagValuation((k - k0) * v.nu1 + v.nu2, v.nu1)
