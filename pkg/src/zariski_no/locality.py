"""Flag families centred at O and the two locality checks built on them.

A family stands in for "all admissible flags centred at O": smooth flags on
curves through O, proper flags on strict transforms of those curves, and
infinitesimal flags at every cluster point up to a depth.  The checks compare
polygons of two divisors flag by flag and report any outcome that would
contradict the implications of the locality theorems; such an outcome is an
implementation bug, never a property of the inputs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .cluster import CurveRecord, WeightedCluster, local_intersection
from .errors import InputError, NotAdmissibleError, PreconditionError
from .lattice import DivisorClass
from .okounkov import (
    Flag,
    axis_bottom,
    extend_branch,
    leftmost,
    make_flag,
    no_polygon,
    polygons_equal,
    smoothing_index,
)
from .points import ClusterPoint, chain_to, is_free_cluster
from .zariski import (
    CurveUniverse,
    free_cluster_of,
    locally_num_equivalent,
    refine_at,
    smooth_equivalent,
    zariski_decompose,
)

SMOOTH = "smooth"
PROPER = "proper"
INF_FREE = "infinitesimal-free"
INF_SATELLITE = "infinitesimal-satellite"
TAGS = (SMOOTH, PROPER, INF_FREE, INF_SATELLITE)


@dataclass(frozen=True)
class FlagFamily:
    center: ClusterPoint
    flags: tuple[tuple[str, Flag], ...]
    universe: CurveUniverse
    depth: int
    count: int

    def tagged(self, *tags: str) -> list[Flag]:
        return [f for t, f in self.flags if t in tags]

    def __len__(self):
        return len(self.flags)


@dataclass(frozen=True)
class Comparison:
    flag: Flag
    tag: str
    equal: bool
    left: tuple
    right: tuple


@dataclass(frozen=True)
class EquivalenceReport:
    theorem: int
    items: tuple[tuple[str, bool], ...]
    comparisons: tuple[Comparison, ...]
    failures: tuple[str, ...]
    notes: tuple[str, ...]
    reconstruction: Mapping = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures

    def item(self, key: str) -> bool:
        return dict(self.items)[key]

    @property
    def distinguishing(self) -> list[Comparison]:
        return [c for c in self.comparisons if not c.equal]


def _through(U: CurveUniverse, O: ClusterPoint) -> list[CurveRecord]:
    return [c for c in U.curves if c.multiplicity(O.id) > 0]


def _extended_universe(U: CurveUniverse, O: ClusterPoint, length: int) -> CurveUniverse:
    records = []
    for c in _through(U, O):
        for i, b in enumerate(c.branches):
            if b.root.id == O.id and not b.truncated:
                c = extend_branch(c, i, length)
        records.append(c)
    return U.replace(records)


def proper_flag(U: CurveUniverse, curve: str, O: ClusterPoint, branch_index: int | None = None):
    """A proper flag on the strict transform of ``curve`` over O.

    Blows up the branch points up to its smoothing index (at least one point
    when the curve is singular at O) and returns ``(flag, universe)``; the
    universe carries the branch continuation the flag point may lie on.
    """
    record = U.record(curve)
    indices = [i for i, b in enumerate(record.branches) if b.root.id == O.id]
    if branch_index is not None:
        indices = [branch_index]
    if not indices:
        raise PreconditionError(f"curve {curve!r} does not pass through {O.id!r}")
    i = indices[0]
    br = record.branches[i]
    k = smoothing_index(br)
    if k == 0 and record.multiplicity(O.id) > 1:
        k = 1
    for k in range(k, k + len(br.chain) + 2):
        record = extend_branch(record, i, k + 1)
        U2 = U.replace([record])
        pts = record.branches[i].points
        blow = [p for p in pts[:k] if p.id not in U.model]
        try:
            return make_flag(U2, curve, pts[k], blow, name=f"{curve}~"), U2
        except NotAdmissibleError:
            continue
    raise NotAdmissibleError(f"no proper flag found on {curve!r}")


def generic_point_id(parent: str, i: int) -> str:
    return f"{parent}.g{i}"


def generate_flags(U: CurveUniverse, O: ClusterPoint | None = None, depth: int = 4, count: int = 1) -> FlagFamily:
    """Flags centred at O, deterministic in (U, O, depth, count).

    ``count`` is the number of generic free points added over each cluster
    point of level below ``depth``; a generic point lies on no declared curve.
    """
    O = O if O is not None else U.marked
    if O is None:
        raise InputError("no marked point given")
    if depth < 1:
        raise PreconditionError("depth must be at least 1")
    if not U.model.lies_on(O) or not O.is_base:
        raise PreconditionError(f"{O.id!r} is not a point of the base surface model")
    through = _through(U, O)
    if not through:
        raise PreconditionError(f"no universe curve passes through {O.id!r}")
    UX = _extended_universe(U, O, depth + 1)
    out: list[tuple[str, Flag]] = []
    seen = set()

    def emit(tag, flag):
        if flag.key not in seen:
            seen.add(flag.key)
            out.append((tag, flag))

    for c in UX.curves:
        if c.multiplicity(O.id) == 1:
            emit(SMOOTH, make_flag(UX, c.name, O, name=f"{c.name}@{O.id}"))
    for c in UX.curves:
        if c.multiplicity(O.id) == 0:
            continue
        for i, b in enumerate(c.branches):
            if b.root.id != O.id:
                continue
            k = max(smoothing_index(b), 1)
            if k > depth:
                continue
            pts = b.points
            blow = [p for p in pts[:k] if p.id not in U.model]
            try:
                emit(PROPER, make_flag(UX, c.name, pts[k], blow, name=f"{c.name}~{pts[k].id}"))
            except NotAdmissibleError:
                continue

    cluster: dict[str, ClusterPoint] = {}
    for c in UX.curves:
        for b in c.branches:
            for p in b.points:
                if p.root.id == O.id and 0 < p.level <= depth:
                    cluster.setdefault(p.id, p)
    for x in [O] + sorted(cluster.values(), key=lambda p: (p.level, p.id)):
        if x.level < depth:
            for i in range(count):
                g = ClusterPoint(generic_point_id(x.id, i), x)
                cluster.setdefault(g.id, g)
    for y in sorted(cluster.values(), key=lambda p: (p.level, p.id)):
        chain = chain_to(y)
        blow = [p for p in chain[:-1] if p.id not in U.model]
        tag = INF_FREE if is_free_cluster(chain) else INF_SATELLITE
        for xid in sorted(y.proximate_to):
            try:
                flag = make_flag(UX, f"E_{xid}", y, blow, name=f"E_{xid}@{y.id}")
            except NotAdmissibleError:
                continue
            emit(tag, flag)
    order = {t: i for i, t in enumerate(TAGS)}
    out.sort(key=lambda e: order[e[0]])
    return FlagFamily(O, tuple(out), UX, depth, count)


def _compare(D, D2, family: FlagFamily, flags) -> list[Comparison]:
    out = []
    for tag, flag in flags:
        a = no_polygon(D, flag, family.universe)
        b = no_polygon(D2, flag, family.universe)
        out.append(Comparison(flag, tag, polygons_equal(a, b), a.vertices, b.vertices))
    return out


def _n_o(D, U, O) -> dict[str, Fraction]:
    return {c.name: a for c, a in refine_at(zariski_decompose(D, U), O).N_O}


def check_theorem1(D: DivisorClass, D2: DivisorClass, U: CurveUniverse, O=None, family: FlagFamily | None = None) -> EquivalenceReport:
    O = O if O is not None else U.marked
    family = family or generate_flags(U, O)
    item1 = locally_num_equivalent(D, D2, U, O)
    comps = _compare(D, D2, family, family.flags)
    all_eq = all(c.equal for c in comps)
    inf_eq = all(c.equal for c in comps if c.tag in (INF_FREE, INF_SATELLITE))
    prop_eq = all(c.equal for c in comps if c.tag in (SMOOTH, PROPER))
    failures, notes = [], [f"verified on a family of {len(comps)} flags, not on all flags"]
    if item1 and not all_eq:
        failures.append("(1) holds but some polygons differ")
    if inf_eq and not prop_eq:
        failures.append("all infinitesimal polygons agree but some proper polygon differs")
    n1, n2 = _n_o(D, U, O), _n_o(D2, U, O)
    if prop_eq and n1 != n2:
        failures.append("all proper polygons agree but N_O differs")
    r1, r2 = reconstruct_negative_part(D, U, O), reconstruct_negative_part(D2, U, O)
    for side, r, n in (("left", r1, n1), ("right", r2, n2)):
        if r != n:
            failures.append(f"{side}: negative part read from polygons differs from the solver's N_O")
    notes.append("numerical equivalence of P is decided by the solver, not read from polygons")
    items = (("1", bool(item1)), ("2", all_eq), ("3", inf_eq), ("4", prop_eq))
    return EquivalenceReport(1, items, tuple(comps), tuple(failures), tuple(notes) + item1.notes, {"left": r1, "right": r2})


def check_theorem2(D: DivisorClass, D2: DivisorClass, U: CurveUniverse, O=None, family: FlagFamily | None = None) -> EquivalenceReport:
    O = O if O is not None else U.marked
    family = family or generate_flags(U, O)
    item1 = smooth_equivalent(D, D2, U, O)
    r1 = refine_at(zariski_decompose(D, U), O)
    r2 = refine_at(zariski_decompose(D2, U), O)
    excluded = {p.id for p in free_cluster_of(r1.N_O_sing, O).points}
    excluded |= {p.id for p in free_cluster_of(r2.N_O_sing, O).points}
    chosen = [(t, f) for t, f in family.flags if t == SMOOTH or (t == INF_FREE and f.point.id not in excluded)]
    comps = _compare(D, D2, family, chosen)
    smooth_eq = all(c.equal for c in comps if c.tag == SMOOTH)
    free_eq = all(c.equal for c in comps if c.tag == INF_FREE)
    failures = []
    notes = [
        f"verified on a family of {len(comps)} flags, not on all flags",
        "infinitesimal flags at points of the initial free clusters are excluded: "
        + (", ".join(sorted(excluded)) or "none"),
    ]
    if item1 and not smooth_eq:
        failures.append("(1) holds but some smooth-flag polygon differs")
    if item1 and not free_eq:
        failures.append("(1) holds but some free infinitesimal polygon differs")
    recon = {}
    probes = _family_probes(family.universe, O)
    for side, D_, r in (("left", D, r1), ("right", D2, r2)):
        expected = free_cluster_of(r.N_O_sing, O)
        try:
            got = reconstruct_free_weights(D_, family.universe, O, probes)
        except PreconditionError as exc:
            notes.append(f"{side}: free weights not reconstructed ({exc})")
            continue
        recon[side] = got
        if got != expected:
            failures.append(f"{side}: free weights read from polygons differ from the initial free cluster")
    items = (("1", bool(item1)), ("2", free_eq), ("3", smooth_eq))
    return EquivalenceReport(2, items, tuple(comps), tuple(failures), tuple(notes) + item1.notes, recon)


def reconstruct_negative_part(D: DivisorClass, U: CurveUniverse, O=None) -> dict[str, Fraction]:
    """Coefficient of each curve through O read off as the leftmost abscissa of a proper flag."""
    O = O if O is not None else U.marked
    out = {}
    for c in _through(U, O):
        if c.multiplicity(O.id) == 1:
            flag, U2 = make_flag(U, c.name, O), U
        else:
            flag, U2 = proper_flag(U, c.name, O)
        t = leftmost(no_polygon(D, flag, U2))
        if t != 0:
            out[c.name] = t
    return out


def _family_probes(U: CurveUniverse, O) -> dict[str, str]:
    """Default probes: for each point p, a curve smooth at O through K(p) whose
    next point is named by no other curve through O."""
    through = _through(U, O)
    owners: dict[str, set[str]] = {}
    for c in through:
        for b in c.branches_at(O.id):
            for p in b.points:
                owners.setdefault(p.id, set()).add(c.name)
    probes = {}
    for c in through:
        if c.multiplicity(O.id) != 1:
            continue
        (b,) = c.branches_at(O.id)
        pts = b.points
        for i, p in enumerate(pts):
            if i + 1 == len(pts) or owners[pts[i + 1].id] == {c.name}:
                probes.setdefault(p.id, c.name)
    return probes


def reconstruct_free_weights(
    D: DivisorClass, U: CurveUniverse, O=None, probes: Mapping[str, object] | None = None
) -> WeightedCluster:
    """Weights of the initial free cluster of N_O^sing read from smooth-flag polygons.

    ``probes`` maps a point id p to a curve smooth at O through K(p) and no
    later point of the cluster.  The ord of N_O^sing along the probe at O is
    the least y on the vertical axis of its polygon, less the contribution of
    N_O^sm; the weight of p is that ord minus the one of its parent's probe.
    """
    O = O if O is not None else U.marked
    if probes is None:
        probes = _family_probes(U, O)
    z = zariski_decompose(D, U)
    r = refine_at(z, O)
    points: dict[str, ClusterPoint] = {}
    ords: dict[str, Fraction] = {}
    for pid, probe in probes.items():
        name = probe.name if isinstance(probe, CurveRecord) else probe
        record = U.record(name)
        if record.multiplicity(O.id) != 1:
            raise PreconditionError(f"probe {name!r} is not smooth at {O.id!r}")
        flag = make_flag(U, name, O)
        poly = no_polygon(D, flag, U)
        if poly.t_min != 0:
            raise PreconditionError(f"probe {name!r} lies in the negative part")
        y = axis_bottom(poly)
        for c, a in r.N_O_sm:
            if c.name != name:
                y -= a * local_intersection(c, flag.curve, O)
        (b,) = record.branches_at(O.id)
        p = next((q for q in b.points if q.id == pid), None)
        if p is None:
            raise PreconditionError(f"probe {name!r} does not pass through {pid!r}")
        points[pid] = p
        ords[pid] = y
    weights = {}
    for pid, p in points.items():
        if p.parent is None:
            w = ords[pid]
        elif p.parent.id in ords:
            w = ords[pid] - ords[p.parent.id]
        else:
            continue
        if w != 0:
            weights[pid] = w
    kept = {}
    for pid in sorted(weights, key=lambda k: points[k].level):
        p = points[pid]
        if p.parent is None or p.parent.id in kept:
            kept[pid] = weights[pid]
    return WeightedCluster(tuple((points[k], w) for k, w in kept.items()))
