"""Clusters of infinitely near points and the local data of curves.

Curve incidence is declared combinatorially: a curve carries, for each base
point it passes through, a list of branches, and a branch is a chain of
``(point, multiplicity)`` pairs.  Beyond its last listed point a branch goes
on through fresh free points (points no other declaration names) with the
last listed multiplicity, which must then be 1.  A branch marked
``truncated`` makes no claim about what follows its last point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import InputError, ModelMismatchError, PreconditionError, UndeterminedError
from .lattice import DivisorClass, SurfaceModel, strict_exceptional, transport
from .points import ClusterPoint, PointKind, chain_to, classify, is_free_cluster

__all__ = [
    "BranchData",
    "ClusterPoint",
    "CurveRecord",
    "ModelCurve",
    "PointKind",
    "WeightedCluster",
    "chain_to",
    "classify",
    "exceptional_curve",
    "has_smooth_branch",
    "initial_free_points",
    "is_free_cluster",
    "local_intersection",
    "strict_transform",
    "value_vector",
]


@dataclass(frozen=True)
class BranchData:
    chain: tuple[tuple[ClusterPoint, int], ...]
    truncated: bool = False

    def __post_init__(self):
        chain = tuple((p, int(m)) for p, m in self.chain)
        object.__setattr__(self, "chain", chain)
        if not chain:
            raise InputError("empty branch")
        first = chain[0][0]
        if not first.is_base:
            raise InputError(f"branch must start at a base-surface point, not {first.id!r}")
        prev_m = None
        for i, (p, m) in enumerate(chain):
            if m < 1:
                raise InputError(f"branch multiplicity at {p.id!r} must be positive")
            if i and (p.parent is None or p.parent.id != chain[i - 1][0].id):
                raise InputError(f"branch point {p.id!r} is not a child of {chain[i - 1][0].id!r}")
            if prev_m is not None and m > prev_m:
                raise InputError(f"branch multiplicities increase at {p.id!r}")
            prev_m = m
        for p, m in chain:
            proximate_sum = sum(mq for q, mq in chain if q.is_proximate_to(p.id))
            if m < proximate_sum:
                raise InputError(f"proximity inequality fails at {p.id!r}: {m} < {proximate_sum}")
        if not self.truncated and chain[-1][1] != 1:
            raise InputError(
                f"branch ends at {chain[-1][0].id!r} with multiplicity {chain[-1][1]}; "
                "mark it truncated or extend it to multiplicity 1"
            )

    @property
    def root(self) -> ClusterPoint:
        return self.chain[0][0]

    @property
    def points(self) -> list[ClusterPoint]:
        return [p for p, _ in self.chain]

    @property
    def origin_multiplicity(self) -> int:
        return self.chain[0][1]

    @property
    def last(self) -> ClusterPoint:
        return self.chain[-1][0]

    def multiplicity(self, point_id: str) -> int:
        for p, m in self.chain:
            if p.id == point_id:
                return m
        return 0

    def extended(self, new_points: Sequence[ClusterPoint]) -> BranchData:
        """Name the next free points of a multiplicity-1 continuation."""
        if self.truncated:
            raise UndeterminedError(f"branch at {self.root.id!r} is truncated; cannot extend")
        chain = list(self.chain)
        for p in new_points:
            if p.parent is None or p.parent.id != chain[-1][0].id or classify(p) is not PointKind.FREE:
                raise InputError(f"{p.id!r} is not a free child of {chain[-1][0].id!r}")
            chain.append((p, 1))
        return BranchData(tuple(chain))


@dataclass(frozen=True)
class CurveRecord:
    """An irreducible curve on a model: its class and its declared local data."""

    name: str
    cls: DivisorClass
    branches: tuple[BranchData, ...] = ()
    irreducible: bool = True

    def __post_init__(self):
        object.__setattr__(self, "branches", tuple(self.branches))
        model = self.cls.model
        for p in model.points:
            expected = -self.multiplicity(p.id)
            got = self.cls.coefficient(p.id)
            if got != expected:
                raise InputError(
                    f"curve {self.name!r}: coefficient of E_{p.id}* is {got}, "
                    f"branch data gives multiplicity {-expected}"
                )

    @property
    def local_data(self) -> dict[str, list[BranchData]]:
        out: dict[str, list[BranchData]] = {}
        for b in self.branches:
            out.setdefault(b.root.id, []).append(b)
        return out

    def branches_at(self, base_id: str) -> list[BranchData]:
        return [b for b in self.branches if b.root.id == base_id]

    def multiplicity(self, point_id: str) -> int:
        return sum(b.multiplicity(point_id) for b in self.branches)

    def points(self) -> list[ClusterPoint]:
        seen = {}
        for b in self.branches:
            for p in b.points:
                seen.setdefault(p.id, p)
        return list(seen.values())

    def with_branches(self, branches: Iterable[BranchData]) -> CurveRecord:
        return CurveRecord(self.name, self.cls, tuple(branches), self.irreducible)


@dataclass(frozen=True)
class ModelCurve:
    """An irreducible curve living on a particular model.

    Either the strict transform of a declared curve (``record`` set) or the
    strict transform of an exceptional curve (``exceptional`` set).
    """

    name: str
    cls: DivisorClass
    record: CurveRecord | None = None
    exceptional: ClusterPoint | None = None

    @property
    def is_exceptional(self) -> bool:
        return self.exceptional is not None

    def multiplicity(self, p: ClusterPoint) -> int:
        """Multiplicity at a point not blown up on ``self.cls.model``."""
        if self.exceptional is not None:
            return int(p.is_proximate_to(self.exceptional.id))
        return self.record.multiplicity(p.id)

    def passes_through(self, p: ClusterPoint) -> bool:
        return self.multiplicity(p) > 0


CurveLike = Union[CurveRecord, ModelCurve]


def _as_model_curve(c: CurveLike) -> ModelCurve:
    if isinstance(c, ModelCurve):
        return c
    return ModelCurve(c.name, c.cls, record=c)


def strict_transform(record: CurveRecord, model: SurfaceModel) -> ModelCurve:
    cls = transport(record.cls, model)
    old = record.cls.model
    v = list(cls.coeffs)
    for p in model.points:
        if p.id not in old:
            v[model.index(p.id)] -= record.multiplicity(p.id)
    return ModelCurve(record.name, DivisorClass(model, tuple(v)), record=record)


def exceptional_curve(model: SurfaceModel, point_id: str) -> ModelCurve:
    return ModelCurve(f"E_{point_id}", strict_exceptional(model, point_id), exceptional=model.point(point_id))


def has_smooth_branch(c: CurveLike, base_point) -> bool:
    base_id = getattr(base_point, "id", base_point)
    c = _as_model_curve(c)
    if c.record is None:
        return False
    return any(b.origin_multiplicity == 1 for b in c.record.branches_at(base_id))


@dataclass(frozen=True)
class WeightedCluster:
    """Points infinitely near a base point with rational weights."""

    entries: tuple[tuple[ClusterPoint, Fraction], ...] = ()

    def __post_init__(self):
        entries = tuple(
            sorted(((p, Fraction(w)) for p, w in self.entries), key=lambda e: (e[0].level, e[0].id))
        )
        ids = [p.id for p, _ in entries]
        if len(set(ids)) != len(ids):
            raise InputError("weighted cluster lists a point twice")
        present = set(ids)
        for p, _ in entries:
            for a in chain_to(p)[:-1]:
                if a.id not in present:
                    raise InputError(f"cluster is not ancestor-closed: {p.id!r} without {a.id!r}")
        object.__setattr__(self, "entries", entries)

    @property
    def weights(self) -> dict[str, Fraction]:
        return {p.id: w for p, w in self.entries}

    @property
    def points(self) -> list[ClusterPoint]:
        return [p for p, _ in self.entries]

    def __eq__(self, other):
        if not isinstance(other, WeightedCluster):
            return NotImplemented
        return self.weights == other.weights

    def __hash__(self):
        return hash(tuple(sorted(self.weights.items())))

    def __len__(self):
        return len(self.entries)

    def __add__(self, other: WeightedCluster) -> WeightedCluster:
        pts = {p.id: p for p, _ in self.entries}
        pts.update({p.id: p for p, _ in other.entries})
        w = dict(self.weights)
        for k, v in other.weights.items():
            w[k] = w.get(k, Fraction(0)) + v
        return WeightedCluster(tuple((pts[k], v) for k, v in w.items() if v != 0))

    def scaled(self, s) -> WeightedCluster:
        s = Fraction(s)
        if s == 0:
            return WeightedCluster()
        return WeightedCluster(tuple((p, s * w) for p, w in self.entries))

    def __repr__(self):
        inner = ", ".join(f"({p.id}, {w})" for p, w in self.entries)
        return f"WeightedCluster({{{inner}}})"


def _initial_free_segment(branch: BranchData) -> list[tuple[ClusterPoint, int]]:
    seg = []
    for p, m in branch.chain:
        if classify(p) is PointKind.SATELLITE:
            return seg
        seg.append((p, m))
    if branch.truncated:
        raise UndeterminedError(
            f"truncated branch at {branch.root.id!r} lists no satellite point; "
            "its initial free points are unknown"
        )
    raise InputError(
        f"singular branch at {branch.root.id!r} has no satellite point among its declared points"
    )


def initial_free_points(divisor: Sequence[tuple[CurveLike, object]], base_point) -> WeightedCluster:
    """The cluster of initial free points of ``sum coeff * curve`` at a base point."""
    base_id = getattr(base_point, "id", base_point)
    pts: dict[str, ClusterPoint] = {}
    weights: dict[str, Fraction] = {}
    for curve, coeff in divisor:
        c = _as_model_curve(curve)
        if c.record is None:
            continue
        coeff = Fraction(coeff)
        if has_smooth_branch(c, base_id):
            raise PreconditionError(
                f"curve {c.name!r} has a smooth branch at {base_id!r}; split it off first"
            )
        for b in c.record.branches_at(base_id):
            for p, m in _initial_free_segment(b):
                pts[p.id] = p
                weights[p.id] = weights.get(p.id, Fraction(0)) + coeff * m
    return WeightedCluster(tuple((pts[k], w) for k, w in weights.items() if w != 0))


def _check_truncation(a: ModelCurve, b: ModelCurve, p: ClusterPoint):
    for x, y in ((a, b), (b, a)):
        if x.record is None:
            continue
        for br in x.record.branches:
            if not br.truncated or not br.last.is_infinitely_near_or_equal(p):
                continue
            last = br.last
            if y.record is not None:
                blocked = any(q.id == last.id for yb in y.record.branches for q in yb.points)
            else:
                blocked = last.is_proximate_to(y.exceptional.id) or last.id == y.exceptional.id
            if blocked:
                raise UndeterminedError(
                    f"cannot decide {a.name!r} . {b.name!r} at {p.id!r}: branch of {x.name!r} "
                    f"is truncated at {last.id!r}"
                )


def local_intersection(a: CurveLike, b: CurveLike, p) -> Fraction:
    """Noether sum of products of multiplicities over the points shared at or after ``p``.

    ``p`` must be a point of the surface the curves live on (not blown up there).
    """
    a, b = _as_model_curve(a), _as_model_curve(b)
    if a.name == b.name:
        raise ValueError("local intersection of a curve with itself is not defined")
    if isinstance(p, str):
        pid = p
        p = _find_point(a, b, pid)
        if p is None:
            return Fraction(0)
    if a.record is None and b.record is None:
        ids = {a.exceptional.id, b.exceptional.id}
        return Fraction(int(len(ids) == 2 and ids <= p.proximate_to))
    if a.record is None:
        a, b = b, a
    _check_truncation(a, b, p)
    total = 0
    for br in a.record.branches:
        for x, m in br.chain:
            if x.is_infinitely_near_or_equal(p):
                total += m * b.multiplicity(x)
    return Fraction(total)


def _find_point(a: ModelCurve, b: ModelCurve, pid: str) -> ClusterPoint | None:
    for c in (a, b):
        if c.record is not None:
            for q in c.record.points():
                if q.id == pid:
                    return q
        elif c.exceptional.id == pid:
            return c.exceptional
    return None


def value_vector(divisor: Sequence[tuple[CurveLike, object]], model: SurfaceModel) -> dict[str, Fraction]:
    """Order of vanishing of the total transform along each new exceptional curve.

    For every point q blown up on ``model`` but not on the curves' own model,
    ``v_q = mult_q + sum of v_{q'}`` over the new points q' that q is proximate to.
    """
    curves = [(_as_model_curve(c), Fraction(k)) for c, k in divisor]
    if not curves:
        return {p.id: Fraction(0) for p in model.points}
    base = curves[0][0].cls.model
    for c, _ in curves:
        if c.cls.model.key != base.key:
            raise ModelMismatchError("divisor components live on different models")
    v: dict[str, Fraction] = {}
    for q in model.points:
        if q.id in base:
            continue
        val = sum((k * c.multiplicity(q) for c, k in curves), Fraction(0))
        for y in q.proximate_to:
            if y in v:
                val += v[y]
        v[q.id] = val
    return v
