"""Points of the base surface and points infinitely near them."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .errors import InputError


class PointKind(Enum):
    FREE = "free"
    SATELLITE = "satellite"


@dataclass(frozen=True, eq=False)
class ClusterPoint:
    """A point with its parent link and proximity data.

    A base-surface point has no parent and is proximate to nothing.  An
    infinitely near point is proximate to its parent and, if satellite, to
    one more point (``extra``), which must be a point the parent is itself
    proximate to.  Points compare equal by id.
    """

    id: str
    parent: ClusterPoint | None = None
    extra: str | None = None

    def __post_init__(self):
        if self.extra is not None:
            if self.parent is None:
                raise InputError(f"base point {self.id!r} cannot carry an extra proximity")
            if self.extra not in self.parent.proximate_to:
                raise InputError(
                    f"point {self.id!r}: extra proximity {self.extra!r} is not a point "
                    f"its parent {self.parent.id!r} is proximate to"
                )

    @property
    def proximate_to(self) -> frozenset[str]:
        if self.parent is None:
            return frozenset()
        if self.extra is None:
            return frozenset((self.parent.id,))
        return frozenset((self.parent.id, self.extra))

    @property
    def is_base(self) -> bool:
        return self.parent is None

    @property
    def level(self) -> int:
        n, p = 0, self.parent
        while p is not None:
            n, p = n + 1, p.parent
        return n

    @property
    def root(self) -> ClusterPoint:
        p = self
        while p.parent is not None:
            p = p.parent
        return p

    def is_proximate_to(self, other_id: str) -> bool:
        return other_id in self.proximate_to

    def is_infinitely_near_or_equal(self, other: ClusterPoint) -> bool:
        p = self
        while p is not None:
            if p.id == other.id:
                return True
            p = p.parent
        return False

    def __eq__(self, other):
        if not isinstance(other, ClusterPoint):
            return NotImplemented
        return self.id == other.id

    def __hash__(self):
        return hash(self.id)

    def __repr__(self):
        parent = self.parent.id if self.parent else None
        return f"ClusterPoint({self.id!r}, parent={parent!r}, extra={self.extra!r})"


def classify(p: ClusterPoint) -> PointKind:
    return PointKind.SATELLITE if len(p.proximate_to) == 2 else PointKind.FREE


def chain_to(p: ClusterPoint) -> list[ClusterPoint]:
    """K(p): the root, then every point blown up on the way down to ``p``."""
    out = []
    q = p
    while q is not None:
        out.append(q)
        q = q.parent
    out.reverse()
    return out


def is_free_cluster(points) -> bool:
    return all(classify(p) is PointKind.FREE for p in points)
