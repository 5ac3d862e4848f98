"""Intersection lattice of a blown-up surface.

The basis is ``H`` (the pullback of the base hyperplane class, ``H^2 = d``)
followed by one total-transform exceptional class ``E_p*`` per blown-up
point, so the form is ``diag(d, -1, ..., -1)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from .errors import InputError, ModelMismatchError, UnknownPointError
from .linalg import leading_minors, quad_form, solve
from .points import ClusterPoint


@dataclass(frozen=True)
class SurfaceModel:
    base_selfint: int
    points: tuple[ClusterPoint, ...] = ()
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if self.base_selfint <= 0:
            raise InputError("base self-intersection must be a positive integer")
        index = {}
        for i, p in enumerate(self.points):
            if p.id in index:
                raise InputError(f"point {p.id!r} blown up twice")
            if p.parent is not None and p.parent.id not in index:
                raise InputError(
                    f"point {p.id!r} is blown up before its parent {p.parent.id!r}"
                )
            index[p.id] = i + 1
        object.__setattr__(self, "_index", index)

    @property
    def rank(self) -> int:
        return 1 + len(self.points)

    @property
    def basis(self) -> list[str]:
        return ["H"] + [p.id for p in self.points]

    @property
    def key(self) -> tuple:
        return (self.base_selfint, tuple(p.id for p in self.points))

    def __contains__(self, point_id: str) -> bool:
        return point_id in self._index

    def index(self, point_id: str) -> int:
        try:
            return self._index[point_id]
        except KeyError:
            raise UnknownPointError(f"point {point_id!r} is not blown up on this model") from None

    def point(self, point_id: str) -> ClusterPoint:
        return self.points[self.index(point_id) - 1]

    def lies_on(self, p: ClusterPoint) -> bool:
        """True if ``p`` is a point of this surface (present, not blown up)."""
        if p.id in self._index:
            return False
        return p.parent is None or p.parent.id in self._index

    def zero(self) -> DivisorClass:
        return DivisorClass(self, (Fraction(0),) * self.rank)

    def hyperplane(self) -> DivisorClass:
        return self.divisor({"H": 1})

    def total_exceptional(self, point_id: str) -> DivisorClass:
        return self.divisor({point_id: 1})

    def divisor(self, coeffs: Mapping[str, object]) -> DivisorClass:
        v = [Fraction(0)] * self.rank
        for name, c in coeffs.items():
            i = 0 if name == "H" else self.index(name)
            v[i] += Fraction(c)
        return DivisorClass(self, tuple(v))

    def __repr__(self):
        return f"SurfaceModel(d={self.base_selfint}, points={[p.id for p in self.points]})"


@dataclass(frozen=True)
class DivisorClass:
    model: SurfaceModel
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.model.rank:
            raise ModelMismatchError(
                f"class has {len(self.coeffs)} coefficients, model rank is {self.model.rank}"
            )

    def _check(self, other: DivisorClass):
        if not isinstance(other, DivisorClass):
            raise TypeError(f"expected DivisorClass, got {type(other).__name__}")
        if other.model.key != self.model.key:
            raise ModelMismatchError("classes live on different models")

    def __add__(self, other: DivisorClass) -> DivisorClass:
        self._check(other)
        return DivisorClass(self.model, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: DivisorClass) -> DivisorClass:
        self._check(other)
        return DivisorClass(self.model, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> DivisorClass:
        return DivisorClass(self.model, tuple(-a for a in self.coeffs))

    def __rmul__(self, s) -> DivisorClass:
        s = Fraction(s)
        return DivisorClass(self.model, tuple(s * a for a in self.coeffs))

    def __mul__(self, s) -> DivisorClass:
        return self.__rmul__(s)

    def __eq__(self, other):
        if not isinstance(other, DivisorClass):
            return NotImplemented
        return self.model.key == other.model.key and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.model.key, self.coeffs))

    def coefficient(self, name: str) -> Fraction:
        return self.coeffs[0 if name == "H" else self.model.index(name)]

    def as_dict(self) -> dict[str, Fraction]:
        return {b: c for b, c in zip(self.model.basis, self.coeffs) if c != 0}

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def __repr__(self):
        terms = [f"{c}*{b}" for b, c in self.as_dict().items()]
        return "DivisorClass(" + (" + ".join(terms) or "0") + ")"


def intersect(a: DivisorClass, b: DivisorClass) -> Fraction:
    a._check(b)
    ca, cb = a.coeffs, b.coeffs
    s = ca[0] * cb[0] * a.model.base_selfint
    for x, y in zip(ca[1:], cb[1:]):
        if x and y:
            s -= x * y
    return s


def strict_exceptional(model: SurfaceModel, point_id: str) -> DivisorClass:
    """Class of the strict transform of the exceptional curve of ``point_id``:
    ``E_p* - sum of E_q*`` over blown-up points q proximate to p."""
    model.index(point_id)
    coeffs = {point_id: 1}
    for q in model.points:
        if q.is_proximate_to(point_id):
            coeffs[q.id] = -1
    return model.divisor(coeffs)


def transport(cls: DivisorClass, target: SurfaceModel) -> DivisorClass:
    """Pull a class back to a model that blows up a superset of the points."""
    src = cls.model
    if src.base_selfint != target.base_selfint:
        raise ModelMismatchError("different base lattices")
    v = [Fraction(0)] * target.rank
    v[0] = cls.coeffs[0]
    for p, c in zip(src.points, cls.coeffs[1:]):
        if p.id not in target:
            raise ModelMismatchError(f"target model does not blow up {p.id!r}")
        v[target.index(p.id)] = c
    return DivisorClass(target, tuple(v))


def refine_model(
    model: SurfaceModel, new_points: Sequence[ClusterPoint]
) -> tuple[SurfaceModel, Callable[[DivisorClass], DivisorClass]]:
    """Blow up further points; returns the new model and the pullback map."""
    for p in new_points:
        if p.id in model:
            raise InputError(f"point {p.id!r} is already blown up")
    refined = SurfaceModel(model.base_selfint, tuple(model.points) + tuple(new_points))
    return refined, lambda c: transport(c, refined)


class Verdict(Enum):
    NEGATIVE_DEFINITE = "negative-definite"
    NOT_NEGATIVE_DEFINITE = "not-negative-definite"


@dataclass(frozen=True)
class GramCertificate:
    curves: tuple
    gram: tuple[tuple[Fraction, ...], ...]
    verdict: Verdict
    witness: tuple[Fraction, ...] | None = None

    @property
    def negative_definite(self) -> bool:
        return self.verdict is Verdict.NEGATIVE_DEFINITE


def gram_matrix(classes: Iterable[DivisorClass]) -> list[list[Fraction]]:
    cs = list(classes)
    n = len(cs)
    g = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            g[i][j] = g[j][i] = intersect(cs[i], cs[j])
    return g


def _witness(gram, minors) -> tuple[Fraction, ...]:
    n = len(gram)
    unit = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    candidates = list(unit)
    for i in range(n):
        for j in range(i + 1, n):
            candidates.append([a + b for a, b in zip(unit[i], unit[j])])
            candidates.append([a - b for a, b in zip(unit[i], unit[j])])
    for v in candidates:
        if quad_form(gram, v) >= 0:
            return tuple(v)
    # Schur complement direction at the first failing minor
    k = len(minors)
    if k == 1:
        return tuple(unit[0])
    lead = [row[: k - 1] for row in gram[: k - 1]]
    col = [-gram[i][k - 1] for i in range(k - 1)]
    (w,) = solve(lead, [col])
    return tuple(list(w) + [Fraction(1)] + [Fraction(0)] * (n - k))


def certify_negative_definite(gram, curves: Sequence = ()) -> GramCertificate:
    gram = [[Fraction(x) for x in row] for row in gram]
    frozen = tuple(tuple(row) for row in gram)
    minors = leading_minors(gram)
    for k, m in enumerate(minors, start=1):
        if (m if k % 2 == 0 else -m) <= 0:
            return GramCertificate(
                tuple(curves), frozen, Verdict.NOT_NEGATIVE_DEFINITE, _witness(gram, minors[:k])
            )
    return GramCertificate(tuple(curves), frozen, Verdict.NEGATIVE_DEFINITE)


def is_negative_definite(curves: Sequence[DivisorClass]) -> GramCertificate:
    """Exact leading-minor sign test ((-1)^k * minor_k > 0 for all k)."""
    return certify_negative_definite(gram_matrix(curves), curves)
