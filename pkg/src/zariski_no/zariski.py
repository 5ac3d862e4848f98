"""Zariski decomposition relative to a declared universe of curves.

The decomposition found is the true one whenever the universe contains every
irreducible curve that some intermediate positive part meets negatively; the
effective cone is not computable from lattice data, so the result is always
returned with certificates that can be re-checked by direct intersection.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .cluster import (
    CurveRecord,
    ModelCurve,
    WeightedCluster,
    exceptional_curve,
    has_smooth_branch,
    initial_free_points,
    strict_transform,
)
from .errors import InputError, InvariantViolation, ModelMismatchError, NotPseudoeffectiveError
from .lattice import DivisorClass, GramCertificate, SurfaceModel, certify_negative_definite, intersect
from .linalg import solve
from .points import ClusterPoint

ZERO = Fraction(0)


@dataclass(frozen=True)
class CurveUniverse:
    """Declared irreducible curves on ``model``; exceptional curves are added automatically."""

    model: SurfaceModel
    curves: tuple[CurveRecord, ...]
    marked: ClusterPoint | None = None
    _cache: dict = field(default_factory=dict, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "curves", tuple(self.curves))
        names = set()
        for c in self.curves:
            if c.cls.model.key != self.model.key:
                raise ModelMismatchError(f"curve {c.name!r} is not on the universe model")
            if c.name in names or c.name.startswith("E_"):
                raise InputError(f"curve name {c.name!r} is duplicated or reserved")
            names.add(c.name)

    def model_curves(self, model: SurfaceModel | None = None) -> list[ModelCurve]:
        model = model or self.model
        key = model.key
        if key not in self._cache:
            out = [strict_transform(c, model) for c in self.curves]
            out += [exceptional_curve(model, p.id) for p in model.points]
            self._cache[key] = out
        return self._cache[key]

    def curve(self, name: str, model: SurfaceModel | None = None) -> ModelCurve:
        for c in self.model_curves(model):
            if c.name == name:
                return c
        raise InputError(f"unknown curve {name!r}")

    def record(self, name: str) -> CurveRecord:
        for c in self.curves:
            if c.name == name:
                return c
        raise InputError(f"unknown curve {name!r}")

    def replace(self, records: Sequence[CurveRecord]) -> CurveUniverse:
        """Same universe with some records swapped for ones carrying more local data."""
        by_name = {r.name: r for r in records}
        return CurveUniverse(self.model, tuple(by_name.get(c.name, c) for c in self.curves), self.marked)

    def permuted(self, order: Sequence[int]) -> CurveUniverse:
        return CurveUniverse(self.model, tuple(self.curves[i] for i in order), self.marked)


@dataclass(frozen=True)
class ZariskiDecomposition:
    D: DivisorClass
    P: DivisorClass
    N: tuple[tuple[ModelCurve, Fraction], ...]
    certificate: GramCertificate
    nef_checks: tuple[tuple[str, Fraction], ...]

    def coefficient(self, name: str) -> Fraction:
        for c, a in self.N:
            if c.name == name:
                return a
        return ZERO

    @property
    def negative_part(self) -> dict[str, Fraction]:
        return {c.name: a for c, a in self.N}

    def verify(self) -> None:
        """Re-check every defining property by direct intersection."""
        total = self.P
        for c, a in self.N:
            total = total + a * c.cls
        if total != self.D:
            raise InvariantViolation("D != P + N")
        for c, a in self.N:
            if a <= 0:
                raise InvariantViolation(f"non-positive coefficient on {c.name}")
            if intersect(self.P, c.cls) != 0:
                raise InvariantViolation(f"P . {c.name} != 0")
        if not self.certificate.negative_definite:
            raise InvariantViolation("support of N is not negative definite")
        for name, val in self.nef_checks:
            if val < 0:
                raise InvariantViolation(f"P . {name} < 0")


@dataclass(frozen=True)
class RefinedDecomposition:
    P: DivisorClass
    N_O: tuple[tuple[ModelCurve, Fraction], ...]
    N_O_c: tuple[tuple[ModelCurve, Fraction], ...]
    N_O_sing: tuple[tuple[ModelCurve, Fraction], ...]
    N_O_sm: tuple[tuple[ModelCurve, Fraction], ...]
    point: ClusterPoint


# Affine numbers x0 + x1*eps with eps a positive infinitesimal, ordered
# lexicographically.  Plain decompositions use x1 = 0.


def _lex_negative(x0, x1) -> bool:
    return x0 < 0 or (x0 == 0 and x1 < 0)


def negative_part_indices(
    gram: Sequence[Sequence[Fraction]],
    d0: Sequence[Fraction],
    d1: Sequence[Fraction] | None = None,
    pool: Sequence[int] | None = None,
) -> tuple[list[int], list[Fraction], list[Fraction], GramCertificate]:
    """Core support-growing algorithm on precomputed intersection data.

    ``gram[i][j]`` are curve products, ``d0[j] + eps*d1[j]`` the products of the
    class with curve j.  Start from empty support, solve for the coefficients
    making the remainder orthogonal to the support, add every curve the
    remainder meets negatively, and repeat.  Returns (support, a0, a1, cert)
    with coefficients ``a0[k] + eps*a1[k]`` for ``support[k]``.
    """
    n = len(gram)
    if d1 is None:
        d1 = [ZERO] * n
    if pool is None:
        pool = range(n)
    pool = list(pool)
    support: list[int] = []
    a0: list[Fraction] = []
    a1: list[Fraction] = []
    cert = certify_negative_definite([])
    for _ in range(len(pool) + 1):
        in_support = set(support)
        entering = []
        for j in pool:
            if j in in_support:
                continue
            p0 = d0[j] - sum((a0[k] * gram[i][j] for k, i in enumerate(support)), ZERO)
            p1 = d1[j] - sum((a1[k] * gram[i][j] for k, i in enumerate(support)), ZERO)
            if _lex_negative(p0, p1):
                entering.append(j)
        if not entering:
            break
        support = support + entering
        sub = [[gram[i][j] for j in support] for i in support]
        cert = certify_negative_definite(sub, support)
        if not cert.negative_definite:
            raise NotPseudoeffectiveError(
                "support of the negative part is not negative definite; "
                "class is not pseudoeffective relative to the universe"
            )
        a0, a1 = solve(sub, [[d0[i] for i in support], [d1[i] for i in support]])
    else:
        raise InvariantViolation("support growth did not terminate")
    for k, i in enumerate(support):
        if _lex_negative(a0[k], a1[k]):
            raise NotPseudoeffectiveError(
                "negative coefficient in the negative part; "
                "class is not pseudoeffective relative to the universe"
            )
    return support, a0, a1, cert


def zariski_decompose(D: DivisorClass, U: CurveUniverse, model: SurfaceModel | None = None) -> ZariskiDecomposition:
    """Zariski decomposition of ``D`` over the curves of ``U`` (transported to ``model``)."""
    model = model or D.model
    if D.model.key != model.key:
        raise ModelMismatchError("divisor is not on the requested model")
    curves = U.model_curves(model)
    classes = [c.cls for c in curves]
    n = len(classes)
    gram = [[ZERO] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            gram[i][j] = gram[j][i] = intersect(classes[i], classes[j])
    d0 = [intersect(D, c) for c in classes]
    support, a0, _, cert = negative_part_indices(gram, d0)
    P = D
    N = []
    for k, i in enumerate(support):
        if a0[k] != 0:
            P = P - a0[k] * classes[i]
            N.append((curves[i], a0[k]))
    N.sort(key=lambda e: e[0].name)
    nz = [i for k, i in enumerate(support) if a0[k] != 0]
    cert = certify_negative_definite([[gram[i][j] for j in nz] for i in nz], [curves[i] for i in nz])
    nef = tuple((c.name, intersect(P, c.cls)) for c in curves)
    z = ZariskiDecomposition(D, P, tuple(N), cert, nef)
    z.verify()
    return z


def multiplicity_at(curve: ModelCurve, O: ClusterPoint) -> int:
    return curve.multiplicity(O)


def refine_at(z: ZariskiDecomposition, O: ClusterPoint) -> RefinedDecomposition:
    through, away, sing, sm = [], [], [], []
    for c, a in z.N:
        if c.multiplicity(O) > 0:
            through.append((c, a))
            (sm if has_smooth_branch(c, O) else sing).append((c, a))
        else:
            away.append((c, a))
    return RefinedDecomposition(z.P, tuple(through), tuple(away), tuple(sing), tuple(sm), O)


def free_cluster_of(part: Sequence[tuple[ModelCurve, Fraction]], O: ClusterPoint) -> WeightedCluster:
    return initial_free_points(list(part), O)


@dataclass(frozen=True)
class EquivalenceCheck:
    holds: bool
    notes: tuple[str, ...] = ()

    def __bool__(self):
        return self.holds


def _weighted(part) -> dict[str, Fraction]:
    return {c.name: a for c, a in part}


def _marked(U: CurveUniverse, O) -> ClusterPoint:
    O = O if O is not None else U.marked
    if O is None:
        raise InputError("no marked point given")
    return O


def locally_num_equivalent(D: DivisorClass, D2: DivisorClass, U: CurveUniverse, O=None) -> EquivalenceCheck:
    O = _marked(U, O)
    r1 = refine_at(zariski_decompose(D, U), O)
    r2 = refine_at(zariski_decompose(D2, U), O)
    notes = []
    if r1.P != r2.P:
        notes.append("P differs")
    if _weighted(r1.N_O) != _weighted(r2.N_O):
        notes.append("N_O differs")
    return EquivalenceCheck(not notes, tuple(notes))


def smooth_equivalent(D: DivisorClass, D2: DivisorClass, U: CurveUniverse, O=None) -> EquivalenceCheck:
    O = _marked(U, O)
    r1 = refine_at(zariski_decompose(D, U), O)
    r2 = refine_at(zariski_decompose(D2, U), O)
    notes = []
    if r1.P != r2.P:
        notes.append("P differs")
    if _weighted(r1.N_O_sm) != _weighted(r2.N_O_sm):
        notes.append("N_O^sm differs")
    if free_cluster_of(r1.N_O_sing, O) != free_cluster_of(r2.N_O_sing, O):
        notes.append("initial free clusters of N_O^sing differ")
    return EquivalenceCheck(not notes, tuple(notes))
