"""Workspace files: a line-oriented description of one surface and its data.

Grammar (``#`` starts a comment; blank lines are ignored)::

    [surface]
    base = 1                    # H^2 of the base lattice
    marked = O                  # the fixed point O
    blowup = s1, s2, s3         # points blown up, in order

    [points]                    # every point, parents before children
    O = -                       # a point of the base surface
    q = O                       # infinitely near: parent O, free
    r = q O                     # parent q, also proximate to O (satellite)

    [curve C]
    class = 3 H, -1 s1          # coefficient basis pairs; rationals as p/q
    branch = O:2 q:1 r:1 c4:1   # one line per branch; a trailing ... marks truncation
    irreducible = true

    [divisor D]
    class = 19 H, -6 s1         # optional
    curves = 1 C, 2 E_e         # optional; E_<point> is an exceptional curve

    [flag F]
    blowup = O, q, r            # extra points blown up for the flag's model
    curve = C                   # or E_<point>
    point = c4

    [probes]
    O = L                       # smooth probe curve for each point

Parsing validates everything that can be validated without a computation.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .cluster import BranchData, CurveRecord
from .errors import InputError, ZariskiNoError
from .lattice import DivisorClass, SurfaceModel
from .numbers import parse_rational
from .okounkov import Flag, make_flag
from .points import ClusterPoint
from .zariski import CurveUniverse

_NAME = r"[A-Za-z0-9_.'~+-]+"
_SECTION = re.compile(rf"^\[(surface|points|probes|curve|divisor|flag)(?:\s+({_NAME}))?\]$")


@dataclass(frozen=True)
class DivisorSpec:
    name: str
    cls: tuple[tuple[str, Fraction], ...] = ()
    curves: tuple[tuple[str, Fraction], ...] = ()


@dataclass(frozen=True)
class FlagSpec:
    name: str
    blowup: tuple[str, ...]
    curve: str
    point: str


@dataclass
class Workspace:
    base_selfint: int
    points: dict[str, ClusterPoint]
    blowup: tuple[str, ...]
    marked: str | None
    curves: list[CurveRecord] = field(default_factory=list)
    divisors: dict[str, DivisorSpec] = field(default_factory=dict)
    flags: dict[str, FlagSpec] = field(default_factory=dict)
    probes: dict[str, str] = field(default_factory=dict)
    _universe: CurveUniverse | None = field(default=None, repr=False, compare=False)

    @property
    def model(self) -> SurfaceModel:
        return SurfaceModel(self.base_selfint, tuple(self.points[p] for p in self.blowup))

    @property
    def marked_point(self) -> ClusterPoint | None:
        return self.points[self.marked] if self.marked else None

    def universe(self) -> CurveUniverse:
        if self._universe is None:
            self._universe = CurveUniverse(self.model, tuple(self.curves), self.marked_point)
        return self._universe

    def point(self, pid: str) -> ClusterPoint:
        try:
            return self.points[pid]
        except KeyError:
            raise InputError(f"unknown point {pid!r}") from None

    def divisor(self, name: str) -> DivisorClass:
        try:
            spec = self.divisors[name]
        except KeyError:
            raise InputError(f"unknown divisor {name!r}") from None
        U = self.universe()
        D = U.model.divisor(dict(_sum_pairs(spec.cls)))
        for cname, k in spec.curves:
            D = D + k * U.curve(cname).cls
        return D

    def flag(self, name: str) -> Flag:
        try:
            spec = self.flags[name]
        except KeyError:
            raise InputError(f"unknown flag {name!r}") from None
        return make_flag(
            self.universe(),
            spec.curve,
            self.point(spec.point),
            [self.point(p) for p in spec.blowup],
            name=name,
        )

    def probe_curves(self) -> dict[str, CurveRecord]:
        U = self.universe()
        return {p: U.record(c) for p, c in self.probes.items()}


def _sum_pairs(pairs):
    out: dict[str, Fraction] = {}
    for k, v in pairs:
        out[k] = out.get(k, Fraction(0)) + v
    return out


def _split_list(value: str) -> list[str]:
    return [tok.strip() for tok in value.split(",") if tok.strip()]


def _parse_pairs(value: str, line: int) -> tuple[tuple[str, Fraction], ...]:
    out = []
    for item in _split_list(value):
        parts = item.split()
        if len(parts) != 2:
            raise InputError(f"expected 'coefficient name', got {item!r}", line)
        try:
            c = parse_rational(parts[0])
        except (ValueError, ZeroDivisionError):
            raise InputError(f"bad rational {parts[0]!r}", line) from None
        out.append((parts[1], c))
    return tuple(out)


def _fmt_rat(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse(text: str) -> Workspace:
    sections: list[tuple[str, str | None, int, list[tuple[int, str, str]]]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line.startswith("["):
            m = _SECTION.match(line)
            if not m:
                raise InputError(f"bad section header {line!r}", lineno)
            kind, name = m.group(1), m.group(2)
            if kind in ("curve", "divisor", "flag") and not name:
                raise InputError(f"[{kind}] needs a name", lineno)
            if kind in ("surface", "points", "probes") and name:
                raise InputError(f"[{kind}] takes no name", lineno)
            sections.append((kind, name, lineno, []))
            continue
        if not line:
            continue
        if "=" not in line:
            raise InputError(f"expected 'key = value', got {line!r}", lineno)
        if not sections:
            raise InputError("entry outside of any section", lineno)
        key, value = (s.strip() for s in line.split("=", 1))
        sections[-1][3].append((lineno, key, value))

    surface = [s for s in sections if s[0] == "surface"]
    if len(surface) != 1:
        raise InputError("exactly one [surface] section is required", surface[1][2] if surface else None)
    base, marked, blowup = 1, None, ()
    for lineno, key, value in surface[0][3]:
        if key == "base":
            try:
                base = int(value)
            except ValueError:
                raise InputError(f"base must be a positive integer, got {value!r}", lineno) from None
            if base <= 0:
                raise InputError("base must be a positive integer", lineno)
        elif key == "marked":
            marked = value
        elif key == "blowup":
            blowup = tuple(_split_list(value))
        else:
            raise InputError(f"unknown surface key {key!r}", lineno)

    points: dict[str, ClusterPoint] = {}
    for kind, _, _, entries in sections:
        if kind != "points":
            continue
        for lineno, key, value in entries:
            if not re.fullmatch(_NAME, key) or key == "H" or key == "-":
                raise InputError(f"bad point id {key!r}", lineno)
            if key in points:
                raise InputError(f"point {key!r} declared twice", lineno)
            toks = value.split()
            if not toks or len(toks) > 2:
                raise InputError(f"expected 'parent [extra]' for point {key!r}", lineno)
            if toks[0] == "-":
                if len(toks) > 1:
                    raise InputError("a base point has no proximities", lineno)
                points[key] = ClusterPoint(key)
                continue
            if toks[0] not in points:
                raise InputError(f"parent {toks[0]!r} of {key!r} is not declared before it", lineno)
            try:
                points[key] = ClusterPoint(key, points[toks[0]], toks[1] if len(toks) > 1 else None)
            except InputError as exc:
                raise InputError(str(exc), lineno) from None

    if marked is not None and marked not in points:
        raise InputError(f"marked point {marked!r} is not declared", surface[0][2])
    for pid in blowup:
        if pid not in points:
            raise InputError(f"blown-up point {pid!r} is not declared", surface[0][2])
    try:
        model = SurfaceModel(base, tuple(points[p] for p in blowup))
    except InputError as exc:
        raise InputError(str(exc), surface[0][2]) from None

    ws = Workspace(base, points, blowup, marked)
    for kind, name, header, entries in sections:
        if kind == "curve":
            ws.curves.append(_parse_curve(name, header, entries, model, points))
        elif kind == "divisor":
            if name in ws.divisors:
                raise InputError(f"divisor {name!r} declared twice", header)
            cls, curves = (), ()
            for lineno, key, value in entries:
                if key == "class":
                    cls = _parse_pairs(value, lineno)
                elif key == "curves":
                    curves = _parse_pairs(value, lineno)
                else:
                    raise InputError(f"unknown divisor key {key!r}", lineno)
            ws.divisors[name] = DivisorSpec(name, cls, curves)
        elif kind == "flag":
            if name in ws.flags:
                raise InputError(f"flag {name!r} declared twice", header)
            vals = {"blowup": ""}
            for lineno, key, value in entries:
                if key not in ("blowup", "curve", "point"):
                    raise InputError(f"unknown flag key {key!r}", lineno)
                vals[key] = value
            if "curve" not in vals or "point" not in vals:
                raise InputError(f"flag {name!r} needs curve and point", header)
            ws.flags[name] = FlagSpec(name, tuple(_split_list(vals["blowup"])), vals["curve"], vals["point"])
        elif kind == "probes":
            for lineno, key, value in entries:
                ws.probes[key] = value
    _validate(ws, sections)
    return ws


def _parse_curve(name, header, entries, model, points) -> CurveRecord:
    cls_pairs = ()
    branches = []
    irreducible = True
    for lineno, key, value in entries:
        if key == "class":
            cls_pairs = _parse_pairs(value, lineno)
        elif key == "branch":
            toks = value.split()
            truncated = bool(toks) and toks[-1] == "..."
            if truncated:
                toks = toks[:-1]
            chain = []
            for tok in toks:
                pid, sep, mult = tok.partition(":")
                if not sep or pid not in points:
                    raise InputError(f"bad branch entry {tok!r}", lineno)
                try:
                    chain.append((points[pid], int(mult)))
                except ValueError:
                    raise InputError(f"bad multiplicity in {tok!r}", lineno) from None
            try:
                branches.append(BranchData(tuple(chain), truncated))
            except InputError as exc:
                raise InputError(str(exc), lineno) from None
        elif key == "irreducible":
            if value not in ("true", "false"):
                raise InputError("irreducible must be true or false", lineno)
            irreducible = value == "true"
        else:
            raise InputError(f"unknown curve key {key!r}", lineno)
    try:
        cls = model.divisor(dict(_sum_pairs(cls_pairs)))
        return CurveRecord(name, cls, tuple(branches), irreducible)
    except ZariskiNoError as exc:
        raise InputError(str(exc), header) from None


def _validate(ws: Workspace, sections) -> None:
    headers = {(k, n): line for k, n, line, _ in sections}
    try:
        U = ws.universe()
    except ZariskiNoError as exc:
        raise InputError(str(exc)) from None
    check_noether(U)
    for name in ws.divisors:
        try:
            ws.divisor(name)
        except ZariskiNoError as exc:
            raise InputError(str(exc), headers.get(("divisor", name))) from None
    for name, spec in ws.flags.items():
        for pid in spec.blowup + (spec.point,):
            if pid not in ws.points:
                raise InputError(f"flag {name!r} refers to unknown point {pid!r}", headers.get(("flag", name)))
    for pid, cname in ws.probes.items():
        if pid not in ws.points:
            raise InputError(f"probe for unknown point {pid!r}")
        U.record(cname)


def check_noether(U: CurveUniverse) -> None:
    """Declared shared multiplicities may not exceed the global intersection numbers."""
    from .lattice import intersect

    model = U.model
    recs = U.curves
    for i, a in enumerate(recs):
        for b in recs[i + 1 :]:
            shared = 0
            for x in a.points():
                if x.id not in model:
                    shared += a.multiplicity(x.id) * b.multiplicity(x.id)
            total = intersect(a.cls, b.cls)
            if shared > total:
                raise InputError(
                    f"curves {a.name!r} and {b.name!r} share multiplicities summing to {shared} "
                    f"but meet with intersection number {total}"
                )


def serialize(ws: Workspace) -> str:
    lines = ["[surface]", f"base = {ws.base_selfint}"]
    if ws.marked:
        lines.append(f"marked = {ws.marked}")
    if ws.blowup:
        lines.append("blowup = " + ", ".join(ws.blowup))
    lines += ["", "[points]"]
    for pid, p in ws.points.items():
        if p.parent is None:
            lines.append(f"{pid} = -")
        else:
            lines.append(f"{pid} = {p.parent.id}" + (f" {p.extra}" if p.extra else ""))
    for c in ws.curves:
        lines += ["", f"[curve {c.name}]"]
        lines.append("class = " + ", ".join(f"{_fmt_rat(v)} {k}" for k, v in c.cls.as_dict().items()))
        for b in c.branches:
            toks = [f"{p.id}:{m}" for p, m in b.chain] + (["..."] if b.truncated else [])
            lines.append("branch = " + " ".join(toks))
        if not c.irreducible:
            lines.append("irreducible = false")
    for d in ws.divisors.values():
        lines += ["", f"[divisor {d.name}]"]
        if d.cls:
            lines.append("class = " + ", ".join(f"{_fmt_rat(v)} {k}" for k, v in d.cls))
        if d.curves:
            lines.append("curves = " + ", ".join(f"{_fmt_rat(v)} {k}" for k, v in d.curves))
    for f in ws.flags.values():
        lines += ["", f"[flag {f.name}]"]
        if f.blowup:
            lines.append("blowup = " + ", ".join(f.blowup))
        lines += [f"curve = {f.curve}", f"point = {f.point}"]
    if ws.probes:
        lines += ["", "[probes]"]
        lines += [f"{p} = {c}" for p, c in ws.probes.items()]
    return "\n".join(lines) + "\n"


def load(path) -> Workspace:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())
