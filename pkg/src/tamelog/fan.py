"""Kato fans: stratum points with their sharp multiplicities and charts.

A specialization pair ``(a, b)`` means the stratum of ``b`` lies in the
closure of the stratum of ``a``; codimension must strictly increase along it.
The generic point specializes to every point without being listed.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional, Sequence

from .errors import InternalMismatch, InvalidChart, InvalidFan, TamelogError
from .intlinalg import Vector, is_prime
from .monoid import (
    AffineMonoid,
    Face,
    Lattice,
    content,
    localize_sharpen,
    max_divisibility,
    quotient_torsion,
)


def require_prime(p: int) -> None:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")


@dataclass(frozen=True)
class Violation:
    kind: str
    message: str
    points: tuple[str, ...] = ()

    def as_dict(self) -> dict:
        return {"kind": self.kind, "message": self.message, "points": list(self.points)}


@dataclass(frozen=True)
class Chart:
    monoid: AffineMonoid
    v1: Vector
    face: Face = field(default_factory=Face)
    etale_marked: bool = False

    def __post_init__(self):
        object.__setattr__(self, "v1", tuple(int(x) for x in self.v1))

    def localized(self):
        """``(Q, image)``: the sharp monoid at the chart's point and the class of ``v1``."""
        try:
            q, image = localize_sharpen(self.monoid, self.face, self.v1)
        except (TamelogError, ValueError) as exc:
            raise InvalidChart(str(exc)) from exc
        if not any(image):
            raise InvalidChart("v1 maps to zero in the sharp monoid of the chart's point")
        return q, image

    def msharp(self) -> int:
        q, image = self.localized()
        try:
            return max_divisibility(q, image)
        except (TamelogError, ValueError) as exc:
            raise InvalidChart(str(exc)) from exc


@dataclass(frozen=True)
class FanPoint:
    id: str
    codim: int
    msharp: int
    chart: Optional[Chart] = None

    def __post_init__(self):
        if self.codim < 0:
            raise InvalidFan(f"point {self.id!r}: codim ≥ 0")
        if self.msharp < 1:
            raise InvalidFan(f"point {self.id!r}: msharp ≥ 1")
        if self.codim == 0 and self.msharp != 1:
            raise InvalidFan(f"point {self.id!r}: msharp must be 1 at the generic point")


@dataclass(frozen=True)
class KatoFan:
    points: tuple[FanPoint, ...]
    specializations: tuple[tuple[str, str], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(self.points))
        object.__setattr__(self, "specializations", tuple((str(a), str(b)) for a, b in self.specializations))

    @cached_property
    def by_id(self) -> dict[str, FanPoint]:
        return {pt.id: pt for pt in self.points}

    @property
    def ids(self) -> list[str]:
        return [pt.id for pt in self.points]

    @cached_property
    def generic(self) -> FanPoint:
        gen = [pt for pt in self.points if pt.codim == 0]
        if len(gen) != 1:
            raise InvalidFan(f"expected exactly one point of codim 0, found {len(gen)}")
        return gen[0]

    def non_generic(self) -> list[FanPoint]:
        return [pt for pt in self.points if pt.codim > 0]

    @cached_property
    def closure(self) -> dict[str, frozenset[str]]:
        """Points each point specializes to (transitively, excluding itself)."""
        succ: dict[str, set[str]] = {i: set() for i in self.by_id}
        for a, b in self.specializations:
            if a in succ and b in succ:
                succ[a].add(b)
        out = {}
        for start in succ:
            seen: set[str] = set()
            stack = list(succ[start])
            while stack:
                x = stack.pop()
                if x in seen:
                    continue
                seen.add(x)
                stack.extend(succ[x])
            seen.discard(start)
            out[start] = frozenset(seen)
        return out

    def specializes(self, a: str, b: str) -> bool:
        if a == b:
            return True
        if self.by_id[a].codim == 0:
            return True
        return b in self.closure[a]


@dataclass(frozen=True)
class LocusPartition:
    p_locus: frozenset[str]
    pprime_locus: frozenset[str]

    def as_dict(self) -> dict:
        return {"p_locus": sorted(self.p_locus), "pprime_locus": sorted(self.pprime_locus)}


class Smoothness(enum.Enum):
    SMOOTH = "SMOOTH"
    NOT_SMOOTH = "NOT_SMOOTH"
    UNKNOWN = "UNKNOWN"


@dataclass(frozen=True)
class SmoothnessVerdict:
    status: Smoothness
    reason: str

    def as_dict(self) -> dict:
        return {"status": self.status.value, "reason": self.reason}


UNKNOWN_REASON = (
    "p-locus point; smoothness is the vanishing locus of a logarithmic 1-form, "
    "not determined by combinatorics alone"
)


def structural_violations(fan: KatoFan) -> list[Violation]:
    out = []
    seen = set()
    for pt in fan.points:
        if pt.id in seen:
            out.append(Violation("poset", f"duplicate point id {pt.id!r}", (pt.id,)))
        seen.add(pt.id)
    generic = [pt.id for pt in fan.points if pt.codim == 0]
    if len(generic) != 1:
        out.append(Violation("poset", f"expected exactly one point of codim 0, found {len(generic)}", tuple(generic)))
    for a, b in fan.specializations:
        missing = [x for x in (a, b) if x not in fan.by_id]
        if missing:
            out.append(Violation("poset", f"specialization ({a}, {b}) names unknown point(s) {missing}", (a, b)))
            continue
        if a == b:
            out.append(Violation("poset", f"point {a!r} specializes to itself", (a,)))
        elif fan.by_id[a].codim >= fan.by_id[b].codim:
            out.append(
                Violation(
                    "orientation",
                    f"specialization {a} -> {b} does not increase codimension "
                    f"({fan.by_id[a].codim} -> {fan.by_id[b].codim}); check the orientation of the pair",
                    (a, b),
                )
            )
    return out


def require_valid(fan: KatoFan) -> None:
    bad = structural_violations(fan)
    if bad:
        raise InvalidFan("; ".join(v.message for v in bad))


def classify(fan: KatoFan, p: int) -> LocusPartition:
    """Split the points by whether ``p`` divides their sharp multiplicity."""
    require_prime(p)
    require_valid(fan)
    p_locus = frozenset(pt.id for pt in fan.points if pt.codim > 0 and pt.msharp % p == 0)
    return LocusPartition(p_locus, frozenset(fan.by_id) - p_locus)


def validate_fan(fan: KatoFan, p: int) -> list[Violation]:
    """Every structural problem, chart/multiplicity mismatch, and pair
    ``a -> b`` of non-generic points with ``b`` in the p-locus but ``a`` not."""
    require_prime(p)
    out = structural_violations(fan)
    for pt in fan.points:
        if pt.chart is None:
            continue
        try:
            m = pt.chart.msharp()
        except InvalidChart as exc:
            out.append(Violation("chart", f"point {pt.id!r}: invalid chart: {exc.message}", (pt.id,)))
            continue
        if m != pt.msharp:
            out.append(
                Violation(
                    "msharp",
                    f"point {pt.id!r}: declared msharp {pt.msharp} but the chart gives {m}",
                    (pt.id,),
                )
            )
    if any(v.kind == "poset" for v in out):
        return out
    for pt in fan.non_generic():
        for other in sorted(fan.closure[pt.id]):
            q = fan.by_id[other]
            if q.codim > 0 and q.msharp % p == 0 and pt.msharp % p != 0:
                out.append(
                    Violation(
                        "p-locus",
                        f"{other!r} is in the p-locus (msharp {q.msharp}) but its generization "
                        f"{pt.id!r} is not (msharp {pt.msharp})",
                        (pt.id, other),
                    )
                )
    return out


def torsion_has_p(v1: Sequence[int], lattice: Lattice, p: int) -> bool:
    """Whether ``lattice / <v1>`` has an element of order ``p``.

    Computed twice, from the content of ``v1`` and from the Smith form of the
    inclusion; a disagreement raises :class:`InternalMismatch`.
    """
    require_prime(p)
    c = content(v1, lattice)
    if c is None:
        raise ValueError("v1 must be nonzero")
    by_content = c % p == 0
    by_smith = any(d % p == 0 for d in quotient_torsion(v1, lattice))
    if by_content != by_smith:
        raise InternalMismatch(f"content {c} and Smith torsion disagree for {tuple(v1)}")
    return by_content


def chart_log_smooth(chart: Chart, p: int) -> SmoothnessVerdict:
    require_prime(p)
    m = chart.msharp()
    if m % p:
        return SmoothnessVerdict(Smoothness.SMOOTH, f"p'-locus point (msharp {m} prime to {p})")
    if not chart.etale_marked:
        return SmoothnessVerdict(Smoothness.UNKNOWN, UNKNOWN_REASON)
    if torsion_has_p(chart.v1, chart.monoid.lattice, p):
        c = content(chart.v1, chart.monoid.lattice)
        return SmoothnessVerdict(
            Smoothness.NOT_SMOOTH, f"v1 has content {c} in the group envelope: the cokernel has {p}-torsion"
        )
    return SmoothnessVerdict(
        Smoothness.SMOOTH, f"p-locus point (msharp {m}) but v1 is not divisible by {p} in the group envelope"
    )


def point_smoothness(fan: KatoFan, p: int) -> dict[str, SmoothnessVerdict]:
    """Verdict for every point on the special fibre."""
    part = classify(fan, p)
    out = {}
    for pt in fan.non_generic():
        if pt.chart is not None:
            out[pt.id] = chart_log_smooth(pt.chart, p)
        elif pt.id in part.pprime_locus:
            out[pt.id] = SmoothnessVerdict(Smoothness.SMOOTH, f"p'-locus point (msharp {pt.msharp})")
        else:
            out[pt.id] = SmoothnessVerdict(Smoothness.UNKNOWN, UNKNOWN_REASON)
    return out
