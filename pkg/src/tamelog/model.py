"""Log regular models: a Kato fan plus Euler characteristics of the strata.

From this data we get the tame monodromy zeta function, the tame Euler
characteristic, and whether the generic fibre has a point over the maximal
tamely ramified extension. The consistency checks encode what log
smoothness forces on the p-locus.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .errors import InternalMismatch, InvalidModel, NotApplicable
from .fan import KatoFan, Violation, classify, require_prime, structural_violations


@dataclass(frozen=True)
class StratumData:
    point_id: str
    chi_open: Optional[int]
    dim_closed: int
    genus: Optional[int] = None

    def __post_init__(self):
        if self.dim_closed < 0:
            raise InvalidModel(f"stratum {self.point_id!r}: dim_closed ≥ 0")
        if self.genus is not None and self.genus < 0:
            raise InvalidModel(f"stratum {self.point_id!r}: genus ≥ 0")


@dataclass(frozen=True)
class LogModel:
    fan: KatoFan
    strata: dict[str, StratumData]
    p: int
    log_smooth_claimed: bool = False

    def __post_init__(self):
        try:
            require_prime(self.p)
        except ValueError as exc:
            raise InvalidModel(str(exc)) from exc
        bad = structural_violations(self.fan)
        if bad:
            raise InvalidModel("; ".join(v.message for v in bad))
        ids = set(self.fan.by_id)
        if set(self.strata) != ids:
            missing = sorted(ids - set(self.strata))
            extra = sorted(set(self.strata) - ids)
            raise InvalidModel(f"strata keys must match fan points (missing {missing}, extra {extra})")
        for pt in self.fan.non_generic():
            if self.strata[pt.id].chi_open is None:
                raise InvalidModel(f"stratum {pt.id!r}: chi_open is required off the generic point")

    def chi(self, point_id: str) -> int:
        return self.strata[point_id].chi_open

    def codim_one(self):
        return [pt for pt in self.fan.points if pt.codim == 1]


@dataclass(frozen=True)
class ZetaFunction:
    """Formal product of factors ``(t^order - 1)^exponent``.

    Stored canonically: one factor per order, zero exponents dropped, orders
    in decreasing order. Equality is equality of the factor maps.
    """

    factors: tuple[tuple[int, int], ...] = field(default=())

    def __post_init__(self):
        merged: Counter = Counter()
        for order, exponent in self.factors:
            if order < 1:
                raise ValueError(f"factor order must be positive, got {order}")
            merged[int(order)] += int(exponent)
        canon = tuple(sorted(((o, e) for o, e in merged.items() if e), reverse=True))
        object.__setattr__(self, "factors", canon)

    @classmethod
    def product(cls, factors: Iterable[tuple[int, int]]) -> "ZetaFunction":
        return cls(tuple(factors))

    def __mul__(self, other: "ZetaFunction") -> "ZetaFunction":
        return ZetaFunction(self.factors + other.factors)

    @property
    def degree(self) -> int:
        return sum(o * e for o, e in self.factors)

    def as_list(self) -> list[list[int]]:
        return [[o, e] for o, e in self.factors]

    def __str__(self) -> str:
        if not self.factors:
            return "1"
        return " ".join(f"(t^{o}-1)^{e}" for o, e in self.factors)


def m_prime(msharp: int, p: int) -> int:
    """Largest divisor of ``msharp`` prime to ``p``."""
    if msharp < 1:
        raise ValueError("msharp ≥ 1")
    while msharp % p == 0:
        msharp //= p
    return msharp


def tame_zeta(model: LogModel) -> ZetaFunction:
    """Product over codimension-one points of ``(t^{m'} - 1)^{-chi(U)}``."""
    return ZetaFunction.product((m_prime(pt.msharp, model.p), -model.chi(pt.id)) for pt in model.codim_one())


def tame_euler(model: LogModel) -> int:
    """Sum over codimension-one points of ``m' * chi(U)``; checked against the
    degree of :func:`tame_zeta`."""
    total = sum(m_prime(pt.msharp, model.p) * model.chi(pt.id) for pt in model.codim_one())
    deg = tame_zeta(model).degree
    if -deg != total:
        raise InternalMismatch(f"tame Euler {total} differs from minus the zeta degree {-deg}")
    return total


def tame_point_exists(model: LogModel) -> bool:
    """True iff some point of the special fibre lies in the p'-locus."""
    part = classify(model.fan, model.p)
    return any(pt.id in part.pprime_locus for pt in model.fan.non_generic())


def stratum_violations(model: LogModel) -> list[Violation]:
    """Stratum data that contradicts its own dimension/genus."""
    out = []
    for pt in model.fan.non_generic():
        s = model.strata[pt.id]
        if s.dim_closed == 0 and s.chi_open != 1:
            out.append(Violation("stratum", f"{pt.id!r}: a point stratum has chi 1, got {s.chi_open}", (pt.id,)))
        if s.dim_closed == 1 and s.genus is not None and not model.fan.closure[pt.id]:
            expected = 2 - 2 * s.genus
            if s.chi_open != expected:
                out.append(
                    Violation(
                        "stratum",
                        f"{pt.id!r}: a closed curve of genus {s.genus} without boundary has chi "
                        f"{expected}, got {s.chi_open}",
                        (pt.id,),
                    )
                )
    return out


def _require_claimed(model: LogModel, what: str) -> None:
    if not model.log_smooth_claimed:
        raise NotApplicable(f"{what} needs a model claimed to be log smooth")


def check_prop_vanishing(model: LogModel) -> list[Violation]:
    """On a log smooth model every p-locus stratum has Euler characteristic 0."""
    _require_claimed(model, "the vanishing check")
    part = classify(model.fan, model.p)
    out = []
    total = 0
    for pt in model.fan.non_generic():
        if pt.id not in part.p_locus:
            continue
        chi = model.chi(pt.id)
        total += chi
        if chi != 0:
            out.append(
                Violation(
                    "vanishing",
                    f"{pt.id!r} lies in the p-locus (msharp {pt.msharp}) but chi(U) = {chi}",
                    (pt.id,),
                )
            )
    if total != 0:
        out.append(Violation("vanishing", f"Euler characteristic of the p-locus is {total}, not 0"))
    return out


@dataclass(frozen=True)
class RestrictionsReport:
    violations: tuple[Violation, ...]
    advisories: tuple[str, ...]

    def as_dict(self) -> dict:
        return {"violations": [v.as_dict() for v in self.violations], "advisories": list(self.advisories)}


def check_degeneration_restrictions(model: LogModel) -> RestrictionsReport:
    """Shape of the strata of a log smooth model without tame points: no
    point strata, and one-dimensional strata are genus-1 curves."""
    _require_claimed(model, "the degeneration restrictions")
    if tame_point_exists(model):
        raise NotApplicable("the restrictions only apply when no tame point exists")
    violations = []
    advisories = []
    for pt in model.fan.non_generic():
        s = model.strata[pt.id]
        if s.dim_closed == 0:
            violations.append(Violation("restriction", f"{pt.id!r}: closed stratum is zero-dimensional", (pt.id,)))
        elif s.dim_closed == 1:
            if s.genus is None:
                advisories.append(f"{pt.id!r}: genus not supplied; cannot confirm it is 1")
            elif s.genus != 1:
                violations.append(
                    Violation("restriction", f"{pt.id!r}: closed stratum is a curve of genus {s.genus}, not 1", (pt.id,))
                )
        elif s.dim_closed == 2:
            advisories.append(f"{pt.id!r}: surface stratum must not be of general type (not checkable here)")
    return RestrictionsReport(tuple(violations), tuple(advisories))


@dataclass(frozen=True)
class Theorem1Report:
    chi_tame: int
    tame_point_exists: bool
    status: str
    note: str

    def as_dict(self) -> dict:
        return {
            "chi_tame": self.chi_tame,
            "tame_point_exists": self.tame_point_exists,
            "status": self.status,
            "note": self.note,
        }


def theorem1_verdict(model: LogModel) -> Theorem1Report:
    """Check that a nonzero tame Euler characteristic comes with a tame point."""
    _require_claimed(model, "the Euler characteristic criterion")
    chi = tame_euler(model)
    exists = tame_point_exists(model)
    if chi == 0:
        return Theorem1Report(chi, exists, "SILENT", "chi_tame = 0: the criterion says nothing")
    if exists:
        return Theorem1Report(chi, exists, "CONSISTENT", f"chi_tame = {chi} != 0 and a tame point exists")
    return Theorem1Report(
        chi,
        exists,
        "INCONSISTENT_INPUT",
        f"chi_tame = {chi} != 0 but the p-locus covers the special fibre; "
        "these data cannot come from a log smooth model",
    )
