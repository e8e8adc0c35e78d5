"""Logarithmic good reduction of genus-1 curves.

The curve is described by its period ``m``, whether inertia acts tamely on
its first cohomology, the reduction type of its Jacobian and, when ``p``
divides the period and the Jacobian has good reduction, either the
cohomological flatness of the minimal model or the order ``mu`` of the
normal bundle of the reduced special fibre. Nothing here is computed from
geometry; these are all inputs.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

from .errors import InconsistentInput, MissingData, NotApplicable, NumericInvalid
from .fan import require_prime


class JacobianReduction(enum.Enum):
    GOOD = "good"
    MULTIPLICATIVE = "mult"
    ADDITIVE = "add"


@dataclass(frozen=True)
class NumericCriterion:
    m: int
    mu: int
    p: int


@dataclass(frozen=True)
class NumericCheck:
    ok: bool
    reason: str


def _p_power_exponent(n: int, p: int) -> Optional[int]:
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k if n == 1 else None


def validate_numeric(c: NumericCriterion) -> NumericCheck:
    """``mu`` must divide ``m`` with ``m / mu`` a power of ``p``."""
    require_prime(c.p)
    if c.m < 1 or c.mu < 1:
        raise ValueError("m and mu must be positive")
    if c.m % c.mu:
        return NumericCheck(False, f"mu = {c.mu} does not divide m = {c.m}")
    k = _p_power_exponent(c.m // c.mu, c.p)
    if k is None:
        return NumericCheck(False, f"m / mu = {c.m // c.mu} is not a power of {c.p}")
    return NumericCheck(True, f"m / mu = {c.p}^{k}")


def somewhere_log_smooth(c: NumericCriterion) -> bool:
    """Whether the model is log smooth at some point of the special fibre: ``m == mu``."""
    check = validate_numeric(c)
    if not check.ok:
        raise NumericInvalid(check.reason)
    return c.m == c.mu


@dataclass(frozen=True)
class Genus1Input:
    p: int
    period: int
    h1_tame: bool
    jacobian_reduction: JacobianReduction
    coh_flat: Optional[bool] = None
    mu: Optional[int] = None
    supersingular: Optional[bool] = None

    def __post_init__(self):
        require_prime(self.p)
        if self.period < 1:
            raise ValueError("period must be positive")
        if self.mu is not None and self.mu < 1:
            raise ValueError("mu must be positive")
        if not isinstance(self.jacobian_reduction, JacobianReduction):
            object.__setattr__(self, "jacobian_reduction", JacobianReduction(self.jacobian_reduction))


@dataclass(frozen=True)
class Genus1Verdict:
    log_good_reduction: bool
    reason: str
    branch: str

    def as_dict(self) -> dict:
        return {"log_good_reduction": self.log_good_reduction, "reason": self.reason, "branch": self.branch}


def default_h1_tame(p: int, jacobian_reduction: JacobianReduction) -> Optional[bool]:
    """Tameness when it is automatic (``p >= 5``, good or multiplicative
    Jacobian); ``None`` means the caller has to supply it."""
    if p >= 5 and jacobian_reduction in (JacobianReduction.GOOD, JacobianReduction.MULTIPLICATIVE):
        return True
    return None


def cohomologically_flat(inp: Genus1Input) -> bool:
    """Cohomological flatness, read directly or derived as ``period == mu``."""
    derived = None
    if inp.mu is not None:
        check = validate_numeric(NumericCriterion(inp.period, inp.mu, inp.p))
        if not check.ok:
            raise InconsistentInput(f"mu = {inp.mu} is impossible for period {inp.period}: {check.reason}")
        derived = inp.period == inp.mu
    if inp.coh_flat is not None:
        if derived is not None and derived != inp.coh_flat:
            raise InconsistentInput(
                f"coh_flat = {inp.coh_flat} but period {inp.period} {'==' if derived else '!='} mu {inp.mu}"
            )
        return inp.coh_flat
    if derived is None:
        raise MissingData("p divides the period and the Jacobian has good reduction: give coh_flat or mu")
    return derived


def decide(inp: Genus1Input) -> Genus1Verdict:
    wild = inp.period % inp.p == 0
    flat = None
    if wild and inp.jacobian_reduction is JacobianReduction.GOOD:
        flat = cohomologically_flat(inp)
    elif inp.coh_flat is not None or inp.mu is not None:
        if inp.mu is not None and inp.coh_flat is not None and (inp.period == inp.mu) != inp.coh_flat:
            raise InconsistentInput(f"coh_flat = {inp.coh_flat} disagrees with period {inp.period}, mu {inp.mu}")
    if not inp.h1_tame:
        return Genus1Verdict(False, "inertia acts wildly on H^1", "wild-h1")
    if not wild:
        return Genus1Verdict(True, f"H^1 is tame and the period {inp.period} is prime to {inp.p}", "prime-to-p-period")
    if inp.jacobian_reduction is not JacobianReduction.GOOD:
        kind = "multiplicative" if inp.jacobian_reduction is JacobianReduction.MULTIPLICATIVE else "additive"
        return Genus1Verdict(
            False, f"{inp.p} divides the period and the Jacobian has {kind} reduction", "bad-jacobian"
        )
    if flat:
        return Genus1Verdict(
            True, "good Jacobian and cohomologically flat minimal model (m = mu): log smooth everywhere", "flat"
        )
    return Genus1Verdict(
        False, "good Jacobian but the minimal model is not cohomologically flat (m != mu): nowhere log smooth",
        "not-flat",
    )


def ordinarity_gate(inp: Genus1Input) -> NumericCheck:
    """``m == mu`` forces the reduced fibre to be ordinary."""
    if (
        inp.period % inp.p
        or inp.jacobian_reduction is not JacobianReduction.GOOD
        or inp.mu is None
        or inp.supersingular is None
    ):
        raise NotApplicable("needs p | period, good Jacobian reduction, mu and supersingular")
    if inp.period == inp.mu and inp.supersingular:
        return NumericCheck(False, "m = mu forces an ordinary reduced fibre, but it is declared supersingular")
    return NumericCheck(True, "no conflict with ordinarity")
