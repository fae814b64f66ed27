"""Boundary data, admissibility checks and the stability gate for each family.

Inverse functions take their principal branch; for the trig families the
phase is confined to (0, pi/2), and anything outside becomes a violation
rather than being wrapped into range.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .model import HALF_PI, DomainError, Family, ModelParams, SteadyState, kappa

REL_TOL = 1e-9


def arcsec(y: float) -> float:
    return math.acos(1.0 / y)


def arccsc(y: float) -> float:
    return math.asin(1.0 / y)


def arccsch(y: float) -> float:
    return math.asinh(1.0 / y)


def arccot(y: float) -> float:
    # principal branch with values in (0, pi)
    return HALF_PI - math.atan(y)


def arccoth(y: float) -> float:
    return math.atanh(1.0 / y)


@dataclass(frozen=True)
class BoundaryData:
    alpha1: float
    alpha2: float
    beta1: float
    beta2: float

    def __post_init__(self):
        if not (self.alpha1 > 0 and self.alpha2 > 0):
            raise ValueError("boundary densities alpha1, alpha2 must be positive")
        if self.alpha1 == self.alpha2:
            raise ValueError("alpha1 == alpha2 gives no non-constant steady state")


@dataclass(frozen=True)
class AdmissibilityReport:
    family: Family
    b: float | None
    boundary: BoundaryData | None
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def steady_state(self, params: ModelParams) -> SteadyState:
        if not self.ok:
            raise DomainError(f"{self.family.value}: {'; '.join(self.violations)}")
        return SteadyState.from_b(self.family, params, self.b)


@dataclass(frozen=True)
class StabilityGate:
    lam: float | None
    satisfied: bool
    condition_used: str


def _close(lhs: float, rhs: float) -> bool:
    return math.isclose(lhs, rhs, rel_tol=REL_TOL, abs_tol=1e-300)


def _offset_b(family: Family, alpha1: float) -> tuple[float | None, list[str]]:
    """Phase offset b from u(0) = alpha1, or the violations that prevent it."""
    if not alpha1 > 0:
        return None, ["alpha1 > 0 required"]
    root = math.sqrt(alpha1)
    if family is Family.POWER:
        return 1.0 / root, []
    if family is Family.CSCH_COTH:
        return arccsch(root), []
    if alpha1 < 1.0:
        return None, ["alpha1 >= 1 required"]
    if alpha1 == 1.0 and family is Family.SEC_TAN:
        # sec^-1(1) = 0 is not a positive offset
        return None, ["b > 0 required (alpha1 = 1 gives b = 0)"]
    b = arcsec(root) if family is Family.SEC_TAN else arccsc(root)
    return b, []


def derive_boundary(family: Family | str, params: ModelParams, alpha1: float) -> AdmissibilityReport:
    """Offset b and the remaining boundary values (alpha2, beta1, beta2) from alpha1."""
    family = Family(family)
    b, violations = _offset_b(family, alpha1)
    if b is None:
        return AdmissibilityReport(family, None, None, violations)
    k = kappa(params)
    amp = 2.0 * k * params.d / params.chi
    end = k + b
    if family.is_trig and not end < HALF_PI:
        return AdmissibilityReport(family, b, None, ["kappa + b < pi/2 required"])

    if family is Family.POWER:
        alpha2 = end**-2
        beta1 = -amp / b
        beta2 = 1.0 / (1.0 / beta1 - params.chi / (2.0 * params.d))
    elif family is Family.SEC_TAN:
        alpha2 = 1.0 / math.cos(end) ** 2
        beta1 = amp * math.tan(b)
        beta2 = amp * math.tan(end)
    elif family is Family.CSC_COT:
        alpha2 = 1.0 / math.sin(end) ** 2
        beta1 = -amp / math.tan(b)
        beta2 = -amp / math.tan(end)
    else:
        alpha2 = 1.0 / math.sinh(end) ** 2
        beta1 = -amp / math.tanh(b)
        beta2 = -amp / math.tanh(end)
    return AdmissibilityReport(family, b, BoundaryData(alpha1, alpha2, beta1, beta2), [])


def validate_state(family: Family | str, params: ModelParams, boundary: BoundaryData) -> AdmissibilityReport:
    """Check boundary data against the family's chain relations."""
    family = Family(family)
    bd = boundary
    b, violations = _offset_b(family, bd.alpha1)
    if b is None:
        return AdmissibilityReport(family, None, bd, violations)
    k = kappa(params)
    amp = 2.0 * k * params.d / params.chi
    v = []

    if family is Family.POWER:
        if not _close(bd.alpha2**-0.5, k + bd.alpha1**-0.5):
            v.append("alpha2^(-1/2) = kappa + alpha1^(-1/2)")
        if not _close(bd.beta1, -amp / b):
            v.append("beta1 = -2 kappa d / (b chi)")
        if bd.beta2 == 0.0 or bd.beta1 == 0.0:
            v.append("1/beta2 = 1/beta1 - chi/(2d): zero beta")
        elif not _close(1.0 / bd.beta2, 1.0 / bd.beta1 - params.chi / (2.0 * params.d)):
            v.append("1/beta2 = 1/beta1 - chi/(2d)")
        return AdmissibilityReport(family, b, bd, v)

    if family.is_trig and not k + b < HALF_PI:
        v.append("kappa + b < pi/2 required")

    if family is Family.SEC_TAN:
        if bd.alpha2 < 1.0 or not _close(arcsec(math.sqrt(bd.alpha2)), b + k):
            v.append("sec^-1(sqrt(alpha2)) = sec^-1(sqrt(alpha1)) + kappa")
        if not _close(bd.beta1, amp * math.tan(b)):
            v.append("beta1 = 2 kappa d tan(b) / chi")
        lhs = math.atan(bd.beta2 / amp)
        rhs = math.atan(bd.beta1 / amp) + k
        if not _close(lhs, rhs):
            v.append("tan^-1(beta2 chi/(2 kappa d)) = tan^-1(beta1 chi/(2 kappa d)) + kappa")
    elif family is Family.CSC_COT:
        if bd.alpha2 < 1.0 or not _close(arccsc(math.sqrt(bd.alpha2)), b + k):
            v.append("csc^-1(sqrt(alpha2)) = csc^-1(sqrt(alpha1)) + kappa")
        if not _close(bd.beta1, -amp / math.tan(b)):
            v.append("beta1 = -2 kappa d cot(b) / chi")
        lhs = arccot(-bd.beta2 / amp)
        rhs = arccot(-bd.beta1 / amp) + k
        if not _close(lhs, rhs):
            v.append("cot^-1(-beta2 chi/(2 kappa d)) = cot^-1(-beta1 chi/(2 kappa d)) + kappa")
    else:
        if not _close(arccsch(math.sqrt(bd.alpha2)), b + k):
            v.append("csch^-1(sqrt(alpha2)) = csch^-1(sqrt(alpha1)) + kappa")
        if not _close(bd.beta1, -amp / math.tanh(b)):
            v.append("beta1 = -2 kappa d coth(b) / chi")
        y1, y2 = -bd.beta1 / amp, -bd.beta2 / amp
        # y2 is checked forward: arccoth(y2) loses digits once coth(b + kappa) is
        # near 1, and for large kappa it may round to exactly 1
        if abs(y1) <= 1.0 or abs(y2) < 1.0:
            v.append("coth^-1 argument must exceed 1 in magnitude")
        elif not _close(y2, 1.0 / math.tanh(arccoth(y1) + k)):
            v.append("coth^-1(-beta2 chi/(2 kappa d)) = coth^-1(-beta1 chi/(2 kappa d)) + kappa")
    return AdmissibilityReport(family, b, bd, v)


def match_families(params: ModelParams, boundary: BoundaryData) -> dict[Family, AdmissibilityReport]:
    return {fam: validate_state(fam, params, boundary) for fam in Family}


def stability_lambda(params: ModelParams) -> float | None:
    """(4d - 2chi) / (2d - 3chi), undefined on the edge 2d = 3chi."""
    d, chi = params.d, params.chi
    if 2.0 * d == 3.0 * chi:
        return None
    return (4.0 * d - 2.0 * chi) / (2.0 * d - 3.0 * chi)


def stability_gate(family: Family | str, params: ModelParams, boundary: BoundaryData) -> StabilityGate:
    """Sufficient condition for the sign gate L(x) <= 0 of the given family.

    Rows:
        power: 3chi <= 2d
        sec:   3chi < 2d and alpha1 >= lambda
        csc:   3chi < 2d and alpha2 >= lambda
        csch:  3chi <= 2d, or 6d > 3chi > 2d and alpha1 <= -lambda
    """
    family = Family(family)
    d, chi = params.d, params.chi
    lam = stability_lambda(params)
    weak = 3.0 * chi <= 2.0 * d
    strict = 3.0 * chi < 2.0 * d

    if family is Family.POWER:
        return StabilityGate(lam, weak, "3chi <= 2d")
    if family is Family.SEC_TAN:
        ok = strict and lam is not None and boundary.alpha1 >= lam
        return StabilityGate(lam, ok, "3chi < 2d & alpha1 >= lambda")
    if family is Family.CSC_COT:
        ok = strict and lam is not None and boundary.alpha2 >= lam
        return StabilityGate(lam, ok, "3chi < 2d & alpha2 >= lambda")
    if weak:
        return StabilityGate(lam, True, "3chi <= 2d")
    ok = 6.0 * d > 3.0 * chi > 2.0 * d and lam is not None and boundary.alpha1 <= -lam
    return StabilityGate(lam, ok, "6d > 3chi > 2d & alpha1 <= -lambda")


def exclusivity_gap(alpha: float) -> float:
    """csc^-1(sqrt(alpha)) - csch^-1(sqrt(alpha)); strictly decreasing on [1, inf)."""
    if not alpha >= 1.0:
        raise DomainError(f"exclusivity_gap needs alpha >= 1, got {alpha}")
    root = math.sqrt(alpha)
    return arccsc(root) - arccsch(root)
