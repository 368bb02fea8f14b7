"""Closed-form eigenvector rotation bounds.

Every bound is reported on the tangent scale: ``xi`` returns a bound on
tan^2(theta), everything else a bound on tan(theta) except
``tan_2theta_bound`` which returns the angle itself.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional

from .errors import DomainError
from .geometry import BoundKind, Disposition, GapGeometry, validity

_SQRT_CLAMP = 1e-12


class Branch(enum.Enum):
    FIRST = "first"
    SECOND = "second"


@dataclass(frozen=True)
class BoundValue:
    kind: BoundKind
    value: Optional[float]
    valid: bool
    branch: Optional[Branch] = None
    reason: str = ""

    def as_dict(self) -> dict:
        out = {"kind": self.kind.value, "valid": self.valid, "value": self.value}
        if self.branch is not None:
            out["branch"] = self.branch.value
        if self.reason:
            out["reason"] = self.reason
        return out


def half_angle_tan(x: float) -> float:
    """tan(arctan(x) / 2) without forming the angle."""
    return x / (1.0 + math.sqrt(1.0 + x * x))


def _clamped_sqrt(x: float) -> float:
    if x < 0:
        if x < -_SQRT_CLAMP:
            raise DomainError(f"negative square root argument {x!r}")
        return 0.0
    return math.sqrt(x)


def _check_omega(D: float, d: float, b: float) -> None:
    if not D > 0:
        raise DomainError(f"gap length D={D!r} must be positive")
    if not 0 < d <= D / 2:
        raise DomainError(f"d={d!r} violates 0 < d <= D/2 = {D / 2!r}")
    if not b >= 0:
        raise DomainError(f"coupling norm b={b!r} must be non-negative")
    if not b * b < d * D:
        raise DomainError(f"b={b!r} violates b < sqrt(d*D) = {math.sqrt(d * D)!r}")


def xi_threshold(D: float, d: float) -> float:
    """Squared coupling norm at which ``xi`` switches to its second branch."""
    sD = math.sqrt(D)
    return 0.5 * d * sD * (sD - math.sqrt(2.0 * d))


def xi_branch(D: float, d: float, b: float) -> Branch:
    _check_omega(D, d, b)
    return Branch.FIRST if b * b <= xi_threshold(D, d) else Branch.SECOND


def xi_first(d: float, b: float) -> float:
    return half_angle_tan(2.0 * b / d) ** 2


def xi_second(D: float, d: float, b: float) -> float:
    bb = b * b
    root = _clamped_sqrt((d * D - bb) * ((D - d) * D - bb))
    return 1.0 + 2.0 * bb / (D * D) - 2.0 * root / (D * D)


def xi(D: float, d: float, b: float) -> float:
    """Sharp bound on tan^2(theta) for an eigenvector whose eigenvalue lies in
    a gap of length ``D`` of sigma_1, at distance ``d`` from sigma_0, under an
    off-diagonal coupling of norm ``b < sqrt(d*D)``."""
    if xi_branch(D, d, b) is Branch.FIRST:
        return xi_first(d, b)
    return xi_second(D, d, b)


def apriori_tan_theta(d: float, b: float) -> float:
    if not d > 0:
        raise DomainError(f"d={d!r} must be positive")
    if not 0 <= b or not b * b < 2 * d * d:
        raise DomainError(f"b={b!r} violates 0 <= b < sqrt(2)*d = {math.sqrt(2) * d!r}")
    return b / d


def tan_2theta_bound(d: float, b: float) -> float:
    """Angle bound (radians) for subordinated spectra; always below pi/4."""
    if not d > 0:
        raise DomainError(f"d={d!r} must be positive")
    if not b >= 0:
        raise DomainError(f"b={b!r} must be non-negative")
    return 0.5 * math.atan(2.0 * b / d)


def aposteriori_tan_theta(b: float, delta: float) -> float:
    if not delta > 0:
        raise DomainError(f"delta={delta!r} must be positive")
    if not b >= 0:
        raise DomainError(f"b={b!r} must be non-negative")
    return b / delta


def kappa_threshold(D: float, d: float) -> float:
    return math.sqrt(0.5 * d * (0.5 * D - d))


def kappa(D: float, d: float, b: float) -> float:
    """Argument of the operator-angle bound ``Theta <= arctan(kappa) / 2``."""
    if not D > 0 or not 0 < d <= D / 2:
        raise DomainError(f"(D, d)=({D!r}, {d!r}) violates 0 < d <= D/2")
    if not 0 <= b or not b * b < d * (D - d):
        raise DomainError(f"b={b!r} violates 0 <= b < sqrt(d(D-d)) = {math.sqrt(d * (D - d))!r}")
    if b <= kappa_threshold(D, d):
        return 2.0 * b / d
    h = 0.5 * D
    num = b * h + math.sqrt(d * (D - d) * ((h - d) ** 2 + b * b))
    return num / (d * (D - d) - b * b)


def kappa_tan(D: float, d: float, b: float) -> float:
    """``tan(arctan(kappa) / 2)``, the kappa bound on the tangent scale."""
    return half_angle_tan(kappa(D, d, b))


# ties resolve toward the sharper theorem
_ORDER = {k: i for i, k in enumerate([
    BoundKind.XI_BOUND, BoundKind.TAN_2THETA, BoundKind.KAPPA,
    BoundKind.APRIORI_TAN_THETA, BoundKind.APOSTERIORI])}


def best_bound(
    g: GapGeometry,
    b: float,
    disposition: Disposition = Disposition.IN_GAP,
    delta: Optional[float] = None,
    include_invalid: bool = False,
) -> list[BoundValue]:
    """Evaluate every bound applicable to ``disposition``, tangent scale,
    sorted ascending by value.

    ``delta`` (distance from the perturbed eigenvalues to sigma_1) enables
    the a posteriori bound. With ``include_invalid`` the inapplicable kinds
    are appended with ``valid=False`` and a reason.
    """
    D, d = g.delta_len, g.d
    valid: list[BoundValue] = []
    invalid: list[BoundValue] = []

    def reject(kind, reason):
        invalid.append(BoundValue(kind, None, False, reason=reason))

    for kind in BoundKind:
        if kind is BoundKind.TAN_2THETA:
            if disposition is not Disposition.SUBORDINATED:
                reject(kind, "requires subordinated disposition")
            else:
                valid.append(BoundValue(kind, math.tan(tan_2theta_bound(d, b)), True))
            continue
        if disposition is not Disposition.IN_GAP:
            reject(kind, "requires in-gap disposition")
            continue
        if not validity(kind, g, b):
            reject(kind, "coupling norm outside validity range")
            continue
        if kind is BoundKind.XI_BOUND:
            br = xi_branch(D, d, b)
            valid.append(BoundValue(kind, math.sqrt(xi(D, d, b)), True, branch=br))
        elif kind is BoundKind.APRIORI_TAN_THETA:
            valid.append(BoundValue(kind, apriori_tan_theta(d, b), True))
        elif kind is BoundKind.KAPPA:
            valid.append(BoundValue(kind, kappa_tan(D, d, b), True))
        elif kind is BoundKind.APOSTERIORI:
            if delta is None or not delta > 0:
                reject(kind, "requires positive delta")
            else:
                valid.append(BoundValue(kind, aposteriori_tan_theta(b, delta), True))

    valid.sort(key=lambda bv: (bv.value, _ORDER[bv.kind]))
    return valid + invalid if include_invalid else valid
