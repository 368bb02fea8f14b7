"""Spectral disposition data: gap endpoints, distances and bound validity.

All validity predicates are strict inequalities evaluated on squared
quantities, so no square root rounding enters the comparison.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

from .errors import DomainError


class Disposition(enum.Enum):
    IN_GAP = "in-gap"
    SUBORDINATED = "subordinated"
    GENERAL = "general"


class BoundKind(enum.Enum):
    APRIORI_TAN_THETA = "AprioriTanTheta"
    XI_BOUND = "XiBound"
    TAN_2THETA = "Tan2Theta"
    KAPPA = "Kappa"
    APOSTERIORI = "Aposteriori"


@dataclass(frozen=True)
class GapGeometry:
    """A finite gap ``(gap_lo, gap_hi)`` of sigma_1 and the distance ``d``
    from sigma_0 (which sits inside the gap) to sigma_1."""

    gap_lo: float
    gap_hi: float
    d: float

    def __post_init__(self):
        if not self.gap_hi > self.gap_lo:
            raise DomainError(
                f"degenerate gap: gap_hi={self.gap_hi!r} must exceed gap_lo={self.gap_lo!r}")
        if not 0 < self.d <= self.delta_len / 2:
            raise DomainError(
                f"d={self.d!r} violates 0 < d <= |gap|/2 = {self.delta_len / 2!r}")

    @property
    def delta_len(self) -> float:
        return self.gap_hi - self.gap_lo

    @property
    def center(self) -> float:
        return 0.5 * (self.gap_lo + self.gap_hi)

    @property
    def half_width(self) -> float:
        return 0.5 * self.delta_len

    def shifted(self, offset: float) -> "GapGeometry":
        return GapGeometry(self.gap_lo + offset, self.gap_hi + offset, self.d)


def make_geometry(gap_lo: float, gap_hi: float, d: float) -> GapGeometry:
    return GapGeometry(float(gap_lo), float(gap_hi), float(d))


def centered_geometry(D: float, d: float) -> GapGeometry:
    """Geometry with gap ``(-D/2, D/2)``."""
    return make_geometry(-0.5 * D, 0.5 * D, d)


def validity(kind: BoundKind, g: GapGeometry, b: float) -> bool:
    """Whether a coupling norm ``b`` satisfies the hypothesis of ``kind``.

    ``Tan2Theta`` needs no norm condition. ``Aposteriori`` shares the
    ``b < sqrt(2) d`` condition of the a priori bound.
    """
    if b < 0:
        return False
    D, d = g.delta_len, g.d
    bb = b * b
    if kind in (BoundKind.APRIORI_TAN_THETA, BoundKind.APOSTERIORI):
        return bb < 2 * d * d
    if kind is BoundKind.XI_BOUND:
        return bb < d * D
    if kind is BoundKind.KAPPA:
        return bb < d * (D - d)
    if kind is BoundKind.TAN_2THETA:
        return True
    raise ValueError(f"unknown bound kind {kind!r}")
