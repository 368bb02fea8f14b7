"""Extremal 3x3 matrices for which the rotation bounds hold with equality."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from .bounds import _check_omega, xi
from .errors import DomainError, TightnessError
from .secular import (
    WitnessMatrix3,
    beta,
    solve_secular,
    split_from_z,
    z0_and_beta,
)

TIGHTNESS_TOL = 1e-8


@dataclass(frozen=True)
class WitnessReport:
    matrix: WitnessMatrix3
    z: float
    tan_theta: float
    bound: float
    gap_ratio: float
    regime: str = ""
    notes: tuple = field(default_factory=tuple)

    def as_dict(self) -> dict:
        m = self.matrix
        return {
            "regime": self.regime,
            "lam": m.lam,
            "gamma_minus": m.gamma_minus,
            "gamma_plus": m.gamma_plus,
            "b_minus": m.b_minus,
            "b_plus": m.b_plus,
            "matrix": m.matrix().tolist(),
            "z": self.z,
            "tan_theta": self.tan_theta,
            "bound": self.bound,
            "gap_ratio": self.gap_ratio,
            "notes": list(self.notes),
        }


def _ratio(tan_theta: float, bound: float) -> float:
    if bound == 0.0:
        return 1.0 if tan_theta == 0.0 else math.inf
    return tan_theta / bound


def build_xi_witness(D: float, d: float, b: float) -> WitnessReport:
    """3x3 matrix with gap length ``D``, distance ``d`` and coupling norm
    ``b`` whose in-gap eigenvector attains ``tan^2(theta) = xi(D, d, b)``.

    Below ``beta`` all coupling goes to the nearer gap edge and the
    eigenvalue lands on ``z_min``; above it the coupling is split so that
    the eigenvalue lands on the maximiser ``z0`` of ``phi``.
    """
    _check_omega(D, d, b)
    if not b > 0:
        raise DomainError("witness requires b > 0")
    gamma = 0.5 * D
    lam = gamma - d
    notes = []
    if b <= beta(gamma, lam):
        regime = "first-branch"
        b_minus, b_plus = 0.0, b
    else:
        regime = "second-branch"
        z0, _ = z0_and_beta(gamma, lam, b)
        t, clamped = split_from_z(gamma, lam, b, z0)
        if clamped:
            notes.append("split fraction clamped to [0, 1]")
        b_plus = math.sqrt(t) * b
        b_minus = math.sqrt(1.0 - t) * b
    w = WitnessMatrix3(lam, -gamma, gamma, b_minus, b_plus)
    sol = solve_secular(w)
    bound = math.sqrt(xi(D, d, b))
    ratio = _ratio(sol.tan_theta, bound)
    if not abs(ratio - 1.0) <= TIGHTNESS_TOL:
        raise TightnessError(
            f"witness for (D, d, b)=({D!r}, {d!r}, {b!r}) reached ratio {ratio!r}")
    return WitnessReport(w, sol.z, sol.tan_theta, bound, ratio, regime, tuple(notes))


@dataclass(frozen=True)
class RemdelReport:
    witness: WitnessReport
    delta: float

    def as_dict(self) -> dict:
        out = self.witness.as_dict()
        out["delta"] = self.delta
        return out


def remdel_eigenvalue(d: float, b: float) -> float:
    return -0.5 * d + math.sqrt(0.25 * d * d + b * b)


def build_remdel_example(d: float, b: float) -> RemdelReport:
    """Symmetric gap ``(-d, d)`` around ``lam = 0`` with all coupling on the
    lower edge: the eigenvalue drifts to ``d`` as ``b -> sqrt(2) d``, so the
    distance ``delta`` to sigma_1 collapses.

    ``bound`` in the report is the a priori ``b / d``.
    """
    if not d > 0:
        raise DomainError(f"d={d!r} must be positive")
    if not 0 <= b or not b * b < 2 * d * d:
        raise DomainError(f"b={b!r} violates 0 <= b < sqrt(2)*d")
    w = WitnessMatrix3(0.0, -d, d, b, 0.0)
    sol = solve_secular(w)
    delta = d - sol.z
    bound = b / d
    report = WitnessReport(w, sol.z, sol.tan_theta, bound, _ratio(sol.tan_theta, bound), "remdel")
    return RemdelReport(report, delta)
