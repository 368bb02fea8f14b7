"""Scalar spectral analysis of the 3x3 in-gap model

    L = [[lam,  b-,  b+ ],
         [b-,   g-,  0  ],
         [b+,   0,   g+ ]],   g- < lam < g+.

Internally everything is moved to the centered frame ``g+ = -g- = gamma``
and, when the centered ``lam`` is negative, to ``-L`` (which swaps the roles
of ``b-`` and ``b+``). Results are mapped back before being returned.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bounds import half_angle_tan
from .errors import ConvergenceError, DomainError

BISECTION_REL_WIDTH = 1e-14
MAX_BISECTION = 200
MAX_NEWTON = 5
T_SLACK = 1e-12


@dataclass(frozen=True)
class WitnessMatrix3:
    lam: float
    gamma_minus: float
    gamma_plus: float
    b_minus: float
    b_plus: float

    @property
    def b_norm(self) -> float:
        return math.hypot(self.b_minus, self.b_plus)

    @property
    def delta_len(self) -> float:
        return self.gamma_plus - self.gamma_minus

    @property
    def d(self) -> float:
        return min(self.gamma_plus - self.lam, self.lam - self.gamma_minus)

    def validate(self) -> None:
        if not self.gamma_minus < self.lam < self.gamma_plus:
            raise DomainError(
                f"lam={self.lam!r} not inside the gap ({self.gamma_minus!r}, {self.gamma_plus!r})")
        if self.b_minus < 0 or self.b_plus < 0:
            raise DomainError("b_minus and b_plus must be non-negative")
        bb = self.b_minus ** 2 + self.b_plus ** 2
        if not bb < self.d * self.delta_len:
            raise DomainError(
                f"||B||={math.sqrt(bb)!r} violates ||B|| < sqrt(d*|gap|) = "
                f"{math.sqrt(self.d * self.delta_len)!r}")

    def matrix(self) -> np.ndarray:
        return np.array([
            [self.lam, self.b_minus, self.b_plus],
            [self.b_minus, self.gamma_minus, 0.0],
            [self.b_plus, 0.0, self.gamma_plus],
        ])


@dataclass(frozen=True)
class SecularSolution:
    z: float
    x_minus: float
    x_plus: float
    tan_theta: float
    residual: float


@dataclass(frozen=True)
class _Canonical:
    gamma: float
    lam: float       # >= 0
    bm: float        # weight of the pole at -gamma
    bp: float        # weight of the pole at +gamma
    center: float
    flipped: bool

    def to_original(self, zc: float) -> float:
        return self.center + (-zc if self.flipped else zc)


def _canonical(w: WitnessMatrix3) -> _Canonical:
    center = 0.5 * (w.gamma_plus + w.gamma_minus)
    gamma = 0.5 * w.delta_len
    lam = w.lam - center
    if lam < 0:
        return _Canonical(gamma, -lam, w.b_plus, w.b_minus, center, True)
    return _Canonical(gamma, lam, w.b_minus, w.b_plus, center, False)


def secular_function(gamma: float, lam: float, bm: float, bp: float, z: float) -> float:
    """Centered secular function; strictly increasing on ``(-gamma, gamma)``."""
    return z - lam - bm * bm / (z + gamma) - bp * bp / (z - gamma)


def _secular_derivative(gamma, lam, bm, bp, z):
    return 1.0 + bm * bm / (z + gamma) ** 2 + bp * bp / (z - gamma) ** 2


def z_bracket(w: WitnessMatrix3) -> tuple[float, float]:
    """Interval ``[z_min, z_max]`` containing the in-gap eigenvalue."""
    w.validate()
    b = w.b_norm
    z_min = w.lam - b * half_angle_tan(2 * b / (w.gamma_plus - w.lam))
    z_max = w.lam + b * half_angle_tan(2 * b / (w.lam - w.gamma_minus))
    return z_min, z_max


def _solve_centered(c: _Canonical) -> float:
    gamma, lam, bm, bp = c.gamma, c.lam, c.bm, c.bp
    if bm == 0.0 and bp == 0.0:
        return lam
    f = lambda z: secular_function(gamma, lam, bm, bp, z)
    lo, hi = -gamma, gamma
    width = BISECTION_REL_WIDTH * 2 * gamma
    for _ in range(MAX_BISECTION):
        if hi - lo <= width:
            break
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if f(mid) > 0:
            hi = mid
        else:
            lo = mid
    else:
        raise ConvergenceError("bisection on the secular equation did not converge")
    z = 0.5 * (lo + hi)
    fz = f(z)
    # Newton polish, only accepted while it stays bracketed and improves
    for _ in range(MAX_NEWTON):
        if fz == 0.0:
            break
        cand = z - fz / _secular_derivative(gamma, lam, bm, bp, z)
        if not lo <= cand <= hi:
            break
        fc = f(cand)
        if abs(fc) >= abs(fz):
            break
        z, fz = cand, fc
    return z


def solve_secular(w: WitnessMatrix3) -> SecularSolution:
    """In-gap eigenvalue of the 3x3 model and its eigenvector ``(1, x-, x+)``."""
    w.validate()
    if w.b_minus == 0.0 and w.b_plus == 0.0:
        return SecularSolution(w.lam, 0.0, 0.0, 0.0, 0.0)
    c = _canonical(w)
    zc = _solve_centered(c)
    residual = abs(secular_function(c.gamma, c.lam, c.bm, c.bp, zc))
    # distances from z to the poles, in the canonical frame
    z = c.to_original(zc)
    to_minus = zc + c.gamma   # z - (pole at -gamma)
    to_plus = zc - c.gamma    # z - (pole at +gamma)
    if c.flipped:
        # original g- sits at canonical +gamma, original g+ at -gamma;
        # distances to original poles are negated canonical ones
        x_minus = w.b_minus / (-to_plus)
        x_plus = w.b_plus / (-to_minus)
    else:
        x_minus = w.b_minus / to_minus
        x_plus = w.b_plus / to_plus
    return SecularSolution(z, x_minus, x_plus, math.hypot(x_minus, x_plus), residual)


def phi(gamma: float, lam: float, b: float, z: float) -> float:
    """Squared eigenvector graph norm ``x-^2 + x+^2`` as a function of the
    eigenvalue ``z`` (centered frame, fixed ``||B|| = b``)."""
    if not abs(z) < gamma:
        raise DomainError(f"|z|={abs(z)!r} must be below gamma={gamma!r}")
    return (b * b + 2.0 * (lam - z) * z) / (gamma * gamma - z * z)


def split_from_z(gamma: float, lam: float, b: float, z: float) -> tuple[float, bool]:
    """Fraction ``t = b+^2 / ||B||^2`` for which ``z`` solves the centered
    secular equation. Returns ``(t, clamped)``; values within ``T_SLACK``
    outside ``[0, 1]`` are clamped and flagged."""
    if not b > 0:
        raise DomainError("split fraction undefined for ||B|| = 0")
    t = ((z - lam) * (z * z - gamma * gamma) - b * b * (z - gamma)) / (2.0 * gamma * b * b)
    if 0.0 <= t <= 1.0:
        return t, False
    if -T_SLACK <= t < 0.0:
        return 0.0, True
    if 1.0 < t <= 1.0 + T_SLACK:
        return 1.0, True
    raise DomainError(f"z={z!r} is not attainable for ||B||={b!r} (t={t!r})")


def _check_centered(gamma: float, lam: float, b: float) -> float:
    if not 0 <= lam < gamma:
        raise DomainError(f"need 0 <= lam < gamma, got lam={lam!r}, gamma={gamma!r}")
    d = gamma - lam
    if not 0 < b or not b * b < 2 * d * gamma:
        raise DomainError(f"need 0 < b < sqrt(2 d gamma) = {math.sqrt(2 * d * gamma)!r}, got {b!r}")
    return d


def z0_and_beta(gamma: float, lam: float, b: float) -> tuple[float, float]:
    """Stationary point ``z0`` of ``phi`` in ``(-gamma, gamma)`` and the
    coupling threshold ``beta`` above which ``z0`` lies inside the bracket."""
    _check_centered(gamma, lam, b)
    p = 2 * gamma * gamma - b * b
    # smaller root of lam z^2 - p z + lam gamma^2 = 0, cancellation-free
    z0 = 2 * lam * gamma * gamma / (p + math.sqrt(p * p - 4 * lam * lam * gamma * gamma))
    return z0, beta(gamma, lam)


def beta(gamma: float, lam: float) -> float:
    sg = math.sqrt(gamma)
    return math.sqrt((gamma - lam) * sg * (sg - math.sqrt(gamma - lam)))


def z_min_centered(gamma: float, lam: float, b: float) -> float:
    return 0.5 * (gamma + lam) - math.sqrt(0.25 * (gamma - lam) ** 2 + b * b)


def z_max_centered(gamma: float, lam: float, b: float) -> float:
    return -0.5 * (gamma - lam) + math.sqrt(0.25 * (gamma + lam) ** 2 + b * b)


def max_phi(D: float, d: float, b: float) -> float:
    """Maximum of ``phi`` over the attainable eigenvalues, evaluated by
    locating the maximiser (``z_min`` or ``z0``) and substituting it."""
    if not D > 0 or not 0 < d <= D / 2:
        raise DomainError(f"(D, d)=({D!r}, {d!r}) violates 0 < d <= D/2")
    gamma = 0.5 * D
    lam = gamma - d
    if b == 0:
        return 0.0
    z0, bt = z0_and_beta(gamma, lam, b)
    z = z_min_centered(gamma, lam, b) if b <= bt else z0
    return phi(gamma, lam, b, z)
