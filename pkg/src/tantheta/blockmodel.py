"""Block operator matrices ``[[A0, B], [B^T, A1]]``: assembly, seeded random
generation and certification of the rotation bounds against the dense
eigensolver."""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from . import linalg
from .bounds import (
    BoundValue,
    apriori_tan_theta,
    aposteriori_tan_theta,
    kappa_tan,
    tan_2theta_bound,
    xi,
)
from .errors import DimensionError, DispositionError, DomainError
from .geometry import BoundKind, Disposition, GapGeometry, validity
from .witness import build_remdel_example

SPECTRUM_TOL = 1e-10
WINDOW_TOL = 1e-9
BOUND_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class BlockMatrix:
    a0: np.ndarray
    a1: np.ndarray
    b: np.ndarray
    sigma0: tuple
    sigma1: tuple
    geometry: Optional[GapGeometry]
    disposition: Disposition = Disposition.IN_GAP

    @property
    def n0(self) -> int:
        return self.a0.shape[0]

    @property
    def n1(self) -> int:
        return self.a1.shape[0]

    @property
    def d(self) -> float:
        if self.geometry is not None:
            return self.geometry.d
        return min(self.sigma1) - max(self.sigma0)

    @property
    def vnorm(self) -> float:
        return linalg.spectral_norm(self.b)

    def check_shapes(self) -> None:
        n0, n1 = self.a0.shape[0], self.a1.shape[0]
        if self.a0.shape != (n0, n0) or self.a1.shape != (n1, n1):
            raise DimensionError("diagonal blocks must be square")
        if self.b.shape != (n0, n1):
            raise DimensionError(f"coupling block has shape {self.b.shape}, expected {(n0, n1)}")
        if len(self.sigma0) != n0 or len(self.sigma1) != n1:
            raise DimensionError("spectra lengths do not match block sizes")

    def validate(self, check_spectra: bool = True) -> None:
        """Check shapes and the disposition invariants; with ``check_spectra``
        also that ``sigma0``/``sigma1`` are the spectra of ``a0``/``a1``."""
        self.check_shapes()
        s0 = np.sort(np.asarray(self.sigma0, dtype=float))
        s1 = np.sort(np.asarray(self.sigma1, dtype=float))
        if check_spectra:
            for name, blk, s in (("a0", self.a0, s0), ("a1", self.a1, s1)):
                w = linalg.eigvalsh(blk)
                scale = max(1.0, float(np.max(np.abs(s))))
                if np.max(np.abs(w - s)) > 1e-9 * scale:
                    raise DomainError(f"spectrum of {name} does not match the declared one")
        if self.disposition is Disposition.SUBORDINATED:
            if not s0[-1] < s1[0]:
                raise DispositionError("subordinated disposition needs sup sigma0 < inf sigma1")
            return
        g = self.geometry
        if g is None:
            raise DomainError("in-gap disposition needs a gap geometry")
        tol = SPECTRUM_TOL * max(1.0, abs(g.gap_lo), abs(g.gap_hi))
        if not (s0[0] > g.gap_lo and s0[-1] < g.gap_hi):
            raise DomainError("spec(a0) must lie inside the gap")
        if np.any((s1 > g.gap_lo + tol) & (s1 < g.gap_hi - tol)):
            raise DomainError("spec(a1) intersects the gap")
        if np.min(np.abs(s1 - g.gap_lo)) > tol or np.min(np.abs(s1 - g.gap_hi)) > tol:
            raise DomainError("gap endpoints must belong to spec(a1)")
        dist = float(np.min(np.abs(s0[:, None] - s1[None, :])))
        if abs(dist - g.d) > tol:
            raise DomainError(f"dist(sigma0, sigma1)={dist!r} differs from d={g.d!r}")


def assemble(m: BlockMatrix) -> np.ndarray:
    m.check_shapes()
    return np.block([[m.a0, m.b], [m.b.T, m.a1]])


def _rng(seed) -> np.random.Generator:
    return np.random.default_rng(seed)


def _scaled_coupling(n0, n1, vnorm, rng):
    B = rng.standard_normal((n0, n1))
    if vnorm == 0:
        return np.zeros((n0, n1))
    return B * (vnorm / linalg.spectral_norm(B))


def random_instance(
    n0: int, n1: int, g: GapGeometry, vnorm: float, seed,
) -> BlockMatrix:
    """Random in-gap instance: sigma0 inside ``[lo + d, hi - d]`` with one
    point at distance exactly ``d`` from a gap edge, sigma1 containing both
    edges and otherwise outside the gap, ``||B|| = vnorm``."""
    if n0 < 1 or n1 < 2:
        raise DomainError("need n0 >= 1 and n1 >= 2")
    if not 0 <= vnorm or not vnorm * vnorm < g.d * g.delta_len:
        raise DomainError(f"vnorm={vnorm!r} violates 0 <= vnorm < sqrt(d*|gap|)")
    rng = _rng(seed)
    lo, hi, d, D = g.gap_lo, g.gap_hi, g.d, g.delta_len
    s0 = rng.uniform(lo + d, hi - d, size=n0)
    s0[0] = lo + d if rng.random() < 0.5 else hi - d
    s0 = np.clip(s0, lo + d, hi - d)
    outside = rng.uniform(0.0, D, size=n1 - 2)
    below = rng.random(n1 - 2) < 0.5
    s1 = np.concatenate([[lo, hi], np.where(below, lo - outside, hi + outside)])
    a0 = linalg.with_spectrum(s0, rng)
    a1 = linalg.with_spectrum(s1, rng)
    B = _scaled_coupling(n0, n1, vnorm, rng)
    return BlockMatrix(a0, a1, B, tuple(s0.tolist()), tuple(s1.tolist()), g, Disposition.IN_GAP)


def random_subordinated(n0: int, n1: int, d: float, vnorm: float, seed, spread: float = 1.0) -> BlockMatrix:
    """Random instance with ``sup sigma0 = 0 < d = inf sigma1``."""
    if n0 < 1 or n1 < 1:
        raise DomainError("need n0 >= 1 and n1 >= 1")
    if not d > 0 or not vnorm >= 0:
        raise DomainError("need d > 0 and vnorm >= 0")
    rng = _rng(seed)
    s0 = -rng.uniform(0.0, spread, size=n0)
    s0[0] = 0.0
    s1 = d + rng.uniform(0.0, spread, size=n1)
    s1[0] = d
    a0 = linalg.with_spectrum(s0, rng)
    a1 = linalg.with_spectrum(s1, rng)
    B = _scaled_coupling(n0, n1, vnorm, rng)
    return BlockMatrix(a0, a1, B, tuple(s0.tolist()), tuple(s1.tolist()), None, Disposition.SUBORDINATED)


@dataclass(frozen=True)
class AngleReport:
    eigenvalue: float
    in_window: bool
    theta: float
    tan_theta: float
    bounds: tuple
    all_satisfied: bool
    tightest_ratio: float

    def as_dict(self) -> dict:
        return {
            "eigenvalue": self.eigenvalue,
            "in_window": self.in_window,
            "theta": self.theta,
            "tan_theta": self.tan_theta,
            "bounds": [bv.as_dict() for bv in self.bounds],
            "all_satisfied": self.all_satisfied,
            "tightest_ratio": self.tightest_ratio,
        }


@dataclass(frozen=True)
class GapReport:
    window: tuple
    n_window: int
    n_boundary: int
    n_gap_other: int       # in the gap but outside the window
    n_exterior: int        # outside the gap
    separation: float      # min distance between window and exterior eigenvalues
    contained: bool        # exactly n0 eigenvalues, all strictly inside the window

    def as_dict(self) -> dict:
        out = dict(self.__dict__)
        out["window"] = list(self.window)
        return out


@dataclass(frozen=True)
class Certificate:
    reports: tuple
    gap: Optional[GapReport]
    vnorm: float
    n_boundary: int = 0

    @property
    def violations(self) -> int:
        return sum(not r.all_satisfied for r in self.reports)

    @property
    def max_tightest_ratio(self) -> float:
        return max((r.tightest_ratio for r in self.reports), default=0.0)

    def as_dict(self) -> dict:
        return {
            "vnorm": self.vnorm,
            "reports": [r.as_dict() for r in self.reports],
            "gap": None if self.gap is None else self.gap.as_dict(),
            "violations": self.violations,
            "max_tightest_ratio": self.max_tightest_ratio,
        }


def _judge(tan_theta: float, bounds: Sequence[BoundValue]) -> tuple[bool, float]:
    values = [bv.value for bv in bounds if bv.valid]
    ok = all(tan_theta <= v + BOUND_TOL for v in values)
    if not values:
        return ok, 0.0
    tight = min(values)
    if tight > 0:
        return ok, tan_theta / tight
    return ok, 0.0 if tan_theta <= BOUND_TOL else math.inf


def certify(m: BlockMatrix) -> Certificate:
    """Check every applicable bound for each eigenvector whose eigenvalue
    lies in the gap, and whether the gap stays open around the window
    ``(inf sigma0 - d, sup sigma0 + d)``."""
    if m.disposition is not Disposition.IN_GAP or m.geometry is None:
        raise DispositionError("certify needs an in-gap instance")
    g = m.geometry
    D, d, n0 = g.delta_len, g.d, m.n0
    vnorm = m.vnorm
    w, V = linalg.eigensolve(assemble(m))
    s0 = np.asarray(m.sigma0, dtype=float)
    s1 = np.asarray(m.sigma1, dtype=float)
    win_lo, win_hi = float(s0.min()) - d, float(s0.max()) + d

    interior = (w > win_lo + WINDOW_TOL) & (w < win_hi - WINDOW_TOL)
    boundary = (np.abs(w - win_lo) <= WINDOW_TOL) | (np.abs(w - win_hi) <= WINDOW_TOL)
    in_gap = (w > g.gap_lo + WINDOW_TOL) & (w < g.gap_hi - WINDOW_TOL) & ~boundary
    exterior = (w <= g.gap_lo + WINDOW_TOL) | (w >= g.gap_hi - WINDOW_TOL)
    exterior &= ~boundary

    # sigma'_0: all eigenvalues in the gap (sigma'_1 stays outside it)
    perturbed0 = w[in_gap]
    delta = float(np.min(np.abs(perturbed0[:, None] - s1[None, :]))) if perturbed0.size else math.inf

    xi_ok = validity(BoundKind.XI_BOUND, g, vnorm)
    apriori_ok = validity(BoundKind.APRIORI_TAN_THETA, g, vnorm)
    kappa_ok = validity(BoundKind.KAPPA, g, vnorm)
    xi_val = math.sqrt(xi(D, d, vnorm)) if xi_ok else None
    kappa_val = kappa_tan(D, d, vnorm) if kappa_ok else None
    apriori_val = apriori_tan_theta(d, vnorm) if apriori_ok else None
    apost_val = aposteriori_tan_theta(vnorm, delta) if apriori_ok and delta > 0 and delta < math.inf else None

    reports = []
    for k in np.flatnonzero(in_gap):
        theta, tan_theta = linalg.coordinate_angle(V[:, k], n0)
        win = bool(interior[k])
        bounds = []
        if xi_ok:
            bounds.append(BoundValue(BoundKind.XI_BOUND, xi_val, True))
        if kappa_ok:
            bounds.append(BoundValue(BoundKind.KAPPA, kappa_val, True))
        if apriori_ok and win:
            bounds.append(BoundValue(BoundKind.APRIORI_TAN_THETA, apriori_val, True))
        if apost_val is not None:
            bounds.append(BoundValue(BoundKind.APOSTERIORI, apost_val, True))
        bounds.sort(key=lambda bv: bv.value)
        ok, ratio = _judge(tan_theta, bounds)
        reports.append(AngleReport(float(w[k]), win, theta, tan_theta, tuple(bounds), ok, ratio))

    wi, we = w[interior], w[exterior]
    sep = float(np.min(np.abs(wi[:, None] - we[None, :]))) if wi.size and we.size else math.inf
    n_gap_other = int(np.sum(in_gap & ~interior))
    gap = GapReport(
        (win_lo, win_hi), int(interior.sum()), int(boundary.sum()), n_gap_other,
        int(exterior.sum()), sep,
        bool(interior.sum() == n0 and n_gap_other == 0 and boundary.sum() == 0 and sep > 0),
    )
    return Certificate(tuple(reports), gap, vnorm, int(boundary.sum()))


def certify_subordinated(m: BlockMatrix) -> Certificate:
    """Check that ``(sup sigma0, inf sigma1)`` stays free of eigenvalues and
    that eigenvectors below ``sup sigma0`` obey the tan 2Theta bound."""
    s0 = np.asarray(m.sigma0, dtype=float)
    s1 = np.asarray(m.sigma1, dtype=float)
    if not s0.max() < s1.min():
        raise DispositionError("certify_subordinated needs sup sigma0 < inf sigma1")
    top, bottom = float(s0.max()), float(s1.min())
    d = bottom - top
    vnorm = m.vnorm
    w, V = linalg.eigensolve(assemble(m))
    in_hole = (w > top + WINDOW_TOL) & (w < bottom - WINDOW_TOL)
    lower = w <= top + WINDOW_TOL
    bound_angle = tan_2theta_bound(d, vnorm)
    bv = BoundValue(BoundKind.TAN_2THETA, math.tan(bound_angle), True)
    reports = []
    for k in np.flatnonzero(lower):
        theta, tan_theta = linalg.coordinate_angle(V[:, k], m.n0)
        ok = theta <= bound_angle + BOUND_TOL and tan_theta <= bv.value + BOUND_TOL
        ratio = tan_theta / bv.value if bv.value > 0 else (0.0 if tan_theta <= BOUND_TOL else math.inf)
        reports.append(AngleReport(float(w[k]), True, theta, tan_theta, (bv,), bool(ok), ratio))
    wl, wu = w[lower], w[~lower & ~in_hole]
    sep = float(wu.min() - wl.max()) if wl.size and wu.size else math.inf
    gap = GapReport(
        (top, bottom), int(lower.sum()), 0, int(in_hole.sum()), int(wu.size), sep,
        bool(in_hole.sum() == 0 and lower.sum() == m.n0),
    )
    return Certificate(tuple(reports), gap, vnorm)


def certify_any(m: BlockMatrix) -> Certificate:
    if m.disposition is Disposition.SUBORDINATED:
        return certify_subordinated(m)
    return certify(m)


def sweep_aposteriori(d: float, steps: int, top: float = 0.999) -> list[dict]:
    """Remdel family on ``b in [0, top * sqrt(2) d]``: the a posteriori
    bound ``b / delta`` blows up while ``b / d`` stays below sqrt(2)."""
    if steps < 2:
        raise DomainError("steps must be at least 2")
    rows = []
    for b in np.linspace(0.0, top * math.sqrt(2) * d, steps):
        r = build_remdel_example(d, float(b))
        rows.append({
            "b": float(b),
            "z": r.witness.z,
            "delta": r.delta,
            "tan_theta": r.witness.tan_theta,
            "apriori": float(b) / d,
            "aposteriori": aposteriori_tan_theta(float(b), r.delta),
        })
    return rows


def trial_seeds(seed: int, trials: int) -> list[np.random.SeedSequence]:
    """Independent child seeds, one per trial, in trial order."""
    return np.random.SeedSequence(seed).spawn(trials)


def run_trials(make, trials: int, seed: int, workers: int = 1) -> list[Certificate]:
    """Generate ``make(child_seed)`` for each trial and certify it. Results
    come back in trial order whatever ``workers`` is; ``make`` must be
    picklable when ``workers > 1``."""
    seeds = trial_seeds(seed, trials)
    if workers <= 1:
        return [certify_any(make(s)) for s in seeds]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(_certify_made, [make] * trials, seeds))


def _certify_made(make, s):
    return certify_any(make(s))
