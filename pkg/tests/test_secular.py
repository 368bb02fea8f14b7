import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oracles import in_gap_tan
from tantheta.bounds import xi
from tantheta.errors import DomainError
from tantheta.linalg import eigensolve
from tantheta.secular import (
    WitnessMatrix3,
    beta,
    max_phi,
    phi,
    secular_function,
    solve_secular,
    split_from_z,
    z0_and_beta,
    z_bracket,
)

GOLDEN = (math.sqrt(5) - 1) / 2   # -1/2 + sqrt(5/4)


@st.composite
def witnesses(draw, centered=False):
    """Valid random 3x3 models; arbitrary gap placement unless ``centered``."""
    width = draw(st.floats(0.1, 20))
    lo = -width / 2 if centered else draw(st.floats(-50, 50))
    pos = draw(st.floats(0.02, 0.98))
    lam = lo + pos * width
    w0 = WitnessMatrix3(lam, lo, lo + width, 0, 0)
    bnorm = draw(st.floats(0.0, 0.995)) * math.sqrt(w0.d * width)
    t = draw(st.floats(0, 1))
    return WitnessMatrix3(lam, lo, lo + width, math.sqrt(1 - t) * bnorm, math.sqrt(t) * bnorm)


def test_bracket_zero_coupling():
    assert z_bracket(WitnessMatrix3(0.3, -1, 1, 0, 0)) == (0.3, 0.3)


def test_bracket_symmetric():
    a = 1 / math.sqrt(2)
    lo, hi = z_bracket(WitnessMatrix3(0, -1, 1, a, a))
    assert lo == pytest.approx(-GOLDEN, abs=1e-15) and hi == pytest.approx(GOLDEN, abs=1e-15)


def test_bracket_remdel_edge():
    w = WitnessMatrix3(0, -1, 1, 1, 0)
    assert z_bracket(w)[1] == pytest.approx(GOLDEN, abs=1e-15)
    assert solve_secular(w).z == pytest.approx(GOLDEN, abs=1e-15)


def test_invalid_witness():
    with pytest.raises(DomainError):
        WitnessMatrix3(1.5, -1, 1, 0, 0).validate()
    with pytest.raises(DomainError):
        solve_secular(WitnessMatrix3(0, -1, 1, 1, 1))


def test_solve_rem2():
    a = 1 / math.sqrt(2)
    s = solve_secular(WitnessMatrix3(0, -1, 1, a, a))
    assert s.z == 0
    assert abs(s.x_minus) == pytest.approx(a) and abs(s.x_plus) == pytest.approx(a)
    assert s.x_minus > 0 > s.x_plus
    assert s.tan_theta == pytest.approx(1.0, rel=1e-15)


def test_solve_zero_coupling():
    s = solve_secular(WitnessMatrix3(0.2, -1, 3, 0, 0))
    assert (s.z, s.x_minus, s.x_plus, s.tan_theta) == (0.2, 0, 0, 0)


def test_solve_remdel_against_dense():
    w = WitnessMatrix3(0, -1, 1, 1, 0)
    s = solve_secular(w)
    z, t = in_gap_tan(0, 1, 1, 0)
    assert s.z == pytest.approx(z, abs=1e-14)
    assert s.tan_theta == pytest.approx(t, rel=1e-13)
    assert s.tan_theta == pytest.approx(GOLDEN, rel=1e-14)


def test_phi_examples():
    assert phi(1, 0, 0.7, 0) == pytest.approx(0.49)
    z = GOLDEN
    assert phi(1, 0, 1, z) == pytest.approx((1 - 2 * z * z) / (1 - z * z), rel=1e-15)
    assert phi(1, 0, 1, z) == pytest.approx(solve_secular(WitnessMatrix3(0, -1, 1, 1, 0)).tan_theta ** 2, rel=1e-14)
    with pytest.raises(DomainError):
        phi(1, 0, 1, 1.0)


def test_z0_beta_examples():
    assert z0_and_beta(1, 0, 1)[0] == 0
    assert beta(1, 0) == 0
    assert z0_and_beta(2, 1, 0.5)[1] == pytest.approx(math.sqrt(2 - math.sqrt(2)), rel=1e-15)
    with pytest.raises(DomainError):
        z0_and_beta(1, -0.1, 0.5)
    with pytest.raises(DomainError):
        z0_and_beta(2, 1, 2.0)


@settings(max_examples=200)
@given(st.floats(0.1, 10), st.floats(0.0, 0.98), st.floats(0.01, 0.99))
def test_z0_position(gamma, lam_frac, b_frac):
    lam = lam_frac * gamma
    d = gamma - lam
    b = b_frac * math.sqrt(2 * d * gamma)
    z0, bt = z0_and_beta(gamma, lam, b)
    zmin = 0.5 * (gamma + lam) - math.sqrt(0.25 * (gamma - lam) ** 2 + b * b)
    zmax = -0.5 * (gamma - lam) + math.sqrt(0.25 * (gamma + lam) ** 2 + b * b)
    assert z0 < zmax
    # derivative of phi vanishes at z0
    h = 1e-6 * gamma
    dphi = (phi(gamma, lam, b, z0 + h) - phi(gamma, lam, b, z0 - h)) / (2 * h)
    assert abs(dphi) < 1e-5 * max(1.0, phi(gamma, lam, b, z0))
    if abs(b - bt) > 1e-9 * gamma:
        assert (z0 <= zmin + 1e-12 * gamma) == (b <= bt)


def test_max_phi_examples():
    assert max_phi(2, 1, 1) == pytest.approx(1.0, rel=1e-15)
    assert max_phi(4, 1, 0.5) == pytest.approx(3 - 2 * math.sqrt(2), rel=1e-13)


def test_max_phi_equals_xi_grid():
    worst = 0.0
    for D in np.linspace(0.5, 20, 50):
        for frac in np.linspace(0.01, 1.0, 50):
            d = frac * D / 2
            for bf in (0.05, 0.3, 0.6, 0.9, 0.999):
                b = bf * math.sqrt(d * D)
                worst = max(worst, abs(max_phi(D, d, b) - xi(D, d, b)))
    assert worst <= 1e-12


@given(witnesses())
def test_root_in_bracket_and_matches_dense(w):
    s = solve_secular(w)
    lo, hi = z_bracket(w)
    scale = w.delta_len + abs(w.gamma_minus) + abs(w.gamma_plus)
    assert lo - 1e-13 * scale <= s.z <= hi + 1e-13 * scale
    assert w.gamma_minus < s.z < w.gamma_plus
    c = 0.5 * (w.gamma_minus + w.gamma_plus)
    g = 0.5 * w.delta_len
    assert s.residual <= 1e-12 * w.delta_len * max(1.0, abs(c) / g)
    if w.b_norm > 0:
        zc, tc = in_gap_tan(w.lam - c, g, w.b_minus, w.b_plus)
        assert s.z - c == pytest.approx(zc, abs=1e-9 * max(1, g))
        assert s.tan_theta == pytest.approx(tc, rel=1e-9, abs=1e-12)


@given(witnesses())
def test_phi_consistent_with_solution(w):
    s = solve_secular(w)
    c = 0.5 * (w.gamma_minus + w.gamma_plus)
    g = 0.5 * w.delta_len
    val = phi(g, w.lam - c, w.b_norm, s.z - c)
    assert val == pytest.approx(s.tan_theta ** 2, rel=1e-9, abs=1e-10)


@given(witnesses(centered=True))
def test_split_roundtrip(w):
    # dt/dz ~ gamma / ||B||^2: below this the round trip is rounding-limited
    if w.b_norm < 1e-2 * w.delta_len:
        return
    s = solve_secular(w)
    c = 0.5 * (w.gamma_minus + w.gamma_plus)
    g = 0.5 * w.delta_len
    t_in = w.b_plus ** 2 / w.b_norm ** 2
    t, _ = split_from_z(g, w.lam - c, w.b_norm, s.z - c)
    assert t == pytest.approx(t_in, abs=1e-9)


def test_secular_function_increasing():
    for lam, bm, bp in [(0.3, 0.5, 0.8), (0.0, 1.0, 0.0), (0.9, 0.0, 0.3), (-0.5, 0.7, 0.7)]:
        zs = np.linspace(-1, 1, 2001)[1:-1]
        f = np.array([secular_function(1.0, lam, bm, bp, z) for z in zs])
        assert np.all(np.diff(f) > 0)
        assert np.count_nonzero(np.diff(np.sign(f))) <= 1


def test_eigenvalue_moves_monotonically_with_split():
    gamma, lam, b = 1.0, 0.4, 0.8
    zs = []
    for t in np.linspace(1, 0, 101):
        zs.append(solve_secular(WitnessMatrix3(lam, -gamma, gamma, math.sqrt(1 - t) * b, math.sqrt(t) * b)).z)
    zs = np.array(zs)
    assert np.all(np.diff(zs) > 0)
    assert zs[0] == pytest.approx(0.5 * (gamma + lam) - math.sqrt(0.25 * (gamma - lam) ** 2 + b * b), abs=1e-13)
    assert zs[-1] == pytest.approx(-0.5 * (gamma - lam) + math.sqrt(0.25 * (gamma + lam) ** 2 + b * b), abs=1e-13)


def test_mirror_symmetry():
    w = WitnessMatrix3(0.35, -1, 1, 0.4, 0.6)
    m = WitnessMatrix3(-0.35, -1, 1, 0.6, 0.4)
    s, t = solve_secular(w), solve_secular(m)
    assert s.z == pytest.approx(-t.z, abs=1e-15)
    assert s.tan_theta == pytest.approx(t.tan_theta, rel=1e-14)


def test_agrees_with_jacobi():
    w = WitnessMatrix3(2.3, 1.0, 4.0, 0.5, 0.9)
    s = solve_secular(w)
    ev, V = eigensolve(w.matrix())
    k = int(np.argmin(np.abs(ev - s.z)))
    assert ev[k] == pytest.approx(s.z, abs=1e-12)
    assert np.linalg.norm(V[1:, k]) / abs(V[0, k]) == pytest.approx(s.tan_theta, rel=1e-10)
