import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from svlab import siegel_mc as mc


def test_square_lattice_counts():
    e1, e2 = (1.0, 0.0), (0.0, 1.0)
    assert mc.count_vectors_basis(e1, e2, 1.0) == 4
    assert mc.count_vectors_basis(e1, e2, 2.5) == 20
    assert mc.count_vectors_basis(e1, e2, 2.5, primitive_only=True) == 16
    assert mc.count_vectors_naive(e1, e2, 2.5) == 20


def test_hexagonal_lattice_shell():
    s = math.sqrt(2 / math.sqrt(3))
    b1, b2 = (s, 0.0), (s / 2, s * math.sqrt(3) / 2)
    assert mc.count_vectors_basis(b1, b2, s) == 6
    assert mc.count_vectors_basis(b1, b2, s * math.sqrt(3)) == 12


@pytest.mark.parametrize("primitive", [False, True])
def test_optimized_matches_naive(primitive):
    rng = np.random.default_rng(7)
    xs, ys = mc.sample_taus(rng, 100)
    for x, y, L in zip(xs, ys, rng.uniform(0.1, 10, 100)):
        s = 1 / math.sqrt(y)
        b1, b2 = (s, 0.0), (x * s, y * s)
        assert mc.count_vectors_basis(b1, b2, L, primitive) == mc.count_vectors_naive(b1, b2, L, primitive)


@settings(max_examples=30, deadline=None)
@given(st.floats(-0.5, 0.5), st.floats(0.87, 20), st.floats(0.2, 6))
def test_rotation_invariance(x, y, L):
    if x * x + y * y < 1:
        return
    s = 1 / math.sqrt(y)
    B = np.array([[s, 0.0], [x * s, y * s]])
    base = mc.count_vectors_basis(B[0], B[1], L)
    for th in np.linspace(0.1, 2 * math.pi, 10):
        R = np.array([[math.cos(th), -math.sin(th)], [math.sin(th), math.cos(th)]])
        C = B @ R.T
        assert mc.count_vectors_basis(C[0], C[1], L) == base


def test_samples_in_domain_and_unimodular():
    rng = np.random.default_rng(3)
    for _ in range(500):
        lat = mc.sample_lattice(rng)
        assert lat.in_domain()
        assert abs(np.linalg.det(lat.basis()) - 1) < 1e-12


@settings(max_examples=40, deadline=None)
@given(st.floats(-0.5, 0.5), st.floats(0.1, 4), st.floats(1.001, 50))
def test_cusp_count_formula(x, L, extra):
    # above y = max(1, L^2) the count is 2 floor(L sqrt y)
    y = mc.cusp_height(L) * extra
    s = 1 / math.sqrt(y)
    assert mc.count_vectors_naive((s, 0.0), (x * s, y * s), L) == 2 * math.floor(L * math.sqrt(y) * (1 + 1e-13))


def test_hyperbolic_measure_moments():
    rng = np.random.default_rng(11)
    n = 200_000
    xs, ys = mc.sample_taus(rng, n)
    inv = 1 / ys
    exact = 3 * math.log(3) / (2 * math.pi)
    assert mc.domain_expectation(lambda x, y: 1 / y) == pytest.approx(exact, rel=1e-8)
    assert abs(inv.mean() - exact) < 3 * inv.std() / math.sqrt(n)
    p = mc.domain_probability_y_below(2.0)
    assert p == pytest.approx(1 - mc.cusp_probability(2.0), rel=1e-9)
    frac = (ys <= 2.0).mean()
    assert abs(frac - p) < 3 * math.sqrt(p * (1 - p) / n)


def piecewise_cusp(L, Y, K_max=200_000):
    T = math.sqrt(Y)
    total = 0.0
    k = math.floor(L * T)
    lo = T
    while k < K_max:
        hi = (k + 1) / L
        total += k * (lo ** -2 - hi ** -2) / 2
        lo, k = hi, k + 1
    # tail: floor(Lt) ~ Lt - 1/2
    total += L / lo - lo ** -2 / 4
    return 12 / math.pi * total


@pytest.mark.parametrize("L,Y", [(0.4, 1.0), (1.0, 1.0), (2.5, 6.25), (2.5, 30.0), (7.0, 49.0)])
def test_cusp_expectation_against_piecewise_sum(L, Y):
    assert mc.cusp_expectation(L, Y) == pytest.approx(piecewise_cusp(L, Y), rel=1e-8)


def test_small_radius_sampled():
    r = mc.siegel_average(20_000, 0.4, seed=5, cusp="sample")
    assert abs(r.estimate - math.pi * 0.16) < 4 * r.stderr
    assert r.zero_fraction > 0.5
    # in exact mode the sampled region contributes nothing at this radius
    r2 = mc.siegel_average(2000, 0.4, seed=5, cusp="exact")
    assert r2.zero_fraction == 1.0
    assert r2.estimate == pytest.approx(math.pi * 0.16, rel=1e-12)


def test_scaling_in_radius():
    a = mc.siegel_average(20_000, 1.5, seed=1)
    b = mc.siegel_average(20_000, 3.0, seed=1)
    assert b.estimate / a.estimate == pytest.approx(4, rel=0.05)


def test_primitive_target_and_mode():
    r = mc.siegel_average(20_000, 2.0, seed=2, primitive=True, cusp="sample")
    assert r.target == pytest.approx(24 / math.pi)
    assert abs(r.z) < 4
    with pytest.raises(ValueError):
        mc.siegel_average(1000, 2.0, seed=2, primitive=True, cusp="exact")


def test_determinism_and_workers():
    a = mc.siegel_counts(3500, 2.0, seed=9)
    b = mc.siegel_counts(3500, 2.0, seed=9)
    c = mc.siegel_counts(3500, 2.0, seed=9, workers=3)
    assert np.array_equal(a, b) and np.array_equal(a, c)
    assert not np.array_equal(a, mc.siegel_counts(3500, 2.0, seed=10))


def test_argument_guards():
    with pytest.raises(ValueError):
        mc.siegel_average(99, 1.0, seed=0)
    with pytest.raises(ValueError):
        mc.siegel_average(1000, 0.0, seed=0)
    with pytest.raises(ValueError):
        mc.siegel_average(1000, 1.0, seed=0, cusp="other")
    with pytest.raises(ValueError):
        mc.cusp_expectation(3.0, 2.0)
