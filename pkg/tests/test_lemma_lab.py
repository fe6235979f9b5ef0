import itertools
import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest
from gmpy2 import mpq
from hypothesis import given, settings, strategies as st

from svlab import lemma_lab as lab

fac = math.factorial


def as_fraction(q):
    return Fraction(int(q.numerator), int(q.denominator))


# factorial comparison

def test_factorial_comparison_equal_partitions():
    assert lab.check_lemma_factorial_comparison(2, 1, [3, 2], [3, 2])


def test_factorial_comparison_precondition():
    with pytest.raises(lab.PreconditionError):
        lab.check_lemma_factorial_comparison(1, 0, [3], [2])   # B_1 = B
    with pytest.raises(lab.PreconditionError):
        lab.check_lemma_factorial_comparison(2, 0, [1, 3], [2, 1])   # B_1 > A_1


@given(st.integers(1, 4), st.integers(0, 3), st.data())
def test_factorial_comparison_against_fractions(p, r, data):
    A = data.draw(st.lists(st.integers(0, 8), min_size=p, max_size=p))
    B = [data.draw(st.integers(0, a)) for a in A]
    if any(b >= sum(B) for b in B):
        with pytest.raises(lab.PreconditionError):
            lab.check_lemma_factorial_comparison(p, r, A, B)
        return
    left = Fraction(math.prod(fac(a + r) for a in A), fac(sum(A) + r - 1))
    right = Fraction(math.prod(fac(b + r) for b in B), fac(sum(B) + r - 1))
    assert lab.check_lemma_factorial_comparison(p, r, A, B) == (left <= right)


def test_factorial_comparison_sweep_small():
    rep = lab.sweep_factorial_comparison(p_max=3, r_max=2, part_max=5)
    assert rep.violations == 0 and rep.checked > 0 and rep.max_ratio <= 1


# product of binomials

def test_product_binomials_trivial_cases():
    for r in range(4):
        for p in range(1, 4):
            lhs, rhs = lab.product_binomials_sides(r, [0] * p, [0] * p)
            assert rhs == 2 ** (r * p) * lhs
    for l in range(6):
        for a in range(6):
            lhs, rhs = lab.product_binomials_sides(0, [l], [a])
            assert lhs == rhs


def test_product_binomials_dp_matches_literal():
    dp = lab.sweep_product_binomials(p_max=3, r_max=2, part_max=4)
    lit = lab.sweep_product_binomials_literal(p_max=3, r_max=2, part_max=4)
    assert dp.violations == lit.violations == 0
    assert dp.max_ratio == pytest.approx(lit.max_ratio, rel=1e-12)


@given(st.integers(1, 3), st.integers(0, 3), st.data())
def test_product_binomials_against_fractions(p, r, data):
    ells = data.draw(st.lists(st.integers(0, 6), min_size=p, max_size=p))
    a = data.draw(st.lists(st.integers(0, 6), min_size=p, max_size=p))
    left = Fraction(math.prod(fac(2 * l + x + r) for l, x in zip(ells, a)), math.prod(fac(l) for l in ells))
    right = (2 ** (r * p) * math.comb(sum(2 * l + x for l, x in zip(ells, a)), sum(ells))
             * math.prod(fac(l + x + r) for l, x in zip(ells, a)))
    assert lab.check_lemma_product_binomials(p, r, ells, a) == (left <= right)


def test_product_binomials_rejects_negative():
    with pytest.raises(lab.PreconditionError):
        lab.check_lemma_product_binomials(1, 0, [-1], [0])


# the ingredient inequality: false as stated; these pin the actual margins

def test_ingredient_smallest_counterexample():
    lhs, rhs = lab.ingredient_sides(2, 0, [3, 3])
    assert (lhs, rhs) == (fac(6) * fac(6), fac(3) * fac(6)) == (518400, 4320)
    assert lab.check_lemma_ingredient(2, 0, 6, [3, 3]) is False


@pytest.mark.parametrize("A", [6, 7, 9, 12])
@pytest.mark.parametrize("r", [0, 1, 2, 3])
def test_ingredient_boundary_ratio(A, r):
    # parts (A-3, 3): the two sides differ by (6+r)!/(3+r)!, not by 1
    lhs, rhs = lab.ingredient_sides(2, r, [A - 3, 3])
    assert Fraction(lhs, rhs) == Fraction(fac(6 + r), fac(3 + r))
    assert lhs > rhs


def test_ingredient_preconditions():
    with pytest.raises(lab.PreconditionError):
        lab.check_lemma_ingredient(2, 0, 6, [4, 2])   # A_1 = A - 2
    with pytest.raises(lab.PreconditionError):
        lab.check_lemma_ingredient(1, 0, 6, [6])
    with pytest.raises(lab.PreconditionError):
        lab.check_lemma_ingredient(2, 0, 6, [3, 2])   # not a partition of 6


def test_ingredient_sweep_counts():
    rep = lab.sweep_ingredient(p_max=4, r_max=3, part_max=8)
    # independent recount with math.factorial
    checked = viol = 0
    for p in range(2, 5):
        for parts in itertools.combinations_with_replacement(range(9), p):
            A = sum(parts)
            for r in range(4):
                if A < r or max(parts) > A - 3:
                    continue
                checked += 1
                lhs = math.prod(fac(x + 3 + r) for x in parts)
                viol += lhs > fac(3 + r) ** (p - 1) * fac(A + r)
    assert (rep.checked, rep.violations) == (checked, viol) == (2468, 1588)
    assert rep.skipped == 352


# partition sums

def brute_lemma_sum(p, Ms, L, first, second, variant):
    """Enumerate every composition explicitly."""
    n = len(Ms)
    D = sum(Ms) + L
    owners = {j: [i for i in range(p) if first[i] == j] + [i for i in range(p) if second[i] == j]
              for j in range(n)}
    total = 0
    per_block = []
    for j in range(n):
        slots = [(i, 0) for i in range(p) if first[i] == j] + [(i, 1) for i in range(p) if second[i] == j]
        if not slots:
            if Ms[j]:
                return Fraction(0)
            per_block.append([{}])
            continue
        opts = []
        for comp in itertools.product(range(Ms[j] + 1), repeat=len(slots)):
            if sum(comp) == Ms[j]:
                opts.append(dict(zip(slots, comp)))
        per_block.append(opts)
    Ls = [c for c in itertools.product(range(L + 1), repeat=p) if sum(c) == L]
    for choice in itertools.product(*per_block):
        vals = {}
        for d in choice:
            vals.update(d)
        for ls in Ls:
            ds = [vals[(i, 0)] + vals[(i, 1)] + ls[i] for i in range(p)]
            if D > 0 and any(d == D for d in ds):
                continue
            total += math.prod(fac(d + variant) for d in ds)
    return Fraction(total, fac(D + variant - 1))


@pytest.mark.parametrize("variant", [1, 2])
@pytest.mark.parametrize("p,Ms,L", [(2, (2, 3), 1), (3, (3, 2), 2), (2, (0, 4), 0), (3, (2, 2, 1), 1),
                                    (1, (2, 2), 1)])
def test_lemma_sum_against_enumeration(p, Ms, L, variant):
    n = len(Ms)
    first = [i % n for i in range(p)]
    second = [(i + 1) % n for i in range(p)]
    got = lab.lemma_sum_exact(p, Ms, L, first, second, variant)
    assert as_fraction(got) == brute_lemma_sum(p, Ms, L, first, second, variant)


def test_lemma_sum_single_part_is_zero():
    assert lab.lemma_sum_exact(1, (2, 3), 1) == 0


def test_lemma_sum_same_block_rejected():
    with pytest.raises(lab.PreconditionError):
        lab.lemma_sum_exact(2, (2, 2), 1, first=[0, 0], second=[0, 1])


@pytest.mark.parametrize("variant", [1, 2])
def test_lemma_sum_constant_sweep_is_bounded(variant):
    rep = lab.sweep_lemma_sum_constant(p_max=3, total_max=7, variant=variant)
    assert rep["cases"] > 0 and 0 < rep["max_C"] < 20


# zeta values

def test_zeta_oracle_matches_mpmath():
    with mpmath.workprec(128):
        assert abs(lab.zeta_euler_maclaurin(1.5) - mpmath.zeta(1.5)) < mpmath.mpf(10) ** -30
        assert abs(lab.zeta_euler_maclaurin(2) - mpmath.pi ** 2 / 6) < mpmath.mpf(10) ** -30


def test_partition_zeta_small_g():
    assert lab.eval_partition_zeta_sum(2) == pytest.approx(2 ** 1.5, rel=1e-15)


def test_partition_zeta_against_direct_loop():
    for g in (10, 137, 1000):
        direct = math.fsum(g ** 1.5 / (k * (g - k)) ** 1.5 for k in range(1, g))
        assert lab.eval_partition_zeta_sum(g) == pytest.approx(direct, rel=1e-13)


def test_partition_zeta_errors_decrease():
    ref = float(lab.partition_zeta_limit())
    errs = [abs(lab.eval_partition_zeta_sum(g) - ref) for g in (100, 1000, 10000)]
    assert errs[0] > errs[1] > errs[2] and errs[2] <= 0.35


# double factorial sums

def dfac(n):
    return math.prod(range(n, 0, -2)) if n > 0 else 1


def brute_double_factorial_sum(g, which):
    total = g if which == 1 else g - 1
    s = Fraction(0)
    for g1 in range(1, total):
        g2 = total - g1
        u1 = Fraction(dfac(2 * g1 - 1), dfac(2 * g1))
        u2 = Fraction(dfac(2 * g2 - 1), dfac(2 * g2))
        v1 = Fraction(dfac(2 * g1), dfac(2 * g1 + 1))
        v2 = Fraction(dfac(2 * g2), dfac(2 * g2 + 1))
        if which == 1:
            s += u1 * u2 / ((2 * g1 + 1) * (2 * g2 + 1))
        elif which == 2:
            s += v1 * v2 / ((2 * g1 + 2) * (2 * g2 + 2))
        else:
            s += u1 * v2 / ((2 * g1 + 1) * (2 * g2 + 2))
    return s


@pytest.mark.parametrize("which", [1, 2, 3])
@pytest.mark.parametrize("g", [4, 9, 30])
def test_double_factorial_exact_sums(which, g):
    assert as_fraction(lab.double_factorial_sum_exact(g, which)) == brute_double_factorial_sum(g, which)


def lgamma_scaled_sum(g, which):
    """Scaled sum from log-gamma central binomial ratios."""
    from scipy.special import gammaln
    total = g if which == 1 else g - 1
    k = np.arange(1, total, dtype=float)
    u = lambda n: np.exp(gammaln(n + 0.5) - gammaln(n + 1)) / math.sqrt(math.pi)   # (2n-1)!!/(2n)!!
    v = lambda n: 1 / ((2 * n + 1) * u(n))                                         # (2n)!!/(2n+1)!!
    j = total - k
    if which == 1:
        terms = u(k) * u(j) / ((2 * k + 1) * (2 * j + 1))
    elif which == 2:
        terms = v(k) * v(j) / ((2 * k + 2) * (2 * j + 2))
    else:
        terms = u(k) * v(j) / ((2 * k + 1) * (2 * j + 2))
    return math.fsum(terms) * g ** 1.5


@pytest.mark.parametrize("which", [1, 2, 3])
def test_double_factorial_limits_against_lgamma(which):
    lim = float(lab.double_factorial_limits()[which])
    assert lgamma_scaled_sum(200, which) == pytest.approx(lab.eval_double_factorial_sums(200, which), rel=1e-9)
    assert abs(lgamma_scaled_sum(10 ** 6, which) - lim) < 0.01
    lo, hi = lab.double_factorial_half_limits()
    assert abs(lo + hi - lab.double_factorial_limits()[3]) < 1e-15


def test_double_factorial_third_sum_split():
    g = 3000
    lo, hi = lab.double_factorial_sum_exact(g, 3, halves=True)
    assert lo + hi == lab.double_factorial_sum_exact(g, 3)
    l_lo, l_hi = lab.double_factorial_half_limits()
    scale = mpmath.mpf(g) ** 1.5
    assert abs(float(lo) * scale - l_lo) < 0.05
    assert abs(float(hi) * scale - l_hi) < 0.05


def test_double_factorial_errors_decrease():
    lims = lab.double_factorial_limits()
    for which in (1, 2, 3):
        errs = [abs(lab.eval_double_factorial_sums(g, which) - float(lims[which])) for g in (100, 1000, 4000)]
        assert errs[0] > errs[1] > errs[2]


def test_double_factorial_guards():
    with pytest.raises(ValueError):
        lab.eval_double_factorial_sums(3, 1)
    with pytest.raises(ValueError):
        lab.double_factorial_sum_exact(10, 4)


# series

def brute_series(which, N):
    s = Fraction(0)
    for n in range(N + 1):
        if which == "half_pi":
            s += Fraction(dfac(2 * n - 1), (2 * n + 1) * dfac(2 * n))
        else:
            s += Fraction(dfac(2 * n), (2 * n + 2) * dfac(2 * n + 1))
    return s


@pytest.mark.parametrize("which", ["half_pi", "pi_sq_over_8"])
def test_series_partial_sums_exact(which):
    for N in (1, 2, 5, 40):
        num, den = lab.series_partial_exact(which, N)
        assert Fraction(int(num), int(den)) == brute_series(which, N)
    assert brute_series("half_pi", 1) == Fraction(7, 6)
    assert brute_series("pi_sq_over_8", 1) == Fraction(2, 3)


@pytest.mark.parametrize("which", ["half_pi", "pi_sq_over_8"])
def test_series_monotone_and_bounded(which):
    lim = lab.series_limit(which)
    prev = 0.0
    for N in range(1, 300):
        v = lab.eval_series(which, N)
        assert prev < v < lim
        prev = v


def test_series_guards():
    with pytest.raises(ValueError):
        lab.eval_series("nope", 10)
    with pytest.raises(ValueError):
        lab.eval_series("half_pi", 0)


# cancelling factorials and the error-term lemma

def test_cancelling_factorials():
    for p, g, tol in ((1, 100, 0.03), (3, 1000, 0.02)):
        r = lab.check_cancelling_factorials(p, g)
        exact = Fraction((2 * g) ** (2 * p) * fac(2 * g - 2 * p), fac(2 * g))
        assert r == pytest.approx(float(exact), rel=1e-15)
        assert abs(r - 1) <= tol
    assert math.isfinite(lab.check_cancelling_factorials(50, 50))
    with pytest.raises(ValueError):
        lab.check_cancelling_factorials(5, 4)


def test_error_term_constant_bounded():
    rep = lab.check_error_term_lemma(range(10, 201))
    assert rep["in_range"] and rep["nonincreasing"]
    assert rep["K_max"] == pytest.approx(float(lab.error_term_constant(10)))
    for g in (10, 57, 200):
        s = as_fraction(lab.error_term_sum(g))
        direct = sum(Fraction(1, g ** (2 * p - 2)) * (1 + Fraction(2 * 2 ** p, g)) for p in range(1, g + 1))
        assert s == direct and s >= 1
