"""Executable checks for the combinatorial lemmas behind the constant estimates.

Three families of helpers live here:

* exact inequality checkers plus exhaustive sweeps over small ranges,
* evaluators for the partition sums that appear in the hyperelliptic
  computations, with their limiting constants,
* the double-factorial series, summed by binary splitting.

Everything that can be rational is summed exactly and converted to a float
once at the end.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

import mpmath
from gmpy2 import mpq, mpz

from .core_numbers import (_fac, default_precision, exact_sum, fraction_to_mpf,
                           hypergeometric_sum)


class PreconditionError(ValueError):
    """Inputs fall outside the hypotheses of the inequality being checked."""


@dataclass
class SweepReport:
    name: str
    checked: int = 0
    skipped: int = 0          # inputs rejected by the preconditions
    violations: int = 0
    max_ratio: float = 0.0    # max of lhs/rhs over checked inputs
    examples: list = field(default_factory=list)   # first few violations

    def record(self, ok: bool, lhs, rhs, witness):
        self.checked += 1
        r = float(mpq(lhs, rhs))
        if r > self.max_ratio:
            self.max_ratio = r
        if not ok:
            self.violations += 1
            if len(self.examples) < 5:
                self.examples.append(witness)

    @property
    def passed(self) -> bool:
        return self.violations == 0 and self.checked > 0

    def to_dict(self):
        return {"lemma": self.name, "checked": self.checked, "skipped": self.skipped,
                "violations": self.violations, "max_ratio": self.max_ratio,
                "examples": self.examples, "passed": self.passed}


def _f(n: int) -> int:
    return int(_fac(n))


# factorial comparison of two nested partitions

def factorial_comparison_sides(r: int, A: Sequence[int], B: Sequence[int]):
    """Cross-multiplied sides: prod(A_i+r)! (B+r-1)!  vs  prod(B_i+r)! (A+r-1)!."""
    SA, SB = sum(A), sum(B)
    lhs = math.prod(_f(a + r) for a in A) * _f(SB + r - 1)
    rhs = math.prod(_f(b + r) for b in B) * _f(SA + r - 1)
    return lhs, rhs


def check_lemma_factorial_comparison(p: int, r: int, A: Sequence[int], B: Sequence[int]) -> bool:
    """prod (A_i+r)!/(A+r-1)! <= prod (B_i+r)!/(B+r-1)! for 0 <= B_i <= A_i, B_i < B."""
    if p < 1 or r < 0 or len(A) != p or len(B) != p:
        raise PreconditionError("need p >= 1, r >= 0 and p parts in each partition")
    SB = sum(B)
    for a, b in zip(A, B):
        if not 0 <= b <= a:
            raise PreconditionError(f"need 0 <= B_i <= A_i, got A_i={a}, B_i={b}")
        if b >= SB:
            raise PreconditionError(f"need B_i < B, got B_i={b}, B={SB}")
    lhs, rhs = factorial_comparison_sides(r, A, B)
    return lhs <= rhs


def sweep_factorial_comparison(p_max=4, r_max=3, part_max=8) -> SweepReport:
    """All (A_i, B_i) pairs up to simultaneous permutation of the index."""
    rep = SweepReport("factorial_comparison")
    pairs = [(a, b) for a in range(part_max + 1) for b in range(a + 1)]
    for p in range(1, p_max + 1):
        for combo in itertools.combinations_with_replacement(pairs, p):
            A = [a for a, _ in combo]
            B = [b for _, b in combo]
            SB = sum(B)
            if any(b >= SB for b in B):
                rep.skipped += r_max + 1
                continue
            for r in range(r_max + 1):
                lhs, rhs = factorial_comparison_sides(r, A, B)
                rep.record(lhs <= rhs, lhs, rhs, {"p": p, "r": r, "A": A, "B": B})
    return rep


# product of binomials

def product_binomials_sides(r: int, ells: Sequence[int], a: Sequence[int]):
    """Cross-multiplied sides of
    prod (2l_i+a_i+r)!/prod l_i!  <=  2^(rp) C(sum(2l_i+a_i), sum l_i) prod (l_i+a_i+r)!."""
    p = len(ells)
    lhs = math.prod(_f(2 * l + x + r) for l, x in zip(ells, a))
    rhs = (2 ** (r * p) * math.comb(sum(2 * l + x for l, x in zip(ells, a)), sum(ells))
           * math.prod(_f(l + x + r) for l, x in zip(ells, a))
           * math.prod(_f(l) for l in ells))
    return lhs, rhs


def check_lemma_product_binomials(p: int, r: int, ells: Sequence[int], a: Sequence[int]) -> bool:
    if p < 1 or r < 0 or len(ells) != p or len(a) != p:
        raise PreconditionError("need p >= 1, r >= 0 and p entries in each list")
    if any(x < 0 for x in itertools.chain(ells, a)):
        raise PreconditionError("entries must be nonnegative")
    lhs, rhs = product_binomials_sides(r, ells, a)
    return lhs <= rhs


def sweep_product_binomials(p_max=4, r_max=3, part_max=8) -> SweepReport:
    """Exhaustive over all tuples with entries <= part_max.

    After dividing out prod l_i! (l_i+a_i+r)! the inequality reads
    prod C(2l_i+a_i+r, l_i) <= 2^(rp) C(S, T) with S = sum(2l_i+a_i),
    T = sum l_i.  The right side only sees (S, T), so it suffices to carry
    the maximum of the left side over every reachable (S, T); a max-product
    table built one index at a time does that exactly.
    """
    rep = SweepReport("product_binomials")
    vals = range(part_max + 1)
    for r in range(r_max + 1):
        table = {(0, 0): (1, 1)}   # (S, T) -> (max product, number of tuples)
        for p in range(1, p_max + 1):
            nxt: dict = {}
            for (S, T), (best, cnt) in table.items():
                for l in vals:
                    for x in vals:
                        key = (S + 2 * l + x, T + l)
                        prod = best * math.comb(2 * l + x + r, l)
                        old = nxt.get(key)
                        if old is None:
                            nxt[key] = (prod, cnt)
                        else:
                            nxt[key] = (max(old[0], prod), old[1] + cnt)
            table = nxt
            for (S, T), (best, cnt) in table.items():
                rhs = 2 ** (r * p) * math.comb(S, T)
                ok = best <= rhs
                rep.checked += cnt - 1
                rep.record(ok, best, rhs, {"p": p, "r": r, "S": S, "T": T})
    return rep


def sweep_product_binomials_literal(p_max=3, r_max=2, part_max=4) -> SweepReport:
    """Same statement, tuple by tuple; slow, kept as a cross-check."""
    rep = SweepReport("product_binomials_literal")
    vals = range(part_max + 1)
    for p in range(1, p_max + 1):
        for ells in itertools.product(vals, repeat=p):
            for a in itertools.product(vals, repeat=p):
                for r in range(r_max + 1):
                    lhs, rhs = product_binomials_sides(r, ells, a)
                    rep.record(lhs <= rhs, lhs, rhs, {"p": p, "r": r, "l": ells, "a": a})
    return rep


# the ingredient inequality

def ingredient_sides(p: int, r: int, parts: Sequence[int]):
    A = sum(parts)
    lhs = math.prod(_f(x + 3 + r) for x in parts)
    rhs = _f(3 + r) ** (p - 1) * _f(A + r)
    return lhs, rhs


def check_lemma_ingredient(p: int, r: int, A: int, parts: Sequence[int]) -> bool:
    """prod (A_i+3+r)! <= (3+r)!^(p-1) (A+r)! for A = sum A_i, A_i <= A-3."""
    if p < 2 or r < 0:
        raise PreconditionError("need p >= 2 and r >= 0")
    if len(parts) != p or sum(parts) != A or any(x < 0 for x in parts):
        raise PreconditionError(f"{list(parts)} is not a partition of {A} into {p} parts")
    if A < r:
        raise PreconditionError(f"need A >= r, got A={A}, r={r}")
    if any(x > A - 3 for x in parts):
        raise PreconditionError(f"need A_i <= A-3 = {A - 3}")
    lhs, rhs = ingredient_sides(p, r, parts)
    return lhs <= rhs


def sweep_ingredient(p_max=4, r_max=3, part_max=8) -> SweepReport:
    """Every multiset of p parts <= part_max, with A their sum."""
    rep = SweepReport("ingredient")
    for p in range(2, p_max + 1):
        for parts in itertools.combinations_with_replacement(range(part_max + 1), p):
            A = sum(parts)
            for r in range(r_max + 1):
                if A < r or max(parts) > A - 3:
                    rep.skipped += 1
                    continue
                lhs, rhs = ingredient_sides(p, r, parts)
                rep.record(lhs <= rhs, lhs, rhs, {"p": p, "r": r, "A": A, "parts": list(parts)})
    return rep


# summed product of factorials over block assignments

def lemma_sum_exact(p: int, Ms: Sequence[int], L: int, first: Sequence[int] | None = None,
                    second: Sequence[int] | None = None, variant: int = 1) -> mpq:
    """Sum over admissible choices of prod (a_i'+a_i''+l_i+variant)!, divided
    by (M_1+...+M_n+L+variant-1)!.

    first[i] / second[i] name the M-block that a_i' / a_i'' are drawn from;
    by default every a_i' comes from M_1 and every a_i'' from M_2.  Every M_j
    is split into an ordered composition over the parts assigned to it, L is
    split over all p parts, and parts carrying the whole total are excluded.
    """
    n = len(Ms)
    if variant not in (1, 2):
        raise ValueError("variant must be 1 or 2")
    if first is None:
        first = [0] * p
    if second is None:
        second = [1 if n > 1 else 0] * p
    if len(first) != p or len(second) != p:
        raise ValueError("need one assignment per part")
    if any(i == j for i, j in zip(first, second)):
        raise PreconditionError("a_i' and a_i'' must come from different blocks")
    if any(not 0 <= i < n for i in itertools.chain(first, second)):
        raise ValueError("assignment index out of range")
    D = sum(Ms) + L
    used = set(first) | set(second)
    if any(Ms[j] for j in range(n) if j not in used):
        return mpq(0)

    # state: remaining amounts of each M_j and of L
    states = {tuple(Ms) + (L,): mpz(1)}
    for i in range(p):
        nxt: dict = {}
        j1, j2 = first[i], second[i]
        for st, w in states.items():
            for x in range(st[j1] + 1):
                for y in range(st[j2] + 1):
                    for l in range(st[n] + 1):
                        d = x + y + l
                        if d == D and D > 0:
                            continue
                        s2 = list(st)
                        s2[j1] -= x
                        s2[j2] -= y
                        s2[n] -= l
                        key = tuple(s2)
                        nxt[key] = nxt.get(key, 0) + w * _fac(d + variant)
        states = nxt
    total = states.get((0,) * (n + 1), mpz(0))
    return mpq(total, _fac(D + variant - 1))


def estimate_lemma_sum_constant(p: int, Ms: Sequence[int], L: int, variant: int = 1,
                                first=None, second=None) -> float:
    """Empirical C: p-th root of the normalised sum."""
    q = lemma_sum_exact(p, Ms, L, first, second, variant)
    return float(q) ** (1.0 / p)


def sweep_lemma_sum_constant(p_max=3, total_max=10, variant=1) -> dict:
    """Largest empirical C over two blocks (and three blocks, cyclic assignment)."""
    best = 0.0
    arg = None
    count = 0
    for p in range(1, p_max + 1):
        for tot in range(total_max + 1):
            for M1 in range(tot + 1):
                for M2 in range(tot - M1 + 1):
                    L = tot - M1 - M2
                    c = estimate_lemma_sum_constant(p, (M1, M2), L, variant)
                    count += 1
                    if c > best:
                        best, arg = c, {"p": p, "M": [M1, M2], "L": L}
            if p >= 2:
                first = [i % 3 for i in range(p)]
                second = [(i + 1) % 3 for i in range(p)]
                for Ms in itertools.product(range(tot + 1), repeat=3):
                    if sum(Ms) > tot:
                        continue
                    L = tot - sum(Ms)
                    c = estimate_lemma_sum_constant(p, Ms, L, variant, first, second)
                    count += 1
                    if c > best:
                        best, arg = c, {"p": p, "M": list(Ms), "L": L}
    return {"variant": variant, "cases": count, "max_C": best, "argmax": arg}


# partition sums

def zeta_euler_maclaurin(s, N: int = 64, terms: int = 12, precision: int | None = None):
    """zeta(s) for real s > 1: head sum up to N-1, integral tail and
    Bernoulli corrections at N."""
    with mpmath.workprec(precision or default_precision()):
        s = mpmath.mpf(s)
        head = mpmath.fsum(mpmath.mpf(n) ** (-s) for n in range(1, N))
        Nf = mpmath.mpf(N)
        tail = Nf ** (1 - s) / (s - 1) + Nf ** (-s) / 2
        rising = s           # s (s+1) ... (s+2k-2)
        for k in range(1, terms + 1):
            tail += mpmath.bernoulli(2 * k) / mpmath.factorial(2 * k) * rising * Nf ** (-s - 2 * k + 1)
            rising *= (s + 2 * k - 1) * (s + 2 * k)
        return head + tail


def partition_zeta_limit():
    """2 zeta(3/2)."""
    return 2 * zeta_euler_maclaurin(mpmath.mpf(3) / 2)


def eval_partition_zeta_sum(g: int) -> float:
    """sum over g1+g2=g, g_i >= 1, of g^(3/2) / (g1 g2)^(3/2)."""
    if g < 2:
        raise ValueError("need g >= 2")
    gg = float(g) ** 1.5
    return math.fsum(gg / (g1 * (g - g1)) ** 1.5 for g1 in range(1, g))


@lru_cache(maxsize=8)
def _odd_even_tables(n: int):
    """u[k] = (2k-1)!!/(2k)!!, v[k] = (2k)!!/(2k+1)!! for k <= n."""
    u = [mpq(1)]
    v = [mpq(1)]
    for k in range(1, n + 1):
        u.append(u[-1] * mpq(2 * k - 1, 2 * k))
        v.append(v[-1] * mpq(2 * k, 2 * k + 1))
    return u, v


def double_factorial_sum_exact(g: int, which: int, halves: bool = False):
    """Exact rational value of the finite sum without the g^(3/2) prefactor.

    which=1: g1+g2=g,   terms u_{g1} u_{g2} / ((2g1+1)(2g2+1))
    which=2: g1+g2=g-1, terms v_{g1} v_{g2} / ((2g1+2)(2g2+2))
    which=3: g1+g2=g-1, terms u_{g1} v_{g2} / ((2g1+1)(2g2+2))
    with g_i >= 1.  With halves=True, which=3 is returned as the pair
    (terms with g1 <= g2, terms with g1 > g2).
    """
    if which not in (1, 2, 3):
        raise ValueError("which must be 1, 2 or 3")
    if g < 2:
        raise ValueError("need g >= 2")
    u, v = _odd_even_tables(g)
    total = g if which == 1 else g - 1
    lo, hi = [], []
    for g1 in range(1, total):
        g2 = total - g1
        if which == 1:
            t = u[g1] * u[g2] / ((2 * g1 + 1) * (2 * g2 + 1))
        elif which == 2:
            t = v[g1] * v[g2] / ((2 * g1 + 2) * (2 * g2 + 2))
        else:
            t = u[g1] * v[g2] / ((2 * g1 + 1) * (2 * g2 + 2))
        (lo if g1 <= g2 else hi).append(t)
    if halves:
        return exact_sum(lo), exact_sum(hi)
    return exact_sum(lo + hi)


def eval_double_factorial_sums(g: int, which: int, precision: int | None = None) -> float:
    if g < 4:
        raise ValueError("need g >= 4")
    q = double_factorial_sum_exact(g, which)
    with mpmath.workprec(precision or default_precision()):
        return float(fraction_to_mpf(q.numerator, q.denominator, precision) * mpmath.mpf(g) ** 1.5)


def double_factorial_limits(precision: int | None = None) -> dict:
    """Limits of the three sums as g grows."""
    with mpmath.workprec(precision or default_precision()):
        pi, rp = mpmath.pi, mpmath.sqrt(mpmath.pi)
        return {1: rp * (mpmath.mpf(1) / 2 - 1 / pi),
                2: rp / 4 * (pi ** 2 / 4 - 1),
                3: rp / 4 * (3 * pi / 4 - 1 - 1 / pi)}


def double_factorial_half_limits(precision: int | None = None) -> tuple:
    """Limits of the two halves of the third sum.

    The g1 <= g2 half tends to (sqrt(pi)/4)(pi/2 - 1), the other half to
    (1/(2 sqrt(pi)))(pi^2/8 - 1/2); the two add up to the third limit.
    """
    with mpmath.workprec(precision or default_precision()):
        pi, rp = mpmath.pi, mpmath.sqrt(mpmath.pi)
        return rp / 4 * (pi / 2 - 1), (pi ** 2 / 8 - mpmath.mpf(1) / 2) / (2 * rp)


# double-factorial series

SERIES = {
    # sum (2n-1)!!/((2n+1)(2n)!!), ratio of consecutive terms (2n+1)^2/((2n+2)(2n+3))
    "half_pi": (mpq(1), lambda n: (2 * n + 1) ** 2, lambda n: (2 * n + 2) * (2 * n + 3)),
    # sum (2n)!!/((2n+2)(2n+1)!!), ratio (2n+2)^2/((2n+3)(2n+4))
    "pi_sq_over_8": (mpq(1, 2), lambda n: (2 * n + 2) ** 2, lambda n: (2 * n + 3) * (2 * n + 4)),
}


def series_partial_exact(which: str, N: int):
    """Unreduced (num, den) of the partial sum over n = 0..N."""
    if which not in SERIES:
        raise ValueError(f"unknown series {which!r}; choose from {sorted(SERIES)}")
    if N < 1:
        raise ValueError("need N >= 1")
    t0, num, den = SERIES[which]
    return hypergeometric_sum(t0, num, den, N)


def eval_series(which: str, N: int, precision: int | None = None) -> float:
    num, den = series_partial_exact(which, N)
    return float(fraction_to_mpf(num, den, precision or 64))


def series_limit(which: str, precision: int | None = None):
    with mpmath.workprec(precision or default_precision()):
        if which == "half_pi":
            return mpmath.pi / 2
        if which == "pi_sq_over_8":
            return mpmath.pi ** 2 / 8
    raise ValueError(f"unknown series {which!r}")


# remaining estimates

def check_cancelling_factorials(p: int, g: int) -> float:
    """(2g-2p)! (2g)^(2p) / (2g)!, which tends to 1 for fixed p."""
    if not 1 <= p <= g:
        raise ValueError("need 1 <= p <= g")
    q = mpq(mpz(2 * g) ** (2 * p), 1) / mpq(_fac(2 * g), _fac(2 * g - 2 * p))
    return float(q)


def error_term_sum(g: int, c: int = 2, C: int = 2) -> mpq:
    """sum_{p=1}^{g} g^-(2p-2) (1 + (c/g) C^p), exactly."""
    if g < 1:
        raise ValueError("need g >= 1")
    g = mpz(g)
    s = mpq(0)
    for p in range(1, int(g) + 1):
        s += mpq(1, g ** (2 * p - 2)) * (1 + mpq(c * C ** p, g))
    return s


def error_term_constant(g: int, c: int = 2, C: int = 2) -> mpq:
    """K(g) = g (S - 1): the sum lies in [1, 1 + K/g]."""
    return g * (error_term_sum(g, c, C) - 1)


def check_error_term_lemma(g_range=range(10, 201), c: int = 2, C: int = 2) -> dict:
    Ks = [(g, error_term_constant(g, c, C)) for g in g_range]
    in_range = all(1 <= error_term_sum(g, c, C) <= 1 + K / g for g, K in Ks)
    nonincreasing = all(a[1] >= b[1] for a, b in zip(Ks, Ks[1:]))
    return {"g_min": Ks[0][0], "g_max": Ks[-1][0], "K_max": float(max(K for _, K in Ks)),
            "K_at_g_max": float(Ks[-1][1]), "in_range": in_range, "nonincreasing": nonincreasing}
