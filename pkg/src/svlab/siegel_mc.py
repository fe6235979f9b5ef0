"""Monte-Carlo check of the Siegel mean-value formula for unimodular lattices
in the plane.

A lattice is parametrised by tau = tau_x + i tau_y in the standard
fundamental domain of SL(2,Z); its basis is (1,0)/sqrt(tau_y) and
(tau_x, tau_y)/sqrt(tau_y), so the covolume is 1.  The ball indicator is
rotation invariant, so averaging over the upper half-plane quotient with
the hyperbolic measure dx dy / y^2 is the same as averaging over
SL(2,R)/SL(2,Z).  The mean number of nonzero vectors of length <= L is
then pi L^2.
"""
from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import mpmath
import numpy as np
from scipy import integrate

SQRT3_2 = math.sqrt(3) / 2
CHUNK = 1000            # samples per independent substream
_REL_TOL = 1e-12        # norms within this relative slack of L count as <= L


@dataclass(frozen=True)
class LatticeSample:
    tau_x: float
    tau_y: float

    def in_domain(self, tol: float = 1e-12) -> bool:
        return (abs(self.tau_x) <= 0.5 + tol and self.tau_y > 0
                and self.tau_x ** 2 + self.tau_y ** 2 >= 1 - tol)

    def basis(self) -> np.ndarray:
        """Rows are the two basis vectors."""
        s = 1.0 / math.sqrt(self.tau_y)
        return np.array([[s, 0.0], [self.tau_x * s, self.tau_y * s]])


def sample_taus(rng: np.random.Generator, n: int,
                y_max: float | None = None) -> tuple[np.ndarray, np.ndarray]:
    """n points of the fundamental domain with density proportional to 1/y^2.

    Proposal: x uniform on [-1/2, 1/2] and y = (sqrt3/2)/U, which has
    density proportional to 1/y^2 on y >= sqrt3/2 and so covers the domain;
    rejection keeps the points with x^2 + y^2 >= 1.  With y_max the draw is
    conditioned on y <= y_max (U restricted to [sqrt3/(2 y_max), 1]).
    """
    u_min = 0.0 if y_max is None else SQRT3_2 / y_max
    xs, ys = [], []
    have = 0
    while have < n:
        m = int((n - have) * 1.1) + 16
        x = rng.uniform(-0.5, 0.5, m)
        u = 1.0 - rng.random(m) * (1.0 - u_min)     # (u_min, 1]
        y = SQRT3_2 / u
        keep = x * x + y * y >= 1.0
        xs.append(x[keep])
        ys.append(y[keep])
        have += int(keep.sum())
    return np.concatenate(xs)[:n], np.concatenate(ys)[:n]


def sample_lattice(rng: np.random.Generator) -> LatticeSample:
    x, y = sample_taus(rng, 1)
    return LatticeSample(float(x[0]), float(y[0]))


# counting

def lagrange_reduce(u, v):
    """Gauss-Lagrange reduction: |u| <= |v| and |u.v| <= |u|^2 / 2."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    if u @ u > v @ v:
        u, v = v, u
    while True:
        k = round(float(u @ v) / float(u @ u))
        v = v - k * u
        if v @ v >= u @ u:
            return u, v
        u, v = v, u


def _row_counts(u, v, L: float):
    """For each row index n, the inclusive range of m with |m u + n v| <= L."""
    uu, uv = float(u @ u), float(u @ v)
    det = abs(u[0] * v[1] - u[1] * v[0])
    L2 = L * L * (1 + _REL_TOL)
    n_max = int(math.floor(L * math.sqrt(uu) / det * (1 + _REL_TOL)))
    out = []
    for n in range(-n_max, n_max + 1):
        disc = L2 * uu - (n * det) ** 2
        if disc < 0:
            continue
        c = -n * uv / uu
        r = math.sqrt(disc) / uu
        lo, hi = math.ceil(c - r), math.floor(c + r)
        # float rounding at the two ends: settle them on the actual norm
        while _norm2(lo - 1, n, u, v) <= L2:
            lo -= 1
        while lo <= hi and _norm2(lo, n, u, v) > L2:
            lo += 1
        while _norm2(hi + 1, n, u, v) <= L2:
            hi += 1
        while hi >= lo and _norm2(hi, n, u, v) > L2:
            hi -= 1
        if hi >= lo:
            out.append((n, lo, hi))
    return out


def _norm2(m, n, u, v) -> float:
    w0 = m * u[0] + n * v[0]
    w1 = m * u[1] + n * v[1]
    return w0 * w0 + w1 * w1


def _coprime_in_range(n: int, lo: int, hi: int) -> int:
    """Number of m in [lo, hi] with gcd(m, n) = 1 (n != 0)."""
    n = abs(n)
    primes = []
    k, t = 2, n
    while k * k <= t:
        if t % k == 0:
            primes.append(k)
            while t % k == 0:
                t //= k
        k += 1
    if t > 1:
        primes.append(t)
    total = 0
    for mask in range(1 << len(primes)):
        d, bits = 1, 0
        for i, pr in enumerate(primes):
            if mask >> i & 1:
                d *= pr
                bits += 1
        cnt = hi // d - (lo - 1) // d
        total += -cnt if bits % 2 else cnt
    return total


def count_vectors_basis(b1, b2, L: float, primitive_only: bool = False) -> int:
    """Nonzero (or primitive) vectors of the lattice spanned by b1, b2 with norm <= L."""
    if L <= 0:
        raise ValueError("radius must be positive")
    u, v = lagrange_reduce(b1, b2)
    total = 0
    for n, lo, hi in _row_counts(u, v, L):
        if n == 0:
            # only m = +-1 are primitive on the row n = 0
            total += (hi >= 1) + (lo <= -1) if primitive_only else (hi - lo)
        elif primitive_only:
            total += _coprime_in_range(n, lo, hi)
        else:
            total += hi - lo + 1
    return total


def count_vectors(s: LatticeSample, L: float, primitive_only: bool = False) -> int:
    b = s.basis()
    return count_vectors_basis(b[0], b[1], L, primitive_only)


def count_vectors_naive(b1, b2, L: float, primitive_only: bool = False) -> int:
    """Double loop over a coefficient box from the inverse basis matrix.

    If w = m b1 + n b2 then (m, n) = w B^-1, so |m| <= L |b2| / det and
    |n| <= L |b1| / det.  No reduction is used.
    """
    b1 = np.asarray(b1, dtype=float)
    b2 = np.asarray(b2, dtype=float)
    det = abs(b1[0] * b2[1] - b1[1] * b2[0])
    M = int(math.ceil(L * math.hypot(*b2) / det)) + 1
    N = int(math.ceil(L * math.hypot(*b1) / det)) + 1
    L2 = L * L * (1 + _REL_TOL)
    count = 0
    for m in range(-M, M + 1):
        for n in range(-N, N + 1):
            if m == 0 and n == 0:
                continue
            if primitive_only and math.gcd(m, n) != 1:
                continue
            if _norm2(m, n, b1, b2) <= L2:
                count += 1
    return count


# the average
#
# Above y = max(1, L^2) the reduced basis has one vector of length
# 1/sqrt(y) and the other longer than L, so the count is exactly
# 2 floor(L sqrt(y)) whatever x is.  Its square integrates against dy/y^2
# like 1/y, so plain sampling has a log-divergent variance and its standard
# error is unreliable.  cusp="exact" integrates that region in closed form
# and samples only y <= max(1, L^2), where counts are bounded.

def cusp_height(L: float) -> float:
    return max(1.0, L * L)


def cusp_probability(Y: float) -> float:
    """Hyperbolic measure of {y > Y}, Y >= 1, normalised by the domain area pi/3."""
    if Y < 1:
        raise ValueError("the cusp region starts at y = 1")
    return 3 / (math.pi * Y)


def cusp_expectation(L: float, Y: float | None = None) -> float:
    """E[count ; y > Y] = (12/pi) int_{sqrt Y}^inf floor(L t) t^-3 dt.

    On [k/L, (k+1)/L) the integrand is k t^-3; summing the pieces gives
    the first partial piece plus (L^2/2)(1/(K+1) + zeta(2, K+2)).
    """
    Y = cusp_height(L) if Y is None else Y
    if Y < cusp_height(L):
        raise ValueError("the closed form needs Y >= max(1, L^2)")
    T = math.sqrt(Y)
    K = math.floor(L * T)
    first = K / 2 * (1 / (T * T) - (L / (K + 1)) ** 2)
    rest = L * L / 2 * (1 / (K + 1) + float(mpmath.zeta(2, K + 2)))
    return 12 / math.pi * (first + rest)


@dataclass
class SiegelResult:
    samples: int
    radius: float
    seed: int
    primitive: bool
    cusp: str
    estimate: float
    target: float
    stderr: float
    z: float
    ratio: float
    zero_fraction: float
    cusp_contribution: float
    wall_time: float

    def to_dict(self):
        return dict(self.__dict__)


def siegel_target(L: float, primitive: bool = False) -> float:
    """pi L^2, or pi L^2 / zeta(2) = 6 L^2 / pi for primitive vectors."""
    return 6 * L * L / math.pi if primitive else math.pi * L * L


def _chunk_counts(args):
    seed_seq, n, L, primitive, y_max = args
    rng = np.random.default_rng(seed_seq)
    xs, ys = sample_taus(rng, n, y_max)
    out = np.empty(n, dtype=np.int64)
    for i, (x, y) in enumerate(zip(xs, ys)):
        s = 1.0 / math.sqrt(y)
        out[i] = count_vectors_basis((s, 0.0), (x * s, y * s), L, primitive)
    return out


def siegel_counts(samples: int, L: float, seed: int, primitive: bool = False,
                  workers: int = 1, y_max: float | None = None) -> np.ndarray:
    """Vector counts for each sample; identical for any number of workers."""
    n_chunks = -(-samples // CHUNK)
    seqs = np.random.SeedSequence(seed).spawn(n_chunks)
    jobs = [(seqs[i], min(CHUNK, samples - i * CHUNK), L, primitive, y_max)
            for i in range(n_chunks)]
    if workers > 1 and n_chunks > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            parts = list(ex.map(_chunk_counts, jobs))
    else:
        parts = [_chunk_counts(j) for j in jobs]
    return np.concatenate(parts)


def siegel_average(samples: int, L: float, seed: int, primitive: bool = False,
                   workers: int = 1, cusp: str = "exact") -> SiegelResult:
    """Mean count against pi L^2 with a standard error and z-score.

    cusp="sample" is the plain average over the whole domain; cusp="exact"
    samples y <= max(1, L^2) and adds the cusp region in closed form
    (nonzero counts only).
    """
    if samples < 100:
        raise ValueError("need at least 100 samples")
    if L <= 0:
        raise ValueError("radius must be positive")
    if cusp not in ("exact", "sample"):
        raise ValueError("cusp must be 'exact' or 'sample'")
    if cusp == "exact" and primitive:
        raise ValueError("the closed-form cusp term is for nonzero-vector counts")
    t0 = time.perf_counter()
    Y = cusp_height(L) if cusp == "exact" else None
    counts = siegel_counts(samples, L, seed, primitive, workers, Y)
    # integer counts: the sums are exact, so the reduction order is irrelevant
    n = len(counts)
    total = int(counts.sum())
    mean = total / n
    var = (int((counts.astype(object) ** 2).sum()) - total * total / n) / (n - 1)
    se = math.sqrt(var / n)
    extra = 0.0
    if Y is not None:
        w = 1 - cusp_probability(Y)
        extra = cusp_expectation(L, Y)
        mean, se = w * mean + extra, w * se
    target = siegel_target(L, primitive)
    z = (mean - target) / se if se > 0 else 0.0
    return SiegelResult(samples, L, seed, primitive, cusp, mean, target, se, z, mean / target,
                        float((counts == 0).mean()), extra, time.perf_counter() - t0)


# reference integrals over the fundamental domain

def domain_expectation(fn) -> float:
    """E[fn(x, y)] under the normalised measure (3/pi) dx dy / y^2."""
    val, _ = integrate.dblquad(lambda y, x: fn(x, y) / (y * y), -0.5, 0.5,
                               lambda x: math.sqrt(1 - x * x), lambda x: np.inf,
                               epsabs=1e-11, epsrel=1e-11)
    return 3 / math.pi * val


def domain_probability_y_below(Y: float) -> float:
    """P(tau_y <= Y) under the normalised hyperbolic measure."""
    val, _ = integrate.dblquad(lambda y, x: 1 / (y * y), -0.5, 0.5,
                               lambda x: math.sqrt(1 - x * x), lambda x: max(Y, math.sqrt(1 - x * x)),
                               epsabs=1e-12, epsrel=1e-12)
    return 3 / math.pi * val
