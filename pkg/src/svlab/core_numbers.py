"""Exact arithmetic substrate.

Rationals are gmpy2 ``mpq`` values (lowest terms, positive denominator).
``PiLaurent`` holds finite sums  sum_k q_k * pi^k  with rational q_k and
integer k, which is the shape of every exact volume and constant here.
Conversion to floating point goes through mpmath at an explicit precision.
"""
from __future__ import annotations

import math
import os
import re
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Iterator, Mapping

import gmpy2
import mpmath
from gmpy2 import mpq, mpz

Rational = type(mpq(0))

DEFAULT_PRECISION = 128
FACTORIAL_MEMO_CAP = 10**6


def default_precision() -> int:
    """Bit precision used when none is given; overridable via SVLAB_PRECISION."""
    raw = os.environ.get("SVLAB_PRECISION")
    if raw:
        try:
            prec = int(raw)
        except ValueError:
            raise ValueError(f"SVLAB_PRECISION must be an integer, got {raw!r}")
        if prec < 53:
            raise ValueError("SVLAB_PRECISION must be at least 53")
        return prec
    return DEFAULT_PRECISION


def rational(x, y=1) -> Rational:
    """Coerce ints, Fractions, mpq or 'p/q' strings to an exact rational."""
    if isinstance(x, float) or isinstance(y, float):
        raise TypeError("floats are not accepted as exact rationals")
    if isinstance(x, Fraction):
        x = mpq(x.numerator, x.denominator)
    if isinstance(y, Fraction):
        y = mpq(y.numerator, y.denominator)
    if y == 1:
        return mpq(x)
    return mpq(x) / mpq(y)


# factorial kernels

@lru_cache(maxsize=8192)
def _fac_cached(n: int) -> mpz:
    return gmpy2.fac(n)


def _fac(n: int) -> mpz:
    if n < 0:
        raise ValueError(f"factorial of negative number {n}")
    if n <= FACTORIAL_MEMO_CAP:
        return _fac_cached(n)
    return gmpy2.fac(n)


def factorial(n: int) -> int:
    """n! as a Python int."""
    if not isinstance(n, (int, type(mpz(0)))) or isinstance(n, bool):
        raise TypeError("factorial needs an integer")
    return int(_fac(int(n)))


def double_factorial(n: int) -> int:
    """n!! with (-1)!! = 0!! = 1."""
    n = int(n)
    if n < -1:
        raise ValueError(f"double factorial undefined for {n}")
    if n <= 0:
        return 1
    return int(gmpy2.double_fac(n))


def binomial(n: int, k: int) -> int:
    return math.comb(n, k)


def rising_product(a: int, b: int) -> mpz:
    """(a+1)(a+2)...b, i.e. b!/a! for 0 <= a <= b."""
    if a > b:
        raise ValueError("rising_product needs a <= b")
    if b - a < 48:
        out = mpz(1)
        for k in range(a + 1, b + 1):
            out *= k
        return out
    return _fac(b) // _fac(a)


def factorial_ratio(numerators: Iterable[int], denominator: int) -> Rational:
    """prod(n_i!) / d! computed by cancelling the largest numerator against d!."""
    nums = sorted(int(n) for n in numerators)
    if any(n < 0 for n in nums) or denominator < 0:
        raise ValueError("factorial arguments must be nonnegative")
    top = mpz(1)
    if nums:
        big = nums.pop()
    else:
        big = 0
    for n in nums:
        top *= _fac(n)
    if big >= denominator:
        return mpq(top * rising_product(denominator, big), 1)
    return mpq(top, rising_product(big, denominator))


# binary splitting for series with rational term ratios

def hypergeometric_sum(first_term, ratio_num: Callable[[int], int],
                       ratio_den: Callable[[int], int], n_max: int) -> tuple[mpz, mpz]:
    """Exact sum_{k=0}^{n_max} t_k where t_{k+1}/t_k = ratio_num(k)/ratio_den(k).

    Returns an unreduced (numerator, denominator) pair; reducing a fraction
    with millions of digits costs more than the sum itself.
    """
    t0 = rational(first_term)
    if n_max < 0:
        return mpz(0), mpz(1)
    if n_max == 0:
        return t0.numerator, t0.denominator

    def split(a, b):
        if b - a == 1:
            pa = mpz(ratio_num(a))
            return pa, mpz(ratio_den(a)), pa
        m = (a + b) // 2
        p1, q1, t1 = split(a, m)
        p2, q2, t2 = split(m, b)
        return p1 * p2, q1 * q2, t1 * q2 + p1 * t2

    _, q, t = split(0, n_max)
    return t0.numerator * (q + t), t0.denominator * q


def exact_sum(xs) -> Rational:
    """Sum of rationals by pairwise rounds, which keeps intermediate
    denominators near the lcm instead of the running product."""
    xs = [mpq(x) for x in xs]
    if not xs:
        return mpq(0)
    while len(xs) > 1:
        nxt = [xs[i] + xs[i + 1] for i in range(0, len(xs) - 1, 2)]
        if len(xs) % 2:
            nxt.append(xs[-1])
        xs = nxt
    return xs[0]


def fraction_to_mpf(num, den, precision: int | None = None):
    prec = precision or default_precision()
    with mpmath.workprec(prec + 16):
        v = mpmath.mpf(int(num)) / mpmath.mpf(int(den))
    with mpmath.workprec(prec):
        return +v


# Laurent polynomials in pi

class PiLaurent:
    """Immutable exact value sum_k q_k pi^k."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, object] | Iterable[tuple[int, object]] | None = None):
        items = terms.items() if isinstance(terms, Mapping) else (terms or ())
        acc: dict[int, Rational] = {}
        for k, q in items:
            k = int(k)
            acc[k] = acc.get(k, mpq(0)) + rational(q)
        self._terms = tuple(sorted(((k, q) for k, q in acc.items() if q != 0), reverse=True))
        self._hash = None

    @classmethod
    def const(cls, q) -> "PiLaurent":
        return cls({0: q})

    @classmethod
    def monomial(cls, q, k: int) -> "PiLaurent":
        return cls({k: q})

    @classmethod
    def coerce(cls, x) -> "PiLaurent":
        if isinstance(x, PiLaurent):
            return x
        if isinstance(x, str):
            return cls.parse(x)
        return cls.const(x)

    @property
    def terms(self) -> dict[int, Rational]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[int, Rational]]:
        return iter(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def is_rational(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and self._terms[0][0] == 0)

    def rational_value(self) -> Rational:
        if not self.is_rational():
            raise ValueError(f"{self} is not a rational number")
        return self._terms[0][1] if self._terms else mpq(0)

    def coefficient(self, k: int) -> Rational:
        for e, q in self._terms:
            if e == k:
                return q
        return mpq(0)

    # ring operations

    def __add__(self, other):
        try:
            other = PiLaurent.coerce(other)
        except TypeError:
            return NotImplemented
        return PiLaurent(list(self._terms) + list(other._terms))

    __radd__ = __add__

    def __neg__(self):
        return PiLaurent([(k, -q) for k, q in self._terms])

    def __pos__(self):
        return self

    def __sub__(self, other):
        try:
            other = PiLaurent.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return PiLaurent.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, PiLaurent):
            acc: dict[int, Rational] = {}
            for k1, q1 in self._terms:
                for k2, q2 in other._terms:
                    acc[k1 + k2] = acc.get(k1 + k2, mpq(0)) + q1 * q2
            return PiLaurent(acc)
        try:
            s = rational(other)
        except TypeError:
            return NotImplemented
        return PiLaurent([(k, q * s) for k, q in self._terms])

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, PiLaurent):
            if other.is_zero():
                raise ZeroDivisionError("division by zero PiLaurent")
            if not other.is_monomial():
                raise ValueError(f"can only divide by a single pi-power term, got {other}")
            (k2, q2), = other._terms
            return PiLaurent([(k - k2, q / q2) for k, q in self._terms])
        try:
            s = rational(other)
        except TypeError:
            return NotImplemented
        if s == 0:
            raise ZeroDivisionError("division by zero")
        return PiLaurent([(k, q / s) for k, q in self._terms])

    def __rtruediv__(self, other):
        return PiLaurent.coerce(other) / self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            if not self.is_monomial():
                raise ValueError("negative powers need a single pi-power term")
            (k, q), = self._terms
            return PiLaurent({k * n: mpq(1) / q ** (-n)})
        if self.is_monomial():
            (k, q), = self._terms
            return PiLaurent({k * n: q ** n})
        out = PiLaurent.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, PiLaurent):
            return self._terms == other._terms
        try:
            return self._terms == PiLaurent.const(other)._terms
        except TypeError:
            return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._terms) if not self.is_rational() else hash(self.rational_value())
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    # numeric evaluation

    def to_float(self, precision: int | None = None):
        """mpmath value with relative error at most 2^(1-precision)."""
        prec = precision or default_precision()
        if prec < 53:
            raise ValueError("precision must be at least 53 bits")
        if not self._terms:
            return mpmath.mpf(0)
        guard = 24
        while True:
            wp = prec + guard
            with mpmath.workprec(wp):
                pi = +mpmath.pi
                parts = [mpmath.mpf(int(q.numerator)) / int(q.denominator) * pi ** k
                         for k, q in self._terms]
                total = mpmath.fsum(parts)
                scale = mpmath.fsum(abs(x) for x in parts)
            if total == 0 and len(parts) > 1:
                # cancellation below working precision, retry wider
                guard *= 2
                if guard > 1 << 16:
                    raise ArithmeticError(f"cannot resolve sign of {self}")
                continue
            lost = int(mpmath.log(scale / abs(total), 2)) + 1 if total != 0 else 0
            if lost + 8 < guard:
                with mpmath.workprec(prec):
                    return +total
            guard = lost + 32

    def __float__(self):
        return float(self.to_float(53))

    def sign(self) -> int:
        if not self._terms:
            return 0
        return 1 if self.to_float(64) > 0 else -1

    # text form

    def __str__(self):
        if not self._terms:
            return "0"
        out = []
        for i, (k, q) in enumerate(self._terms):
            body = _format_term(abs(q), k)
            if i == 0:
                out.append(("-" if q < 0 else "") + body)
            else:
                out.append((" - " if q < 0 else " + ") + body)
        return "".join(out)

    def __repr__(self):
        return f"PiLaurent({str(self)!r})"

    @classmethod
    def parse(cls, text: str) -> "PiLaurent":
        return _Parser(text).parse()


def _pi_power(k: int) -> str:
    return "pi" if k == 1 else f"pi^{k}"


def _format_term(q: Rational, k: int) -> str:
    n, d = int(q.numerator), int(q.denominator)
    if k == 0:
        return f"{n}" if d == 1 else f"{n}/{d}"
    if k > 0:
        body = _pi_power(k) if n == 1 else f"{n}*{_pi_power(k)}"
        return body if d == 1 else f"{body}/{d}"
    pk = _pi_power(-k)
    return f"{n}/{pk}" if d == 1 else f"{n}/({d}*{pk})"


_TOKEN = re.compile(r"\s*(?:(\d+)|(pi)|(\*\*|[-+*/^()]))")


class _Parser:
    """Recursive descent over + - * / ^ ( ) integers and pi."""

    def __init__(self, text: str):
        self.text = text
        self.tokens = []
        pos = 0
        stripped = text.strip()
        if not stripped:
            raise ValueError("empty expression")
        while pos < len(text):
            if text[pos:].strip() == "":
                break
            m = _TOKEN.match(text, pos)
            if not m:
                raise ValueError(f"unexpected character at {pos} in {text!r}")
            num, pi, op = m.groups()
            if num is not None:
                self.tokens.append(("num", int(num)))
            elif pi is not None:
                self.tokens.append(("pi", None))
            else:
                self.tokens.append(("op", "^" if op == "**" else op))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect(self, op):
        tok = self.take()
        if tok != ("op", op):
            raise ValueError(f"expected {op!r} in {self.text!r}")

    def parse(self) -> PiLaurent:
        v = self.expr()
        if self.i != len(self.tokens):
            raise ValueError(f"trailing input in {self.text!r}")
        return v

    def expr(self):
        sign = 1
        while self.peek() in (("op", "+"), ("op", "-")):
            if self.take()[1] == "-":
                sign = -sign
        v = self.term() * sign
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            rhs = self.term()
            v = v + rhs if op == "+" else v - rhs
        return v

    def term(self):
        v = self.unary()
        while self.peek() in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            rhs = self.unary()
            v = v * rhs if op == "*" else v / rhs
        return v

    def unary(self):
        if self.peek() == ("op", "-"):
            self.take()
            return -self.unary()
        if self.peek() == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            neg = False
            if self.peek() == ("op", "-"):
                self.take()
                neg = True
            kind, val = self.take()
            if kind != "num":
                raise ValueError(f"exponent must be an integer in {self.text!r}")
            return base ** (-val if neg else val)
        return base

    def atom(self):
        kind, val = self.take()
        if kind == "num":
            return PiLaurent.const(val)
        if kind == "pi":
            return PiLaurent.monomial(1, 1)
        if (kind, val) == ("op", "("):
            v = self.expr()
            self.expect(")")
            return v
        raise ValueError(f"unexpected token {val!r} in {self.text!r}")


PI = PiLaurent.monomial(1, 1)
ONE = PiLaurent.const(1)
ZERO = PiLaurent()
PI_SQ_OVER_3 = PiLaurent.monomial(mpq(1, 3), 2)
PI_SQ_OVER_6 = PiLaurent.monomial(mpq(1, 6), 2)
