"""Stratum signatures, connected components and Masur-Veech volumes.

Zeros are labelled: a signature is an ordered tuple of orders, and zeros of
order 0 are marked points.  Volumes come in two flavours: exact values for
the few strata with closed forms, and the large-genus leading term
4/prod(m_i + 1) tagged with an error class.
"""
from __future__ import annotations

import enum
import re
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property, lru_cache

import mpmath
from gmpy2 import mpq

from .core_numbers import (PiLaurent, Rational, _fac, default_precision,
                           double_factorial)
from .errorclass import ErrorClass


class Component(enum.Enum):
    WHOLE = "whole"
    HYPERELLIPTIC = "hyp"
    ODD = "odd"
    EVEN = "even"
    NON_HYPERELLIPTIC = "nonhyp"

    @classmethod
    def from_tag(cls, tag: str | None) -> "Component":
        if tag is None or tag == "":
            return cls.WHOLE
        for c in cls:
            if c.value == tag.lower() or c.name.lower() == tag.lower():
                return c
        raise ValueError(f"unknown component tag {tag!r}")


class ExactFormulaUnavailable(LookupError):
    """No closed-form volume (or constant) is known for the request."""

    def __init__(self, what: str):
        super().__init__(f"no exact formula for {what}")
        self.what = what


@dataclass(frozen=True)
class StratumSignature:
    zero_orders: tuple[int, ...]

    def __post_init__(self):
        orders = tuple(int(m) for m in self.zero_orders)
        object.__setattr__(self, "zero_orders", orders)
        if not orders:
            raise ValueError("a stratum needs at least one zero or marked point")
        if any(m < 0 for m in orders):
            raise ValueError(f"zero orders must be nonnegative: {orders}")
        if sum(orders) % 2:
            raise ValueError(f"zero orders must have even sum: {orders}")

    @classmethod
    def of(cls, *orders: int) -> "StratumSignature":
        return cls(tuple(orders))

    @classmethod
    def parse(cls, text: str) -> "StratumSignature":
        sig, comp = parse_stratum(text)
        if comp is not Component.WHOLE:
            raise ValueError(f"{text!r} carries a component suffix; use parse_stratum")
        return sig

    @property
    def genus(self) -> int:
        return sum(self.zero_orders) // 2 + 1

    @property
    def n_zeros(self) -> int:
        return len(self.zero_orders)

    @property
    def dimension(self) -> int:
        """Real dimension d = 2(2g + l - 1)."""
        return 2 * (2 * self.genus + self.n_zeros - 1)

    @cached_property
    def order_counts(self) -> Counter:
        return Counter(self.zero_orders)

    def canonical(self) -> "StratumSignature":
        return StratumSignature(tuple(sorted(self.zero_orders, reverse=True)))

    def underlying(self) -> tuple[int, ...]:
        """Orders with marked points removed, sorted decreasingly."""
        return tuple(sorted((m for m in self.zero_orders if m > 0), reverse=True))

    def is_minimal(self) -> bool:
        return self.n_zeros == 1

    def is_two_equal(self) -> bool:
        return self.n_zeros == 2 and self.zero_orders[0] == self.zero_orders[1]

    def __str__(self):
        if len(self.zero_orders) > 12 and len(self.order_counts) == 1:
            m, = self.order_counts
            return f"H({m}^{len(self.zero_orders)})"
        return "H(" + ",".join(map(str, self.zero_orders)) + ")"


def dimension(s: StratumSignature) -> int:
    return s.dimension


def minimal_stratum(g: int) -> StratumSignature:
    return StratumSignature((2 * g - 2,))


def two_zero_stratum(g: int) -> StratumSignature:
    return StratumSignature((g - 1, g - 1))


def principal_stratum(g: int) -> StratumSignature:
    return StratumSignature((1,) * (2 * g - 2))


_STRATUM_RE = re.compile(r"^\s*H\s*\(\s*([0-9,\s^]*)\)\s*(?:\^\s*([A-Za-z-]+))?\s*$")


def parse_stratum(text: str) -> tuple[StratumSignature, Component]:
    """Parse 'H(m1,...,mn)' with optional '^hyp' style suffix.

    Repeated orders may be written 'm^k' inside the parentheses.
    """
    m = _STRATUM_RE.match(text)
    if not m:
        raise ValueError(f"cannot parse stratum {text!r}")
    body, tag = m.groups()
    orders: list[int] = []
    for part in body.split(","):
        part = part.strip()
        if not part:
            raise ValueError(f"empty entry in {text!r}")
        if "^" in part:
            base, rep = part.split("^")
            orders.extend([int(base)] * int(rep))
        else:
            orders.append(int(part))
    return StratumSignature(tuple(orders)), Component.from_tag(tag)


def format_stratum(s: StratumSignature, c: Component = Component.WHOLE) -> str:
    return str(s) if c is Component.WHOLE else f"{s}^{c.value}"


# connected components

@dataclass(frozen=True)
class Classification:
    components: frozenset
    extrapolated: bool = False
    coincides_with_hyperelliptic: bool = False

    def __contains__(self, c):
        return c in self.components

    def __len__(self):
        return len(self.components)


_NAMED_SMALL = {(0,), (2,), (1, 1)}


def classify_components(s: StratumSignature) -> Classification:
    """Connected components, decided on the underlying signature.

    Marked points do not change the component structure, so the rules are
    applied to the orders with zeros of order 0 removed.
    """
    g = s.genus
    u = s.underlying()
    named = s.canonical().zero_orders in _NAMED_SMALL
    if g <= 2:
        return Classification(frozenset({Component.WHOLE}), extrapolated=not named,
                              coincides_with_hyperelliptic=named)
    if u == (2 * g - 2,) or u == (g - 1, g - 1):
        if u == (2 * g - 2,) or (g - 1) % 2 == 0:
            comps = {Component.HYPERELLIPTIC, Component.ODD, Component.EVEN}
        else:
            comps = {Component.HYPERELLIPTIC, Component.NON_HYPERELLIPTIC}
    elif all(m % 2 == 0 for m in u):
        comps = {Component.ODD, Component.EVEN}
    else:
        comps = {Component.WHOLE}
    return Classification(frozenset(comps), extrapolated=(g == 3))


def is_connected(s: StratumSignature) -> bool:
    return classify_components(s).components == {Component.WHOLE}


# volumes

@dataclass(frozen=True)
class VolumeValue:
    """A volume as scale / prod(f^k for (f, k) in order_factors).

    The factored form lets ratios of huge-genus volumes cancel the common
    (m+1) factors before any multiplication happens.
    """
    kind: str                                  # "exact" or "asymptotic"
    scale: PiLaurent
    error: ErrorClass
    order_factors: tuple[tuple[int, int], ...] = ()
    approximation: object = None               # mpf for Stirling-only values
    note: str = ""

    @property
    def is_exact(self) -> bool:
        return self.kind == "exact"

    @property
    def value(self) -> PiLaurent:
        if self.approximation is not None and self.scale.is_zero():
            raise ValueError("this volume is only known as a floating approximation")
        den = 1
        for f, k in self.order_factors:
            den *= f ** k
        return self.scale / den

    def to_float(self, precision: int | None = None):
        if self.approximation is not None:
            return self.approximation
        return self.value.to_float(precision)

    def __str__(self):
        if self.approximation is not None:
            return f"{mpmath.nstr(self.approximation, 15)} ({self.error})"
        return f"{self.value} ({self.error})"


def _leading_factors(s: StratumSignature) -> tuple[tuple[int, int], ...]:
    return tuple(sorted((m + 1, k) for m, k in s.order_counts.items() if m > 0))


def volume_asymptotic(s: StratumSignature, low_genus: bool = False) -> VolumeValue:
    """Large-genus leading term 4/prod(m_i + 1)."""
    err = ErrorClass.ONE if (low_genus or s.genus == 1) else ErrorClass.ONE_OVER_G
    return VolumeValue("asymptotic", PiLaurent.const(4), err, _leading_factors(s),
                       note="4/prod(m+1)")


@lru_cache(maxsize=4096)
def hyperelliptic_minimal_volume(g: int) -> PiLaurent:
    """Volume of the hyperelliptic component of H(2g-2)."""
    if g < 1:
        raise ValueError("genus must be positive")
    if g == 1:
        return PiLaurent.monomial(mpq(1, 3), 2)
    coeff = mpq(2, _fac(2 * g + 1)) * mpq(double_factorial(2 * g - 3), double_factorial(2 * g - 2))
    return PiLaurent.monomial(coeff, 2 * g)


@lru_cache(maxsize=4096)
def hyperelliptic_two_volume(g: int) -> PiLaurent:
    """Volume of the hyperelliptic component of H(g-1,g-1)."""
    if g < 1:
        raise ValueError("genus must be positive")
    coeff = mpq(8, _fac(2 * g + 2)) * mpq(double_factorial(2 * g - 2), double_factorial(2 * g - 1))
    return PiLaurent.monomial(coeff, 2 * g)


def _hyp_allowed(s: StratumSignature, c: Component) -> bool:
    if c is Component.HYPERELLIPTIC:
        return True
    return c is Component.WHOLE and s.genus <= 2


def volume_exact_special(s: StratumSignature, c: Component = Component.WHOLE) -> VolumeValue:
    """Closed-form volumes: H(0), H(0,0) and the two hyperelliptic families."""
    g = s.genus
    if s.zero_orders == (0,) and c in (Component.WHOLE, Component.HYPERELLIPTIC):
        return VolumeValue("exact", PiLaurent.monomial(mpq(1, 3), 2), ErrorClass.EXACT)
    if s.zero_orders == (2 * g - 2,) and _hyp_allowed(s, c):
        return VolumeValue("exact", hyperelliptic_minimal_volume(g), ErrorClass.EXACT)
    if s.n_zeros == 2 and s.zero_orders == (g - 1, g - 1) and _hyp_allowed(s, c):
        return VolumeValue("exact", hyperelliptic_two_volume(g), ErrorClass.EXACT)
    raise ExactFormulaUnavailable(format_stratum(s, c))


def hyperelliptic_minimal_stirling(g: int, precision: int | None = None):
    """(1/2pi) (pi e/2)^(2g) g^(-2g-2)."""
    with mpmath.workprec(precision or default_precision()):
        return (mpmath.pi * mpmath.e / 2) ** (2 * g) * mpmath.mpf(g) ** (-2 * g - 2) / (2 * mpmath.pi)


def hyperelliptic_two_stirling(g: int, precision: int | None = None):
    """(1/2) (pi e/2)^(2g) g^(-2g-3)."""
    with mpmath.workprec(precision or default_precision()):
        return (mpmath.pi * mpmath.e / 2) ** (2 * g) * mpmath.mpf(g) ** (-2 * g - 3) / 2


def volume_component_asymptotic(s: StratumSignature, c: Component) -> VolumeValue:
    """Leading behaviour of the volume of one connected component."""
    cls = classify_components(s)
    # with no hyperelliptic component the whole stratum is non-hyperelliptic
    if c is Component.NON_HYPERELLIPTIC and cls.components == {Component.WHOLE}:
        c = Component.WHOLE
    if c is not Component.WHOLE and c not in cls:
        raise ValueError(f"component {c.value} does not exist for {s}")
    base = volume_asymptotic(s)
    if c in (Component.WHOLE, Component.NON_HYPERELLIPTIC):
        return base
    if c in (Component.ODD, Component.EVEN):
        return VolumeValue("asymptotic", base.scale / 2, ErrorClass.ONE_OVER_G,
                           base.order_factors, note="half of the stratum volume")
    g = s.genus
    if s.underlying() == (2 * g - 2,):
        approx = hyperelliptic_minimal_stirling(g)
    else:
        approx = hyperelliptic_two_stirling(g)
    return VolumeValue("asymptotic", PiLaurent(), ErrorClass.ONE_OVER_G,
                       approximation=approx, note="Stirling form")
