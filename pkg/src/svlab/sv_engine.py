"""Siegel-Veech constants from gluing data.

Two master formulas turn a configuration into a constant:

    c = 1/(|Gamma| |Gamma_-|) * prod(weights) * 2^-(p-1)
          * prod (d_i/2 - 1)! / (d/2 - 2)! * prod vol(H_i) / vol(H)

where the weights are (a_i + 1) for slits and figure-eights and
(b'+1)(b''+1) for two-holes.  Volumes come from a provider so that exact and
asymptotic evaluations share one code path; the result carries the weakest
error class among the volumes used.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Protocol

from gmpy2 import mpq

from .configurations import (ConfigKind, Configuration, is_dominant, symmetry)
from .core_numbers import (PI_SQ_OVER_3, PI_SQ_OVER_6, PiLaurent, _fac, exact_sum,
                           factorial_ratio)
from .errorclass import ErrorClass, worst
from .strata import (Component, ExactFormulaUnavailable, StratumSignature,
                     VolumeValue, format_stratum, hyperelliptic_minimal_volume,
                     hyperelliptic_two_volume, volume_asymptotic,
                     volume_exact_special)


class VolumeUnavailable(LookupError):
    def __init__(self, stratum: str, reason: str = ""):
        msg = f"volume unavailable for {stratum}"
        super().__init__(msg + (f": {reason}" if reason else ""))
        self.stratum = stratum


@dataclass(frozen=True)
class SvValue:
    value: PiLaurent
    error: ErrorClass
    provenance: str

    @property
    def is_exact(self) -> bool:
        return self.error is ErrorClass.EXACT

    @property
    def bound_only(self) -> bool:
        return self.error is ErrorClass.BOUND_ONLY

    def to_float(self, precision: int | None = None):
        return self.value.to_float(precision)

    def __add__(self, other: "SvValue") -> "SvValue":
        if self.bound_only != other.bound_only:
            raise ValueError("bound-only values cannot be added to values")
        prov = self.provenance if self.provenance == other.provenance else "sum"
        return SvValue(self.value + other.value, worst(self.error, other.error), prov)

    def __str__(self):
        if self.bound_only:
            return f"<= C^p * {self.value}"
        return f"{self.value} ({self.error})"


ZERO_EXACT = SvValue(PiLaurent(), ErrorClass.EXACT, "empty sum")


# volume providers

class VolumeProvider(Protocol):
    def volume(self, s: StratumSignature, c: Component = Component.WHOLE, *,
               low_genus: bool = False) -> VolumeValue: ...


class ExactVolumes:
    """Only closed-form volumes; anything else is an error."""

    def volume(self, s, c=Component.WHOLE, *, low_genus=False):
        try:
            return volume_exact_special(s, c)
        except ExactFormulaUnavailable as exc:
            raise VolumeUnavailable(format_stratum(s, c), "no closed form") from exc


class AsymptoticVolumes:
    """Exact tori volumes, large-genus leading terms for everything else.

    Odd and even components get half the stratum volume; a non-hyperelliptic
    component gets the full stratum volume.
    """

    def __init__(self, exact_small: bool = True):
        self.exact_small = exact_small

    def volume(self, s, c=Component.WHOLE, *, low_genus=False):
        if self.exact_small and s.zero_orders in ((0,), (0, 0)):
            return volume_exact_special(s, Component.WHOLE)
        if c is Component.HYPERELLIPTIC:
            try:
                return volume_exact_special(s, c)
            except ExactFormulaUnavailable as exc:
                raise VolumeUnavailable(format_stratum(s, c)) from exc
        base = volume_asymptotic(s, low_genus=low_genus)
        if c in (Component.ODD, Component.EVEN):
            return VolumeValue("asymptotic", base.scale / 2, base.error, base.order_factors,
                               note="half of the stratum volume")
        return base


DEFAULT_VOLUMES = AsymptoticVolumes()


def volume_ratio(pieces: Iterable[tuple[StratumSignature, Component]],
                 parent: tuple[StratumSignature, Component],
                 vol: VolumeProvider) -> tuple[PiLaurent, ErrorClass]:
    """prod vol(H_i) / vol(H) with common (m+1) factors cancelled first."""
    H, hc = parent
    g = H.genus
    counts: Counter = Counter()
    scale = PiLaurent.const(1)
    errors = []
    for s, c in pieces:
        try:
            v = vol.volume(s, c, low_genus=2 * s.genus < g)
        except ExactFormulaUnavailable as exc:
            raise VolumeUnavailable(format_stratum(s, c)) from exc
        if v.approximation is not None:
            raise VolumeUnavailable(format_stratum(s, c), "only a floating approximation is known")
        scale = scale * v.scale
        for f, k in v.order_factors:
            counts[f] -= k
        errors.append(v.error)
    try:
        vp = vol.volume(H, hc)
    except ExactFormulaUnavailable as exc:
        raise VolumeUnavailable(format_stratum(H, hc)) from exc
    if vp.approximation is not None:
        raise VolumeUnavailable(format_stratum(H, hc), "only a floating approximation is known")
    scale = scale / vp.scale
    for f, k in vp.order_factors:
        counts[f] += k
    num = den = 1
    for f, k in counts.items():
        if k > 0:
            num *= f ** k
        elif k < 0:
            den *= f ** (-k)
    return scale * mpq(num, den), worst(vp.error, *errors)


def dimension_term(c: Configuration) -> mpq:
    """prod (d_i/2 - 1)! / (d/2 - 2)!."""
    return factorial_ratio([s.dimension // 2 - 1 for s in c.substrata], c.stratum.dimension // 2 - 2)


def _master(c: Configuration, vol: VolumeProvider | None, provenance: str) -> SvValue:
    if not c.labelled:
        raise ValueError("the master formulas apply to labelled configurations")
    vol = vol or DEFAULT_VOLUMES
    sym = symmetry(c)
    pieces = [(b.substratum, b.component_choice or Component.WHOLE) for b in c.pieces]
    ratio, err = volume_ratio(pieces, (c.stratum, c.component), vol)
    coeff = mpq(c.weight(), sym.total * 2 ** (c.p - 1)) * dimension_term(c)
    return SvValue(ratio * coeff, err, provenance)


def sv_distinct_labelled(c: Configuration, vol: VolumeProvider | None = None) -> SvValue:
    if c.kind is not ConfigKind.DISTINCT:
        raise ValueError("configuration does not join distinct zeros")
    return _master(c, vol, "distinct-zeros master formula")


def sv_loop_labelled(c: Configuration, vol: VolumeProvider | None = None) -> SvValue:
    if c.kind is not ConfigKind.LOOP:
        raise ValueError("configuration is not a loop configuration")
    return _master(c, vol, "loop master formula")


def sv_configuration(c: Configuration, vol: VolumeProvider | None = None) -> SvValue:
    if c.kind is ConfigKind.DISTINCT:
        return sv_distinct_labelled(c, vol)
    return sv_loop_labelled(c, vol)


def sv_sum(configs: Iterable[Configuration], vol: VolumeProvider | None = None) -> SvValue:
    total = ZERO_EXACT
    for c in configs:
        total = total + sv_configuration(c, vol)
    return total


def sv_distinct_multiplicity_one(H: StratumSignature, i1: int, i2: int,
                                 vol: VolumeProvider | None = None) -> SvValue:
    """(m1 + m2 + 1) vol(H_1)/vol(H), H_1 merging the two zeros into one."""
    vol = vol or DEFAULT_VOLUMES
    orders = H.zero_orders
    m1, m2 = orders[i1], orders[i2]
    rest = [orders[i] for i in range(H.n_zeros) if i not in (i1, i2)]
    H1 = StratumSignature((m1 + m2, *rest))
    ratio, err = volume_ratio([(H1, Component.WHOLE)], (H, Component.WHOLE), vol)
    return SvValue(ratio * (m1 + m2 + 1), err, "multiplicity-one simplification")


# components of non-connected strata

def sv_component_corrected(c: Configuration, parent: Component,
                           vol: VolumeProvider | None = None) -> SvValue:
    """Constant on an odd, even or non-hyperelliptic component.

    Dominant configurations get the closed form with one (pi^2/6) per torus;
    the others only admit a bound of the shape numerator * dimension term.
    """
    if parent is Component.HYPERELLIPTIC:
        raise ValueError("use sv_hyperelliptic_exact for the hyperelliptic component")
    num = 1
    for m in c.zero_orders:
        num *= m + 1
    dim = dimension_term(c)
    if is_dominant(c):
        sym = symmetry(c)
        value = PI_SQ_OVER_6 ** (c.p - 1) * (mpq(num, sym.total) * dim)
        return SvValue(value, ErrorClass.ONE_OVER_G, f"dominant closed form on {parent.value}")
    return SvValue(PiLaurent.const(num * dim), ErrorClass.BOUND_ONLY, f"bound on {parent.value}")


# hyperelliptic components

def _shape(H: StratumSignature) -> str:
    g = H.genus
    if H.zero_orders == (2 * g - 2,):
        return "minimal"
    if H.zero_orders == (g - 1, g - 1):
        return "two"
    raise ValueError(f"{H} has no hyperelliptic component with a closed form")


@lru_cache(maxsize=None)
def _u_min(k: int) -> mpq:
    return hyperelliptic_minimal_volume(k).coefficient(2 * k) * _fac(2 * k - 1)


@lru_cache(maxsize=None)
def _u_two(k: int) -> mpq:
    return hyperelliptic_two_volume(k).coefficient(2 * k) * _fac(2 * k)


def _mm(k):
    return hyperelliptic_minimal_volume(k)


def _mt(k):
    return hyperelliptic_two_volume(k)


def hyp_distinct_term(g: int, g1: int, g2: int) -> PiLaurent:
    """Two homologous saddle connections between the zeros, genera g1 + g2 = g."""
    if g1 < 1 or g2 < 1 or g1 + g2 != g:
        raise ValueError(f"need g1 + g2 = {g} with positive parts")
    gamma = 2 if g1 == g2 else 1
    coeff = mpq((2 * g1 - 1) * (2 * g2 - 1), 2 * gamma) * factorial_ratio([2 * g1 - 1, 2 * g2 - 1], 2 * g - 1)
    return _mm(g1) * _mm(g2) / _mt(g) * coeff


def hyp_two_loop_term(g: int, g1: int, g2: int) -> PiLaurent:
    """Two homologous loops in H^hyp(g-1,g-1), genera g1 + g2 = g - 1."""
    if g1 < 1 or g2 < 1 or g1 + g2 != g - 1:
        raise ValueError(f"need g1 + g2 = {g - 1} with positive parts")
    gamma = 2 if g1 == g2 else 1
    coeff = mpq(g1 * g2, 2 * gamma) * factorial_ratio([2 * g1, 2 * g2], 2 * g - 1)
    return _mt(g1) * _mt(g2) / _mt(g) * coeff


def hyp_minimal_loop_term(g: int, g1: int, g2: int) -> PiLaurent:
    """Two homologous loops in H^hyp(2g-2): figure-eight part of genus g1,
    two-hole part of genus g2, g1 + g2 = g - 1 (ordered)."""
    if g1 < 1 or g2 < 1 or g1 + g2 != g - 1:
        raise ValueError(f"need g1 + g2 = {g - 1} with positive parts")
    coeff = mpq((2 * g1 - 1) * 2 * g2, 8) * factorial_ratio([2 * g1 - 1, 2 * g2], 2 * g - 2)
    return _mm(g1) * _mt(g2) / _mm(g) * coeff


def hyp_distinct_p2_total(g: int) -> PiLaurent:
    s = exact_sum(mpq((2 * g1 - 1) * (2 * (g - g1) - 1)) * _u_min(g1) * _u_min(g - g1)
                  for g1 in range(1, g))
    return PiLaurent.const(s / (4 * _fac(2 * g - 1) * _mt(g).coefficient(2 * g)))


def hyp_two_loop_p2_total(g: int) -> PiLaurent:
    s = exact_sum(mpq(g1 * (g - 1 - g1)) * _u_two(g1) * _u_two(g - 1 - g1)
                  for g1 in range(1, g - 1))
    return PiLaurent.monomial(s / (4 * _fac(2 * g - 1) * _mt(g).coefficient(2 * g)), -2)


def hyp_minimal_loop_p2_total(g: int) -> PiLaurent:
    s = exact_sum(mpq((2 * g1 - 1) * 2 * (g - 1 - g1)) * _u_min(g1) * _u_two(g - 1 - g1)
                  for g1 in range(1, g - 1))
    return PiLaurent.monomial(s / (8 * _fac(2 * g - 2) * _mm(g).coefficient(2 * g)), -2)


def sv_hyperelliptic_exact(H: StratumSignature, kind, p: int,
                           partition: tuple[int, int] | None = None,
                           variant: str | None = None) -> SvValue:
    """Exact constants on the hyperelliptic components.

    kind is 'distinct' or 'loop'.  For p = 2 a partition (g1, g2) selects a
    single term; without one, all partitions are summed.  For loops in
    H^hyp(2g-2) at p = 1, variant 'two_hole' or 'figure_eight' selects one
    of the two shapes; without one both are added.
    """
    kind = kind.value if isinstance(kind, ConfigKind) else str(kind)
    kind = {"distinct_zeros": "distinct"}.get(kind, kind)
    if kind not in ("distinct", "loop"):
        raise ValueError(f"kind must be 'distinct' or 'loop', got {kind!r}")
    shape = _shape(H)
    g = H.genus
    if g < 2:
        raise ValueError("hyperelliptic formulas need genus at least 2")
    if kind == "distinct" and shape == "minimal":
        raise ValueError("H(2g-2) has a single zero; there are no saddle connections between distinct zeros")
    if p < 1:
        raise ValueError("multiplicity must be at least 1")
    name = f"hyperelliptic {shape} {kind}"
    if p >= 3:
        return SvValue(PiLaurent(), ErrorClass.EXACT, f"{name}: multiplicity above 2 does not occur")
    if p == 1:
        if partition is not None:
            raise ValueError("a partition only makes sense for p = 2")
        if kind == "distinct":
            value = _mm(g) / _mt(g) * (2 * g - 1)
        elif shape == "two":
            value = _mt(g - 1) / _mt(g) * mpq(g - 1, 2 * g - 1)
        else:
            th = _mt(g - 1) / _mm(g) * mpq(g - 1, 2)
            f8 = _mm(g - 1) / _mm(g) * mpq(2 * g - 3, 2 * (2 * g - 2))
            value = {"two_hole": th, "figure_eight": f8, None: th + f8}.get(variant)
            if value is None:
                raise ValueError(f"unknown variant {variant!r}")
        return SvValue(value, ErrorClass.EXACT, name)
    if variant is not None:
        raise ValueError("variants only exist for p = 1")
    if partition is not None:
        g1, g2 = partition
        term = {"distinct": hyp_distinct_term, "two": hyp_two_loop_term,
                "minimal": hyp_minimal_loop_term}[kind if kind == "distinct" else shape]
        return SvValue(term(g, g1, g2), ErrorClass.EXACT, name)
    total = {"distinct": hyp_distinct_p2_total, "two": hyp_two_loop_p2_total,
             "minimal": hyp_minimal_loop_p2_total}[kind if kind == "distinct" else shape]
    return SvValue(total(g), ErrorClass.EXACT, name + ", summed over partitions")


def hyp_partitions(H: StratumSignature, kind: str) -> list[tuple[int, int]]:
    """Partitions indexing the p = 2 terms (unordered unless order matters)."""
    g = H.genus
    shape = _shape(H)
    if kind == "distinct":
        return [(g1, g - g1) for g1 in range(1, g // 2 + 1)]
    if shape == "two":
        return [(g1, g - 1 - g1) for g1 in range(1, (g - 1) // 2 + 1)]
    return [(g1, g - 1 - g1) for g1 in range(1, g - 1)]
