import csv
import io
import json
from importlib import resources

import pytest
import sympy
from gmpy2 import mpq
from hypothesis import given, strategies as st

from svlab.asymptotics import (Family, LoopMode, asym_distinct_any_multiplicity, asym_distinct_fixed,
                               asym_loop, asym_loop_all_zeros_fixed, asym_principal_distinct,
                               asym_principal_loops, asym_special_families, asym_total,
                               asym_total_params, generate_table, principal_distinct_via_fixed,
                               total_from_pairs)
from svlab.core_numbers import PiLaurent
from svlab.errorclass import ErrorClass
from svlab.strata import StratumSignature, minimal_stratum

P = PiLaurent.parse


def to_sympy(x: PiLaurent):
    return sum(sympy.Rational(int(q.numerator), int(q.denominator)) * sympy.pi ** k for k, q in x.items())


def golden_rows():
    with resources.files("svlab").joinpath("data/lookup_table_golden.json").open() as fh:
        return json.load(fh)["rows"]


# golden file: each transcribed expression is evaluated by sympy, independently of the package

@pytest.mark.parametrize("g", [100, 10**6])
def test_table_values_match_sympy_evaluation_of_golden_expressions(g):
    rows = {r["row"]: r for r in generate_table(g)}
    for want in golden_rows():
        subs = {sympy.Symbol(k): v for k, v in want["parameters"].items()}
        subs[sympy.Symbol("g")] = g
        expected = sympy.sympify(want["expression"], locals={"pi": sympy.pi}).subs(subs)
        got = to_sympy(P(rows[want["row"]]["value"]))
        assert sympy.simplify(got - expected) == 0, want["row"]


def test_golden_leading_coefficients_are_limits():
    g = sympy.Symbol("g", positive=True)
    for want in golden_rows():
        subs = {sympy.Symbol(k): v for k, v in want["parameters"].items()}
        expr = sympy.sympify(want["expression"], locals={"pi": sympy.pi, "g": g}).subs(subs)
        lim = sympy.limit(expr * g ** (-want["g_power"]), g, sympy.oo)
        assert sympy.simplify(lim - to_sympy(P(want["leading_coefficient"]))) == 0, want["row"]


def test_table_has_every_row_and_formats():
    rows = generate_table(100)
    assert [r["row"] for r in rows] == list(range(1, 27))
    text = generate_table(100, "csv")
    parsed = list(csv.DictReader(io.StringIO(text)))
    assert len(parsed) == 26 and parsed[7]["leading_coefficient"] == "pi^2/12"
    assert json.loads(generate_table(100, "json"))
    with pytest.raises(ValueError):
        generate_table(3)


def test_table_spot_rows():
    g = 100
    rows = {r["row"]: r for r in generate_table(g)}
    assert rows[8]["value"] == "pi^2/12"
    assert rows[26]["value"] == "0" and rows[26]["error_class"] == "exact"
    assert rows[6]["value"] == str(mpq((2 * g + 3 - 2) ** 2, 2))


# distinct zeros

def test_distinct_fixed_examples():
    g, ell = 50, 4
    assert asym_distinct_fixed(2, 1, 1, g, ell).value == PiLaurent.const(6)
    z = asym_distinct_fixed(2, 1, 3, g, ell)
    assert z.is_zero and z.error is ErrorClass.EXACT
    v = asym_distinct_fixed(3, 2, 2, g, ell)
    assert v.value == P("pi^2/6") * mpq(12, (2 * g + ell - 3) ** 2)
    assert v.error is ErrorClass.ONE_OVER_G_TIMES_CP


def test_principal_multiplicity_two_is_pi_sq_over_12():
    assert asym_principal_distinct(2, 100).value == P("pi^2/12")
    via = principal_distinct_via_fixed(2, 10**6)
    assert abs(float(via.value) / float(P("pi^2/12")) - 1) < 1e-5
    assert via.coefficient == P("pi^2/12")
    assert principal_distinct_via_fixed(1, 50).coefficient == PiLaurent.const(8)
    assert principal_distinct_via_fixed(3, 50).is_zero


def test_any_multiplicity():
    assert asym_distinct_any_multiplicity(1, 1).value == PiLaurent.const(4)
    h = asym_distinct_any_multiplicity(3, 2, up_to_homology=True)
    assert h.value == PiLaurent.const(12) and h.error is ErrorClass.EXACT
    assert asym_distinct_any_multiplicity(0, 0).value == PiLaurent.const(1)


def test_distinct_strictly_decreasing_in_p():
    for m1, m2 in ((3, 3), (5, 2), (8, 8)):
        for g in (10, 40):
            vals = [float(asym_distinct_fixed(m1, m2, p, g, 3).value) for p in range(1, min(m1, m2) + 2)]
            assert all(a > b for a, b in zip(vals, vals[1:]))


def test_weighted_multiplicity_sum_recovers_product():
    g, ell = 1000, 3
    for m1, m2 in ((3, 3), (5, 2)):
        s = sum(p * float(asym_distinct_fixed(m1, m2, p, g, ell).value) for p in range(1, min(m1, m2) + 2))
        target = (m1 + 1) * (m2 + 1)
        assert abs(s / target - 1) <= 10 / g


# loops

def test_loop_examples():
    m, g, ell = 6, 40, 3
    assert asym_loop(m, 1, "no_cylinder", g, ell).value == PiLaurent.const(mpq((m + 1) * (m - 1), 2))
    assert asym_loop(m, 1, LoopMode.ONE_FIXED_ZERO_TOTAL, g, ell).value == PiLaurent.const(mpq((m + 1) ** 2, 2))
    assert asym_loop(m, 1, "cylinder_other_zero", g, ell, m2=2).value == PiLaurent.const(mpq(21, 2 * g))
    with pytest.raises(ValueError):
        asym_loop(m, 1, "cylinder_other_zero", g, ell)
    with pytest.raises(ValueError):
        asym_loop(m, 2, "no_cylinder", g, ell)
    b = asym_loop(3, 2, LoopMode.ONE_FIXED_ZERO_TOTAL, g, ell)
    assert b.bound_only and b.render().startswith("<= C^p")


def test_single_loop_cases_telescope_to_total():
    # zeros (m, m2, rest) with rest filling up the genus
    m, m2 = 4, 3
    for g in range(20, 501, 40):
        rest = 2 * g - 2 - m - m2
        ell = 3
        s = (asym_loop(m, 1, "no_cylinder", g, ell).value
             + asym_loop(m, 1, "cylinder_same_zero", g, ell).value
             + asym_loop(m, 1, "cylinder_other_zero", g, ell, m2=m2).value
             + asym_loop(m, 1, "cylinder_other_zero", g, ell, m2=rest).value)
        eps = float(s) / ((m + 1) ** 2 / 2) - 1
        assert abs(eps) <= 5 / g


def test_loop_all_zeros_fixed():
    g, ell = 100, 4
    assert asym_loop_all_zeros_fixed((3, 1, 1), 1, g, ell).is_zero
    one = asym_loop_all_zeros_fixed((6,), 1, g, ell)
    assert one.value == asym_loop(6, 1, "no_cylinder", g, ell).value
    two = asym_loop_all_zeros_fixed((3, 1), 1, g, ell)
    assert two.bound_only
    assert asym_loop_all_zeros_fixed((3, 1), 3, g, ell).is_zero


def test_principal_loops():
    g = 30
    assert asym_principal_loops(1, g).value == PiLaurent.const(mpq(4 * g - 5, 2))
    assert asym_principal_loops(2, g).value == P("pi^2/6") / (4 * g - 5)
    assert asym_principal_loops(3, g).value == P("pi^4/18") / (4 * g - 5) ** 3
    assert asym_principal_loops("any", g).value == PiLaurent.const(2 * g)


def test_special_families():
    g = 25
    assert asym_special_families("hyp-minimal-loops", 1, g).value == P("2/pi + 2/pi^2") * (g * g)
    assert asym_special_families(Family.HYP_TWO_DISTINCT, 2, g).value == P("1 - 2/pi") * (g * g)
    c1 = asym_special_families(Family.HYP_TWO_LOOPS, 1, g).coefficient
    c2 = asym_special_families(Family.HYP_TWO_LOOPS, 2, g).coefficient
    assert c1 + c2 == PiLaurent.const(mpq(1, 2))
    assert asym_special_families(Family.HYP_TWO_LOOPS, 2, g).error is ErrorClass.ONE_OVER_G_QUARTER
    for fam in (Family.HYP_TWO_LOOPS, Family.HYP_TWO_DISTINCT, Family.HYP_MINIMAL_LOOPS):
        assert asym_special_families(fam, 3, g).is_zero
    with pytest.raises(ValueError):
        asym_special_families(Family.HYP_TWO_LOOPS, "any", g)


def test_total():
    g = 17
    assert asym_total(minimal_stratum(g)).value == PiLaurent.const(mpq((2 * g - 1) ** 2, 2))
    assert asym_total(StratumSignature.of(1, 1)).value == PiLaurent.const(8)


@given(st.lists(st.integers(0, 9), min_size=1, max_size=8).filter(lambda xs: sum(xs) % 2 == 0))
def test_total_equals_sum_over_pairs(orders):
    H = StratumSignature(tuple(orders))
    assert total_from_pairs(orders) == asym_total_params(H.genus, H.n_zeros).value.rational_value()
    brute = mpq(0)
    for i, a in enumerate(orders):
        for j, b in enumerate(orders):
            brute += mpq((a + 1) * (b + 1), 2)
    assert brute == total_from_pairs(orders)


def test_interval_requires_genus_and_class():
    v = asym_distinct_fixed(3, 3, 2, 100, 3)
    lo, hi = v.interval(2.0)
    assert lo < float(v.value) < hi
    b = asym_loop_all_zeros_fixed((3, 1), 1, 100, 3)
    with pytest.raises(ValueError):
        b.interval()
