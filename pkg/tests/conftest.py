import decimal
from fractions import Fraction

import pytest


def machin_pi(digits: int) -> decimal.Decimal:
    """pi from Machin's arctangent formula, done in decimal arithmetic."""
    ctx = decimal.Context(prec=digits + 10)

    def arctan_inv(x):
        x = decimal.Decimal(x)
        total = term = ctx.divide(1, x)
        x2 = ctx.multiply(x, x)
        n, sign = 1, 1
        while True:
            term = ctx.divide(term, x2)
            n += 2
            sign = -sign
            delta = ctx.divide(term, n)
            if delta == 0 or delta.adjusted() < -(digits + 8):
                return total
            total = ctx.add(total, ctx.multiply(sign, delta))

    return ctx.multiply(4, ctx.subtract(ctx.multiply(4, arctan_inv(5)), arctan_inv(239)))


def laurent_value_decimal(terms: dict, digits: int = 60) -> decimal.Decimal:
    """sum q_k pi^k with exact Fractions q_k, evaluated in decimal."""
    pi = machin_pi(digits)
    ctx = decimal.Context(prec=digits)
    out = decimal.Decimal(0)
    for k, q in terms.items():
        q = Fraction(q)
        v = ctx.divide(decimal.Decimal(q.numerator), decimal.Decimal(q.denominator))
        out = ctx.add(out, ctx.multiply(v, ctx.power(pi, k)))
    return out


@pytest.fixture
def decimal_pi():
    return machin_pi


# acceptance summary: one line per criterion at the end of the run
ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[k])
