import math
from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from shiftconv.quadratic import QuadraticNumber, format_exact, parse_exact, squarefree_split

fr = st.fractions(max_denominator=50).filter(lambda x: abs(x) < 10**4)


def test_squarefree_split():
    assert squarefree_split(72) == (6, 2)
    assert squarefree_split(144169) == (1, 144169)
    f, d = squarefree_split(2**5 * 3**3 * 7)
    assert f * f * d == 2**5 * 3**3 * 7 and d == 42


@given(fr, fr, fr, fr)
def test_field_arithmetic_matches_floats(a, b, c, d):
    x = QuadraticNumber.make(a, b, 5)
    y = QuadraticNumber.make(c, d, 5)
    r5 = math.sqrt(5)
    assert math.isclose(float(x * y), float(x) * float(y), rel_tol=1e-9, abs_tol=1e-6)
    assert math.isclose(float(x + y), float(x) + float(y), rel_tol=1e-9, abs_tol=1e-9)
    if y:
        assert (x / y) * y == x
    z = QuadraticNumber(a, b, 5)
    assert z * z.conjugate() == z.norm()
    assert math.isclose(float(x), float(a) + float(b) * r5, rel_tol=1e-12, abs_tol=1e-12)


@given(fr, fr)
def test_exact_sign(a, b):
    x = QuadraticNumber.make(a, b, 2)
    exact = float(a) + float(b) * math.sqrt(2)
    if abs(exact) > 1e-9:
        s = x.sign() if isinstance(x, QuadraticNumber) else (x > 0) - (x < 0)
        assert s == (1 if exact > 0 else -1)


def test_sign_of_nearly_cancelling_value():
    # 99 - 70 sqrt(2) ~ 0.00505 > 0
    assert QuadraticNumber.make(99, -70, 2).sign() == 1
    assert QuadraticNumber.make(-99, 70, 2).sign() == -1


def test_make_collapses_rational():
    assert QuadraticNumber.make(Fraction(3, 2), 0, 7) == Fraction(3, 2)


def test_format_parse_round_trip():
    for v in (0, -24, Fraction(-6, 29), QuadraticNumber.make(540, 12, 144169),
              QuadraticNumber.make(Fraction(1, 3), Fraction(-5, 7), 2)):
        assert parse_exact(format_exact(v)) == v
