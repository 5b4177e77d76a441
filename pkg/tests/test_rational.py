import math
from fractions import Fraction as F

import pytest

from ppcg.rational import as_fraction, format_fraction, parse_ratio, sqrt_bounds, to_decimal


def test_parsing():
    assert as_fraction("3/4") == F(3, 4)
    assert as_fraction("0.63") == F(63, 100)
    assert as_fraction(" 2 ") == 2
    assert as_fraction(0.1) == F(1, 10)
    assert as_fraction(F(5, 7)) == F(5, 7)


@pytest.mark.parametrize("bad", ["", "1/0", "abc", "1/2/3"])
def test_parse_errors(bad):
    with pytest.raises(ValueError):
        as_fraction(bad)


def test_type_errors():
    with pytest.raises(TypeError):
        as_fraction(True)
    with pytest.raises(TypeError):
        as_fraction([1])
    with pytest.raises(ValueError):
        as_fraction(float("nan"))


def test_formatting():
    assert format_fraction(F(6, 4)) == "3/2"
    assert format_fraction(F(4)) == "4"
    assert format_fraction(math.inf) == "inf"
    assert parse_ratio("inf") == math.inf
    assert to_decimal(F(1, 3), 4) == "0.3333"
    assert to_decimal(math.inf) == "inf"
    with pytest.raises(TypeError):
        format_fraction(0.5)


def test_sqrt_bounds():
    lo, hi = sqrt_bounds(F(3))
    assert lo * lo < 3 < hi * hi
    assert F(17320508075688772935, 10**19) < lo < F(17320508075688772936, 10**19)
    assert sqrt_bounds(F(9, 4)) == (F(3, 2), F(3, 2))
    with pytest.raises(ValueError):
        sqrt_bounds(F(-1))
