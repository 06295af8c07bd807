from fractions import Fraction

import pytest

from metrized.scalars import EXACT, FLOAT, INFINITE, ScalarField, format_exact, format_scalar, parse_length


@pytest.mark.parametrize(
    "text, value",
    [("1/10", Fraction(1, 10)), ("0.1", Fraction(1, 10)), ("3", Fraction(3)),
     ("2.50", Fraction(5, 2)), ("1e-2", Fraction(1, 100)), ("-1", Fraction(-1))],
)
def test_parse_length(text, value):
    assert parse_length(text) == value


@pytest.mark.parametrize("text", ["1/0", "abc", "1/2/3", "", "0x10", "1/-2"])
def test_parse_length_rejects(text):
    with pytest.raises(ValueError):
        parse_length(text)


def test_format():
    assert format_exact(Fraction(23, 500)) == "23/500"
    assert format_exact(Fraction(6)) == "6"
    assert format_exact(INFINITE) == "inf"
    assert format_scalar(0.046) == "0.046"


def test_field_invariants():
    with pytest.raises(ValueError):
        ScalarField("exact", 1e-9)
    with pytest.raises(ValueError):
        ScalarField("float", 0)
    with pytest.raises(ValueError):
        ScalarField("decimal")
    assert EXACT.close(Fraction(1, 3), Fraction(2, 6))
    assert not EXACT.close(Fraction(1, 3), Fraction(1, 3) + Fraction(1, 10**30))
    assert FLOAT.close(1.0, 1.0 + 1e-12)
    assert not FLOAT.close(1.0, 1.0 + 1e-6)
    assert EXACT.convert(INFINITE) == INFINITE
