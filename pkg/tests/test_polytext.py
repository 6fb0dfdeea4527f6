from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ncmember.freealg import NcPoly
from ncmember.polytext import MAX_EXPONENT, PolySyntaxError, format_poly, format_word, parse_poly

from strategies import polys


def test_parse_mixed_products():
    p = parse_poly("x1*x2 - 2 x2 x1 + 3")
    assert p.terms == {(1, 2): 1, (2, 1): -2, (): 3}
    assert p.nvars == 2


def test_parse_power():
    assert parse_poly("x1^3") == NcPoly.word((1, 1, 1), 1)
    assert parse_poly("x2^0 x1") == NcPoly.var(1, 2)


def test_parse_collects_terms():
    assert parse_poly("1/2 x1 + 1/2 x1") == NcPoly.var(1, 1)
    assert parse_poly("x1 - x1").is_zero()


def test_parse_signs_and_spacing():
    assert parse_poly("-x1") == -NcPoly.var(1, 1)
    assert parse_poly("+ 2/4\tx1 *x1") == NcPoly.word((1, 1), 1, Fraction(1, 2))
    assert parse_poly("  7 ") == NcPoly.const(7, 1)


def test_declared_alphabet():
    assert parse_poly("x1", nvars=3).nvars == 3
    assert parse_poly("x4", nvars=2).nvars == 4
    assert parse_poly("y2 y1", letter="y").terms == {(2, 1): 1}


def test_parse_bytes():
    assert parse_poly(b"x1 x2") == NcPoly.word((1, 2), 2)


@pytest.mark.parametrize(
    "text, offset",
    [
        ("", 0),
        ("x1 +", 4),
        ("x1 ++ x2", 4),
        ("1/0 x1", 2),
        ("1/ x1", 3),
        ("(x1 x2)^2", 0),
        ("x1 (x2)", 3),
        ("x1^", 3),
        ("x1^x2", 3),
        ("x0", 1),
        ("x", 1),
        ("x1 * + x2", 5),
        ("x1 2", 3),
        ("x1 + y1", 5),
        ("x1 ? x2", 3),
        ("é x1", 0),
        ("x1 é", 3),
        ("é é", 0),
        (b"x1\xff", 2),
        ("x1^1001", 3),
    ],
)
def test_syntax_errors_are_positioned(text, offset):
    with pytest.raises(PolySyntaxError) as exc:
        parse_poly(text)
    assert exc.value.offset == offset
    assert str(offset) in str(exc.value)


def test_offsets_count_utf8_bytes():
    with pytest.raises(PolySyntaxError) as exc:
        parse_poly("x1 + ü ")
    assert exc.value.offset == 5
    with pytest.raises(PolySyntaxError) as exc:
        parse_poly("ü")
    assert exc.value.offset == 0
    with pytest.raises(PolySyntaxError) as exc:
        parse_poly("x1 ü +")
    assert exc.value.offset == 3


def test_wrong_letter():
    with pytest.raises(PolySyntaxError):
        parse_poly("x1", letter="y")


def test_exponent_limit():
    assert parse_poly(f"x1^{MAX_EXPONENT}").degree == MAX_EXPONENT


@pytest.mark.parametrize(
    "p, text",
    [
        (NcPoly(1, {(1, 1): 1, (): -1}), "x1^2 - 1"),
        (NcPoly.zero(2), "0"),
        (NcPoly(2, {(2, 1): Fraction(1, 2)}), "1/2*x2*x1"),
        (NcPoly(2, {(1,): -1}), "-x1"),
        (NcPoly(2, {(1,): 1, (2, 1): 3, (1, 2): -3, (): Fraction(-2, 3)}), "-3*x1*x2 + 3*x2*x1 + x1 - 2/3"),
        (NcPoly(1, {(1, 1, 1): 1}), "x1^3"),
    ],
)
def test_format_examples(p, text):
    assert format_poly(p) == text


def test_format_word():
    assert format_word(()) == "1"
    assert format_word((1, 1, 2, 1), "y") == "y1^2*y2*y1"


@given(st.integers(1, 3).flatmap(lambda d: polys(d, 5, max_terms=6)))
def test_round_trip(p):
    assert parse_poly(format_poly(p), nvars=p.nvars) == p


@settings(max_examples=500)
@given(st.binary(max_size=40))
def test_bytes_never_crash(data):
    try:
        parse_poly(data)
    except PolySyntaxError as exc:
        assert 0 <= exc.offset <= len(data)


@settings(max_examples=500)
@given(st.text(alphabet="xy0123456789+-*/^ ()é\t", max_size=30))
def test_grammar_alphabet_never_crashes(text):
    try:
        p = parse_poly(text)
    except PolySyntaxError as exc:
        assert 0 <= exc.offset <= len(text.encode("utf-8"))
    else:
        assert parse_poly(format_poly(p, "x"), nvars=p.nvars) == p
