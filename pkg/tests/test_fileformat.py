from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tesscurv.fileformat import (
    ParseError,
    fmt_rational,
    load_operator_entries,
    load_patch,
    parse_rational,
    save_operator_entries,
    save_patch,
)
from tesscurv.patch import make_patch, structurally_equal

from helpers import kagome, regular


@pytest.mark.parametrize("patch", [regular(4, 4, 2), regular(3, 7, 3), kagome(2)], ids=["44", "37", "kagome"])
def test_round_trip(patch):
    text = save_patch(patch)
    again = load_patch(text)
    assert structurally_equal(again, patch)
    assert save_patch(again) == text


def test_rotated_cycles_are_equal():
    a = make_patch({0: (0, 1, 2)})
    b = load_patch("tess 1\nface 0: 2 0 1\ncomplete_vertices: all\ncomplete_faces: all\n")
    assert structurally_equal(a, b)


def test_comments_and_explicit_sets():
    text = "# a patch\ntess 1\n\nface 3: 0 1 2\n# middle\ncomplete_vertices: 0 1\ncomplete_faces:\n"
    p = load_patch(text)
    assert p.complete_vertices == {0, 1} and p.complete_faces == frozenset()
    assert "complete_vertices: 0 1" in save_patch(p)


@pytest.mark.parametrize(
    "text,lineno",
    [
        ("tess 1\nface 0: 0 1 2\nface 0: 3 4 5\n", 3),
        ("tess 1\nface 0: 1 2 1 3\n", 2),
        ("tess 1\nface 0: 1 2\n", 2),
        ("tess 2\n", 1),
        ("tess 1\nvertex 3\n", 2),
        ("tess 1\nface x: 1 2 3\n", 2),
        ("", 1),
    ],
)
def test_parse_errors(text, lineno):
    with pytest.raises(ParseError) as exc:
        load_patch(text)
    assert exc.value.lineno == lineno
    assert f"line {lineno}" in str(exc.value)


def test_rationals():
    assert fmt_rational(Fraction(-2)) == "-2/1"
    assert fmt_rational(Fraction(6, 4)) == "3/2"
    assert parse_rational("-6/4") == Fraction(-3, 2)
    assert parse_rational("5") == 5


@given(st.dictionaries(st.tuples(st.integers(0, 50), st.integers(0, 50)), st.fractions(max_denominator=30), max_size=20))
def test_operator_round_trip(entries):
    text = save_operator_entries(entries)
    assert load_operator_entries(text) == entries


def test_operator_errors():
    with pytest.raises(ParseError):
        load_operator_entries("op 1\nentry 0 1 1/0\n")
    with pytest.raises(ParseError):
        load_operator_entries("op 1\nentry 0 1 1/2\nentry 0 1 1/3\n")
    with pytest.raises(ParseError):
        load_operator_entries("tess 1\n")
