from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from commuting_powers.core.errors import EmptyInput, LawSyntaxError
from commuting_powers.core.law_parser import (
    Commutator,
    Law,
    Paren,
    Var,
    Word,
    format_law,
    format_word,
    parse_law,
    parse_word,
)


def test_commutator_of_squares():
    law = parse_law("[x^2,y^2]=1")
    assert law.variables == ("x", "y")
    assert law.lhs == Word((Commutator(Word((Var("x", 2),)), Word((Var("y", 2),))),))
    assert law.rhs.is_identity


def test_trivial_law():
    law = parse_law("x=x")
    assert law.lhs == law.rhs == Word((Var("x"),))


def test_juxtaposition_and_whitespace():
    assert parse_law(" (x y) ^ 2 = x^2 y^2 ") == parse_law("(x y)^2=x^2 y^2")
    assert parse_word("xy") == Word((Var("xy"),))
    assert parse_word("x y") == Word((Var("x"), Var("y")))
    assert parse_word("x^-3") == Word((Var("x", -3),))


def test_nested_commutator():
    law = parse_law("[[x,y],z]=1")
    assert law.variables == ("x", "y", "z")
    inner = Commutator(Word((Var("x"),)), Word((Var("y"),)))
    assert law.lhs.factors[0].left == Word((inner,))


def test_unbalanced_bracket_offset():
    with pytest.raises(LawSyntaxError) as exc:
        parse_law("[x,y")
    assert exc.value.offset == 4


def test_offsets_count_bytes():
    # no-break space is ignored as whitespace but takes two bytes
    with pytest.raises(LawSyntaxError) as exc:
        parse_law("x=\u00a0y)")
    assert exc.value.offset == 5


@pytest.mark.parametrize("text, offset", [("[é,y]=1", 1), ("x=y٣", 3), ("xé=1", 1)])
def test_non_ascii_tokens_are_syntax_errors(text, offset):
    with pytest.raises(LawSyntaxError) as exc:
        parse_law(text)
    assert exc.value.offset == offset


@pytest.mark.parametrize(
    "text, offset",
    [
        ("=x", 0),
        ("x=", 2),
        ("x^=1", 2),
        ("x=y)", 3),
        ("2=x", 0),
        ("1x=x", 1),
        ("x=y=z", 3),
        ("1=1 1", 4),
        ("x^²=1", 2),
    ],
)
def test_syntax_errors(text, offset):
    with pytest.raises(LawSyntaxError) as exc:
        parse_law(text)
    assert exc.value.offset == offset


@pytest.mark.parametrize("text", ["", "   ", "\n"])
def test_empty_input(text):
    with pytest.raises(EmptyInput):
        parse_law(text)


def test_law_without_variables_must_be_identity():
    assert parse_law("1=1").variables == ()
    with pytest.raises(LawSyntaxError):
        parse_law("(1)^2=1")


def test_printer_separates_adjacent_names():
    assert format_word(Word((Var("x"), Var("y")))) == "x y"
    assert format_word(Word((Var("x", 2), Var("y")))) == "x^2 y"
    assert format_word(Word((Paren(Word((Var("x"), Var("y"))), 3),))) == "(x y)^3"
    assert format_law(Law(Word(), Word())) == "1=1"


def _law_corpus():
    shapes = [
        "[x^{a},y^{b}]=1",
        "(x y)^{a}=x^{a} y^{a}",
        "[[x,y]^{a},z]=1",
        "x^{a} y^{b}=y^{b} x^{a}",
        "[x,y^{a}]^{b}=[x^{b},y]",
        "(x^{a} [y,z])^{b}=1",
    ]
    exponents = [-2, 1, 3, 12]
    return [s.format(a=a, b=b) for s in shapes for a, b in itertools.product(exponents, repeat=2)]


def test_print_parse_print_is_stable_on_corpus():
    corpus = _law_corpus()
    assert len(set(corpus)) >= 50
    for text in corpus:
        printed = format_law(parse_law(text))
        assert format_law(parse_law(printed)) == printed
        assert parse_law(printed) == parse_law(text)


names = st.sampled_from(["x", "y", "z", "g1", "ab"])
exponents = st.integers(-6, 6)
words = st.deferred(
    lambda: st.one_of(
        st.just(Word()),
        st.lists(factors, min_size=1, max_size=3).map(lambda fs: Word(tuple(fs))),
    )
)
factors = st.deferred(
    lambda: st.one_of(
        st.builds(Var, names, exponents),
        st.builds(Commutator, words, words, exponents),
        st.builds(Paren, words, exponents),
    )
)


@settings(max_examples=300)
@given(words)
def test_parse_inverts_format(word):
    assert parse_word(format_word(word)) == word
