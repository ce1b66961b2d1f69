"""Word arithmetic and the graded-lexicographic index."""

import pytest
from hypothesis import given, strategies as st

from ncdomain.words import (
    DimensionCapError,
    Word,
    WordIndex,
    concat,
    enumerate_words,
    factorizations,
    parse_word,
    reverse,
    word_count,
    word_text,
)


def test_parse_word_roundtrip():
    w = parse_word("121", 2)
    assert w.letters == (1, 2, 1)
    assert word_text(w) == "121"
    assert len(w) == 3


def test_parse_unit_word():
    w = parse_word("", 3)
    assert w.letters == ()
    assert w.is_unit
    assert word_text(w) == ""


def test_parse_word_rejects_bad_letters():
    with pytest.raises(ValueError):
        parse_word("13", 2)
    with pytest.raises(ValueError):
        parse_word("0", 2)


def test_concat_and_reverse():
    u = parse_word("12", 2)
    v = parse_word("21", 2)
    assert concat(u, v).letters == (1, 2, 2, 1)
    assert reverse(concat(u, v)).letters == (1, 2, 2, 1)[::-1]
    assert reverse(parse_word("", 2)).is_unit


def test_word_multiplication_operator():
    u = Word((1,), 2)
    v = Word((2,), 2)
    assert (u * v).letters == (1, 2)


def test_factorizations_counts_and_content():
    w = parse_word("112", 2)
    two = factorizations(w, 2)
    # C(2, 1) = 2 cut positions
    assert len(two) == 2
    pieces = {tuple(word_text(p) for p in fac) for fac in two}
    assert pieces == {("1", "12"), ("11", "2")}
    assert len(factorizations(w, 1)) == 1
    assert len(factorizations(w, 3)) == 1
    with pytest.raises(ValueError):
        factorizations(w, 4)


def test_word_count():
    assert word_count(1, 4) == 5
    assert word_count(2, 3) == 15
    assert word_count(3, 2) == 13


def test_index_graded_lex_order():
    index = enumerate_words(2, 2)
    texts = [word_text(w) for w in index]
    assert texts == ["", "1", "2", "11", "12", "21", "22"]


def test_index_bijection():
    index = enumerate_words(3, 3)
    assert index.dim == word_count(3, 3)
    for i in range(index.dim):
        assert index.index_of(index.word_of(i)) == i
    assert index.index_of("") == 0
    assert index.index_of("31") == index.index_of(parse_word("31", 3))


def test_index_accepts_string_and_tuple_keys():
    index = enumerate_words(2, 2)
    assert index.index_of("12") == index.index_of((1, 2))


def test_grade_blocks_are_contiguous():
    index = enumerate_words(2, 3)
    seen = []
    for k in range(4):
        block = index.grade(k)
        assert all(len(index.letters_of(i)) == k for i in block)
        seen.extend(block)
    assert seen == list(range(index.dim))


def test_index_prefix_property():
    small = enumerate_words(2, 2)
    large = enumerate_words(2, 4)
    assert large.words[: small.dim] == small.words


def test_dimension_cap_enforced():
    with pytest.raises(DimensionCapError):
        enumerate_words(2, 10, cap=100)
    # the error is a ValueError, so callers can catch broadly
    assert issubclass(DimensionCapError, ValueError)


@given(st.integers(1, 3), st.lists(st.integers(1, 3), max_size=5))
def test_index_of_word_of_inverse(n, letters):
    letters = tuple(min(x, n) for x in letters)
    index = enumerate_words(n, 5)
    i = index.index_of(letters)
    assert index.letters_of(i) == letters
