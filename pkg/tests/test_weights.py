"""Weight tables: direct factorization sums against the series oracle."""

import numpy as np
import pytest

from ncdomain.series import PositiveRegularFunction, unit_ball_symbol
from ncdomain.weights import (
    binomial_constant,
    weights_direct,
    weights_oracle,
)
from ncdomain.words import enumerate_words


def test_binomial_constants():
    assert binomial_constant(0, 3) == 1
    assert binomial_constant(2, 1) == 1
    assert binomial_constant(2, 2) == 3
    assert binomial_constant(3, 2) == 4
    assert binomial_constant(2, 3) == 6


def test_single_variable_order_two_weights():
    # f = Z, m = 2: b_k = k + 1
    f = unit_ball_symbol(1)
    table = weights_direct(f, 2, 5)
    for k in range(6):
        assert table.value((1,) * k) == pytest.approx(float(k + 1), abs=1e-14)


def test_omega_symbol_weight():
    # f = Z1 + Z2 + Z1 Z2, m = 1: the word 12 factors twice
    w = PositiveRegularFunction(2, {"1": 1.0, "2": 1.0, "12": 1.0})
    table = weights_direct(w, 1, 2)
    assert table.value("12") == pytest.approx(2.0)
    assert table.value("21") == pytest.approx(1.0)
    assert table.value("1") == pytest.approx(1.0)
    assert table.value("") == pytest.approx(1.0)


def test_weights_strictly_positive():
    f = PositiveRegularFunction(2, {"1": 0.25, "2": 0.5, "22": 0.75})
    table = weights_direct(f, 3, 4)
    assert all(v > 0 for _, v in table.items())


def test_weight_chain_inequality():
    # prepending a letter picks up at least its linear coefficient
    f = PositiveRegularFunction(2, {"1": 0.5, "2": 0.25, "12": 1.0})
    table = weights_direct(f, 2, 4)
    for word, b in table.items():
        if len(word) == 4:
            continue
        for i in (1, 2):
            assert table.value((i,) + word) >= f.coefficient((i,)) * b - 1e-14


def test_direct_matches_oracle():
    f = PositiveRegularFunction(2, {"1": 0.5, "2": 1.5, "21": 0.125, "112": 1.0})
    for m in (1, 2, 3):
        direct = weights_direct(f, m, 4)
        oracle = weights_oracle(f, m, 4)
        for word, value in direct.items():
            assert value == pytest.approx(oracle.value(word), rel=1e-13)


def test_weights_do_not_depend_on_truncation():
    f = PositiveRegularFunction(1, {"1": 1.0, "11": 0.5})
    shallow = weights_direct(f, 2, 3)
    deep = weights_direct(f, 2, 6)
    for word, value in shallow.items():
        assert deep.value(word) == value


def test_weights_grow_with_order():
    # more binomial mass at higher m
    f = unit_ball_symbol(2)
    one = weights_direct(f, 1, 3)
    two = weights_direct(f, 2, 3)
    for word, value in one.items():
        if len(word) == 0:
            assert two.value(word) == value
        else:
            assert two.value(word) > value


def test_aligned_values_follow_index_order():
    f = unit_ball_symbol(2)
    table = weights_direct(f, 1, 2)
    index = enumerate_words(2, 2)
    aligned = table.aligned_values(index)
    assert len(aligned) == index.dim
    assert aligned[0] == table.value("")
    assert aligned[index.index_of("12")] == table.value("12")


def test_getitem_accepts_strings():
    f = unit_ball_symbol(1)
    table = weights_direct(f, 2, 3)
    assert table["11"] == table.value((1, 1))
    with pytest.raises(KeyError):
        _ = table["1111"]


def test_unknown_interior_weight_raises():
    f = unit_ball_symbol(2)
    table = weights_direct(f, 1, 2)
    with pytest.raises(KeyError):
        table.value("121")
