"""Free series arithmetic, composition, evaluation, and symbols."""

import numpy as np
import pytest

from ncdomain.series import (
    CompositionError,
    FreeSeries,
    PositiveRegularFunction,
    RegularityError,
    ShapeMismatchError,
    compose,
    convergence_profile,
    evaluate,
    multiply,
    rescale_symbol,
    reverse_series,
    unit_ball_symbol,
)
from ncdomain.weights import weights_direct


def test_series_normalizes_keys_and_prunes_zeros():
    s = FreeSeries(2, 2, {"1": 1.0, (2,): 0.0, "12": 2.0})
    assert s.support() == [(1,), (1, 2)]
    assert s.coeff("2").shape == (1, 1)
    assert s.coeff("2")[0, 0] == 0.0


def test_series_rejects_words_beyond_degree():
    with pytest.raises(ValueError):
        FreeSeries(1, 0, {"1": 1.0})


def test_series_addition_and_scaling():
    s = FreeSeries(1, 2, {"1": 1.0})
    t = FreeSeries(1, 2, {"1": 2.0, "11": 1.0})
    total = s + t
    assert total.coeff("1")[0, 0] == 3.0
    assert (2.0 * s).coeff("1")[0, 0] == 2.0
    assert (s - s).is_zero


def test_series_shape_mismatch():
    s = FreeSeries(1, 1, {"1": 1.0})
    t = FreeSeries(1, 1, {"1": np.eye(2)}, coeff_dim=2)
    with pytest.raises(ShapeMismatchError):
        _ = s + t


def test_multiply_polynomials():
    # (1 + z)(1 - z) = 1 - z^2
    one_plus = FreeSeries(1, 2, {"": 1.0, "1": 1.0})
    one_minus = FreeSeries(1, 2, {"": 1.0, "1": -1.0})
    prod = multiply(one_plus, one_minus)
    assert prod.coeff("")[0, 0] == 1.0
    assert prod.coeff("1")[0, 0] == 0.0
    assert prod.coeff("11")[0, 0] == -1.0


def test_multiply_respects_word_order():
    a = FreeSeries(2, 2, {"1": 1.0})
    b = FreeSeries(2, 2, {"2": 1.0})
    assert multiply(a, b).support() == [(1, 2)]
    assert multiply(b, a).support() == [(2, 1)]


def test_truncated_drops_high_words():
    s = FreeSeries(1, 3, {"1": 1.0, "111": 5.0})
    t = s.truncated(2)
    assert t.degree == 2
    assert t.support() == [(1,)]


def test_truncated_can_raise_declared_degree():
    s = FreeSeries(1, 1, {"1": 1.0})
    assert s.truncated(4).degree == 4


def test_compose_linear_rescale():
    outer = FreeSeries(1, 2, {"11": 1.0})
    inner = FreeSeries(1, 2, {"1": 2.0})
    comp = compose(outer, [inner])
    assert comp.coeff("11")[0, 0] == pytest.approx(4.0)


def test_compose_truncates_at_min_inner_degree():
    outer = FreeSeries(1, 2, {"1": 1.0, "11": 1.0})
    inner = FreeSeries(1, 1, {"1": 1.0})
    comp = compose(outer, [inner])
    assert comp.degree == 1
    assert comp.support() == [(1,)]


def test_compose_requires_zero_constant_inner():
    outer = FreeSeries(1, 1, {"1": 1.0})
    inner = FreeSeries(1, 1, {"": 1.0, "1": 1.0})
    with pytest.raises(CompositionError):
        compose(outer, [inner])


def test_compose_mixes_generators():
    # F(w1, w2) = w1 w2 with w1 = Z2, w2 = Z1 gives Z2 Z1
    outer = FreeSeries(2, 2, {"12": 1.0})
    inner = [FreeSeries(2, 2, {"2": 1.0}), FreeSeries(2, 2, {"1": 1.0})]
    comp = compose(outer, inner)
    assert comp.support() == [(2, 1)]


def test_evaluate_matches_horner_by_hand():
    s = FreeSeries(2, 2, {"": 1.0, "1": 2.0, "21": 1.0})
    x1 = np.array([[0.0, 1.0], [0.0, 0.0]])
    x2 = np.array([[0.0, 0.0], [1.0, 0.0]])
    got = evaluate(s, [x1, x2])
    want = np.eye(2) + 2.0 * x1 + x2 @ x1
    assert np.allclose(got, want)


def test_evaluate_matrix_coefficients_use_kron():
    s = FreeSeries(1, 1, {"1": np.array([[0.0, 1.0], [0.0, 0.0]])}, coeff_dim=2)
    x = np.array([[3.0]])
    got = evaluate(s, [x])
    assert got.shape == (2, 2)
    assert got[0, 1] == pytest.approx(3.0)


def test_symbol_validation_messages():
    with pytest.raises(RegularityError, match="constant term must vanish"):
        PositiveRegularFunction(1, {"": 0.1, "1": 1.0})
    with pytest.raises(RegularityError, match="strictly positive"):
        PositiveRegularFunction(2, {"1": 1.0})
    with pytest.raises(RegularityError, match="nonnegative"):
        PositiveRegularFunction(1, {"1": 1.0, "11": -0.5})
    with pytest.raises(RegularityError, match="real"):
        PositiveRegularFunction(1, {"1": 1.0 + 1.0j})


def test_symbol_accepts_omega_example():
    w = PositiveRegularFunction(2, {"1": 1.0, "2": 1.0, "12": 1.0})
    assert w.coefficient("12") == 1.0
    assert w.min_linear_coefficient == 1.0
    assert w.degree == 2


def test_unit_ball_symbol():
    f = unit_ball_symbol(3)
    assert f.support() == [(1,), (2,), (3,)]
    assert all(f.coefficient((i,)) == 1.0 for i in range(1, 4))


def test_reverse_series_reverses_words():
    f = PositiveRegularFunction(2, {"1": 1.0, "2": 2.0, "12": 3.0})
    rev = reverse_series(f)
    assert rev.coefficient("21") == 3.0
    assert rev.coefficient("12") == 0.0
    assert rev.coefficient("2") == 2.0


def test_rescale_symbol_example():
    f = PositiveRegularFunction(2, {"1": 1.0, "2": 1.0, "12": 1.0})
    g = rescale_symbol(f, [2.0, 3.0])
    assert g.coefficient("1") == pytest.approx(1.0 / 4.0)
    assert g.coefficient("2") == pytest.approx(1.0 / 9.0)
    assert g.coefficient("12") == pytest.approx(1.0 / 36.0)


def test_convergence_profile_geometric():
    # coefficients 2^k over the free disc weights: every indicator is 2
    f = unit_ball_symbol(1)
    table = weights_direct(f, 1, 4)
    s = FreeSeries(1, 4, {(1,) * k: 2.0 ** k for k in range(1, 5)})
    prof = convergence_profile(s, table)
    assert all(abs(v - 2.0) < 1e-12 for v in prof.per_degree)
    assert prof.tail_estimate == pytest.approx(2.0)


def test_convergence_profile_needs_deep_table():
    f = unit_ball_symbol(1)
    table = weights_direct(f, 1, 2)
    s = FreeSeries(1, 4, {"1111": 1.0})
    with pytest.raises(ValueError):
        convergence_profile(s, table)
