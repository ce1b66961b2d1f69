"""Defect sequences, membership, spectral radius, and the vN gap."""

import numpy as np
import pytest

from ncdomain.cp_maps import (
    OperatorTuple,
    agler_consistency,
    apply_phi,
    defect_sequence,
    membership,
    monomial_product,
    purity_diagnostics,
    sample_member,
    sample_nilpotent_member,
    spectral_radius_estimate,
    von_neumann_gap,
)
from ncdomain.series import PositiveRegularFunction, unit_ball_symbol


def test_operator_tuple_normalizes_scalars():
    t = OperatorTuple([np.array(0.5), np.array([[1.0]])])
    assert t.n == 2
    assert t.dim == 1
    assert t.mats[0].shape == (1, 1)


def test_operator_tuple_rejects_mixed_dims():
    with pytest.raises(ValueError):
        OperatorTuple([np.eye(2), np.eye(3)])


def test_monomial_product_order():
    a = np.array([[0.0, 1.0], [0.0, 0.0]])
    b = np.array([[1.0, 0.0], [0.0, 2.0]])
    t = OperatorTuple([a, b])
    assert np.allclose(monomial_product(t, "12"), a @ b)
    assert np.allclose(monomial_product(t, "21"), b @ a)
    assert np.allclose(monomial_product(t, ""), np.eye(2))


def test_defect_sequence_scalar_example():
    # f = Z, m = 2 at X = 0.5: deltas 1, 0.75, 0.5625
    f = unit_ball_symbol(1)
    seq = defect_sequence(f, 2, [np.array([[0.5]])])
    values = [d[0, 0].real for d in seq.deltas]
    assert values == pytest.approx([1.0, 0.75, 0.5625])
    assert seq.min_eigenvalues == pytest.approx([0.75, 0.5625])


def test_membership_inside_and_outside():
    f = unit_ball_symbol(1)
    inside = membership(f, 1, [np.array([[0.5]])])
    assert inside.member
    assert inside.row_norm == pytest.approx(0.25)
    outside = membership(f, 1, [np.array([[1.2]])])
    assert not outside.member
    assert outside.min_eigenvalues[0] == pytest.approx(-0.44)
    assert not outside.bound_ok


def test_membership_row_bound_scaling():
    # small linear coefficients stretch the admissible row norm
    f = PositiveRegularFunction(1, {"1": 0.25})
    verdict = membership(f, 1, [np.array([[1.5]])])
    assert verdict.member
    assert verdict.row_norm_bound == pytest.approx(4.0)


def test_apply_phi_shape_checks():
    f = unit_ball_symbol(2)
    t = [np.eye(2), np.eye(2)]
    with pytest.raises(ValueError):
        apply_phi(f, [np.eye(2)], np.eye(2))
    with pytest.raises(ValueError):
        apply_phi(f, t, np.eye(3))


def test_spectral_radius_scalar():
    f = unit_ball_symbol(1)
    est = spectral_radius_estimate(f, [np.array([[0.5]])], kmax=8)
    assert est.final == pytest.approx(0.5)
    assert not est.overflowed


def test_spectral_radius_ignores_zero_component():
    f = unit_ball_symbol(2)
    t = [np.array([[0.7]]), np.array([[0.0]])]
    est = spectral_radius_estimate(f, t, kmax=10)
    assert est.final == pytest.approx(0.7)


def test_spectral_radius_scale_covariance_linear_symbol():
    f = PositiveRegularFunction(2, {"1": 1.0, "2": 1.0})
    rng = np.random.default_rng(11)
    t = [rng.standard_normal((3, 3)) for _ in range(2)]
    base = spectral_radius_estimate(f, t, kmax=6)
    scaled = spectral_radius_estimate(f, [0.5 * x for x in t], kmax=6)
    for a, b in zip(base.values, scaled.values):
        assert b == pytest.approx(0.5 * a)


def test_spectral_radius_nilpotent_hits_zero():
    f = unit_ball_symbol(1)
    t = [np.array([[0.0, 1.0], [0.0, 0.0]])]
    est = spectral_radius_estimate(f, t, kmax=10)
    assert est.values[-1] == 0.0


def test_purity_diagnostics_member_decays():
    f = unit_ball_symbol(1)
    diag = purity_diagnostics(f, [np.array([[0.5]])], kmax=6)
    assert diag.monotone
    assert diag.norms[-1] < diag.norms[0]
    assert diag.defect_rank == 1


def test_agler_consistency_random_tuple():
    rng = np.random.default_rng(2)
    t = [
        (rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))) / 4.0
        for _ in range(2)
    ]
    for m in (1, 2, 3):
        assert agler_consistency(m, t) < 1e-13


def test_von_neumann_scalar_example():
    # H = Z at X = 0.5: |X| = 0.5 against the shift norm 1
    f = unit_ball_symbol(1)
    gap = von_neumann_gap(f, 1, [np.array([[0.5]])], [((1,), (), 1.0)], N=4)
    assert gap.lhs == pytest.approx(0.5)
    assert gap.rhs == pytest.approx(1.0)


def test_von_neumann_rejects_non_member():
    f = unit_ball_symbol(1)
    with pytest.raises(ValueError, match="member"):
        von_neumann_gap(f, 1, [np.array([[1.5]])], [((1,), (), 1.0)], N=3)


def test_von_neumann_random_members():
    f = PositiveRegularFunction(2, {"1": 1.0, "2": 0.5, "12": 0.25})
    rng = np.random.default_rng(7)
    for _ in range(5):
        x = sample_member(f, 2, 3, rng)
        terms = [
            ((1,), (2,), np.array([[1.0, 0.5], [0.0, 1.0]])),
            ((), (1, 2), np.array([[0.0, 1.0], [1.0, 0.0]])),
        ]
        gap = von_neumann_gap(f, 2, x, terms, N=5)
        assert gap.lhs <= gap.rhs + 1e-9


def test_sample_member_is_member():
    f = PositiveRegularFunction(2, {"1": 0.5, "2": 1.0, "21": 0.75})
    rng = np.random.default_rng(3)
    x = sample_member(f, 2, 4, rng)
    assert membership(f, 2, x).member


def test_sample_nilpotent_member_structure():
    f = unit_ball_symbol(2)
    rng = np.random.default_rng(4)
    x = sample_nilpotent_member(f, 1, 4, rng)
    assert membership(f, 1, x).member
    for mat in x.mats:
        assert np.allclose(np.tril(mat), 0.0)
    # strictly upper triangular 4x4 products of length 4 vanish
    word = (1, 2, 1, 2)
    assert np.allclose(monomial_product(x, word), 0.0)
