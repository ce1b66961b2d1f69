"""Berezin transform: kernel form against resolvent form.

The two implementations share nothing past the weight table: one builds
the kernel column by column from monomial adjoints, the other solves a
block linear system against right-multiplication operators.
"""

import numpy as np
import pytest

from ncdomain.berezin import (
    berezin_kernel,
    berezin_transform_kernel,
    berezin_transform_resolvent,
    radial_berezin,
    reversed_model,
    right_creation_operators,
)
from ncdomain.cp_maps import membership, monomial_product, sample_nilpotent_member
from ncdomain.fock_model import build_model, model_monomial
from ncdomain.series import FreeSeries, PositiveRegularFunction, unit_ball_symbol


def test_kernel_reproduces_identity_on_vacuum_state():
    # at X = 0 only the vacuum block survives and the transform is g[0,0]
    f = unit_ball_symbol(2)
    k = berezin_kernel(f, 1, [np.zeros((2, 2)), np.zeros((2, 2))], 3)
    model = build_model(f, 1, 3)
    g = np.diag(np.arange(model.dim, dtype=float))
    out = k.transform(g)
    assert np.allclose(out, g[0, 0] * np.eye(2))


def test_gram_equals_transform_of_identity():
    f = unit_ball_symbol(1)
    k = berezin_kernel(f, 2, [np.array([[0.4]])], 6)
    dim = build_model(f, 2, 6).dim
    assert np.allclose(k.gram(), k.transform(np.eye(dim)))


def test_transform_of_identity_contracts_at_members():
    f = PositiveRegularFunction(2, {"1": 1.0, "2": 1.0, "12": 1.0})
    rng = np.random.default_rng(8)
    x = [0.1 * rng.standard_normal((3, 3)) for _ in range(2)]
    assert membership(f, 2, x).member
    dim = build_model(f, 2, 4).dim
    out = berezin_transform_kernel(f, 2, x, np.eye(dim), 4)
    eigs = np.linalg.eigvalsh((out + out.conj().T) / 2.0)
    assert eigs.min() > -1e-12
    assert eigs.max() <= 1.0 + 1e-12


def test_moment_reproduction_nilpotent_jordan_cell():
    # T strictly upper: words up to N - order + 1 reproduce exactly
    f = unit_ball_symbol(1)
    t = [np.array([[0.0, 0.8], [0.0, 0.0]])]
    N = 5
    model = build_model(f, 1, N)
    kernel = berezin_kernel(f, 1, t, N)
    for alpha, beta in [((1,), (1,)), ((1,), ()), ((), ()), ((1,) * 4, (1,))]:
        g = model_monomial(model, alpha) @ model_monomial(model, beta).conj().T
        got = kernel.transform(g)
        want = monomial_product(t, alpha) @ monomial_product(t, beta).conj().T
        assert np.max(np.abs(got - want)) < 1e-12


def test_moment_reproduction_random_nilpotent():
    f = PositiveRegularFunction(2, {"1": 0.5, "2": 0.5, "21": 0.25})
    rng = np.random.default_rng(12)
    t = sample_nilpotent_member(f, 2, 3, rng)
    N = 6
    model = build_model(f, 2, N)
    kernel = berezin_kernel(f, 2, t, N)
    budget = N - 3 + 1
    for alpha, beta in [((1, 2), (2,)), ((2, 1, 1), (1, 2)), ((), (1,) * budget)]:
        g = model_monomial(model, alpha) @ model_monomial(model, beta).conj().T
        got = kernel.transform(g)
        want = monomial_product(t, alpha) @ monomial_product(t, beta).conj().T
        assert np.max(np.abs(got - want)) < 1e-10


def test_szego_family_classical_values():
    # n = 1, f = Z, m = 1 at lambda: the classical disc formulas hold
    # up to the geometric tail |lambda|^(2N + 2)
    f = unit_ball_symbol(1)
    N = 30
    model = build_model(f, 1, N)
    s = model.creation(1)
    for lam in (0.8, -0.8, 0.5j, 0.6 * np.exp(1j)):
        kernel = berezin_kernel(f, 1, [np.array([[lam]])], N)
        tail = abs(lam) ** (2 * N + 2)
        got_i = kernel.transform(np.eye(model.dim))[0, 0]
        assert abs(got_i - 1.0) <= tail + 1e-12
        got_s = kernel.transform(s @ s.conj().T)[0, 0]
        assert abs(got_s - abs(lam) ** 2) <= tail + 1e-12


def test_forms_agree_on_random_tuples():
    f = PositiveRegularFunction(2, {"1": 1.0, "2": 0.5, "12": 0.25})
    rng = np.random.default_rng(21)
    dim = build_model(f, 2, 4).dim
    for _ in range(3):
        x = [
            0.12 * (rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3)))
            for _ in range(2)
        ]
        h = rng.standard_normal((dim, dim))
        g = h + h.T
        kv = berezin_transform_kernel(f, 2, x, g, 4)
        rv = berezin_transform_resolvent(f, 2, x, g, 4)
        assert np.max(np.abs(kv - rv)) < 1e-10


def test_forms_agree_single_variable_deep():
    f = unit_ball_symbol(1)
    x = [np.array([[0.55, 0.3], [0.0, -0.2]])]
    dim = build_model(f, 1, 8).dim
    g = np.eye(dim)
    kv = berezin_transform_kernel(f, 1, x, g, 8)
    rv, diag = berezin_transform_resolvent(f, 1, x, g, 8, with_diagnostics=True)
    assert np.max(np.abs(kv - rv)) < 1e-10
    assert diag.radius_estimate < 1.0
    assert diag.condition_estimate >= 1.0


def test_resolvent_rejects_large_radius():
    f = unit_ball_symbol(1)
    with pytest.raises(ValueError, match="radius"):
        berezin_transform_resolvent(f, 1, [np.array([[1.2]])], np.eye(4), 3)


def test_kernel_rejects_non_psd_defect():
    # outside the domain the defect has a negative eigenvalue
    f = unit_ball_symbol(1)
    with pytest.raises(ValueError):
        berezin_kernel(f, 1, [np.array([[1.2]])], 3)


def test_right_creation_commutes_with_left():
    f = PositiveRegularFunction(2, {"1": 1.0, "2": 0.5, "21": 0.125})
    model = build_model(f, 1, 4)
    rights = right_creation_operators(f, 1, 4)
    for i in (1, 2):
        for j in (1, 2):
            left = model.creation(i)
            right = rights[j - 1]
            assert np.max(np.abs(left @ right - right @ left)) < 1e-12


def test_radial_berezin_scalar_series():
    f = unit_ball_symbol(1)
    s = FreeSeries(1, 3, {"": 1.0, "1": 2.0, "111": 1.0})
    t = [np.array([[0.5]])]
    values = radial_berezin(f, 1, t, s, [0.0, 0.5, 1.0])
    assert values[0][0, 0] == pytest.approx(1.0)
    assert values[1][0, 0] == pytest.approx(1.0 + 2.0 * 0.25 + 0.25 ** 3)
    assert values[2][0, 0] == pytest.approx(1.0 + 2.0 * 0.5 + 0.5 ** 3)


def test_radial_berezin_rejects_outsiders():
    f = unit_ball_symbol(1)
    s = FreeSeries(1, 1, {"1": 1.0})
    with pytest.raises(ValueError, match="member"):
        radial_berezin(f, 1, [np.array([[2.0]])], s, [0.5])
