import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.special import eval_jacobi, roots_jacobi

from fracspec import (
    JacobiParams,
    beta,
    deriv_G,
    eval_G,
    eval_G_table,
    eval_Ghat_table,
    gauss_jacobi,
    norm_G,
    norm_ratio_sq,
    weighted_deriv_identity_check,
)


def test_params_validate_exponents():
    JacobiParams(-0.99, 2.0)
    with pytest.raises(ValueError):
        JacobiParams(-1.0, 0.0)
    with pytest.raises(ValueError):
        JacobiParams(0.0, -1.3)


def test_eval_G_frozen_values():
    # reference values from an independent Jacobi evaluation
    assert eval_G((0, 0), 0, 0.7) == 1.0
    assert abs(eval_G((0.4, 0.7), 3, 0.3) - 0.6259995000000008) < 1e-13
    assert abs(eval_G((0.0, 0.0), 5, 0.62) - 0.33531056639999995) < 1e-13
    assert abs(eval_G((-0.35, -0.35), 4, 0.81) - (-0.2936621959566254)) < 1e-13
    assert abs(eval_G((0.75, 0.75), 2, 0.5) - (-0.6875)) < 1e-14


def test_eval_G_against_library_oracle():
    rng = np.random.default_rng(7)
    for _ in range(40):
        a = rng.uniform(-0.9, 2.9)
        b = rng.uniform(-0.9, 2.9)
        n = int(rng.integers(0, 40))
        x = rng.uniform(0.0, 1.0)
        want = float(eval_jacobi(n, a, b, 2.0 * x - 1.0))
        assert abs(eval_G((a, b), n, x) - want) <= 1e-10 * max(1.0, abs(want))


def test_eval_G_table_matches_scalar():
    xs = np.linspace(0.0, 1.0, 11)
    V = eval_G_table((0.3, 0.8), 6, xs)
    assert V.shape == (11, 7)
    for n in range(7):
        for x, v in zip(xs, V[:, n]):
            assert abs(v - eval_G((0.3, 0.8), n, x)) < 1e-13


def test_norm_G_frozen_and_symmetric():
    assert abs(norm_G((0.75, 0.75), 0) - 0.5041467300679373) < 1e-15
    assert abs(norm_G((0.65, 0.65), 0) - 0.5494815854747443) < 1e-15
    assert abs(norm_G((0.3, 0.8), 4) - 0.30727586563227394) < 1e-15
    for j in (0, 1, 5, 20):
        assert norm_G((0.3, 0.8), j) == pytest.approx(norm_G((0.8, 0.3), j), rel=1e-15)


def test_norm_G_matches_quadrature():
    for (a, b) in [(0.0, 0.0), (0.65, 0.65), (-0.25, 0.5)]:
        rule = gauss_jacobi((a, b), 24)
        V = eval_G_table((a, b), 8, rule.nodes)
        for j in range(9):
            quad = math.sqrt(float(rule.weights @ V[:, j] ** 2))
            assert abs(quad - norm_G((a, b), j)) <= 1e-12 * quad


def test_orthonormal_table():
    rule = gauss_jacobi((0.55, 0.95), 30)
    V = eval_Ghat_table((0.55, 0.95), 10, rule.nodes)
    G = (V * rule.weights[:, None]).T @ V
    assert np.max(np.abs(G - np.eye(11))) < 1e-12


def test_norm_ratio_sq():
    for alpha in (1.3, 1.5, 1.8):
        beta_ = alpha / 2.0
        for j in (0, 1, 7):
            want = norm_G((alpha - beta_, beta_), j) ** 2
            want /= norm_G((beta_ - 1.0, alpha - beta_ - 1.0), j + 1) ** 2
            got = norm_ratio_sq(alpha, beta_, j)
            assert abs(got - want) < 1e-13
            assert 0.5 <= got <= 1.0
    assert norm_ratio_sq(1.5, 0.75, 0) == pytest.approx(1.0 / 1.5)


def test_deriv_G_order_above_degree_is_zero():
    assert deriv_G((0.5, 0.5), 3, 4, 0.3) == 0.0
    assert deriv_G((0.5, 0.5), 0, 1, 0.3) == 0.0


def test_deriv_G_first_order_shifts_family():
    # d/dx G_n^{(a,b)} = (n+a+b+1) G_{n-1}^{(a+1,b+1)} on the unit interval
    for (a, b, n) in [(0.4, 0.6, 7), (0.0, 0.0, 3), (1.5, 0.2, 9)]:
        for x in (0.2, 0.5, 0.9):
            want = (n + a + b + 1) * eval_G((a + 1, b + 1), n - 1, x)
            assert abs(deriv_G((a, b), n, 1, x) - want) < 1e-11 * max(1, abs(want))


def test_deriv_G_finite_difference():
    h = 1e-6
    for (a, b, n, x) in [(0.4, 0.6, 7, 0.37), (1.2, 0.3, 5, 0.71)]:
        fd = (eval_G((a, b), n, x + h) - eval_G((a, b), n, x - h)) / (2 * h)
        assert abs(deriv_G((a, b), n, 1, x) - fd) < 1e-7 * max(1, abs(fd))
    h = 1e-4
    for (a, b, n, x) in [(0.4, 0.6, 7, 0.37), (0.8, 0.8, 6, 0.52)]:
        fd = (
            eval_G((a, b), n, x + h)
            - 2 * eval_G((a, b), n, x)
            + eval_G((a, b), n, x - h)
        ) / h**2
        assert abs(deriv_G((a, b), n, 2, x) - fd) < 1e-5 * max(1, abs(fd))


def test_weighted_derivative_identity():
    for (a, b, n, k) in [
        (0.5, 0.3, 5, 1),
        (0.5, 0.3, 5, 2),
        (1.2, 0.7, 8, 1),
        (0.35, 0.65, 6, 2),
        (0.75, 0.75, 4, 0),
    ]:
        for x in (0.2, 0.5, 0.8):
            assert weighted_deriv_identity_check((a, b), n, k, x) < 1e-6


def test_gauss_jacobi_single_point():
    # one-point rule sits at the weight's centroid (b+1)/(a+b+2)
    for (a, b) in [(0.0, 0.0), (0.5, 1.5), (-0.35, -0.35)]:
        rule = gauss_jacobi((a, b), 1)
        assert abs(rule.nodes[0] - (b + 1.0) / (a + b + 2.0)) < 1e-14
        assert abs(rule.weights[0] - beta(a + 1, b + 1)) < 1e-14
    rule = gauss_jacobi((0, 0), 1)
    assert abs(rule.nodes[0] - 0.5) < 1e-15 and abs(rule.weights[0] - 1.0) < 1e-15


def test_gauss_jacobi_weight_sum():
    for (a, b) in [(0.0, 0.0), (0.65, 0.65), (-0.35, -0.35), (2.5, 1.0), (3.0, 3.0)]:
        for n in (1, 2, 7, 32, 64):
            rule = gauss_jacobi((a, b), n)
            total = beta(a + 1, b + 1)
            assert abs(rule.weights.sum() - total) <= 1e-12 * total
            assert np.all(rule.weights > 0)
            assert np.all((rule.nodes > 0) & (rule.nodes < 1))
            assert np.all(np.diff(rule.nodes) > 0)


def test_gauss_jacobi_moment_exactness():
    for (a, b) in [(0.0, 0.0), (0.5, 0.5), (-0.35, -0.35), (0.65, 0.65)]:
        for n in (1, 3, 10, 20):
            rule = gauss_jacobi((a, b), n)
            for m in range(2 * n):
                want = beta(a + 1, b + m + 1)
                got = float(rule.weights @ rule.nodes**m)
                assert abs(got - want) <= 1e-10 * abs(want)


def test_gauss_jacobi_against_library_oracle():
    for (a, b) in [(0.0, 0.0), (0.65, 0.65), (-0.35, -0.35), (2.0, 0.5)]:
        for n in (2, 5, 20, 64, 128):
            rule = gauss_jacobi((a, b), n)
            t, w = roots_jacobi(n, a, b)
            assert np.max(np.abs(rule.nodes - (t + 1) / 2)) < 1e-13
            ref = w / 2 ** (a + b + 1)
            # edge weights at large n carry a few extra ulps of roundoff in
            # both implementations, so the pointwise tolerance is relaxed
            assert np.max(np.abs(rule.weights / ref - 1)) < 1e-9


def test_gauss_jacobi_contract_sizes():
    rule = gauss_jacobi((0.3, 0.3), 256)
    assert rule.nodes.size == 256
    with pytest.raises(ValueError):
        gauss_jacobi((0.0, 0.0), 0)


@settings(max_examples=60, deadline=None)
@given(
    st.floats(min_value=-0.9, max_value=3.0),
    st.floats(min_value=-0.9, max_value=3.0),
    st.integers(min_value=1, max_value=40),
)
def test_gauss_jacobi_property_weight_sum(a, b, n):
    rule = gauss_jacobi((a, b), n)
    total = beta(a + 1, b + 1)
    assert abs(rule.weights.sum() - total) <= 1e-11 * total
    assert np.all(rule.weights > 0)
