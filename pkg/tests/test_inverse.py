import math

import numpy as np
import pytest
from hypothesis import assume, given, strategies as st

from kmstoeplitz import (
    KmsParams,
    SingularBoundarySystem,
    ThParams,
    boundary_alpha,
    build_c,
    build_l,
    build_m,
    build_r,
    c_inverse,
    l_inverse,
    m_inverse,
    r_inverse,
    solve_boundary_x,
    t_matrix,
)
from kmstoeplitz.oracle import dense_inverse

from .conftest import maxabs


def test_c_inverse_two_by_two(ln2):
    inv = c_inverse(KmsParams(ln2, 1))
    np.testing.assert_allclose(inv.diag, [4 / 3, 4 / 3], rtol=1e-14)
    np.testing.assert_allclose(inv.offdiag, [-2 / 3], rtol=1e-14)
    assert maxabs(inv.dense() @ [[1, 0.5], [0.5, 1]] - np.eye(2)) <= 1e-15


def test_c_inverse_entries_kappa3():
    inv = c_inverse(KmsParams(3.0, 5))
    assert inv.diag[1:-1] == pytest.approx(np.full(4, 1 / math.tanh(3.0)), rel=1e-15)
    assert inv.diag[0] == inv.diag[-1] == pytest.approx(math.exp(3) / (2 * math.sinh(3)), rel=1e-15)
    assert inv.offdiag == pytest.approx(np.full(5, -1 / (2 * math.sinh(3))), rel=1e-15)


def test_c_inverse_kappa1_n10():
    p = KmsParams(1.0, 10)
    assert maxabs(build_c(p) @ c_inverse(p).dense() - np.eye(11)) <= 1e-12
    assert maxabs(c_inverse(p).dense() - dense_inverse(build_c(p))) <= 1e-12


def test_c_inverse_single_site():
    assert c_inverse(KmsParams(2.0, 0)).dense().tolist() == [[1.0]]


def test_matvec_matches_dense():
    inv = c_inverse(KmsParams(0.4, 6))
    x = np.linspace(-1, 2, 7)
    np.testing.assert_allclose(inv.matvec(x), inv.dense() @ x, rtol=1e-14)


def test_r_inverse(ln2):
    np.testing.assert_allclose(r_inverse(KmsParams(ln2, 1)).dense(), [[1, 0], [-0.5, 1]], rtol=1e-15)
    p = KmsParams(2.0, 6)
    assert maxabs(r_inverse(p).dense() - dense_inverse(build_r(p))) <= 1e-12


def test_t_matrix_scaling():
    t = t_matrix(ThParams(3.0, 1.0, 0.0, 1.0, 4))
    c = c_inverse(KmsParams(1.0, 4))
    np.testing.assert_allclose(t.diag, c.diag / 2, rtol=1e-15)
    np.testing.assert_allclose(t.offdiag, c.offdiag / 2, rtol=1e-15)
    assert np.array_equal(t_matrix(ThParams(1.0, 0.0, 0.5, 1.0, 4)).diag, c.diag)


def test_alpha_rows():
    t = ThParams(2.0, 0.1, 0.3, 1.0, 3)
    resid = t_matrix(t).dense() @ build_m(t) - np.eye(4)
    alpha = boundary_alpha(t)
    assert maxabs(resid[0] - alpha) <= 1e-12
    assert maxabs(resid[-1] - alpha[::-1]) <= 1e-12
    assert maxabs(resid[1:-1]) <= 1e-12


def test_alpha_vanishes_without_hankel():
    assert np.all(boundary_alpha(ThParams(1.5, 0.0, 0.0, 0.7, 5)) == 0.0)
    assert solve_boundary_x(ThParams(1.5, 0.0, 0.0, 0.7, 5)) == (0.0, 0.0)


def test_corner_residual():
    t = ThParams(2.0, 0.1, 0.3, 1.0, 3)
    x0, xn = solve_boundary_x(t)
    x = np.array([x0, 0, 0, xn])
    assert maxabs(build_m(t) @ x + boundary_alpha(t)) <= 1e-12


def test_closed_form_corners():
    # closed forms for c = 0; the x0 expression needs an overall sign flip
    a, b, c, k, n = 1.0, 0.2, 0.0, 0.8, 5
    e2 = math.exp(2 * k * n)
    x0_closed = (a * c - b * c + c * c - b * b * e2) / (
        (a - b) * ((a + c) ** 2 - (c * math.exp(-n * k) + b * math.exp(n * k)) ** 2)
    )
    xn_closed = (c * c * math.exp(-n * k) - a * b * math.exp(n * k)) / (
        (a - b) * (a * a + 2 * (a - b) * c - b * b * e2 + c * c * (1 - math.exp(-2 * n * k)))
    )
    x0, xn = solve_boundary_x(ThParams(a, b, c, k, n))
    assert xn == pytest.approx(xn_closed, rel=1e-13)
    assert x0 == pytest.approx(-x0_closed, rel=1e-13)
    assert x0 == pytest.approx(-1.2605718687941414, rel=1e-13)
    assert xn == pytest.approx(0.11544089571065148, rel=1e-13)


def test_m_inverse_examples():
    t = ThParams(2.0, 0.1, 0.3, 1.0, 6)
    m = build_m(t)
    inv = m_inverse(t).dense()
    assert maxabs(m @ inv - np.eye(7)) <= 1e-10
    assert maxabs(inv - dense_inverse(m)) <= 1e-9
    np.testing.assert_allclose(inv, inv.T, atol=1e-15)
    np.testing.assert_allclose(inv, inv[::-1, ::-1].T, atol=1e-15)


def test_m_inverse_reduces_to_c_inverse():
    t = ThParams(1.0, 0.0, 0.0, 0.9, 7)
    assert np.array_equal(m_inverse(t).dense(), c_inverse(t.kms).dense())


def test_m_inverse_single_site():
    inv = m_inverse(ThParams(2.0, 0.1, 0.3, 1.0, 0))
    assert inv.dense()[0, 0] == pytest.approx(1 / 2.7, rel=1e-15)


def test_singular_corner_system():
    # a + c == b e^{Nk} + c e^{-Nk} makes the 2x2 corner system singular
    k, n, b, c = 1.0, 2, 0.1, 0.0
    a = b * math.exp(n * k)
    with pytest.raises(SingularBoundarySystem):
        solve_boundary_x(ThParams(a, b, c, k, n))


@given(st.floats(0.05, 5.0), st.integers(0, 200))
def test_c_inverse_identity(kappa, n):
    p = KmsParams(kappa, n)
    assert maxabs(c_inverse(p).dense() @ build_c(p) - np.eye(p.order)) <= 1e-10


@given(st.floats(0.05, 5.0), st.integers(0, 60))
def test_triangular_inverses(kappa, n):
    p = KmsParams(kappa, n)
    eye = np.eye(p.order)
    assert maxabs(r_inverse(p).dense() @ build_r(p) - eye) <= 1e-14
    assert maxabs(l_inverse(p).dense() @ build_l(p) - eye) <= 1e-14


th_params = st.builds(
    ThParams,
    a=st.floats(0.5, 3.0),
    b=st.floats(-0.3, 0.3),
    c=st.floats(-0.5, 0.5),
    kappa=st.floats(0.2, 1.5),
    n=st.integers(1, 8),
)


@given(th_params)
def test_boundary_rows_and_inverse(t):
    assume(abs(t.a - t.b) >= 0.1)
    m = build_m(t)
    diag, big_b = t.a + t.c, t.b * math.exp(t.n * t.kappa) + t.c * math.exp(-t.n * t.kappa)
    assume(abs(diag - big_b) > 0.05 * (abs(diag) + abs(big_b)))
    resid = t_matrix(t).dense() @ m - np.eye(t.order)
    alpha = boundary_alpha(t)
    assert maxabs(resid[1:-1]) <= 1e-11
    assert maxabs(resid[0] - alpha) <= 1e-11
    assert maxabs(resid[-1] - alpha[::-1]) <= 1e-11
    inv = m_inverse(t)
    x = np.zeros(t.order)
    x[0], x[-1] = inv.x0, inv.xn
    assert maxabs(m @ x + alpha) <= 1e-11
    assert maxabs(inv.first_row_correction[1:-1]) == 0.0
    assert maxabs(m @ inv.dense() - np.eye(t.order)) <= 1e-9
