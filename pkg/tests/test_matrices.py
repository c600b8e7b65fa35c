import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from kmstoeplitz import (
    InvalidParams,
    KmsParams,
    ThParams,
    build_c,
    build_hankel_decaying,
    build_hankel_reflected,
    build_l,
    build_m,
    build_r,
)

kappas = st.floats(0.05, 5.0)
sizes = st.integers(0, 25)


def test_single_layer():
    assert build_c(KmsParams(1.0, 0)).tolist() == [[1.0]]


def test_two_by_two(ln2):
    p = KmsParams(ln2, 1)
    np.testing.assert_allclose(build_c(p), [[1, 0.5], [0.5, 1]], rtol=1e-15)
    np.testing.assert_allclose(build_r(p), [[1, 0], [0.5, 1]], rtol=1e-15)
    np.testing.assert_allclose(build_hankel_reflected(p), [[0.5, 1], [1, 0.5]], rtol=1e-15)
    np.testing.assert_allclose(build_hankel_decaying(p), [[1, 0.5], [0.5, 0.25]], rtol=1e-15)


def test_c_elementwise():
    c = build_c(KmsParams(0.5, 3))
    for i in range(4):
        for j in range(4):
            assert c[i, j] == pytest.approx(math.exp(-0.5 * abs(i - j)), rel=1e-15)


def test_r_elementwise():
    r = build_r(KmsParams(1.0, 4))
    for i in range(5):
        for j in range(5):
            want = math.exp(-(i - j)) if i >= j else 0.0
            assert r[i, j] == pytest.approx(want, rel=1e-15, abs=0)


def test_m_elementwise():
    t = ThParams(2.0, 0.1, 0.3, 1.0, 2)
    m = build_m(t)
    n = 2
    for i in range(3):
        for j in range(3):
            want = (2.0 * math.exp(-abs(i - j)) + 0.1 * math.exp(abs(i - j))
                    + 0.3 * math.exp(-(i + j)) + 0.3 * math.exp(i + j - 2 * n))
            assert m[i, j] == pytest.approx(want, rel=1e-14)


def test_reflected_anti_diagonal():
    h = build_hankel_reflected(KmsParams(0.7, 5))
    assert np.array_equal(h, h.T)
    assert np.all(np.fliplr(h).diagonal() == 1.0)


def test_outputs_are_read_only():
    c = build_c(KmsParams(1.0, 3))
    with pytest.raises(ValueError):
        c[0, 0] = 2.0


@pytest.mark.parametrize("kappa", [0.0, -1.0, math.inf, math.nan])
def test_bad_kappa(kappa):
    with pytest.raises(InvalidParams, match="kappa must be > 0"):
        KmsParams(kappa, 3)


def test_bad_n_and_a_equals_b():
    with pytest.raises(InvalidParams):
        KmsParams(1.0, -1)
    with pytest.raises(InvalidParams):
        KmsParams(1.0, 2.5)
    with pytest.raises(InvalidParams, match="a must differ from b"):
        ThParams(1.0, 1.0, 0.0, 1.0, 3)


@given(kappas, sizes)
def test_r_plus_l_minus_identity_is_c(kappa, n):
    p = KmsParams(kappa, n)
    assert np.array_equal(build_r(p) + build_l(p) - np.eye(p.order), build_c(p))


@given(kappas, sizes)
def test_reflected_is_row_reversed_c(kappa, n):
    p = KmsParams(kappa, n)
    assert np.array_equal(build_hankel_reflected(p), build_c(p)[::-1])


@given(kappas, st.integers(1, 12))
def test_decaying_hankel_rank_one(kappa, n):
    h = build_hankel_decaying(KmsParams(kappa, n))
    minors = h[:-1, :-1] * h[1:, 1:] - h[:-1, 1:] * h[1:, :-1]
    assert np.max(np.abs(minors)) <= 1e-15


@given(
    st.floats(0.5, 3.0), st.floats(-0.4, 0.4), st.floats(-0.5, 0.5), st.floats(0.1, 2.0), st.integers(0, 10)
)
def test_m_symmetric_persymmetric(a, b, c, kappa, n):
    m = build_m(ThParams(a, b, c, kappa, n))
    np.testing.assert_allclose(m, m.T, rtol=1e-14, atol=0)
    np.testing.assert_allclose(m, m[::-1, ::-1].T, rtol=1e-13, atol=0)


@given(kappas, sizes)
def test_m_reduces_to_c(kappa, n):
    assert np.array_equal(build_m(ThParams(1.0, 0.0, 0.0, kappa, n)), build_c(KmsParams(kappa, n)))
