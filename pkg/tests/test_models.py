import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.optimize import minimize

from hyperpr.algebra import AlgebraError, hmul, hsign
from hyperpr.models import (
    KINDS,
    Measurements,
    add_noise,
    align,
    best_right_factor,
    dist_octonion,
    dist_quaternion,
    distance,
    forward,
    make_ensemble,
    random_signal,
    relative_distance,
)
from hyperpr.solvers import check_adjoint
from hyperpr.transforms import haar_family

import oracles


def small_ensemble(kind, level=4, seed=0):
    if kind in ("gaussian_rows", "real_rows"):
        return make_ensemble(kind, level, n=6, m=24, seed=seed)
    if kind == "coded_fourier_2sided":
        return make_ensemble(kind, n=16, L=3, d=8, seed=seed)
    if kind == "coded_fourier_row":
        return make_ensemble(kind, n=6, L=4, d=8, seed=seed)
    if kind == "stft":
        return make_ensemble(kind, n=8, seed=seed)
    return make_ensemble(kind, n=8, wavelets=haar_family(8, 3), seed=seed)


@pytest.mark.parametrize("level", (1, 2, 4, 8, 16))
def test_row_forward_matches_loop_oracle(level, rng):
    ens = make_ensemble("gaussian_rows", level, n=4, m=10, seed=3)
    x = rng.standard_normal((4, level))
    np.testing.assert_allclose(forward(ens, x).y, oracles.forward_rows(ens.rows, x), rtol=1e-12)


def test_two_sided_forward_matches_oracle(rng):
    ens = make_ensemble("coded_fourier_2sided", n=16, L=2, d=8, seed=1)
    X = rng.standard_normal((4, 4, 4))
    expected = []
    for mask in ens.doe.masks:
        coded = np.array([[oracles.hamilton(mask[r, c], X[r, c]) for c in range(4)] for r in range(4)])
        expected.append(np.sum(oracles.qdft2d(coded) ** 2, axis=-1).reshape(-1))
    np.testing.assert_allclose(forward(ens, X.reshape(16, 4)).y, np.concatenate(expected), rtol=1e-11)


def test_coded_fourier_row_is_dft_of_coded_signal(rng):
    ens = make_ensemble("coded_fourier_row", n=5, L=2, d=8, seed=2)
    x = rng.standard_normal((5, 4))
    z = ens.apply(x)
    F = np.exp(-2j * np.pi * np.outer(np.arange(5), np.arange(5)) / 5) / math.sqrt(5)
    Fq = np.zeros((5, 5, 4))
    Fq[..., 0], Fq[..., 1] = F.real, F.imag
    codes = ens.rows[0] / Fq[0, 0, 0]  # the zero-frequency DFT row is constant 1/sqrt(5)
    coded = hmul(codes, x)
    expected = np.array([sum(oracles.hamilton(Fq[s, q], coded[q]) for q in range(5)) for s in range(5)])
    np.testing.assert_allclose(z[:5], expected, atol=1e-12)


@pytest.mark.parametrize("kind", KINDS)
def test_operator_adjoint(kind):
    ens = small_ensemble(kind)
    assert check_adjoint(ens.operator, trials=5) < 1e-12
    x = random_signal(ens.n, ens.level, seed=1).data
    np.testing.assert_allclose(ens.real_matrix @ x.reshape(-1), ens.apply(x).reshape(-1), atol=1e-12)


def test_ensemble_validation():
    with pytest.raises(ValueError):
        make_ensemble("nope", n=4, m=4)
    with pytest.raises(ValueError):
        make_ensemble("stft", level=8, n=4)
    with pytest.raises(ValueError):
        make_ensemble("coded_fourier_2sided", n=15, L=2)
    with pytest.raises(ValueError):
        make_ensemble("gaussian_rows", n=4)
    ens = make_ensemble("gaussian_rows", n=4, m=8)
    with pytest.raises(AlgebraError):
        ens.apply(np.zeros((5, 4)))
    assert ens.provenance()["kind"] == "gaussian_rows"


def test_ensembles_are_deterministic():
    a = make_ensemble("gaussian_rows", 8, n=5, m=20, seed=9)
    b = make_ensemble("gaussian_rows", 8, n=5, m=20, seed=9)
    np.testing.assert_array_equal(a.rows, b.rows)


def test_real_rows_have_real_entries():
    ens = make_ensemble("real_rows", 4, n=3, m=6, seed=0)
    np.testing.assert_array_equal(ens.rows[..., 1:], 0.0)


def test_noise_hits_requested_snr():
    y = np.abs(np.random.default_rng(0).standard_normal(200_000)) + 5.0
    noisy = add_noise(Measurements(y), 30.0, seed=4)
    diff = noisy.y - y
    snr = 10 * np.log10(np.mean(y * y) / np.mean(diff * diff))
    assert snr == pytest.approx(30.0, abs=0.05)
    assert noisy.clamped == 0 and noisy.snr_db == 30.0
    assert add_noise(Measurements(y), math.inf).y is y
    with pytest.raises(ValueError):
        add_noise(Measurements(y), math.nan)


def test_noise_clamps_negative_intensities():
    noisy = add_noise(Measurements(np.full(1000, 1e-3)), -10.0, seed=0)
    assert noisy.clamped > 0 and noisy.y.min() == 0.0


def test_random_signal_pure():
    x = random_signal(10, 4, seed=0, pure=True).data
    np.testing.assert_array_equal(x[:, 0], 0.0)


# ---------------------------------------------------------------------------
# distances modulo a right unit factor


def brute_distance(x, xt):
    """Numerical minimum over unit w by multi-start optimisation on the sphere."""
    dim = x.shape[1]
    # w -> x w is linear; assemble its matrix column by column with the oracle product
    M = np.stack([np.concatenate([oracles.mul(a, e) for a in x]) for e in np.eye(dim)], axis=1)
    t = xt.reshape(-1)

    def f(u):
        return np.linalg.norm(t - M @ (u / np.linalg.norm(u)))

    starts = np.vstack([np.eye(dim), -np.eye(dim), np.random.default_rng(0).standard_normal((8, dim))])
    return min(minimize(f, s, method="BFGS", options={"gtol": 1e-12}).fun for s in starts)


@pytest.mark.parametrize("dim", (2, 4, 8))
def test_distance_matches_numerical_minimum(dim, rng):
    x, xt = rng.standard_normal((2, 3, dim))
    d = distance(x, xt)
    assert d == pytest.approx(brute_distance(x, xt), rel=1e-5)


def test_distance_specialisations(rng):
    x4, x8 = rng.standard_normal((3, 4)), rng.standard_normal((3, 8))
    assert dist_quaternion(x4, x4) < 1e-14
    assert dist_octonion(x8, x8) < 1e-14
    with pytest.raises(AlgebraError):
        dist_quaternion(x8, x8)
    with pytest.raises(AlgebraError):
        distance(rng.standard_normal((2, 16)), rng.standard_normal((2, 16)))


def test_align_undoes_right_factor(rng):
    x = rng.standard_normal((5, 4))
    w = hsign(rng.standard_normal(4))
    np.testing.assert_allclose(align(x, hmul(x, w)), x, atol=1e-12)
    np.testing.assert_allclose(best_right_factor(x, hmul(x, w)), w, atol=1e-12)


@pytest.mark.parametrize("kind", KINDS)
def test_right_unit_invariance_per_kind(kind):
    """forward(x w) = forward(x) for right factors commuting with the model.

    For the two-sided Fourier model this holds for w in span{1, j} only; the
    general case is exercised by the acceptance suite.
    """
    ens = small_ensemble(kind)
    rng = np.random.default_rng(5)
    for _ in range(20):
        x = rng.standard_normal((ens.n, 4))
        w = rng.standard_normal(4)
        if kind == "coded_fourier_2sided":
            w[1] = w[3] = 0.0
        w = hsign(w)
        y0, y1 = forward(ens, x).y, forward(ens, hmul(x, w)).y
        assert np.abs(y1 - y0).max() <= 1e-12 * np.abs(y0).max()


@given(st.integers(0, 2**32 - 1))
def test_quaternion_right_factor_invariance_property(seed):
    rng = np.random.default_rng(seed)
    ens = make_ensemble("gaussian_rows", 4, n=4, m=16, seed=seed)
    x = rng.standard_normal((4, 4))
    w = hsign(rng.standard_normal(4))
    xw = hmul(x, w)
    y0 = forward(ens, x).y
    assert np.abs(forward(ens, xw).y - y0).max() <= 1e-12 * y0.max()
    assert distance(x, xw) < 1e-10
    assert relative_distance(x, xw) < 1e-10


@given(st.integers(0, 2**32 - 1))
def test_octonion_right_factor_invariance_where_products_reassociate(seed):
    """Octonion rows commute with a right factor when n = 1 or the rows are real."""
    rng = np.random.default_rng(seed)
    w = hsign(rng.standard_normal(8))
    x1 = rng.standard_normal((1, 8))
    ens1 = make_ensemble("gaussian_rows", 8, n=1, m=8, seed=seed)
    y0 = forward(ens1, x1).y
    assert np.abs(forward(ens1, hmul(x1, w)).y - y0).max() <= 1e-12 * y0.max()
    x = rng.standard_normal((4, 8))
    ensr = make_ensemble("real_rows", 8, n=4, m=16, seed=seed)
    y0 = forward(ensr, x).y
    assert np.abs(forward(ensr, hmul(x, w)).y - y0).max() <= 1e-12 * y0.max()
    assert distance(x, hmul(x, w)) < 1e-10


def test_octonion_gaussian_rows_break_right_factor_invariance():
    """sum_j a_j (x_j w) differs from (sum_j a_j x_j) w without associativity."""
    rng = np.random.default_rng(0)
    ens = make_ensemble("gaussian_rows", 8, n=4, m=16, seed=0)
    x = rng.standard_normal((4, 8))
    w = hsign(rng.standard_normal(8))
    y0 = forward(ens, x).y
    assert np.abs(forward(ens, hmul(x, w)).y - y0).max() > 1e-3 * y0.max()
    # the identity |(A x) w|^2 = |A x|^2 itself still holds
    zw = hmul(ens.apply(x), w)
    np.testing.assert_allclose(np.sum(zw * zw, axis=1), y0, rtol=1e-12)


@given(st.integers(0, 2**32 - 1))
def test_distance_is_symmetric_and_nonnegative_for_quaternions(seed):
    rng = np.random.default_rng(seed)
    x, xt = rng.standard_normal((2, 4, 4))
    d1, d2 = distance(x, xt), distance(xt, x)
    assert d1 >= 0 and d1 == pytest.approx(d2, rel=1e-10)
