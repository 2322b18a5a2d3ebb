import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from morphenhance import morphology as m
from morphenhance.image import complement

import oracles
from conftest import gray_images

IMPLS = ("naive", "separable")


@pytest.mark.parametrize("impl", IMPLS)
@pytest.mark.parametrize("op", [m.erode, m.dilate])
def test_constant_and_identity(op, impl, rng):
    c = np.full((7, 5), 7, np.uint8)
    for mu in (0, 1, 3, 20):
        np.testing.assert_array_equal(op(c, mu, impl), c)
    f = rng.integers(0, 256, (6, 9), dtype=np.uint8)
    np.testing.assert_array_equal(op(f, 0, impl), f)


@pytest.mark.parametrize("impl", IMPLS)
def test_erode_matches_window_scan(impl, rng):
    f = rng.integers(0, 256, (9, 9), dtype=np.uint8)
    np.testing.assert_array_equal(m.erode(f, 2, impl), oracles.erode(f, 2))


@pytest.mark.parametrize("impl", IMPLS)
def test_dilate_matches_window_scan(impl, rng):
    f = rng.integers(0, 256, (9, 9), dtype=np.uint8)
    np.testing.assert_array_equal(m.dilate(f, 3, impl), oracles.dilate(f, 3))


def test_figure_kernel_rules():
    nb = np.array([[3, 9, 16], [12, 14, 7], [15, 10, 11]], np.uint8)
    assert m.dilate(nb, 1)[1, 1] == 16
    nb_e = np.array([[20, 31, 17], [14, 25, 19], [22, 18, 30]], np.uint8)
    assert m.erode(nb_e, 1)[1, 1] == 14


def test_open_removes_narrow_peak():
    f = np.zeros((9, 9), np.uint8)
    f[4, 4] = 255
    out = m.open(f, 1)
    np.testing.assert_array_equal(out, oracles.opening(f, 1))
    assert not out.any()


def test_close_fills_narrow_pit():
    f = np.full((9, 9), 255, np.uint8)
    f[4, 4] = 0
    out = m.close(f, 1)
    np.testing.assert_array_equal(out, oracles.closing(f, 1))
    assert (out == 255).all()


def test_open_idempotent_50_images(rng):
    for _ in range(50):
        f = rng.integers(0, 256, (32, 32), dtype=np.uint8)
        once = m.open(f, 2)
        np.testing.assert_array_equal(m.open(once, 2), once)


@given(gray_images(), st.integers(0, 6))
def test_duality(f, mu):
    np.testing.assert_array_equal(m.erode(f, mu), complement(m.dilate(complement(f), mu)))
    np.testing.assert_array_equal(m.close(f, mu), complement(m.open(complement(f), mu)))


@given(gray_images(), st.integers(1, 10))
@settings(max_examples=200)
def test_naive_equals_separable(f, mu):
    for op in (m.erode, m.dilate):
        np.testing.assert_array_equal(op(f, mu, "naive"), op(f, mu, "separable"))


@given(gray_images(max_side=16), st.integers(1, 4))
def test_ordering_chain(f, mu):
    chain = [
        m.erode(f, mu),
        m.open(f, mu),
        m.opening_by_reconstruction(f, mu),
        f,
        m.closing_by_reconstruction(f, mu),
        m.close(f, mu),
        m.dilate(f, mu),
    ]
    for lo, hi in zip(chain, chain[1:]):
        assert (lo <= hi).all()


@given(gray_images(max_side=16), st.integers(0, 4))
def test_idempotence(f, mu):
    for op in (m.open, m.close, m.opening_by_reconstruction, m.closing_by_reconstruction):
        once = op(f, mu)
        np.testing.assert_array_equal(op(once, mu), once)


@given(gray_images(max_side=12), st.integers(0, 3), st.integers(0, 60))
def test_increasing(f, mu, bump):
    g = np.minimum(f.astype(int) + bump, 255).astype(np.uint8)
    for op in (m.erode, m.dilate, m.open, m.close):
        assert (op(f, mu) <= op(g, mu)).all()


@given(gray_images(max_side=12), st.integers(0, 4), st.integers(0, 4))
def test_scale_monotonicity(f, mu1, mu2):
    mu1, mu2 = sorted((mu1, mu2))
    assert (m.erode(f, mu2) <= m.erode(f, mu1)).all()
    assert (m.dilate(f, mu2) >= m.dilate(f, mu1)).all()


def test_mu_beyond_image_gives_global_extrema(rng):
    f = rng.integers(0, 256, (5, 7), dtype=np.uint8)
    for impl in IMPLS:
        assert (m.erode(f, 100, impl) == f.min()).all()
        assert (m.dilate(f, 100, impl) == f.max()).all()


def test_rejects_bad_mu():
    f = np.zeros((3, 3), np.uint8)
    for bad in (-1, 1.5):
        with pytest.raises(ValueError):
            m.erode(f, bad)
    with pytest.raises(ValueError):
        m.erode(f, 1, "fft")


# running extremum ---------------------------------------------------------

def test_running_extremum_small():
    np.testing.assert_array_equal(m.running_extremum_1d([5, 1, 9], 3, "min"), [1, 1, 1])
    np.testing.assert_array_equal(m.running_extremum_1d([5, 1, 9], 3, "max"), [5, 9, 9])
    np.testing.assert_array_equal(m.running_extremum_1d([5, 1, 9], 1, "min"), [5, 1, 9])


def test_running_extremum_long_line(rng):
    line = rng.integers(0, 256, 1000)
    for kind in ("min", "max"):
        np.testing.assert_array_equal(
            m.running_extremum_1d(line, 11, kind), oracles.sliding_1d(list(line), 11, kind)
        )


@given(st.lists(st.integers(-1000, 1000), min_size=1, max_size=60),
       st.integers(0, 40), st.sampled_from(["min", "max"]))
def test_running_extremum_property(line, mu, kind):
    w = 2 * mu + 1
    np.testing.assert_array_equal(
        m.running_extremum_1d(np.array(line), w, kind), oracles.sliding_1d(line, w, kind)
    )


def test_running_extremum_float_line():
    out = m.running_extremum_1d(np.array([0.5, -2.0, 3.0, 1.0]), 3, "max")
    np.testing.assert_array_equal(out, [0.5, 3.0, 3.0, 3.0])


@pytest.mark.parametrize("window", [0, 2, 4, -3])
def test_running_extremum_rejects_even(window):
    with pytest.raises(ValueError):
        m.running_extremum_1d([1, 2, 3], window, "min")


# reconstruction -----------------------------------------------------------

def test_geodesic_dilate_examples():
    mask = np.array([[9, 9, 9]], np.uint8)
    np.testing.assert_array_equal(m.geodesic_dilate(mask, mask), mask)
    zero = np.zeros((4, 4), np.uint8)
    np.testing.assert_array_equal(m.geodesic_dilate(zero, np.full((4, 4), 200, np.uint8)), zero)
    marker = np.array([[0, 0, 9]], np.uint8)
    out = m.geodesic_dilate(marker, mask)
    np.testing.assert_array_equal(out, [[0, 9, 9]])
    np.testing.assert_array_equal(out, oracles.geodesic_step(marker, mask))


def test_geodesic_dilate_preconditions():
    with pytest.raises(m.PreconditionError):
        m.geodesic_dilate(np.array([[5]], np.uint8), np.array([[4]], np.uint8))
    with pytest.raises(m.ShapeError):
        m.geodesic_dilate(np.zeros((2, 2), np.uint8), np.zeros((3, 2), np.uint8))
    with pytest.raises(m.PreconditionError):
        m.reconstruct_by_dilation(np.array([[5]], np.uint8), np.array([[4]], np.uint8))


def test_reconstruct_examples():
    mask = np.full((1, 5), 9, np.uint8)
    marker = np.array([[0, 0, 9, 0, 0]], np.uint8)
    np.testing.assert_array_equal(m.reconstruct_by_dilation(marker, mask), mask)
    np.testing.assert_array_equal(oracles.reconstruct(marker, mask), mask)
    np.testing.assert_array_equal(m.reconstruct_by_dilation(mask, mask), mask)


def test_reconstruct_random_pairs(rng):
    for _ in range(30):
        f = rng.integers(0, 256, (32, 32), dtype=np.uint8)
        marker = m.erode(f, 2)
        got = m.reconstruct_by_dilation(marker, f)
        np.testing.assert_array_equal(got, oracles.reconstruct(marker, f))


@given(gray_images(max_side=20), st.data())
def test_reconstruct_fixpoint_property(mask, data):
    noise = data.draw(st.integers(0, 255))
    marker = np.minimum(mask, np.uint8(noise)) // 2
    rec = m.reconstruct_by_dilation(marker, mask)
    assert (marker <= rec).all() and (rec <= mask).all()
    np.testing.assert_array_equal(m.geodesic_dilate(rec, mask), rec)
    np.testing.assert_array_equal(rec, oracles.reconstruct(marker, mask))


def test_reconstruct_spiral_long_propagation():
    # a one-pixel-wide serpentine forces many queue hops
    mask = np.zeros((21, 21), np.uint8)
    mask[::2, :] = 200
    mask[1::4, -1] = 200
    mask[3::4, 0] = 200
    marker = np.zeros_like(mask)
    marker[0, 0] = 200
    np.testing.assert_array_equal(
        m.reconstruct_by_dilation(marker, mask), oracles.reconstruct(marker, mask)
    )


def plateau_scene():
    f = np.full((16, 16), 50, np.uint8)
    f[2:8, 2:8] = 200
    f[12, 12] = 250
    return f


def test_opening_by_reconstruction_scene():
    f = plateau_scene()
    out = m.opening_by_reconstruction(f, 2)
    expected = np.full((16, 16), 50, np.uint8)
    expected[2:8, 2:8] = 200
    np.testing.assert_array_equal(out, expected)
    np.testing.assert_array_equal(out, oracles.opening_by_reconstruction(f, 2))
    assert m.open(f, 2)[12, 12] == 50


def test_closing_by_reconstruction_fills_pit():
    f = 255 - plateau_scene()
    out = m.closing_by_reconstruction(f, 2)
    assert out[12, 12] == 205
    np.testing.assert_array_equal(out, oracles.closing_by_reconstruction(f, 2))


@pytest.mark.parametrize("op", [m.opening_by_reconstruction, m.closing_by_reconstruction])
def test_by_reconstruction_trivial(op, rng):
    c = np.full((6, 6), 77, np.uint8)
    np.testing.assert_array_equal(op(c, 3), c)
    f = rng.integers(0, 256, (8, 8), dtype=np.uint8)
    np.testing.assert_array_equal(op(f, 0), f)


def test_large_image_runs():
    f = np.random.default_rng(1).integers(0, 256, (300, 300), dtype=np.uint8)
    out = m.opening_by_reconstruction(f, 5)
    assert out.shape == f.shape and (out <= f).all()


def test_inputs_not_mutated(rng):
    f = rng.integers(0, 256, (10, 10), dtype=np.uint8)
    before = f.copy()
    for op in (m.erode, m.dilate, m.open, m.close, m.opening_by_reconstruction,
               m.closing_by_reconstruction):
        op(f, 2)
    np.testing.assert_array_equal(f, before)
