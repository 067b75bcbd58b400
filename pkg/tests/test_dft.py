import cmath
import math
import time

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_gf
from nsfourier.chargroup import ScaledG, char_transform
from nsfourier.dft import Kernel, dft, dft_fast, idft, idft_fast, inverse, kernel_eval, transform
from nsfourier.grid import GridFunction, l1_norm, make_grid


def oracle_dft(g, sign=-1):
    """Textbook double loop with unreduced complex exponentials."""
    n = g.grid.n
    idx = [int(j) for j in g.grid.indices]
    out = []
    for k in idx:
        out.append(sum(v * cmath.exp(sign * 1j * math.pi * j * k / n**2) for j, v in zip(idx, g.values)))
    return np.array(out)


def test_kernel_examples():
    g1, g2 = make_grid(1), make_grid(2)
    assert kernel_eval(g2, -1, 0, 1.5) == 1
    assert kernel_eval(g1, -1, -1, -1) == -1
    assert kernel_eval(g2, -1, 0.5, 0.5) == pytest.approx((math.sqrt(2) - 1j * math.sqrt(2)) / 2, abs=1e-15)


def test_kernel_floors_off_grid_arguments():
    grid = make_grid(2)
    assert kernel_eval(grid, -1, 0.74, 0.6) == kernel_eval(grid, -1, 0.5, 0.5)
    with pytest.raises(ValueError):
        kernel_eval(grid, -1, 2.0, 0)


def test_kernel_rejects_bad_sign():
    with pytest.raises(ValueError):
        Kernel(make_grid(2), 0)


@pytest.mark.parametrize("n", [1, 3, 6])
def test_kernel_modulus_and_conjugacy(n):
    grid = make_grid(n)
    plus, minus = Kernel(grid, 1).matrix(), Kernel(grid, -1).matrix()
    assert np.allclose(np.abs(minus), 1.0, rtol=0, atol=1e-15)
    assert np.array_equal(plus, minus.conj())
    j, k = np.meshgrid(grid.indices, grid.indices)
    assert np.allclose(minus, np.exp(-1j * np.pi * j * k / n**2), rtol=0, atol=1e-13)


def test_dft_examples_n1():
    grid = make_grid(1)
    assert np.allclose(dft(GridFunction(grid, [0, 1])).values, [1, 1])
    assert np.allclose(dft(GridFunction(grid, [1, 1])).values, [0, 2], atol=1e-15)
    assert np.allclose(idft(GridFunction(grid, [1, 1])).values, [0, 1], atol=1e-15)


@pytest.mark.parametrize("n", [1, 2, 5])
def test_zero_maps_to_zero(n):
    z = GridFunction.zeros(make_grid(n))
    for op in (dft, idft, dft_fast, idft_fast):
        assert np.all(op(z).values == 0)


def test_delta_and_character_bridge_n1():
    grid = make_grid(1)
    g = GridFunction.delta(grid, 0)
    assert np.allclose(dft(g).values, 1)
    chars = char_transform(ScaledG(1, 1), g.values)
    assert np.allclose(chars, 0.5)
    assert np.allclose(dft(g).values, 2 * chars)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 7])
def test_dft_matches_textbook_oracle(n, rng):
    g = random_gf(rng, n)
    assert np.max(np.abs(dft(g).values - oracle_dft(g) / n)) <= 1e-12 * np.max(np.abs(g.values)) * n
    assert np.max(np.abs(idft(g).values - oracle_dft(g, +1) / (2 * n))) <= 1e-12 * np.max(np.abs(g.values)) * n


@pytest.mark.parametrize("n", range(1, 33))
def test_exact_inversion(n, rng):
    for _ in range(5):
        g = random_gf(rng, n)
        scale = np.max(np.abs(g.values))
        assert np.max(np.abs(idft(dft(g)).values - g.values)) <= 1e-11 * scale
        assert np.max(np.abs(idft_fast(dft_fast(g)).values - g.values)) <= 1e-11 * scale


@pytest.mark.parametrize("n", [1, 2, 4, 8, 16, 32])
def test_fast_matches_naive(n, rng):
    for _ in range(5):
        g = random_gf(rng, n)
        ref = dft(g).values
        assert np.max(np.abs(dft_fast(g).values - ref)) <= 1e-10 * np.max(np.abs(ref))
        iref = idft(g).values
        assert np.max(np.abs(idft_fast(g).values - iref)) <= 1e-10 * np.max(np.abs(iref))


@pytest.mark.parametrize("n", [1, 2, 3, 4, 8])
def test_scaling_bridge(n, rng):
    g = random_gf(rng, n)
    via_chars = 2 * n * char_transform(ScaledG(n * n, n), g.values)
    assert np.max(np.abs(dft(g).values - via_chars)) <= 1e-11 * np.max(np.abs(via_chars))


@settings(max_examples=30, deadline=None)
@given(n=st.integers(1, 10), seed=st.integers(0, 2**32 - 1),
       a=st.complex_numbers(max_magnitude=100, allow_nan=False, allow_infinity=False))
def test_linearity(n, seed, a):
    rng = np.random.default_rng(seed)
    g, h = random_gf(rng, n), random_gf(rng, n)
    for op in (dft, idft):
        lhs = op(g * a + h).values
        rhs = a * op(g).values + op(h).values
        assert np.max(np.abs(lhs - rhs)) <= 1e-12 * (abs(a) + 1) * n * n * 4


@settings(max_examples=30, deadline=None)
@given(n=st.integers(1, 12), seed=st.integers(0, 2**32 - 1))
def test_spectrum_bounded_by_l1(n, seed):
    g = random_gf(np.random.default_rng(seed), n)
    assert np.max(np.abs(dft(g).values)) <= l1_norm(g) * (1 + 1e-12)


def test_real_even_has_real_value_at_zero(rng):
    n = 5
    grid = make_grid(n)
    vals = np.zeros(grid.size)
    half = rng.standard_normal(n * n)
    # even on the symmetric part j in [-(n^2-1), n^2-1]; j = -n^2 has no partner
    vals[1 : n * n] = half[1:][::-1]
    vals[n * n :] = half
    vals[0] = rng.standard_normal()
    g = GridFunction(grid, vals)
    assert abs(dft(g)[0].imag) <= 1e-11


def test_method_dispatch(rng):
    g = random_gf(rng, 3)
    assert np.allclose(transform(g, "fast").values, dft(g).values)
    assert np.allclose(inverse(g, "fast").values, idft(g).values)
    with pytest.raises(ValueError):
        transform(g, "slow")


def test_fast_throughput_n128(rng):
    g = random_gf(rng, 128)
    start = time.perf_counter()
    dft_fast(g)
    assert time.perf_counter() - start <= 1.0


def test_naive_blocked_path_matches_fast(rng):
    # grid above the kernel cache limit goes through the blocked loop
    g = random_gf(rng, 40)
    ref = dft_fast(g).values
    assert np.max(np.abs(dft(g).values - ref)) <= 1e-10 * np.max(np.abs(ref))
