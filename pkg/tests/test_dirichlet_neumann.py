import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bfstab.depth import make_depth_context
from bfstab.dirichlet_neumann import DNExpansion
from bfstab.fourier import Field, grid

N = 32


def _h_derivative(k: int, h: float, j: int) -> float:
    """j-th derivative in h of k tanh(h k), by recursion on t = tanh(hk)."""
    poly = np.polynomial.Polynomial([0.0, 1.0])  # t
    for _ in range(j):
        poly = poly.deriv() * np.polynomial.Polynomial([1.0, 0.0, -1.0]) * k
    return k * poly(math.tanh(h * k))


@settings(max_examples=25)
@given(st.floats(min_value=0.5, max_value=3.0), st.floats(min_value=-0.2, max_value=0.2),
       st.integers(min_value=1, max_value=4), st.integers(min_value=1, max_value=4))
def test_constant_elevation_reproduces_depth_taylor_series(h, delta, j, k):
    dn = DNExpansion(make_depth_context(h))
    x = grid(N)
    eta = Field(np.full(N, delta))
    psi = Field(np.cos(k * x))
    got = dn.term(j, eta, psi).values
    want = delta**j / math.factorial(j) * _h_derivative(k, h, j) * np.cos(k * x)
    assert np.allclose(got, want, atol=1e-10 * max(1.0, np.max(np.abs(want))))


def _profile(seed: int):
    rng = np.random.default_rng(seed)
    x = grid(N)
    eta = sum(0.1 * rng.standard_normal() * np.cos(m * x + rng.uniform()) for m in (1, 2))
    psi = sum(rng.standard_normal() * np.sin(m * x + rng.uniform()) for m in (1, 2, 3))
    return Field(eta), Field(psi)


@pytest.mark.parametrize("seed", range(4))
def test_terms_are_linear_in_potential_and_homogeneous_in_elevation(seed):
    dn = DNExpansion(make_depth_context(1.2))
    eta, psi = _profile(seed)
    _, phi = _profile(seed + 10)
    for j in range(1, 5):
        lin = dn.term(j, eta, psi * 2.0 + phi).values
        assert np.allclose(lin, 2 * dn.term(j, eta, psi).values + dn.term(j, eta, phi).values,
                           atol=1e-11)
        scaled = dn.term(j, eta * -0.5, psi).values
        assert np.allclose(scaled, (-0.5) ** j * dn.term(j, eta, psi).values, atol=1e-11)


@pytest.mark.parametrize("seed", range(3))
def test_directional_derivatives_match_polarization(seed):
    dn = DNExpansion(make_depth_context(0.9))
    eta, psi = _profile(seed)
    hat, _ = _profile(seed + 5)
    t = 1e-4
    for G, Gp in ((dn.G2, dn.G2_prime), (dn.G3, dn.G3_prime)):
        fd = (G(eta + hat * t, psi).values - G(eta - hat * t, psi).values) / (2 * t)
        assert np.allclose(Gp(eta, hat, psi).values, fd, atol=1e-7)


def test_total_is_sum_of_terms_and_preserves_zero_mean():
    dn = DNExpansion(make_depth_context(1.0))
    eta, psi = _profile(0)
    tot = dn.total(eta, psi).values
    parts = sum(dn.term(j, eta, psi).values for j in range(5))
    assert np.allclose(tot, parts)
    assert abs(tot.mean()) < 1e-12
