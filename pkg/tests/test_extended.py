import mpmath
from hypothesis import given
from hypothesis import strategies as st

from bfstab.extended import DD, comp_horner, dd_horner, horner, poly_coeffs, two_prod, two_sum

mpmath.mp.dps = 60
finite = st.floats(min_value=-1e100, max_value=1e100, allow_nan=False)


@given(finite, finite)
def test_two_sum_is_exact(a, b):
    s, e = two_sum(a, b)
    assert mpmath.mpf(s) + mpmath.mpf(e) == mpmath.mpf(a) + mpmath.mpf(b)


moderate = st.floats(min_value=-1e50, max_value=1e50).filter(lambda v: v == 0 or abs(v) > 1e-100)


@given(moderate, moderate)
def test_two_prod_is_exact(a, b):
    p, e = two_prod(a, b)
    assert mpmath.mpf(p) + mpmath.mpf(e) == mpmath.mpf(a) * mpmath.mpf(b)


def _ill_conditioned():
    # (x - 1)^7 expanded, evaluated near its root
    coeffs = [-1.0, 7.0, -21.0, 35.0, -35.0, 21.0, -7.0, 1.0]
    return coeffs, 1.0 + 2.0**-12


def test_compensated_horner_beats_plain_horner():
    coeffs, x = _ill_conditioned()
    exact = float((mpmath.mpf(x) - 1) ** 7)
    assert abs(comp_horner(coeffs, x) - exact) <= 1e-15 * abs(exact) * 10
    assert abs(horner(coeffs, x) - exact) > abs(comp_horner(coeffs, x) - exact)


def test_double_double_horner():
    coeffs, x = _ill_conditioned()
    exact = (mpmath.mpf(x) - 1) ** 7
    got = dd_horner(coeffs, x)
    assert abs(mpmath.mpf(got.hi) + mpmath.mpf(got.lo) - exact) <= 1e-28 * abs(exact) + 1e-40


@given(st.floats(min_value=0.1, max_value=10), st.floats(min_value=0.1, max_value=10))
def test_double_double_arithmetic(a, b):
    A, B = DD(a), DD(b)
    ma, mb = mpmath.mpf(a), mpmath.mpf(b)
    val = lambda d: mpmath.mpf(d.hi) + mpmath.mpf(d.lo)  # noqa: E731
    assert abs(val(A * B + A) - (ma * mb + ma)) <= 1e-30 * abs(ma * mb + ma)
    assert abs(val(A / B) - ma / mb) <= 1e-30 * abs(ma / mb)
    assert abs(val(A - B) - (ma - mb)) <= 1e-31 * (abs(ma) + abs(mb))
    assert abs(val(A**5) - ma**5) <= 1e-29 * ma**5


def test_poly_coeffs_dense():
    assert poly_coeffs({0: 1, 3: -2}) == [1.0, 0.0, 0.0, -2.0]
    assert poly_coeffs({}) == []
