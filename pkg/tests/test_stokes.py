import math

import numpy as np
import pytest

from bfstab.depth import make_depth_context
from bfstab.errors import PreconditionError
from bfstab.stokes import residual_norm, stokes_closed_form, stokes_derive, stokes_profile
from conftest import rel


def test_closed_form_spot_values(ctx):
    c = ctx.c
    exp = stokes_closed_form(ctx)
    assert exp.eta2_0 == pytest.approx((c**4 - 1) / (4 * c * c), rel=1e-14)
    assert exp.c2 == pytest.approx((-2 * c**12 + 13 * c**8 - 12 * c**4 + 9) / (16 * c**7),
                                   rel=1e-13)
    assert exp.c3 == 0.0


def test_derivation_matches_closed_form(ctx):
    closed, derived = stokes_closed_form(ctx), stokes_derive(ctx)
    for name, v in closed.coefficients().items():
        assert rel(v, derived.coefficients()[name]) <= 1e-9, name
    assert derived.c3 == 0.0


def test_order_two_and_c4_at_reference_depth():
    ctx = make_depth_context(1.5)
    closed, derived = stokes_closed_form(ctx), stokes_derive(ctx, N=8)
    for name in ("eta2_0", "eta2_2", "psi2_2"):
        assert abs(getattr(closed, name) - getattr(derived, name)) <= 1e-12
    assert abs(closed.c4 - derived.c4) <= 1e-10


def test_derivation_rejects_small_truncation():
    with pytest.raises(PreconditionError):
        stokes_derive(make_depth_context(1.0), N=4)


def test_profile_structure():
    ctx = make_depth_context(1.5)
    exp = stokes_closed_form(ctx)
    flat, speed = stokes_profile(exp, 0.0)
    assert np.all(flat.cos_part == 0) and speed == ctx.c
    eps = 0.05
    pair, _ = stokes_profile(exp, eps)
    assert pair.cos_part[1] == pytest.approx(eps + eps**3 * exp.eta3_1, rel=1e-14)
    assert pair.cos_part[0] == pytest.approx(eps**2 * exp.eta2_0 + eps**4 * exp.eta4_0,
                                             rel=1e-14)


@pytest.mark.parametrize("h", [1.0, 1.363, 2.0])
def test_residual_is_fifth_order(h):
    ctx = make_depth_context(h)
    assert residual_norm(ctx, 0.0) == 0.0
    ratio = residual_norm(ctx, 0.04) / residual_norm(ctx, 0.02)
    assert 24 <= ratio <= 40


def test_residual_regression_bound():
    assert residual_norm(make_depth_context(1.5), 0.02) <= 1e-6
    assert math.isfinite(residual_norm(make_depth_context(0.5), 0.01))
