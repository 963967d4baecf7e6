import pytest

from bfstab.conjugation import conjugation_closed_form, conjugation_derive, conjugation_jets
from bfstab.depth import make_depth_context
from bfstab.errors import CompositionOverflow
from bfstab.stokes import stokes_closed_form, stokes_derive
from conftest import rel


def test_closed_form_spot_values(ctx):
    c = ctx.c
    k = conjugation_closed_form(ctx)
    assert k.p1_1 == pytest.approx(-2.0 / c, rel=1e-15)
    assert k.a1_1 == pytest.approx(-(c * c + c**-2), rel=1e-15)
    assert k.pf1_1 == pytest.approx(c**-2, rel=1e-15)
    assert k.f3 == 0.0


def test_depth_shift_negative_near_critical_depth():
    assert conjugation_closed_form(make_depth_context(1.363)).f2 < 0


def test_derivation_matches_closed_form(ctx):
    closed = conjugation_closed_form(ctx)
    derived = conjugation_derive(ctx, stokes_derive(ctx))
    for name, v in closed.coefficients().items():
        assert rel(v, derived.coefficients()[name]) <= 1e-9, name
    assert derived.f3 == 0.0


def test_quartic_harmonics_at_depth_two():
    ctx = make_depth_context(2.0)
    closed = conjugation_closed_form(ctx)
    derived = conjugation_derive(ctx, stokes_closed_form(ctx))
    assert rel(closed.p4_4, derived.p4_4) <= 1e-9
    assert rel(closed.a4_4, derived.a4_4) <= 1e-9


def test_parity_of_jets():
    ctx = make_depth_context(1.1)
    jets = conjugation_jets(ctx, stokes_closed_form(ctx))
    x_mirror = lambda u: u[:, [0] + list(range(u.shape[1] - 1, 0, -1))]  # noqa: E731
    for u, sign in ((jets.pfrak.data, -1.0), (jets.p.data, 1.0), (jets.a.data, 1.0)):
        assert abs(u - sign * x_mirror(u)).max() <= 1e-12 * abs(u).max()


def test_composition_order_cap():
    ctx = make_depth_context(1.0)
    with pytest.raises(CompositionOverflow):
        conjugation_jets(ctx, stokes_closed_form(ctx), order=5)
