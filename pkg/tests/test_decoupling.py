import numpy as np
import pytest

from bfstab.decoupling import (critical_depth, decouple, e_wb, e_wb_closed_form,
                               eta_wb_closed_form, sylvester_residuals)
from bfstab.depth import make_depth_context
from bfstab.errors import BracketFailure, SingularSylvester
from bfstab.reduced import bf_coefficients_closed_form
from conftest import rel


def test_sylvester_systems_are_solved(ctx):
    res = sylvester_residuals(ctx)
    assert max(res.values()) <= 1e-12 * max(1.0, abs(decouple(ctx).x22_3))


def test_determinant_positive(ctx):
    assert decouple(ctx).D_h > 0


def test_e_wb_two_routes(ctx):
    assert abs(decouple(ctx).e_wb - e_wb_closed_form(ctx)) <= 1e-11


@pytest.mark.parametrize("h", np.linspace(0.8, 2.5, 9))
def test_eta_wb_polynomial_matches_assembly(h):
    ctx = make_depth_context(h)
    assert rel(eta_wb_closed_form(ctx, "extended"), decouple(ctx).eta_wb) <= 1e-8
    assert eta_wb_closed_form(ctx) > 0


def test_extended_precision_is_not_worse_than_standard():
    ctx = make_depth_context(1.0)
    ref = decouple(ctx).eta_wb
    assert rel(eta_wb_closed_form(ctx, "extended"), ref) <= rel(eta_wb_closed_form(ctx, "std"), ref) + 1e-15


def test_critical_depth():
    h = critical_depth()
    assert 1.362 < h < 1.364
    assert abs(e_wb(h)) <= 1e-13
    assert e_wb(1.2) < 0 < e_wb(1.5)
    assert decouple(make_depth_context(h)).eta_wb == pytest.approx(5.65555, abs=5e-4)
    assert critical_depth() == h


def test_bracket_failure():
    with pytest.raises(BracketFailure):
        critical_depth((1.5, 2.0))


def test_singular_sylvester():
    ctx = make_depth_context(1.0)
    k = bf_coefficients_closed_form(ctx)
    bad = type(k)(**{**k.as_dict(), "e12": 2.0})
    with pytest.raises(SingularSylvester):
        decouple(ctx, bad)
