import numpy as np
import pytest

from bfstab.conjugation import conjugation_closed_form
from bfstab.perturbation import PerturbationEngine
from bfstab.projector import projector_assembly, projector_jets
from conftest import rel


def test_closed_form_spot_values(ctx):
    c = ctx.c
    j = projector_jets(ctx)
    assert j.u01 == pytest.approx(0.25 * c**-2.5 * (3 + c**4), rel=1e-14)
    assert j.n02 == pytest.approx((c**12 + c**8 - 9 * c**4 - 9) / (8 * c**12), rel=1e-13)


def test_assembly_reproduces_closed_forms(ctx):
    j = projector_jets(ctx)
    asm = projector_assembly(ctx, conjugation_closed_form(ctx))
    for name in ("n02", "u02p", "u02m"):
        assert rel(asm[name], getattr(j, name)) <= 1e-11, name
    for tag in ("02", "11", "03", "12"):
        assert rel(asm["ab" + tag], [getattr(j, "a" + tag), getattr(j, "b" + tag)]) <= 1e-11, tag
    assert rel(asm["J2p"], asm["J2p_check"]) <= 1e-11


def test_second_mixed_jet_reduces_to_rational_form(ctx):
    c = ctx.c
    asm = projector_assembly(ctx, conjugation_closed_form(ctx))
    assert rel(asm["ab12"][0], -(c**4 + 3) / (4 * c**7)) <= 1e-11
    assert rel(asm["ab11"], -asm["Q2p"] + asm["S2p"] - asm["mu_h"] * asm["J2p"]) <= 1e-11


def test_perturbation_engine_reproduces_projector_actions(ctx):
    eng = PerturbationEngine(ctx, conjugation_closed_form(ctx))
    j = projector_jets(ctx)
    kb, tc = eng.kernel_basis, eng.basis.trig_coeffs
    act = eng.projector_action

    def harmonic(v, k, factor=1.0):
        return [tc(v, 0, k)[0] / factor, tc(v, 1, k)[1] / factor]

    assert rel(harmonic(act((0, 1), "f1p"), 2), [j.a01, j.b01]) <= 1e-11
    assert np.abs(act((0, 1), "f0p") - j.u01 * kb["fm1p"]).max() <= 1e-11
    assert np.abs(act((1, 0), "f1p") - 1j * j.u10 * kb["fm1m"]).max() <= 1e-11
    assert np.abs(act((1, 0), "f1m") - 1j * j.u10 * kb["fm1p"]).max() <= 1e-11
    assert np.abs(act((1, 1), "f0m") + 0.5j * ctx.c**-1.5 * kb["fm1p"]).max() <= 1e-11
    assert rel(harmonic(act((1, 1), "f1m"), 2, 1j), [j.a11, j.b11]) <= 1e-10
    assert rel(harmonic(act((1, 2), "f0m"), 2, 1j), [j.a12, j.b12]) <= 1e-10
    assert rel(harmonic(act((0, 3), "f1p"), 2), [j.a03, j.b03]) <= 1e-10
    rest = act((0, 2), "f1p") - j.n02 * kb["f1p"] - j.u02p * kb["fm1p"]
    assert rel(harmonic(rest, 3), [j.a02, j.b02]) <= 1e-11
    assert max(abs(x) for comp in (0, 1) for x in tc(rest, comp, 1)) <= 1e-11 * abs(j.a02)
