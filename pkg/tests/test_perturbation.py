import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.optimize import linear_sum_assignment

from bfstab.conjugation import conjugation_closed_form
from bfstab.depth import make_depth_context
from bfstab.floquet import assemble_floquet, near_zero_spectrum
from bfstab.perturbation import KEYS, BiSeries, PerturbationEngine
from bfstab.reduced import NAMES, bf_coefficients_closed_form
from conftest import rel


def _eval(s: BiSeries, mu: float, eps: float) -> float:
    return sum(s.coef[i, j] * mu**i * eps**j for i, j in KEYS)


@settings(max_examples=30)
@given(st.floats(min_value=0.5, max_value=3.0), st.floats(min_value=-2.0, max_value=2.0),
       st.floats(min_value=-1.0, max_value=1.0))
def test_biseries_tanh_and_recip(h, k, f2):
    xi = BiSeries.const(k)
    xi.coef[1, 0] = 1.0
    depth = BiSeries.const(h)
    depth.coef[0, 2] = f2
    sym = xi * (depth * xi).tanh()
    mu, eps = 1e-4, 1e-3
    exact = (k + mu) * math.tanh((h + f2 * eps**2) * (k + mu))
    assert _eval(sym, mu, eps) == pytest.approx(exact, abs=1e-11)
    inv = (depth + 1.0).recip()
    assert _eval(inv, mu, eps) == pytest.approx(1.0 / (h + 1.0 + f2 * eps**2), rel=1e-12)


def test_operator_jets_are_hermitian(ctx):
    eng = PerturbationEngine(ctx, conjugation_closed_form(ctx))
    for key, m in eng.operator.terms.items():
        assert np.abs(m - m.conj().T).max() <= 1e-13, key


def test_projector_is_idempotent_order_by_order():
    ctx = make_depth_context(1.3)
    eng = PerturbationEngine(ctx, conjugation_closed_form(ctx))
    P = eng.projector
    P2 = P @ P
    for key in KEYS:
        assert np.abs(P2[key] - P[key]).max() <= 1e-10 * max(1.0, np.abs(P[key]).max()), key


def test_engine_matches_closed_forms_except_eta12_gamma12(ctx):
    eng = PerturbationEngine(ctx, conjugation_closed_form(ctx))
    got, want = eng.coefficients().as_dict(), bf_coefficients_closed_form(ctx).as_dict()
    for name in NAMES:
        if name not in ("eta12", "gamma12"):
            assert rel(got[name], want[name]) <= 1e-9, name


def test_gamma12_sign_is_opposite_to_closed_form(ctx):
    eng = PerturbationEngine(ctx, conjugation_closed_form(ctx))
    got, want = eng.coefficients().gamma12, bf_coefficients_closed_form(ctx).gamma12
    assert rel(got, -want) <= 1e-9


def test_eta12_gap_is_the_mixed_depth_symbol_term(ctx):
    # the engine keeps the mu eps^2 jet of |D+mu| tanh((h+f)|D+mu|); the closed form omits it
    conj = conjugation_closed_form(ctx)
    eng = PerturbationEngine(ctx, conj)
    c, h = ctx.c, ctx.h
    gap = eng.coefficients().eta12 - bf_coefficients_closed_form(ctx).eta12
    assert gap == pytest.approx(conj.f2 * (1 - c**4) * (1 - h * c * c) / c, rel=1e-9)


def test_vanishing_coefficients(ctx):
    eng = PerturbationEngine(ctx, conjugation_closed_form(ctx))
    for name, v in eng.vanishing_coefficients().items():
        assert abs(v) <= 1e-12, name


def _reduced_eigs(eng: PerturbationEngine, mu: float, eps: float, eta12_shift: float = 0.0):
    names = ["f1p", "f1m", "f0p", "f0m"]
    B = np.zeros((4, 4), dtype=complex)
    for i, j in KEYS:
        for a, g in enumerate(names):
            for b, f in enumerate(names):
                B[a, b] += eng.entry((i, j), f, g) * mu**i * eps**j
    B[0, 1] += 1j * eta12_shift * mu * eps**2
    B[1, 0] -= 1j * eta12_shift * mu * eps**2
    J4 = np.kron(np.eye(2), np.array([[0.0, 1.0], [-1.0, 0.0]]))
    return np.linalg.eigvals(1j * eng.ctx.c * mu * np.eye(4) + J4 @ B)


def _distance(a, b) -> float:
    cost = np.abs(a[:, None] - b[None, :])
    r, s = linear_sum_assignment(cost)
    return float(cost[r, s].max())


def test_reduced_matrix_eigenvalues_match_oracle_with_engine_eta12():
    ctx = make_depth_context(1.5)
    conj = conjugation_closed_form(ctx)
    eng = PerturbationEngine(ctx, conj)
    mu, eps = 1e-3, 1e-2
    oracle = near_zero_spectrum(assemble_floquet(ctx, conj, eps, mu)).eigenvalues
    gap = eng.coefficients().eta12 - bf_coefficients_closed_form(ctx).eta12
    err_engine = _distance(_reduced_eigs(eng, mu, eps), oracle)
    err_closed = _distance(_reduced_eigs(eng, mu, eps, -gap), oracle)
    assert err_engine < 0.25 * err_closed
    assert err_engine <= 1e-9


def test_engine_coefficients_predict_oracle_at_critical_depth():
    # at h_WB the eps^4 balance is sensitive to the gamma12 sign and the eta12 jet
    from bfstab.decoupling import critical_depth, decouple
    from bfstab.spectrum import predict, unstable_mu_window
    ctx = make_depth_context(critical_depth())
    conj = conjugation_closed_form(ctx)
    eps = 0.01
    dec_engine = decouple(ctx, PerturbationEngine(ctx, conj).coefficients())
    mu = 0.3 * unstable_mu_window(ctx, dec_engine, eps)
    oracle = near_zero_spectrum(assemble_floquet(ctx, conj, eps, mu)).max_real
    engine_pred = predict(ctx, dec_engine, mu, eps).lam1_plus.real
    closed_pred = predict(ctx, decouple(ctx), mu, eps).lam1_plus.real
    assert abs(engine_pred - oracle) <= 0.05 * oracle
    assert closed_pred > 1.5 * oracle
