"""Benjamin-Feir discriminant, predicted eigenvalues, figure-8 curves and stability region."""

from __future__ import annotations

import cmath
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq

from .decoupling import DecouplingData, critical_depth, decouple
from .depth import DepthContext, make_depth_context
from .errors import BracketFailure, EmptyWindow, OutOfRange
from .reduced import bf_coefficients_closed_form

MU_CAP = 0.5
EPS_CAP = 0.1


def _check(mu: float, eps: float) -> None:
    if not (0.0 <= mu < MU_CAP):
        raise OutOfRange(f"mu = {mu!r} outside [0, {MU_CAP})")
    if not abs(eps) <= EPS_CAP:
        raise OutOfRange(f"|eps| = {abs(eps)!r} above {EPS_CAP}")


@dataclass(frozen=True)
class DiscriminantEval:
    """Truncated discriminant ``8 e_WB eps^2 + 8 eta_WB eps^4 - e22 mu^2``."""

    value: float
    components: dict[str, float]
    sign: int


@dataclass(frozen=True)
class EigenPrediction:
    """Predicted eigenvalues of the Benjamin-Feir and the zero-mode blocks."""

    h: float
    mu: float
    eps: float
    lam1_plus: complex
    lam1_minus: complex
    lam0_plus: complex
    lam0_minus: complex
    real_split: bool

    def as_list(self) -> list[complex]:
        return [self.lam1_plus, self.lam1_minus, self.lam0_plus, self.lam0_minus]


@dataclass(frozen=True)
class StabilityRegion:
    """Signs of ``max_mu`` of the discriminant on an ``(h, eps)`` grid and the boundary curve."""

    depths: np.ndarray
    amplitudes: np.ndarray
    signs: np.ndarray
    boundary: list[tuple[float, float]]
    h_wb: float
    fitted_coefficient: float
    predicted_coefficient: float
    fit_amplitudes: np.ndarray = field(repr=False)


def discriminant(ctx: DepthContext, dec: DecouplingData, mu: float, eps: float) -> DiscriminantEval:
    """Evaluate the truncated discriminant; all remainders are dropped."""
    _check(mu, eps)
    e22 = bf_coefficients_closed_form(ctx).e22
    parts = {"e_wb": 8.0 * dec.e_wb * eps**2, "eta_wb": 8.0 * dec.eta_wb * eps**4,
             "mu": -e22 * mu**2}
    value = parts["e_wb"] + parts["eta_wb"] + parts["mu"]
    return DiscriminantEval(value=value, components=parts, sign=int(np.sign(value)))


def unstable_mu_window(ctx: DepthContext, dec: DecouplingData, eps: float) -> float:
    """Upper end ``mu_bar`` of the unstable window, or 0 when it is empty."""
    top = 8.0 * dec.e_wb * eps**2 + 8.0 * dec.eta_wb * eps**4
    if top <= 0.0:
        return 0.0
    return math.sqrt(top / bf_coefficients_closed_form(ctx).e22)


def s_block_eigs(ctx: DepthContext, mu: float, eps: float = 0.0) -> tuple[complex, complex]:
    """Truncated zero-mode eigenvalues ``i c mu +- i sqrt(mu tanh(h mu))``."""
    _check(mu, eps)
    w = math.sqrt(mu * math.tanh(ctx.h * mu))
    return 1j * (ctx.c * mu + w), 1j * (ctx.c * mu - w)


def predict(ctx: DepthContext, dec: DecouplingData, mu: float, eps: float) -> EigenPrediction:
    """Predicted four eigenvalues near zero at ``(mu, eps)``."""
    k = bf_coefficients_closed_form(ctx)
    d = discriminant(ctx, dec, mu, eps).value
    centre = 1j * (ctx.c - 0.5 * k.e12) * mu
    root = (mu / 8.0) * cmath.sqrt(k.e22 * d)
    l0p, l0m = s_block_eigs(ctx, mu, eps)
    return EigenPrediction(h=ctx.h, mu=mu, eps=eps, lam1_plus=centre + root,
                           lam1_minus=centre - root, lam0_plus=l0p, lam0_minus=l0m,
                           real_split=d > 0.0)


def clustered_grid(upper: float, samples: int) -> np.ndarray:
    """Cosine-clustered nodes on ``[0, upper]`` including both endpoints."""
    t = np.linspace(0.0, math.pi, samples)
    return 0.5 * upper * (1.0 - np.cos(t))


def figure8(ctx: DepthContext, dec: DecouplingData, eps: float,
            samples: int = 64) -> list[tuple[float, complex, complex]]:
    """Samples ``(mu, lam1_plus, lam1_minus)`` across the unstable window."""
    mu_bar = unstable_mu_window(ctx, dec, eps)
    if mu_bar <= 0.0:
        raise EmptyWindow(f"no unstable window at h = {ctx.h}, eps = {eps}")
    if samples < 2:
        raise OutOfRange("figure8 needs at least two samples")
    out = []
    mus = clustered_grid(mu_bar, samples)
    for j, mu in enumerate(mus):
        p = predict(ctx, dec, float(mu), eps)
        lp, lm = p.lam1_plus, p.lam1_minus
        if j in (0, samples - 1):
            # the discriminant vanishes at both ends of the window
            lp, lm = complex(0.0, lp.imag), complex(0.0, lm.imag)
        out.append((float(mu), lp, lm))
    return out


def max_real_part(ctx: DepthContext, dec: DecouplingData, eps: float, samples: int = 2001) -> float:
    """Maximum over the window of the predicted ``Re lam1_plus``."""
    mu_bar = unstable_mu_window(ctx, dec, eps)
    if mu_bar <= 0.0:
        return 0.0
    k = bf_coefficients_closed_form(ctx)
    top = 8.0 * dec.e_wb * eps**2 + 8.0 * dec.eta_wb * eps**4
    mus = np.linspace(0.0, mu_bar, samples)
    vals = (mus / 8.0) * np.sqrt(np.maximum(k.e22 * (top - k.e22 * mus**2), 0.0))
    # closed-form maximiser mu = mu_bar / sqrt(2)
    exact = (mu_bar / math.sqrt(2.0) / 8.0) * math.sqrt(k.e22 * top / 2.0)
    return float(max(vals.max(), exact))


def _boundary_depth(eps: float, h_wb: float, span: tuple[float, float]) -> float:
    def f(h: float) -> float:
        d = decouple(make_depth_context(h))
        return d.e_wb + d.eta_wb * eps**2

    lo, hi = span
    if f(lo) * f(hi) > 0.0:
        raise BracketFailure(f"no boundary in [{lo}, {hi}] at eps = {eps}")
    return brentq(f, lo, hi, xtol=1e-15, rtol=1e-15)


def stability_region(depth_range: tuple[float, float] = (1.0, 2.0), eps_max: float = 0.05,
                     grid: tuple[int, int] = (16, 16), workers: int = 1,
                     fit_range: tuple[float, float] = (0.005, 0.03),
                     fit_points: int = 12) -> StabilityRegion:
    """Sign map of ``max_mu`` discriminant and the boundary ``h_WB + hbar(eps)``.

    The quadratic coefficient of ``hbar`` is fitted by least squares on
    ``{eps^2, eps^4}`` and compared with ``eta_WB / e_WB'`` at ``h_WB``.
    """
    nh, ne = grid
    if nh < 16 or ne < 16:
        raise OutOfRange("stability grid needs at least 16 points per axis")
    if not 0.0 < eps_max <= EPS_CAP:
        raise OutOfRange(f"eps_max = {eps_max!r} outside (0, {EPS_CAP}]")
    depths = np.linspace(depth_range[0], depth_range[1], nh)
    amps = np.linspace(0.0, eps_max, ne)

    def column(h: float) -> np.ndarray:
        d = decouple(make_depth_context(float(h)))
        top = 8.0 * d.e_wb * amps**2 + 8.0 * d.eta_wb * amps**4
        return np.sign(top).astype(int)

    with ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
        signs = np.array(list(pool.map(column, depths)))

    h_wb = critical_depth()
    span = (max(depth_range[0], 0.5), h_wb + 0.1)
    boundary = [(0.0, h_wb)]
    for eps in amps[1:]:
        try:
            boundary.append((float(eps), _boundary_depth(float(eps), h_wb, span)))
        except BracketFailure:
            continue

    fit_eps = np.linspace(fit_range[0], fit_range[1], fit_points)
    hbar = np.array([_boundary_depth(float(e), h_wb, span) - h_wb for e in fit_eps])
    design = np.column_stack([fit_eps**2, fit_eps**4])
    sol, *_ = np.linalg.lstsq(design, hbar, rcond=None)
    fitted = -float(sol[0])

    step = 1e-6
    de = (decouple(make_depth_context(h_wb + step)).e_wb
          - decouple(make_depth_context(h_wb - step)).e_wb) / (2.0 * step)
    predicted = decouple(make_depth_context(h_wb)).eta_wb / de
    return StabilityRegion(depths=depths, amplitudes=amps, signs=signs, boundary=boundary,
                           h_wb=h_wb, fitted_coefficient=fitted,
                           predicted_coefficient=predicted, fit_amplitudes=fit_eps)
