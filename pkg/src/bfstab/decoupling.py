"""Block decoupling of the reduced matrix and the Benjamin-Feir depth function."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Literal

import numpy as np
from scipy.optimize import brentq

from .depth import DepthContext, make_depth_context
from .errors import BracketFailure, SingularSylvester
from .extended import DD, dd_horner, poly_coeffs
from .reduced import BFCoefficients, bf_coefficients_closed_form
from .stokes import cpoly

Precision = Literal["std", "extended"]
SINGULAR_TOL = 1e-12


@dataclass(frozen=True)
class DecouplingData:
    """Jets of the decoupling generator and the resulting depth functions."""

    D_h: float
    x11_1: float
    x12_1: float
    x21_1: float
    x22_1: float
    x21_3: float
    x22_3: float
    e_wb: float
    eta_wb: float
    e11_tilde: float
    eta11_tilde_a: float
    eta11_tilde_b: float

    def as_dict(self) -> dict[str, float]:
        return asdict(self)


def _solve2(m: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    return np.linalg.solve(m, rhs)


def decouple(ctx: DepthContext, coeffs: BFCoefficients | None = None) -> DecouplingData:
    """Solve the Sylvester jets in closed form and assemble ``e_WB`` and ``eta_WB``."""
    k = coeffs if coeffs is not None else bf_coefficients_closed_form(ctx)
    c, h = ctx.c, ctx.h
    D = h - 0.25 * k.e12**2
    if abs(D) <= SINGULAR_TOL * max(1.0, h):
        raise SingularSylvester(f"D_h = {D!r} vanishes at h = {h}")
    sc = c**-0.5
    x21 = -0.5 / D * (k.e12 * k.f11 + 2.0 * sc)
    x22 = 0.5 / D * (sc * k.e12 + 2.0 * h * k.f11)
    x11 = (k.e12 * k.e22 * x21 / 16.0 - 0.5 * k.e12 * k.phi21 + k.phi22
           - k.e22 * x22 / 8.0) / D
    x12 = (h * k.e22 * x21 / 8.0 - h * k.phi21 + 0.5 * k.e12 * k.phi22
           - k.e12 * k.e22 * x22 / 16.0) / D
    g = k.gamma12 + k.eta12
    x21_3 = (-0.5 * k.e11 * k.e12 * x11 + 0.5 * g * k.e12 * x21 + 0.5 * k.e12 * k.gamma11 * x22
             - 0.5 * k.phi11 * k.e12 - k.e11 * x12 - k.gamma22 * x21 - g * x22 - k.phi12) / D
    x22_3 = (h * k.e11 * x11 - h * g * x21 - h * k.gamma11 * x22 + h * k.phi11
             + 0.5 * k.e11 * k.e12 * x12 + 0.5 * k.e12 * k.gamma22 * x21
             + 0.5 * k.e12 * g * x22 + 0.5 * k.e12 * k.phi12) / D
    e11_tilde = -(1.0 / c + h * k.f11**2 + k.e12 * k.f11 * sc) / D
    eta_a = x21 * k.phi12 + x21_3 * sc - x22 * k.phi11 - x22_3 * k.f11
    eta_b = (1.5 * x21**2 * x22 * k.phi22 + x21**2 * x12 * sc - 1.5 * x21 * x12 * x22 * k.f11
             + 1.5 * x22**2 * x21 * k.phi21 - 1.5 * x22 * x11 * x21 * sc + x22**2 * x11 * k.f11)
    return DecouplingData(
        D_h=D, x11_1=x11, x12_1=x12, x21_1=x21, x22_1=x22, x21_3=x21_3, x22_3=x22_3,
        e_wb=k.e11 + e11_tilde, eta_wb=k.eta11 + eta_a + eta_b,
        e11_tilde=e11_tilde, eta11_tilde_a=eta_a, eta11_tilde_b=eta_b,
    )


def sylvester_residuals(ctx: DepthContext, coeffs: BFCoefficients | None = None) -> dict[str, float]:
    """Residuals of the three two-by-two systems solved by :func:`decouple`."""
    k = coeffs if coeffs is not None else bf_coefficients_closed_form(ctx)
    d = decouple(ctx, k)
    h, sc = ctx.h, ctx.c**-0.5
    lower = np.array([[-0.5 * k.e12, -1.0], [-h, -0.5 * k.e12]])
    upper = np.array([[-0.5 * k.e12, 1.0], [h, -0.5 * k.e12]])
    g = k.gamma12 + k.eta12
    r1 = lower @ [d.x21_1, d.x22_1] - np.array([-k.f11, sc])
    r2 = upper @ [d.x11_1, d.x12_1] - np.array([k.e22 * d.x21_1 / 8.0 - k.phi21,
                                                 k.phi22 - k.e22 * d.x22_1 / 8.0])
    r3 = lower @ [d.x21_3, d.x22_3] - np.array([
        -k.e11 * d.x11_1 + g * d.x21_1 + k.gamma11 * d.x22_1 - k.phi11,
        k.e11 * d.x12_1 + k.gamma22 * d.x21_1 + g * d.x22_1 + k.phi12,
    ])
    return {"first": float(np.max(np.abs(r1))), "mixed": float(np.max(np.abs(r2))),
            "third": float(np.max(np.abs(r3)))}


def e_wb_closed_form(ctx: DepthContext) -> float:
    """Closed form of the Benjamin-Feir depth function ``e_WB``."""
    c, h = ctx.c, ctx.h
    c4 = c**4
    e12 = c + (1.0 - c4) * h / c
    D = h - 0.25 * e12**2
    first = cpoly(c, {8: 9, 4: -10, 0: 9}) / (8.0 * c**6)
    second = (1.0 + 0.5 * (1.0 - c4) + 0.75 * (1.0 - c4) ** 2 * h / (c * c)) / D
    return (first - second) / c


def e_wb(h: float) -> float:
    """Assembled ``e_WB`` at depth ``h``."""
    return decouple(make_depth_context(h)).e_wb


def critical_depth(bracket: tuple[float, float] = (1.0, 2.0), tol: float = 1e-13) -> float:
    """Root ``h_WB`` of ``e_WB``; raise :class:`BracketFailure` without a sign change."""
    lo, hi = bracket
    flo, fhi = e_wb(lo), e_wb(hi)
    if not (math.isfinite(flo) and math.isfinite(fhi)) or flo * fhi > 0.0:
        raise BracketFailure(f"e_WB has no sign change on [{lo}, {hi}]")
    root = brentq(e_wb, lo, hi, xtol=1e-15, rtol=4.0 * np.finfo(float).eps, maxiter=200)
    # polish: pick the best of the neighbouring doubles
    cands = [root, np.nextafter(root, lo), np.nextafter(root, hi)]
    root = min(cands, key=lambda x: abs(e_wb(x)))
    if abs(e_wb(root)) > tol:
        raise BracketFailure(f"|e_WB(h)| = {abs(e_wb(root)):.3e} above {tol}")
    return float(root)


# Bracket of the closed-form eta_WB: {power of h: (power of (c^4-1)^2, power of c, {c-exp: coef})}
_ETA_WB_TERMS: dict[int, tuple[float, int, int, dict[int, int]]] = {
    0: (1, 0, 16, {26: 476, 24: 532, 22: -3973, 20: -4361, 18: 17173, 16: 17557, 14: -37778,
                   12: -37754, 10: -8898, 8: -8442, 6: 855, 4: 963, 2: 81, 0: 81}),
    1: (-8, 0, 14, {30: 432, 28: 480, 26: -3057, 24: -3361, 22: 11452, 20: 11544, 18: -25989,
                    16: -25749, 14: 3928, 12: 4384, 10: -555, 8: -171, 6: 396, 4: 504,
                    2: 81, 0: 81}),
    2: (4, 0, 12, {34: 2612, 32: 2876, 30: -15531, 28: -17239, 26: 44053, 24: 44277,
                   22: -82191, 20: -81283, 18: 5921, 16: 9353, 14: 6831, 12: 10203,
                   10: 23007, 8: 24975, 6: -117, 4: 639, 2: 567, 0: 567}),
    3: (-8, 0, 10, {38: 2128, 36: 2304, 34: -11055, 32: -12463, 30: 19370, 28: 20126,
                    26: -5794, 24: -5594, 22: -51646, 20: -49154, 18: 57448, 16: 59416,
                    14: -28802, 12: -26582, 10: 32754, 8: 33786, 6: -2682, 4: -1926,
                    2: 567, 0: 567}),
    4: (2, 0, 8, {42: 8020, 40: 8380, 38: -41279, 36: -46795, 34: 49331, 32: 57267,
                  30: 86052, 28: 84516, 26: -274180, 24: -267924, 22: 176654, 20: 178806,
                  18: 104434, 16: 101746, 14: -211660, 12: -205420, 10: 181752,
                  8: 181152, 6: -24615, 4: -20835, 2: 2835, 0: 2835}),
    5: (-8, 1, 6, {38: 1072, 36: 1024, 34: -4711, 32: -5399, 30: 4546, 28: 5302, 26: -4162,
                   24: -3850, 22: 13442, 20: 15070, 18: -11088, 16: -10992, 14: -9066,
                   12: -7806, 10: 29442, 8: 29466, 6: -5706, 4: -4950, 2: 567, 0: 567}),
    6: (4, 2, 4, {34: 564, 32: 380, 30: -3755, 28: -4087, 26: 8917, 24: 9557, 22: -15215,
                  20: -14499, 18: 9953, 16: 10313, 14: -8273, 12: -7109, 10: 24159,
                  8: 24111, 6: -6165, 4: -5409, 2: 567, 0: 567}),
    7: (-8, 3, 2, {30: 16, 28: -32, 26: -521, 24: -489, 22: 1252, 20: 1344, 18: -1853,
                   16: -1901, 14: -512, 12: -344, 10: 3333, 8: 3285, 6: -900, 4: -792,
                   2: 81, 0: 81}),
    8: (-1, 4, 0, {26: 36, 24: 108, 22: 261, 20: 73, 18: -1429, 16: -1237, 14: 3666,
                   12: 3450, 10: -3774, 8: -3654, 6: 873, 4: 765, 2: -81, 0: -81}),
}


def eta_wb_closed_form(ctx: DepthContext, precision: Precision = "extended") -> float:
    """Closed-form polynomial expression of ``eta_WB``.

    ``precision="extended"`` evaluates in double-double arithmetic, which is the
    intended cross-check path: the bracket cancels heavily as ``c -> 1``.
    """
    c, h = ctx.c, ctx.h
    if precision == "extended":
        C = DD(c)
        one_m = C**4 - 1.0
        w = one_m * one_m
        total = DD(0.0)
        hp = DD(1.0)
        for m in range(9):
            scale, wpow, cpow, poly = _ETA_WB_TERMS[m]
            term = dd_horner(poly_coeffs(poly), C) * (C**cpow) * (w**wpow) * hp * float(scale)
            total = total + term
            hp = hp * h
        den = C**4 - (C**4 + 1.0) * C * C * (2.0 * h) + w * (h * h)
        den4 = den**4
        out = total / (den4 * (C**19) * (C * C + 1.0) * 256.0)
        return float(out)
    w = (c**4 - 1.0) ** 2
    total = 0.0
    for m in range(9):
        scale, wpow, cpow, poly = _ETA_WB_TERMS[m]
        total += scale * cpoly(c, poly) * c**cpow * w**wpow * h**m
    den = c**4 - 2.0 * (c**4 + 1.0) * h * c * c + w * h * h
    return total / (256.0 * c**19 * (c * c + 1.0) * den**4)
