"""Coefficients of the reduced four-by-four matrix near the generalized kernel."""

from __future__ import annotations

from dataclasses import asdict, dataclass

from .conjugation import ConjugationExpansion
from .depth import DepthContext
from .projector import ProjectorJets
from .stokes import cpoly

NAMES = ("e11", "e12", "e22", "f11", "eta11", "eta12", "gamma11", "gamma12", "gamma22",
         "phi11", "phi12", "phi21", "phi22")


@dataclass(frozen=True)
class BFCoefficients:
    """Expansion scalars of the reduced matrix blocks ``E``, ``F`` and ``G``."""

    e11: float
    e12: float
    e22: float
    f11: float
    eta11: float
    eta12: float
    gamma11: float
    gamma12: float
    gamma22: float
    phi11: float
    phi12: float
    phi21: float
    phi22: float

    def as_dict(self) -> dict[str, float]:
        return asdict(self)


def bf_coefficients_closed_form(ctx: DepthContext) -> BFCoefficients:
    """Evaluate the rational closed forms in ``(c, h)``."""
    c, h = ctx.c, ctx.h
    P = lambda t: cpoly(c, t)  # noqa: E731
    c4 = c**4
    return BFCoefficients(
        e11=P({8: 9, 4: -10, 0: 9}) / (8.0 * c**7),
        e12=c + (1.0 - c4) * h / c,
        e22=((1.0 - c4) * (1.0 + 3.0 * c4) * h * h + 2.0 * c * c * (c4 - 1.0) * h + c4) / c**3,
        f11=0.5 * c**-1.5 * (1.0 - c4),
        eta11=P({26: -36, 24: -108, 22: -261, 20: -73, 18: 1429, 16: 1237, 14: -3666,
                 12: -3450, 10: 3774, 8: 3654, 6: -873, 4: -765, 2: 81, 0: 81})
        / (256.0 * c**19 * (c * c + 1.0)),
        eta12=(c * c * P({12: 3, 8: -8, 4: 3, 0: 18})
               - P({16: 1, 12: -2, 8: 12, 4: -38, 0: 27}) * h) / (16.0 * c**9),
        gamma11=P({8: -1, 4: 6, 0: -5}) / (8.0 * c4),
        gamma12=P({12: 2, 8: -1, 0: -9}) / (16.0 * c**7),
        gamma22=(c4 - 5.0) / (4.0 * c * c),
        phi11=P({20: 10, 18: 4, 16: -7, 14: -6, 12: -99, 8: 257, 6: -6, 4: -171, 0: 18})
        / (64.0 * c**13.5),
        phi12=P({18: 2, 16: -2, 14: -33, 12: -27, 10: 34, 8: 34, 6: -33, 4: -27, 2: 18, 0: 18})
        / (32.0 * c**12.5 * (c * c + 1.0)),
        phi21=(c * c * (c4 - 5.0) - (c**8 + 2.0 * c4 - 3.0) * h) / (8.0 * c**3.5),
        phi22=(-c4 * h + c * c + h) / (4.0 * c**2.5),
    )


def bf_coefficients_assemble(ctx: DepthContext, conj: ConjugationExpansion,
                             jets: ProjectorJets, quadratic: BFCoefficients) -> BFCoefficients:
    """Assemble the higher-order scalars from scalar-product reductions.

    Each coefficient is a sum of named pairings of the operator jets with the
    projector jets. The quadratic block data ``e11, e12, e22, f11`` has no hand
    reduction and is taken from ``quadratic``; its independent route is the
    perturbation engine.
    """
    c, h = ctx.c, ctx.h
    k = conj
    j = jets
    sc = c**0.5
    one_m = 1.0 - c**4
    a1, p1 = k.a1_1, k.p1_1
    b_f0_pair = a1 * sc + p1 / sc
    b_f1_pair = a1 * sc - p1 / sc

    gamma11 = k.a2_0 + 0.5 * j.u01 * b_f0_pair
    phi21 = 0.5 * (p1 / sc - j.u10 * sc * a1 - j.u10 * p1 / sc)
    eta12 = (-k.p2_0 - 0.25 * p1 * (j.b01 * sc + j.a01 / sc)
             + j.u10 * (0.5 * c * k.a2_0 + 0.25 * c * k.a2_2 - 0.5 * k.f2 * one_m / c)
             + 0.5 * j.u02m * (c * c + h * one_m) / c
             + 0.25 * sc * a1 * j.a11 - 0.5 * sc * p1 * j.b11 - 0.25 * p1 * j.a11 / sc)
    gamma12 = -k.p2_0 - 0.25 * c**-1.5 * b_f0_pair
    phi11 = (0.5 * k.a3_1 * sc - 0.5 * k.p3_1 / sc + 0.5 * j.a01 * k.a2_2 - j.b01 * k.p2_2
             + 0.25 * j.n02 * b_f1_pair + 0.5 * j.u02p * b_f0_pair)
    phi22 = 0.25 * c**-2.5 * (c * c + h * one_m)
    a3, p3 = k.a3_1 + k.a3_3, k.p3_1 + k.p3_3
    eta11 = (c * k.a4_0 / 2.0 + c * k.a4_2 / 4.0 - k.p4_0 - k.p4_2 / 2.0
             + one_m * (k.f4 - k.f2**2 * c * c) / (2.0 * c)
             + 0.25 * (sc * a3 - p3 / sc) * j.a01 - 0.5 * sc * p3 * j.b01
             + 0.25 * (k.a2_2 * sc - k.p2_2 / sc) * j.a02 - 0.75 * sc * k.p2_2 * j.b02
             + 0.5 * j.u02p * (c * k.a2_0 + 0.5 * c * k.a2_2 - k.f2 * one_m / c)
             + 0.25 * j.a03 * b_f1_pair - 0.5 * j.b03 * sc * p1
             - 0.25 * j.n02 * j.a01 * b_f1_pair + 0.5 * j.n02 * j.b01 * sc * p1)
    gamma22 = k.f2 + p1 / (4.0 * c)
    phi12 = (-0.5 * k.p3_1 * sc - 0.25 * (k.a2_0 + 0.5 * k.a2_2) / sc
             + 0.25 * c**-2.5 * k.f2 * one_m
             + 0.25 * j.a12 * b_f1_pair - 0.5 * j.b12 * sc * p1 + 0.25 * j.n02 * p1 * sc)
    return BFCoefficients(
        e11=quadratic.e11, e12=quadratic.e12, e22=quadratic.e22, f11=quadratic.f11,
        eta11=eta11, eta12=eta12, gamma11=gamma11, gamma12=gamma12, gamma22=gamma22,
        phi11=phi11, phi12=phi12, phi21=phi21, phi22=phi22,
    )
