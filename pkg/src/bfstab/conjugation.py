"""Expansions of the straightening diffeomorphism and the conjugated coefficients.

The closed forms give the amplitude expansions of the shift ``pfrak``, the depth
correction ``f``, the trace velocities ``B``, ``V`` and the functions ``p``, ``a``
entering the linearized operator. The derivation route recomputes all of them
from Stokes jets by solving the shift fixed point order by order.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from .depth import DepthContext
from .errors import CompositionOverflow, PreconditionError, SolvabilityViolation
from .fourier import JetField, ScalarJet, cos_coeffs, sin_coeffs, wavenumbers
from .stokes import StokesExpansion, cpoly, stokes_jets

STOKES_ORDER = 4
ODD_MEAN_TOL = 1e-10


@dataclass(frozen=True)
class ConjugationExpansion:
    """Fourier coefficients ``name{order}_{harmonic}`` of the conjugation data.

    ``pf`` is the sine series of the shift, ``f`` the depth correction, ``b`` the
    sine series of ``B``, ``v`` the cosine series of ``V``, ``p`` and ``a`` the
    cosine series of the operator coefficients.
    """

    pf1_1: float
    pf2_2: float
    pf3_1: float
    pf3_3: float
    pf4_2: float
    pf4_4: float
    f2: float
    f3: float
    f4: float
    b1_1: float
    b2_2: float
    b3_1: float
    b3_3: float
    b4_2: float
    b4_4: float
    v1_1: float
    v2_0: float
    v2_2: float
    v3_1: float
    v3_3: float
    v4_0: float
    v4_2: float
    v4_4: float
    p1_1: float
    p2_0: float
    p2_2: float
    p3_1: float
    p3_3: float
    p4_0: float
    p4_2: float
    p4_4: float
    a1_1: float
    a2_0: float
    a2_2: float
    a3_1: float
    a3_3: float
    a4_0: float
    a4_2: float
    a4_4: float

    def coefficients(self) -> dict[str, float]:
        return asdict(self)

    def _modes(self, prefix: str) -> list[np.ndarray]:
        d = asdict(self)
        out = []
        for j in range(STOKES_ORDER + 1):
            m = np.zeros(STOKES_ORDER + 1)
            for k in range(STOKES_ORDER + 1):
                m[k] = d.get(f"{prefix}{j}_{k}", 0.0)
            out.append(m)
        return out

    def p_modes(self) -> list[np.ndarray]:
        """Cosine coefficients of ``p`` for amplitude orders ``0..4``."""
        return self._modes("p")

    def a_modes(self) -> list[np.ndarray]:
        """Cosine coefficients of ``a`` for amplitude orders ``0..4``."""
        return self._modes("a")

    def f_jet(self) -> ScalarJet:
        return ScalarJet([0.0, 0.0, self.f2, self.f3, self.f4])


def conjugation_closed_form(ctx: DepthContext) -> ConjugationExpansion:
    """Evaluate the rational closed forms of every conjugation coefficient."""
    c = ctx.c
    P = lambda t: cpoly(c, t)  # noqa: E731
    s1 = c * c + 1.0
    s5 = c**4 + 5.0
    return ConjugationExpansion(
        pf1_1=1.0 / (c * c),
        pf2_2=P({0: 3, 4: 4, 8: 1}) / (8.0 * c**8),
        pf3_1=P({14: 4, 12: 2, 10: -17, 8: -14, 6: 10, 4: 10, 2: -15, 0: -12}) / (16.0 * c**10 * s1),
        pf3_3=P({0: 9, 4: 41, 8: 43, 12: 3}) / (64.0 * c**14),
        pf4_2=-P({24: 8, 22: -57, 20: -37, 18: 199, 16: 175, 14: 238, 12: 190, 10: -130,
                  8: -178, 6: 171, 4: 135, 2: 27, 0: 27}) / (256.0 * c**20 * s1),
        pf4_4=P({24: 1, 20: 44, 16: 557, 12: 2528, 8: 3595, 4: 1332, 0: 135}) / (512.0 * c**20 * s5),
        f2=(c**4 - 3.0) / (4.0 * c * c),
        f3=0.0,
        f4=P({22: -4, 20: -8, 18: 5, 16: 23, 14: 40, 12: 22, 10: -78, 8: -72, 6: 72, 4: 54,
              2: -27, 0: -27}) / (64.0 * c**14 * s1),
        b1_1=c,
        b2_2=(3.0 - 2.0 * c**4) / (2.0 * c**5),
        b3_1=P({0: 6, 2: 3, 4: -8, 6: -8, 8: 6, 10: 3, 12: -4, 14: -2}) / (16.0 * c**7 * s1),
        b3_3=P({0: 81, 4: -99, 8: 43, 12: -1}) / (64.0 * c**11),
        b4_2=P({22: -24, 20: 24, 18: 354, 16: 210, 14: -943, 12: -835, 10: 927, 8: 855,
                6: -81, 4: 27, 2: -81, 0: -81}) / (192.0 * c**17 * s1),
        b4_4=P({20: 6, 16: -47, 12: -100, 8: 522, 4: -594, 0: 405}) / (96.0 * c**17 * s5),
        v1_1=1.0 / c,
        v2_0=c / 2.0,
        v2_2=(3.0 - c**8) / (4.0 * c**7),
        v3_1=P({12: 2, 8: -15, 6: -12, 4: 24, 2: 24, 0: -3}) / (16.0 * c**7 * s1),
        v3_3=P({12: 21, 8: -39, 4: 15, 0: 27}) / (64.0 * c**13),
        v4_0=P({18: -2, 16: -6, 14: 3, 12: 9, 6: -33, 4: -27, 2: 36, 0: 36}) / (32.0 * c**11 * s1),
        v4_2=P({26: 12, 24: 36, 22: -9, 20: -45, 18: 357, 16: 285, 14: -1060, 12: -988,
                10: 1584, 8: 1584, 6: -243, 4: -135, 2: -81, 0: -81}) / (384.0 * c**19 * s1),
        v4_4=P({24: 9, 20: -96, 16: -377, 12: 1484, 8: -1413, 4: 756, 0: 405}) / (384.0 * c**19 * s5),
        p1_1=-2.0 / c,
        p2_0=P({0: 9, 4: 12, 8: 5, 12: -2}) / (16.0 * c**7),
        p2_2=-(3.0 + c**4) / (2.0 * c**7),
        p3_1=P({14: -2, 10: 14, 8: 11, 6: -10, 4: -10, 2: 24, 0: 21}) / (8.0 * c**9 * s1),
        p3_3=-P({12: 1, 8: 17, 4: 51, 0: 27}) / (32.0 * c**13),
        p4_0=P({30: 56, 28: 88, 26: -208, 24: -336, 22: 441, 20: 369, 18: -995, 16: -899,
                14: -630, 12: -294, 10: 1026, 8: 1314, 6: -27, 4: 189, 2: 81, 0: 81})
        / (1024.0 * c**19 * s1),
        p4_2=P({22: -12, 20: -4, 18: -19, 16: -7, 14: 350, 12: 314, 10: -256, 8: -268,
                6: 198, 4: 162, 2: 27, 0: 27}) / (64.0 * c**19 * s1),
        p4_4=P({20: -1, 16: -39, 12: -366, 8: -850, 4: -657, 0: -135}) / (64.0 * c**19 * s5),
        a1_1=-(c * c + 1.0 / (c * c)),
        a2_0=1.5 + 1.0 / (2.0 * c**4),
        a2_2=P({8: 9, 4: -14, 0: -3}) / (4.0 * c**8),
        a3_1=P({18: 4, 16: 6, 14: -11, 12: -12, 10: -45, 8: -48, 6: 93, 4: 90, 2: 27, 0: 24})
        / (16.0 * c**10 * s1),
        a3_3=P({16: -1, 12: -98, 8: 252, 4: -318, 0: -27}) / (64.0 * c**14),
        a4_0=P({20: -12, 18: -31, 16: -17, 14: 40, 12: 46, 10: -150, 8: -132, 6: 84, 4: 90,
                2: 9, 0: 9}) / (32.0 * c**16 * s1),
        a4_2=P({24: -72, 22: -431, 20: -211, 18: 1767, 16: 1623, 14: -2142, 12: -2070,
                10: 1022, 8: 854, 6: 333, 4: 297, 2: 27, 0: 27}) / (128.0 * c**20 * s1),
        a4_4=P({24: 9, 20: 238, 16: -233, 12: -1676, 8: 743, 4: -3042, 0: -135})
        / (128.0 * c**20 * s5),
    )


@dataclass(frozen=True)
class ConjugationJets:
    """Grid jets produced by the derivation route."""

    pfrak: JetField
    f: ScalarJet
    B: JetField
    V: JetField
    p: JetField
    a: JetField


def _shift_multiplier(h: float, f: ScalarJet, n: int) -> np.ndarray:
    """Jet of the symbol ``-i sgn(k) / tanh((h + f)|k|)``, shape ``(order+1, n)``."""
    k = wavenumbers(n)
    out = np.zeros((f.order + 1, n), dtype=complex)
    for idx, kk in enumerate(k):
        a = abs(kk)
        if a == 0 or (n % 2 == 0 and idx == n // 2):
            continue
        coth = ((f + h) * a).tanh().recip()
        out[:, idx] = -1j * math.copysign(1.0, kk) * coth.coef
    return out


def conjugation_jets(ctx: DepthContext, stokes: StokesExpansion, N: int = 8,
                     order: int = STOKES_ORDER) -> ConjugationJets:
    """Solve the shift fixed point order by order and build all composed jets."""
    if order > STOKES_ORDER:
        raise CompositionOverflow(f"order {order} exceeds the Stokes order {STOKES_ORDER}")
    if N < 8:
        raise PreconditionError("truncation N must be at least 8")
    n = max(32, 4 * N)
    eta, psi, speed = stokes_jets(stokes, n, order)
    ex = eta.dx()
    px = psi.dx()
    B = (px - speed) * ex / (1.0 + ex * ex)
    V = px - B * ex
    pf = JetField.zeros(order, n)
    f = ScalarJet.const(0.0, order)
    for m in range(1, order + 1):
        comp = eta.compose(pf)
        f.coef[m] = comp.mean()[m]
        mult = _shift_multiplier(ctx.h, f, n)
        spec = np.fft.fft(comp.data[: m + 1], axis=-1)
        acc = sum(mult[j] * spec[m - j] for j in range(m + 1))
        pf.data[m] = np.fft.ifft(acc).real
    pfx = pf.dx()
    inv = (1.0 + pfx).recip()
    c_plus_p = (speed - V.compose(pf)) * inv
    one_plus_a = inv - c_plus_p * B.dx().compose(pf)
    return ConjugationJets(pfrak=pf, f=f, B=B, V=V, p=c_plus_p - ctx.c, a=one_plus_a - 1.0)


def conjugation_derive(ctx: DepthContext, stokes: StokesExpansion, N: int = 8) -> ConjugationExpansion:
    """Derivation route: read every coefficient off the composed jets."""
    jets = conjugation_jets(ctx, stokes, N)
    S = lambda u, j, k: float(sin_coeffs(u.data[j], STOKES_ORDER)[k])  # noqa: E731
    C = lambda u, j, k: float(cos_coeffs(u.data[j], STOKES_ORDER)[k])  # noqa: E731
    vals: dict[str, float] = {}
    for name in ConjugationExpansion.__dataclass_fields__:
        if "_" not in name:
            continue
        head, kk = name.split("_")
        prefix, j, k = head.rstrip("0123456789"), int(head[-1]), int(kk)
        if prefix == "pf":
            vals[name] = S(jets.pfrak, j, k)
        elif prefix == "b":
            vals[name] = S(jets.B, j, k)
        elif prefix == "v":
            vals[name] = C(jets.V, j, k)
        elif prefix == "p":
            vals[name] = C(jets.p, j, k)
        elif prefix == "a":
            vals[name] = C(jets.a, j, k)
    # the odd-order depth shift is the mean of odd harmonics, hence exactly zero
    if abs(jets.f[3]) > ODD_MEAN_TOL * (1.0 + abs(jets.f[2])):
        raise SolvabilityViolation(f"odd-order depth shift {jets.f[3]:.3e}")
    vals["f2"], vals["f3"], vals["f4"] = jets.f[2], 0.0, jets.f[4]
    return ConjugationExpansion(**vals)
