"""Jets of the spectral projector acting on the generalized-kernel basis.

The closed forms are the production path. :func:`projector_assembly` rebuilds
the second- and third-order jets from intermediate vectors expressed through the
conjugation coefficients; it is the test path for the closed forms.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from .conjugation import ConjugationExpansion
from .depth import DepthContext
from .stokes import cpoly


@dataclass(frozen=True)
class ProjectorJets:
    """Scalar jet coefficients of the projector on the kernel basis.

    Suffix ``ij`` refers to the jet of order ``mu**i eps**j``; ``a``/``b`` are the
    first/second components on the second or third harmonic, ``u`` and ``n`` the
    weights along the kernel and auxiliary vectors.
    """

    a01: float
    b01: float
    u01: float
    u10: float
    n02: float
    u02p: float
    u02m: float
    a02: float
    b02: float
    a11: float
    b11: float
    a03: float
    b03: float
    a12: float
    b12: float
    mu_h: float

    def as_dict(self) -> dict[str, float]:
        return asdict(self)


def projector_jets(ctx: DepthContext, conj: ConjugationExpansion | None = None) -> ProjectorJets:
    """Closed-form projector jets (the conjugation input is accepted for symmetry)."""
    c, h = ctx.c, ctx.h
    P = lambda t: cpoly(c, t)  # noqa: E731
    s1 = c * c + 1.0
    return ProjectorJets(
        a01=0.5 * c**-5.5 * (3.0 + c**4),
        b01=0.25 * c**-6.5 * (1.0 + c**4) * (3.0 - c**4),
        u01=0.25 * c**-2.5 * (3.0 + c**4),
        u10=0.25 * (1.0 + h * (1.0 - c**4) / (c * c)),
        n02=P({12: 1, 8: 1, 4: -9, 0: -9}) / (8.0 * c**12),
        u02p=P({12: -2, 8: -7, 4: 8, 0: 9}) / (32.0 * c**8),
        u02m=P({12: 2, 8: -11, 4: 20, 0: -3}) / (32.0 * c**8),
        a02=3.0 * P({12: 1, 8: 17, 4: 51, 0: 27}) / (64.0 * c**11.5),
        b02=3.0 * P({12: 3, 8: -5, 4: 25, 0: 9}) / (64.0 * c**12.5),
        a11=-(3.0 * (c**8 - 6.0 * c**4 + 5.0) * h - 3.0 * c * c * (c**4 + 3.0)) / (8.0 * c**7.5),
        b11=((c**8 + 8.0 * c**4 - 9.0) * h + 3.0 * (c**6 + c * c)) / (8.0 * c**8.5),
        a03=P({22: 6, 20: 2, 18: 27, 16: 21, 14: -379, 12: -361, 10: 575, 8: 581, 6: -243,
               4: -225, 2: -162, 0: -162}) / (64.0 * c**17.5 * s1),
        b03=P({26: 6, 24: 10, 22: 35, 20: 21, 18: -146, 16: -146, 14: -46, 12: -34, 10: 470,
               8: 482, 6: -333, 4: -315, 2: -162, 0: -162}) / (128.0 * c**18.5 * s1),
        a12=-(c**4 + 3.0) / (4.0 * c**7),
        b12=(c**4 + 1.0) / (4.0 * c**4),
        mu_h=((c**4 - 1.0) * h - c * c) / (2.0 * c),
    )


def projector_assembly(ctx: DepthContext, conj: ConjugationExpansion) -> dict[str, np.ndarray | float]:
    """Assemble the higher projector jets from intermediate vectors.

    Two-component vectors are stored as ``np.array([first, second])`` holding
    the coefficients of the harmonic named in the key; the returned mapping
    exposes every intermediate quantity together with the assembled jets.
    """
    c, h = ctx.c, ctx.h
    a1, p1 = conj.a1_1, conj.p1_1
    a20, a22, p20, p22, f2 = conj.a2_0, conj.a2_2, conj.p2_0, conj.p2_2, conj.f2
    a3, p3 = conj.a3_1 + conj.a3_3, conj.p3_1 + conj.p3_3
    c4 = c**4
    q = (c4 - 1.0) ** 2
    mu_h = ((c4 - 1.0) * h - c * c) / (2.0 * c)
    out: dict[str, np.ndarray | float] = {"mu_h": mu_h}

    A2p = np.array([(-a1 * c + (2.0 + c4) * p1) / (2.0 * c**4.5),
                    -(c4 + 1.0) * (a1 * c - 2.0 * p1) / (4.0 * c**5.5)])
    A2m = np.array([(a1 * c - (c4 + 2.0) * p1) / (2.0 * c**4.5),
                    -(c4 + 1.0) * (a1 * c - 2.0 * p1) / (4.0 * c**5.5)])
    B2m = np.array([(c4 + 1.0) * ((c4 + 4.0) * p1 - 2.0 * a1 * c) / (4.0 * c**9.5),
                    (c4 + 1.0) * (a1 * c * (c4 + 2.0) - (3.0 * c4 + 4.0) * p1) / (8.0 * c**10.5)])
    B2p = np.array([(c4 + 1.0) * ((c4 + 4.0) * p1 - 2.0 * a1 * c) / (4.0 * c**9.5),
                    -(c4 + 1.0) * (a1 * c * (c4 + 2.0) - (3.0 * c4 + 4.0) * p1) / (8.0 * c**10.5)])
    Am2p = np.array([(c**3 * p1 - a1) / (2.0 * c**3.5), -a1 * (c4 + 1.0) / (4.0 * c**4.5)])
    out.update(A2p=A2p, A2m=A2m, B2m=B2m, B2p=B2p, Am2p=Am2p)

    zeta2p = -(a1**2 * c**2 - 2.0 * a1 * (c4 + 2.0) * c * p1 + (3.0 * c4 + 4.0) * p1**2) / (8.0 * c**5)
    alpha2p = -(a1**2 * c - 2.0 * a1 * (c4 + 1.0) * p1 + c**3 * p1**2) / (4.0 * c**3)
    alpha2m = -alpha2p
    zeta3 = (c4 + 1.0) * (a1 * c - 2.0 * p1) * ((c4 + 2.0) * p1 - a1 * c) / (8.0 * c**10)
    A3p = np.array([
        (a1**2 * (c4 + 3.0) * c**2 - 2.0 * c * p1 * a1 * (c**8 + 9.0 * c4 + 6.0)
         + (11.0 * c**8 + 29.0 * c4 + 12.0) * p1**2) / (32.0 * c**9.5),
        (3.0 * c4 + 1.0) * (a1**2 * c**2 - 2.0 * c * p1 * a1 * (c4 + 2.0)
                            + (3.0 * c4 + 4.0) * p1**2) / (32.0 * c**10.5)])
    tau1p = (2.0 * a20 * c**2 + a22 * c**2 + 2.0 * f2 * (1.0 - c4) - 4.0 * c * p20 - 2.0 * c * p22) / (4.0 * c)
    ell1p = 0.5 * (c**2 * (2.0 * a20 + a22) - 2.0 * f2 * (1.0 - c4))
    ell1m = 0.5 * (c**2 * (-2.0 * a20 + a22) + 2.0 * f2 * (1.0 - c4))
    L3p = np.array([-(a22 * c * (c4 + 3.0) - 2.0 * (5.0 * c4 + 3.0) * p22) / (16.0 * c**4.5),
                    -(3.0 * c4 + 1.0) * (a22 * c - 2.0 * p22) / (16.0 * c**5.5)])
    out.update(zeta2p=zeta2p, alpha2p=alpha2p, alpha2m=alpha2m, zeta3=zeta3, A3p=A3p,
               tau1p=tau1p, ell1p=ell1p, ell1m=ell1m, L3p=L3p)

    out["n02"] = zeta3
    out["u02p"] = (alpha2p - ell1p) / (4.0 * c**2)
    out["u02m"] = (alpha2m - ell1m) / (4.0 * c**2)
    out["ab02"] = A3p - L3p

    Q2p = np.array([(c4 + 3.0) * p1 / (4.0 * c**4.5), 3.0 * (c4 + 1.0) * p1 / (8.0 * c**5.5)])
    J2p = np.array([((5.0 * c4 + 4.0) * p1 - a1 * c * (c4 + 2.0)) / (4.0 * c**9.5),
                    (c4 + 1.0) * ((3.0 * c4 + 4.0) * p1 - 2.0 * a1 * c) / (8.0 * c**10.5)])
    s_fac = (c**8 * h + c**6 - 2.0 * c4 * h + c**2 + h) * (a1 * c - 2.0 * p1)
    S2p = np.array([s_fac / (4.0 * c**10.5), s_fac / (8.0 * c**11.5)])
    out.update(Q2p=Q2p, J2p=J2p, S2p=S2p)
    out["J2p_check"] = B2p - Am2p / (2.0 * c)
    out["ab11"] = -Q2p + S2p - mu_h * J2p

    W2m = np.array([-c**0.5 * p3, (-c * a3 + p3) / (2.0 * c**0.5)])
    kappa1 = (c * a3 - (c4 + 2.0) * p3) / (2.0 * c**4.5)
    sigma1 = (c4 + 1.0) * (c * a3 - 2.0 * p3) / (4.0 * c**5.5)
    kappa2 = (a1 * c * (a20 * c**2 + q * f2 - 2.0 * (c4 + 1.0) * c * p20)
              + p1 * (-a20 * (c4 + 2.0) * c**2 - 2.0 * q * f2 + (c**8 + 5.0 * c4 + 4.0) * c * p20)
              ) / (2.0 * c**10.5)
    sigma2 = (a1 * c * (a20 * c**2 * (c4 + 1.0) + q * f2 - c * (c**8 + 3.0 * c4 + 2.0) * p20)
              + p1 * (-a20 * (c**8 + 3.0 * c4 + 2.0) * c**2 - 2.0 * q * f2
                      + (3.0 * c**8 + 7.0 * c4 + 4.0) * c * p20)) / (4.0 * c**11.5)
    kappa3 = (a1 * c * (a22 * c * (c4 + 3.0) - 2.0 * (5.0 * c4 + 3.0) * p22)
              - a22 * c * (c**8 + 13.0 * c4 + 6.0) * p1
              + 2.0 * (c4 + 3.0) * (5.0 * c4 + 2.0) * p1 * p22) / (32.0 * c**9.5)
    sigma3 = (c4 + 1.0) * (a1 * c * (a22 * c * (c4 + 3.0) - 2.0 * (5.0 * c4 + 3.0) * p22)
                           - 2.0 * a22 * c * (5.0 * c4 + 3.0) * p1
                           + 4.0 * (7.0 * c4 + 3.0) * p1 * p22) / (64.0 * c**10.5)
    kappa4 = (-a1**3 * (c4 + 3.0) * c**3 + a1**2 * p1 * (3.0 * c**8 + 31.0 * c4 + 18.0) * c**2
              - a1 * p1**2 * (2.0 * c**12 + 49.0 * c**8 + 101.0 * c4 + 36.0) * c
              + p1**3 * (11.0 * c**12 + 67.0 * c**8 + 86.0 * c4 + 24.0)) / (64.0 * c**14.5)
    sigma4 = (c4 + 1.0) * (-a1**3 * (c4 + 3.0) * c**3
                           + 2.0 * a1**2 * p1 * (c**8 + 14.0 * c4 + 9.0) * c**2
                           - a1 * p1**2 * (31.0 * c**8 + 89.0 * c4 + 36.0) * c
                           + 2.0 * p1**3 * (19.0 * c**8 + 37.0 * c4 + 12.0)) / (128.0 * c**15.5)
    out.update(W2m=W2m, kappa1=kappa1, sigma1=sigma1, kappa2=kappa2, sigma2=sigma2,
               kappa3=kappa3, sigma3=sigma3, kappa4=kappa4, sigma4=sigma4)
    out["ab03"] = (np.array([kappa1 + kappa2 + kappa3 - kappa4, sigma1 + sigma2 + sigma3 - sigma4])
                   + (tau1p - zeta2p) * B2p + ((ell1p - alpha2p) / (4.0 * c**2)) * Am2p
                   - zeta3 * A2p)
    out["ab12"] = (np.array([-p22 / c**4, -p22 * (1.0 + c4) / (2.0 * c**5)])
                   + B2p / c**0.5 + Am2p / (2.0 * c**1.5))
    return out
