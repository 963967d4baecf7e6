"""Fourth-order Stokes expansion: closed forms, a Galerkin derivation and residuals."""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from .depth import DepthContext
from .dirichlet_neumann import DNExpansion
from .errors import PreconditionError, SolvabilityViolation
from .extended import comp_horner, poly_coeffs
from .fourier import (Field, FourierPair, JetField, ScalarJet, cos_coeffs, grid,
                      sin_coeffs)

EPS_CAP = 0.1


def cpoly(c: float, terms: dict[int, float]) -> float:
    """Evaluate ``sum coef c**power`` by compensated Horner."""
    return comp_horner(poly_coeffs(terms), c)


@dataclass(frozen=True)
class StokesExpansion:
    """Amplitude-expansion coefficients of the Stokes wave.

    The elevation is ``eps cos x + eps^2 (eta2_0 + eta2_2 cos 2x) + ...`` and the
    potential ``eps c^-1 sin x + eps^2 psi2_2 sin 2x + ...``; the speed is
    ``c + eps^2 c2 + eps^3 c3 + eps^4 c4`` with ``c3 = 0``.
    """

    c: float
    eta2_0: float
    eta2_2: float
    psi2_2: float
    eta3_1: float
    eta3_3: float
    psi3_1: float
    psi3_3: float
    eta4_0: float
    eta4_2: float
    eta4_4: float
    psi4_2: float
    psi4_4: float
    c2: float
    c3: float
    c4: float

    def coefficients(self) -> dict[str, float]:
        """All expansion coefficients keyed by name (excluding the base speed)."""
        d = asdict(self)
        d.pop("c")
        return d

    def eta_modes(self) -> list[np.ndarray]:
        """Cosine coefficients of the elevation, one array per amplitude order 0..4."""
        return [np.zeros(5), _vec({1: 1.0}), _vec({0: self.eta2_0, 2: self.eta2_2}),
                _vec({1: self.eta3_1, 3: self.eta3_3}),
                _vec({0: self.eta4_0, 2: self.eta4_2, 4: self.eta4_4})]

    def psi_modes(self) -> list[np.ndarray]:
        """Sine coefficients of the potential, one array per amplitude order 0..4."""
        return [np.zeros(5), _vec({1: 1.0 / self.c}), _vec({2: self.psi2_2}),
                _vec({1: self.psi3_1, 3: self.psi3_3}),
                _vec({2: self.psi4_2, 4: self.psi4_4})]

    def speed_jet(self) -> ScalarJet:
        return ScalarJet([self.c, 0.0, self.c2, self.c3, self.c4])


def _vec(entries: dict[int, float], N: int = 4) -> np.ndarray:
    out = np.zeros(N + 1)
    for k, v in entries.items():
        out[k] = v
    return out


def stokes_closed_form(ctx: DepthContext) -> StokesExpansion:
    """Evaluate the rational closed forms of every Stokes coefficient."""
    c = ctx.c
    P = lambda t: cpoly(c, t)  # noqa: E731
    c2p = c * c
    return StokesExpansion(
        c=c,
        eta2_0=(c**4 - 1.0) / (4.0 * c2p),
        eta2_2=(3.0 - c**4) / (4.0 * c**6),
        psi2_2=(3.0 + c**8) / (8.0 * c**7),
        eta3_1=P({12: -2, 8: 3, 0: 3}) / (16.0 * c**8 * (1.0 + c2p)),
        eta3_3=P({12: -3, 8: 9, 4: -9, 0: 27}) / (64.0 * c**12),
        psi3_1=P({12: 2, 8: -3, 0: -3}) / (16.0 * c**7 * (1.0 + c2p)),
        psi3_3=P({12: -9, 8: 19, 4: 5, 0: 9}) / (64.0 * c**13),
        eta4_0=P({20: -4, 18: -4, 16: 17, 14: 6, 8: -48, 6: 6, 4: 36, 0: -9}) / (64.0 * c**14),
        eta4_2=P({22: -24, 18: 285, 16: 177, 14: -862, 12: -754, 10: 1116, 8: 1080,
                  6: -162, 4: -54, 2: -81, 0: -81}) / (384.0 * c**18 * (c2p + 1.0)),
        eta4_4=P({20: 21, 16: 1, 12: -262, 8: 522, 4: 81, 0: 405}) / (384.0 * c**18 * (c**4 + 5.0)),
        psi4_2=P({26: -12, 24: -36, 22: 57, 20: 93, 18: 51, 16: -21, 14: -646, 12: -502,
                  10: 1098, 8: 1098, 6: -243, 4: -135, 2: -81, 0: -81})
        / (768.0 * c**19 * (c2p + 1.0)),
        psi4_4=P({24: -21, 20: 60, 16: 343, 12: -1648, 8: 3177, 4: 756, 0: 405})
        / (1536.0 * c**19 * (c**4 + 5.0)),
        c2=P({12: -2, 8: 13, 4: -12, 0: 9}) / (16.0 * c**7),
        c3=0.0,
        c4=P({30: 56, 28: 88, 26: -272, 24: -528, 22: -7, 20: 497, 18: 1917, 16: 1437,
              14: -4566, 12: -4038, 10: 4194, 8: 3906, 6: -891, 4: -675, 2: 81, 0: 81})
        / (1024.0 * c**19 * (c2p + 1.0)),
    )


def stokes_jets(exp: StokesExpansion, n: int, order: int = 4) -> tuple[JetField, JetField, ScalarJet]:
    """Elevation and potential as amplitude jets on an ``n``-point grid, plus the speed."""
    x = grid(n)
    eta = [sum(a * np.cos(k * x) for k, a in enumerate(m)) for m in exp.eta_modes()]
    psi = [sum(b * np.sin(k * x) for k, b in enumerate(m)) for m in exp.psi_modes()]
    return (JetField.from_coeffs(eta, order), JetField.from_coeffs(psi, order),
            ScalarJet(exp.speed_jet().coef, order))


def traveling_residual(dn: DNExpansion, eta, psi, speed, upto: int = 4):
    """Both equations of the traveling-wave system in the moving frame.

    The Dirichlet-Neumann operator is replaced by ``G_0 + ... + G_upto``.
    """
    ex = eta.dx()
    px = psi.dx()
    slip = speed - px
    first = eta - speed * px + 0.5 * px * px - ex * ex * slip * slip / (2.0 * (1.0 + ex * ex))
    second = speed * ex + dn.total(eta, psi, upto)
    return first, second


class B0Inverse:
    """Inverse of the linearized traveling-wave operator on its range, per harmonic."""

    def __init__(self, ctx: DepthContext):
        self.ctx = ctx

    def kernel_weight(self) -> tuple[float, float]:
        """Harmonic-one kernel direction ``(cos x, c^-1 sin x)`` as coefficient weights."""
        return 1.0, 1.0 / self.ctx.c

    def apply_b0(self, a: np.ndarray, b: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Apply the linear operator to (cosine ``a``, sine ``b``) coefficients."""
        c = self.ctx.c
        k = np.arange(len(a))
        g = k * np.tanh(self.ctx.h * k)
        return a - c * k * b, -c * k * a + g * b

    def solve(self, A: np.ndarray, B: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Solve on the range with the solution orthogonal to the kernel."""
        c = self.ctx.c
        a = np.zeros_like(A)
        b = np.zeros_like(B)
        a[0] = A[0]
        if len(A) > 1:
            s = A[1] / (1.0 + c * c)
            a[1], b[1] = s, -c * s
        for k in range(2, len(A)):
            kt = k * self.ctx.tanh_k(k)
            det = kt - c * c * k * k
            a[k] = (kt * A[k] + c * k * B[k]) / det
            b[k] = (c * k * A[k] + B[k]) / det
        return a, b


def stokes_derive(ctx: DepthContext, N: int = 8, tol: float = 1e-9) -> StokesExpansion:
    """Derive the expansion order by order from the traveling-wave system.

    At each order the right-hand side is assembled with amplitude jets, the speed
    correction is fixed by orthogonality to the kernel, and the linearized
    operator is inverted harmonic by harmonic. The odd speeds ``c1``, ``c3`` are
    computed, checked against zero and then set to exactly zero; ``c4`` comes
    from the order-five projection.
    """
    if N < 6:
        raise PreconditionError("truncation N must be at least 6")
    order = 5
    n = max(32, 4 * N)
    c = ctx.c
    dn = DNExpansion(ctx)
    inv = B0Inverse(ctx)
    x = grid(n)
    eta = JetField.zeros(order, n)
    psi = JetField.zeros(order, n)
    eta.data[1] = np.cos(x)
    psi.data[1] = np.sin(x) / c
    speed = ScalarJet.const(c, order)
    kw = inv.kernel_weight()
    v_dot_k = (1.0 / c) * kw[0] + 1.0 * kw[1]
    eta_c: list[np.ndarray] = [np.zeros(N + 1), _vec({1: 1.0}, N)]
    psi_c: list[np.ndarray] = [np.zeros(N + 1), _vec({1: 1.0 / c}, N)]
    speeds = [c]
    for m in range(2, order + 1):
        first, second = traveling_residual(dn, eta, psi, speed)
        f_cos = cos_coeffs(first[m], N)
        g_sin = sin_coeffs(second[m], N)
        scale = 1.0 + np.max(np.abs(f_cos)) + np.max(np.abs(g_sin))
        parity = (np.max(np.abs(sin_coeffs(first[m], N)))
                  + np.max(np.abs(cos_coeffs(second[m], N))))
        if parity > tol * scale:
            raise SolvabilityViolation(f"parity broken at order {m}: {parity:.3e}")
        cm = (f_cos[1] * kw[0] + g_sin[1] * kw[1]) / v_dot_k
        if m % 2 == 0:
            # odd speed corrections vanish by symmetry; enforce the exact zero
            if abs(cm) > tol * scale:
                raise SolvabilityViolation(f"odd speed correction {cm:.3e} at order {m}")
            cm = 0.0
        A = -f_cos
        B = -g_sin
        A[1] += cm / c
        B[1] += cm
        left = A[1] * kw[0] + B[1] * kw[1]
        if abs(left) > tol * scale:
            raise SolvabilityViolation(f"kernel component {left:.3e} at order {m}")
        speeds.append(cm)
        speed.coef[m - 1] = cm
        if m == order:
            break
        a, b = inv.solve(A, B)
        eta_c.append(a)
        psi_c.append(b)
        eta.data[m] = sum(ak * np.cos(k * x) for k, ak in enumerate(a))
        psi.data[m] = sum(bk * np.sin(k * x) for k, bk in enumerate(b))
    return StokesExpansion(
        c=c,
        eta2_0=eta_c[2][0], eta2_2=eta_c[2][2], psi2_2=psi_c[2][2],
        eta3_1=eta_c[3][1], eta3_3=eta_c[3][3], psi3_1=psi_c[3][1], psi3_3=psi_c[3][3],
        eta4_0=eta_c[4][0], eta4_2=eta_c[4][2], eta4_4=eta_c[4][4],
        psi4_2=psi_c[4][2], psi4_4=psi_c[4][4],
        c2=speeds[2], c3=speeds[3], c4=speeds[4],
    )


def stokes_profile(exp: StokesExpansion, eps: float) -> tuple[FourierPair, float]:
    """Degree-four elevation (cosine) and potential (sine) profiles with the speed."""
    if abs(eps) > EPS_CAP:
        raise PreconditionError(f"|eps| = {abs(eps)} exceeds {EPS_CAP}")
    powers = [eps**j for j in range(5)]
    cos_part = sum(p * m for p, m in zip(powers, exp.eta_modes()))
    sin_part = sum(p * m for p, m in zip(powers, exp.psi_modes()))
    speed = exp.c + exp.c2 * eps**2 + exp.c3 * eps**3 + exp.c4 * eps**4
    return FourierPair(np.asarray(cos_part), np.asarray(sin_part)), speed


def residual_norm(ctx: DepthContext, eps: float, N: int = 8,
                  exp: StokesExpansion | None = None) -> float:
    """Sup-norm of the traveling-wave residual at the degree-four profile."""
    if N < 8:
        raise PreconditionError("truncation N must be at least 8")
    exp = exp if exp is not None else stokes_closed_form(ctx)
    pair, speed = stokes_profile(exp, eps)
    n = max(64, 8 * N)
    eta_v, psi_v = pair.to_grid(n)
    first, second = traveling_residual(DNExpansion(ctx), Field(eta_v), Field(psi_v), speed)
    return float(max(np.max(np.abs(first.values)), np.max(np.abs(second.values))))
