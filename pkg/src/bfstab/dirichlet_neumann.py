"""Taylor expansion of the Dirichlet-Neumann operator in the surface elevation.

Each term acts on any field type exposing ``+``, ``-``, ``*``, ``dx()`` and
``apply(symbol)``: plain grid fields for residual evaluation, and amplitude
jets, for which substitution produces the exact amplitude expansion.
"""

from __future__ import annotations

from functools import lru_cache
from typing import TypeVar

import numpy as np

from .depth import DepthContext
from .fourier import wavenumbers

F = TypeVar("F")


@lru_cache(maxsize=64)
def _g0_symbol(h: float, n: int) -> np.ndarray:
    k = np.abs(wavenumbers(n))
    return k * np.tanh(h * k)


class DNExpansion:
    """Terms ``G_0 .. G_4`` of the Dirichlet-Neumann operator at depth ``h``."""

    max_order = 4

    def __init__(self, ctx: DepthContext):
        self.ctx = ctx

    def g0(self, u: F) -> F:
        return u.apply(_g0_symbol(self.ctx.h, u.n))

    @staticmethod
    def _d(u: F, m: int) -> F:
        for _ in range(m):
            u = u.dx()
        return u

    def G1(self, eta: F, psi: F) -> F:
        return -(eta * psi.dx()).dx() - self.g0(eta * self.g0(psi))

    def G2(self, eta: F, psi: F) -> F:
        e2 = eta * eta
        return (-0.5 * self.g0((e2 * psi.dx()).dx())
                + 0.5 * self._d(e2 * self.g0(psi), 2)
                - self.g0(eta * self.G1(eta, psi)))

    def G3(self, eta: F, psi: F) -> F:
        e2 = eta * eta
        e3 = e2 * eta
        return ((1.0 / 6.0) * self._d(e3 * psi.dx(), 3)
                + (1.0 / 6.0) * self.g0(self._d(e3 * self.g0(psi), 2))
                - self.g0(eta * self.G2(eta, psi))
                + 0.5 * self._d(e2 * self.G1(eta, psi), 2))

    def G4(self, eta: F, psi: F) -> F:
        e2 = eta * eta
        e3 = e2 * eta
        e4 = e2 * e2
        return ((1.0 / 24.0) * self.g0(self._d(e4 * psi.dx(), 3))
                - (1.0 / 24.0) * self._d(e4 * self.g0(psi), 4)
                + 0.5 * self._d(e2 * self.G2(eta, psi), 2)
                + (1.0 / 6.0) * self.g0(self._d(e3 * self.G1(eta, psi), 2))
                - self.g0(eta * self.G3(eta, psi)))

    def term(self, j: int, eta: F, psi: F) -> F:
        """Return ``G_j(eta) psi``."""
        if j == 0:
            return self.g0(psi)
        return (self.G1, self.G2, self.G3, self.G4)[j - 1](eta, psi)

    def total(self, eta: F, psi: F, upto: int = 4) -> F:
        """Return ``(G_0 + ... + G_upto)(eta) psi``."""
        out = self.g0(psi)
        for j in range(1, upto + 1):
            out = out + self.term(j, eta, psi)
        return out

    def G2_prime(self, eta: F, eta_hat: F, psi: F) -> F:
        """Directional derivative of ``G_2`` at ``eta`` along ``eta_hat``."""
        e = eta * eta_hat
        return (-self.g0((e * psi.dx()).dx())
                + self._d(e * self.g0(psi), 2)
                - self.g0(eta_hat * self.G1(eta, psi))
                - self.g0(eta * self.G1(eta_hat, psi)))

    def G3_prime(self, eta: F, eta_hat: F, psi: F) -> F:
        """Directional derivative of ``G_3`` at ``eta`` along ``eta_hat``."""
        e2h = eta * eta * eta_hat
        eh = eta * eta_hat
        return (0.5 * self._d(e2h * psi.dx(), 3)
                + 0.5 * self.g0(self._d(e2h * self.g0(psi), 2))
                - self.g0(eta_hat * self.G2(eta, psi))
                - self.g0(eta * self.G2_prime(eta, eta_hat, psi))
                + self._d(eh * self.G1(eta, psi), 2)
                + 0.5 * self._d(eta * eta * self.G1(eta_hat, psi), 2))
