"""Trigonometric data on uniform grids and truncated power series in the amplitude.

Two representations are used throughout:

* :class:`FourierPair` stores an even cosine series next to an odd sine series.
* :class:`JetField` stores the Taylor coefficients in the amplitude of a field
  sampled on a uniform grid; products are truncated Cauchy products, so that
  substituting a jet into a polynomial formula yields its exact expansion.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

Symbol = Callable[[np.ndarray], np.ndarray]


def grid(n: int) -> np.ndarray:
    """Uniform grid of ``n`` points on ``[0, 2 pi)``."""
    return 2.0 * np.pi * np.arange(n) / n


def wavenumbers(n: int) -> np.ndarray:
    """Signed integer wavenumbers matching ``numpy.fft`` ordering."""
    return np.fft.fftfreq(n, 1.0 / n)


def apply_symbol(values: np.ndarray, symbol: np.ndarray) -> np.ndarray:
    """Apply a Fourier multiplier along the last axis and return the real part."""
    return np.fft.ifft(np.fft.fft(values, axis=-1) * symbol, axis=-1).real


def cos_coeffs(values: np.ndarray, nmax: int) -> np.ndarray:
    """Cosine coefficients ``a_0..a_nmax`` of grid samples."""
    n = values.shape[-1]
    f = np.fft.fft(values, axis=-1) / n
    out = 2.0 * f[..., : nmax + 1].real
    out[..., 0] = f[..., 0].real
    return out


def sin_coeffs(values: np.ndarray, nmax: int) -> np.ndarray:
    """Sine coefficients ``b_0..b_nmax`` of grid samples (``b_0`` is zero)."""
    n = values.shape[-1]
    f = np.fft.fft(values, axis=-1) / n
    out = -2.0 * f[..., : nmax + 1].imag
    out[..., 0] = 0.0
    return out


def cos_series(coeffs: np.ndarray, n: int) -> np.ndarray:
    """Sample ``sum a_k cos(k x)`` on the ``n``-point grid."""
    x = grid(n)
    return sum(a * np.cos(k * x) for k, a in enumerate(coeffs))


def sin_series(coeffs: np.ndarray, n: int) -> np.ndarray:
    """Sample ``sum b_k sin(k x)`` on the ``n``-point grid."""
    x = grid(n)
    return sum(b * np.sin(k * x) for k, b in enumerate(coeffs))


@dataclass(frozen=True)
class FourierPair:
    """An even cosine series paired with an odd sine series.

    ``sin_part[0]`` is kept for indexing convenience and is always zero.
    """

    cos_part: np.ndarray
    sin_part: np.ndarray

    @property
    def N(self) -> int:
        return len(self.cos_part) - 1

    @staticmethod
    def zeros(N: int) -> "FourierPair":
        return FourierPair(np.zeros(N + 1), np.zeros(N + 1))

    @staticmethod
    def from_grid(first: np.ndarray, second: np.ndarray, N: int) -> "FourierPair":
        """Project grid samples onto the cosine (first) and sine (second) series."""
        return FourierPair(cos_coeffs(first, N), sin_coeffs(second, N))

    def to_grid(self, n: int) -> tuple[np.ndarray, np.ndarray]:
        return cos_series(self.cos_part, n), sin_series(self.sin_part, n)

    def __add__(self, other: "FourierPair") -> "FourierPair":
        N = max(self.N, other.N)
        return FourierPair(_pad(self.cos_part, N) + _pad(other.cos_part, N),
                           _pad(self.sin_part, N) + _pad(other.sin_part, N))

    def __sub__(self, other: "FourierPair") -> "FourierPair":
        return self + other.scale(-1.0)

    def scale(self, s: float) -> "FourierPair":
        return FourierPair(self.cos_part * s, self.sin_part * s)


def _pad(a: np.ndarray, N: int) -> np.ndarray:
    out = np.zeros(N + 1)
    out[: len(a)] = a
    return out


class ScalarJet:
    """Truncated power series ``sum_j coef[j] eps**j`` of a real scalar."""

    def __init__(self, coef: np.ndarray | list[float], order: int | None = None):
        coef = np.asarray(coef, dtype=float)
        if order is None:
            order = len(coef) - 1
        self.coef = np.zeros(order + 1)
        m = min(len(coef), order + 1)
        self.coef[:m] = coef[:m]

    @property
    def order(self) -> int:
        return len(self.coef) - 1

    @staticmethod
    def const(v: float, order: int) -> "ScalarJet":
        c = np.zeros(order + 1)
        c[0] = v
        return ScalarJet(c)

    def __getitem__(self, j: int) -> float:
        return float(self.coef[j]) if j <= self.order else 0.0

    def __add__(self, other: "ScalarJet | float") -> "ScalarJet":
        if isinstance(other, ScalarJet):
            return ScalarJet(self.coef + other.coef)
        if not isinstance(other, (int, float)):
            return NotImplemented
        c = self.coef.copy()
        c[0] += other
        return ScalarJet(c)

    __radd__ = __add__

    def __neg__(self) -> "ScalarJet":
        return ScalarJet(-self.coef)

    def __sub__(self, other: "ScalarJet | float") -> "ScalarJet":
        if not isinstance(other, (ScalarJet, int, float)):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: float) -> "ScalarJet":
        return (-self) + other

    def __mul__(self, other: "ScalarJet | float") -> "ScalarJet":
        if isinstance(other, ScalarJet):
            return ScalarJet(np.convolve(self.coef, other.coef)[: self.order + 1])
        if not isinstance(other, (int, float)):
            return NotImplemented
        return ScalarJet(self.coef * other)

    __rmul__ = __mul__

    def recip(self) -> "ScalarJet":
        """Reciprocal series; requires a nonzero constant term."""
        a = self.coef
        b = np.zeros_like(a)
        b[0] = 1.0 / a[0]
        for n in range(1, len(a)):
            b[n] = -np.dot(a[1: n + 1], b[n - 1:: -1][:n]) / a[0]
        return ScalarJet(b)

    def __truediv__(self, other: "ScalarJet | float") -> "ScalarJet":
        if isinstance(other, ScalarJet):
            return self * other.recip()
        return ScalarJet(self.coef / other)

    def exp(self) -> "ScalarJet":
        """Exponential series via the recurrence ``n b_n = sum k a_k b_{n-k}``."""
        a = self.coef
        b = np.zeros_like(a)
        b[0] = math.exp(a[0])
        for n in range(1, len(a)):
            k = np.arange(1, n + 1)
            b[n] = np.dot(k * a[1: n + 1], b[n - k]) / n
        return ScalarJet(b)

    def tanh(self) -> "ScalarJet":
        """Hyperbolic tangent via ``tanh(a0 + d) = (t0 + T)/(1 + t0 T)``."""
        t0 = math.tanh(self.coef[0])
        d = ScalarJet(self.coef)
        d.coef[0] = 0.0
        e = (2.0 * d).exp()
        big_t = (e - 1.0) / (e + 1.0)
        return (big_t + t0) / (big_t * t0 + 1.0)


Operand = Union["JetField", ScalarJet, float, int, np.ndarray]


class JetField:
    """Taylor coefficients in the amplitude of a real field on a uniform grid.

    ``data[j]`` holds the grid samples of the coefficient of ``eps**j``.
    """

    __array_priority__ = 100

    def __init__(self, data: np.ndarray):
        self.data = np.asarray(data, dtype=float)

    @property
    def order(self) -> int:
        return self.data.shape[0] - 1

    @property
    def n(self) -> int:
        return self.data.shape[1]

    @staticmethod
    def zeros(order: int, n: int) -> "JetField":
        return JetField(np.zeros((order + 1, n)))

    @staticmethod
    def from_coeffs(coeffs: list[np.ndarray], order: int) -> "JetField":
        """Build from a list of per-order grid samples, padding with zeros."""
        n = len(coeffs[0])
        data = np.zeros((order + 1, n))
        for j, c in enumerate(coeffs[: order + 1]):
            data[j] = c
        return JetField(data)

    def _coerce(self, other: Operand) -> "JetField":
        if isinstance(other, JetField):
            return other
        data = np.zeros_like(self.data)
        if isinstance(other, ScalarJet):
            m = min(other.order, self.order) + 1
            data[:m] = other.coef[:m, None]
        else:
            data[0] = other
        return JetField(data)

    def __getitem__(self, j: int) -> np.ndarray:
        return self.data[j]

    def __add__(self, other: Operand) -> "JetField":
        return JetField(self.data + self._coerce(other).data)

    __radd__ = __add__

    def __neg__(self) -> "JetField":
        return JetField(-self.data)

    def __sub__(self, other: Operand) -> "JetField":
        return JetField(self.data - self._coerce(other).data)

    def __rsub__(self, other: Operand) -> "JetField":
        return JetField(self._coerce(other).data - self.data)

    def __mul__(self, other: Operand) -> "JetField":
        if isinstance(other, (float, int)):
            return JetField(self.data * other)
        b = self._coerce(other).data
        a = self.data
        out = np.zeros_like(a)
        for n in range(self.order + 1):
            out[n] = np.einsum("jx,jx->x", a[: n + 1], b[n::-1])
        return JetField(out)

    __rmul__ = __mul__

    def __truediv__(self, other: Operand) -> "JetField":
        if isinstance(other, (float, int)):
            return JetField(self.data / other)
        return self * self._coerce(other).recip()

    def __pow__(self, m: int) -> "JetField":
        out = self._coerce(1.0)
        for _ in range(m):
            out = out * self
        return out

    def recip(self) -> "JetField":
        """Pointwise reciprocal series; the constant coefficient must not vanish."""
        a = self.data
        b = np.zeros_like(a)
        b[0] = 1.0 / a[0]
        for n in range(1, self.order + 1):
            b[n] = -np.einsum("jx,jx->x", a[1: n + 1], b[n - 1:: -1][:n]) / a[0]
        return JetField(b)

    def apply(self, symbol: np.ndarray) -> "JetField":
        """Apply a Fourier multiplier to every coefficient."""
        return JetField(apply_symbol(self.data, symbol))

    def dx(self) -> "JetField":
        return self.apply(derivative_symbol(self.n))

    def mean(self) -> ScalarJet:
        return ScalarJet(self.data.mean(axis=1))

    def compose(self, shift: "JetField") -> "JetField":
        """Taylor expansion of ``u(x + shift(x))``; ``shift`` must start at order 1."""
        out = JetField(self.data.copy())
        deriv = self
        power = self._coerce(1.0)
        for m in range(1, self.order + 1):
            deriv = deriv.dx()
            power = power * shift
            out = out + deriv * power * (1.0 / math.factorial(m))
        return out

    def truncate(self, order: int) -> "JetField":
        return JetField(self.data[: order + 1].copy())

    def evaluate(self, eps: float) -> np.ndarray:
        """Sum the series at amplitude ``eps``."""
        return np.polynomial.polynomial.polyval(eps, self.data)


class Field:
    """A plain grid field with the same algebra interface as :class:`JetField`."""

    __array_priority__ = 100

    def __init__(self, values: np.ndarray):
        self.values = np.asarray(values, dtype=float)

    @property
    def n(self) -> int:
        return self.values.shape[-1]

    def _v(self, other: "Field | float") -> np.ndarray | float:
        return other.values if isinstance(other, Field) else other

    def __add__(self, other: "Field | float") -> "Field":
        return Field(self.values + self._v(other))

    __radd__ = __add__

    def __neg__(self) -> "Field":
        return Field(-self.values)

    def __sub__(self, other: "Field | float") -> "Field":
        return Field(self.values - self._v(other))

    def __rsub__(self, other: "Field | float") -> "Field":
        return Field(self._v(other) - self.values)

    def __mul__(self, other: "Field | float") -> "Field":
        return Field(self.values * self._v(other))

    __rmul__ = __mul__

    def __truediv__(self, other: "Field | float") -> "Field":
        return Field(self.values / self._v(other))

    def __pow__(self, m: int) -> "Field":
        return Field(self.values**m)

    def apply(self, symbol: np.ndarray) -> "Field":
        return Field(apply_symbol(self.values, symbol))

    def dx(self) -> "Field":
        return self.apply(derivative_symbol(self.n))


def derivative_symbol(n: int) -> np.ndarray:
    """Symbol ``i k`` of ``d/dx`` with the Nyquist mode removed."""
    k = wavenumbers(n)
    sym = 1j * k
    if n % 2 == 0:
        sym[n // 2] = 0.0
    return sym
