"""Error-free transformations, compensated Horner and double-double arithmetic."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

_SPLITTER = 134217729.0  # 2**27 + 1


def two_sum(a: float, b: float) -> tuple[float, float]:
    """Return ``(s, e)`` with ``s = fl(a + b)`` and ``a + b = s + e`` exactly."""
    s = a + b
    bb = s - a
    e = (a - (s - bb)) + (b - bb)
    return s, e


def _split(a: float) -> tuple[float, float]:
    t = _SPLITTER * a
    hi = t - (t - a)
    return hi, a - hi


def two_prod(a: float, b: float) -> tuple[float, float]:
    """Return ``(p, e)`` with ``p = fl(a b)`` and ``a b = p + e`` exactly (Dekker)."""
    p = a * b
    ah, al = _split(a)
    bh, bl = _split(b)
    e = ((ah * bh - p) + ah * bl + al * bh) + al * bl
    return p, e


def horner(coeffs: Sequence[float], x: float) -> float:
    """Plain Horner evaluation of ``sum coeffs[i] x**i``."""
    acc = 0.0
    for a in reversed(coeffs):
        acc = acc * x + a
    return acc


def comp_horner(coeffs: Sequence[float], x: float) -> float:
    """Compensated Horner evaluation of ``sum coeffs[i] x**i``.

    The result is as accurate as if computed in twice the working precision
    and then rounded.
    """
    if not coeffs:
        return 0.0
    s = float(coeffs[-1])
    err = 0.0
    for a in reversed(coeffs[:-1]):
        p, pe = two_prod(s, x)
        s, se = two_sum(p, float(a))
        err = err * x + (pe + se)
    return s + err


@dataclass(frozen=True)
class DD:
    """Unevaluated sum ``hi + lo`` carrying about 106 bits of precision."""

    hi: float
    lo: float = 0.0

    @staticmethod
    def of(x: "float | DD") -> "DD":
        """Coerce a float into a double-double."""
        return x if isinstance(x, DD) else DD(float(x), 0.0)

    def __float__(self) -> float:
        return self.hi + self.lo

    def __neg__(self) -> "DD":
        return DD(-self.hi, -self.lo)

    def __add__(self, other: "float | DD") -> "DD":
        o = DD.of(other)
        s, e = two_sum(self.hi, o.hi)
        t, f = two_sum(self.lo, o.lo)
        e += t
        s, e = two_sum(s, e)
        e += f
        s, e = two_sum(s, e)
        return DD(s, e)

    __radd__ = __add__

    def __sub__(self, other: "float | DD") -> "DD":
        return self + (-DD.of(other))

    def __rsub__(self, other: "float | DD") -> "DD":
        return DD.of(other) - self

    def __mul__(self, other: "float | DD") -> "DD":
        o = DD.of(other)
        p, e = two_prod(self.hi, o.hi)
        e += self.hi * o.lo + self.lo * o.hi
        p, e = two_sum(p, e)
        return DD(p, e)

    __rmul__ = __mul__

    def __truediv__(self, other: "float | DD") -> "DD":
        o = DD.of(other)
        q1 = self.hi / o.hi
        r = self - o * q1
        q2 = r.hi / o.hi
        r = r - o * q2
        q3 = r.hi / o.hi
        return DD(q1) + q2 + q3

    def __rtruediv__(self, other: "float | DD") -> "DD":
        return DD.of(other) / self

    def __pow__(self, n: int) -> "DD":
        if not isinstance(n, int) or n < 0:
            raise ValueError("only non-negative integer powers are supported")
        result = DD(1.0)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result


def dd_horner(coeffs: Sequence[float], x: "float | DD") -> DD:
    """Horner evaluation in double-double arithmetic."""
    xx = DD.of(x)
    acc = DD(0.0)
    for a in reversed(coeffs):
        acc = acc * xx + float(a)
    return acc


def poly_coeffs(terms: dict[int, float]) -> list[float]:
    """Dense ascending coefficient list from an ``{exponent: coefficient}`` map."""
    n = max(terms) + 1 if terms else 0
    out = [0.0] * n
    for k, v in terms.items():
        out[k] = float(v)
    return out
