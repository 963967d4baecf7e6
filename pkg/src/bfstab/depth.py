"""Depth-dependent primitives: phase speed, tanh identities and multiplier symbols."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import OutOfRange

H_MIN = 0.2
H_MAX = 10.0


@dataclass(frozen=True)
class DepthContext:
    """Depth ``h`` with the cached phase speed ``c = sqrt(tanh h)``.

    ``tanh_kh[k - 1]`` holds ``tanh(k h)`` for ``k = 1..4``, computed from the
    rational identities in ``c`` so that they are consistent with ``c`` itself.
    """

    h: float
    c: float
    tanh_kh: tuple[float, float, float, float]

    def tanh_k(self, k: int) -> float:
        """Return ``tanh(|k| h)``; cached for ``|k| <= 4``."""
        k = abs(int(k))
        if k == 0:
            return 0.0
        if k <= 4:
            return self.tanh_kh[k - 1]
        return math.tanh(k * self.h)


def make_depth_context(h: float, h_range: tuple[float, float] = (H_MIN, H_MAX)) -> DepthContext:
    """Build a :class:`DepthContext`; raise :class:`OutOfRange` outside ``h_range``."""
    h = float(h)
    lo, hi = h_range
    if not (math.isfinite(h) and lo <= h <= hi):
        raise OutOfRange(f"depth {h!r} outside [{lo}, {hi}]")
    c2 = math.tanh(h)
    c = math.sqrt(c2)
    c4 = c2 * c2
    c6 = c4 * c2
    c8 = c4 * c4
    t2 = 2.0 * c2 / (1.0 + c4)
    t3 = (3.0 * c2 + c6) / (1.0 + 3.0 * c4)
    t4 = (4.0 * c2 + 4.0 * c6) / (1.0 + 6.0 * c4 + c8)
    return DepthContext(h=h, c=c, tanh_kh=(c2, t2, t3, t4))


class MultiplierSymbol(enum.Enum):
    """Fourier multipliers arising from the expansion of ``|D+mu| tanh((h+f)|D+mu|)``."""

    L10 = "l10"
    L20 = "l20"
    L02 = "l02"
    L22 = "l22"
    L04 = "l04"
    G0 = "g0"


def multiplier(
    sym: MultiplierSymbol,
    k: float | np.ndarray,
    ctx: DepthContext,
    f2: float = 1.0,
    f4: float = 1.0,
) -> float | np.ndarray:
    """Evaluate a multiplier symbol at wavenumber ``k`` (even in ``k``).

    The depth-shift factors ``f2`` and ``f4`` are supplied by the caller for the
    symbols that carry them (``L02``, ``L22``, ``L04``).
    """
    h = ctx.h
    a = np.abs(np.asarray(k, dtype=float))
    t = np.tanh(h * a)
    s = 1.0 - t * t
    if sym is MultiplierSymbol.G0:
        out = a * t
    elif sym is MultiplierSymbol.L10:
        out = t + h * a * s
    elif sym is MultiplierSymbol.L20:
        out = h * s * (1.0 - h * a * t)
    elif sym is MultiplierSymbol.L02:
        out = f2 * a * a * s
    elif sym is MultiplierSymbol.L22:
        out = f2 * s * (-(h * a) ** 2 + 3.0 * (h * a * t) ** 2 - 4.0 * h * a * t + 1.0)
    elif sym is MultiplierSymbol.L04:
        out = f4 * a * a * s - f2 * f2 * a**3 * t * s
    else:  # pragma: no cover - enum is exhaustive
        raise ValueError(sym)
    if np.ndim(out) == 0:
        return float(out)
    return out
