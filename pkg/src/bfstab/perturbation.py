"""Generic perturbation engine for the reduced matrix near the generalized kernel.

The Floquet operator is discretized on exponential modes ``|k| <= K`` and
expanded as a bivariate series in ``(mu, eps)``. The spectral projector is the
residue of the resolvent series built from the Laurent expansion of the
unperturbed resolvent, and the Kato transformation operator maps the kernel
basis into the perturbed invariant subspace. The reduced matrix entries are
then read off as scalar products. Nothing here uses the closed forms of the
reduced-matrix scalars, so this is an independent route to all of them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .conjugation import ConjugationExpansion
from .depth import DepthContext
from .reduced import BFCoefficients

MU_MAX = 2
TOTAL_MAX = 4
EPS_MAX = 4


def _allowed(i: int, j: int) -> bool:
    return 0 <= i <= MU_MAX and 0 <= j <= EPS_MAX and i + j <= TOTAL_MAX


KEYS = [(i, j) for i in range(MU_MAX + 1) for j in range(EPS_MAX + 1) if _allowed(i, j)]


class BiSeries:
    """Truncated scalar power series in ``(mu, eps)``."""

    def __init__(self, coef: np.ndarray | None = None):
        self.coef = np.zeros((MU_MAX + 1, EPS_MAX + 1)) if coef is None else coef
        for i in range(MU_MAX + 1):
            for j in range(EPS_MAX + 1):
                if not _allowed(i, j):
                    self.coef[i, j] = 0.0

    @staticmethod
    def const(v: float) -> "BiSeries":
        s = BiSeries()
        s.coef[0, 0] = v
        return s

    def __add__(self, other: "BiSeries | float") -> "BiSeries":
        if isinstance(other, BiSeries):
            return BiSeries(self.coef + other.coef)
        c = self.coef.copy()
        c[0, 0] += other
        return BiSeries(c)

    __radd__ = __add__

    def __sub__(self, other: "BiSeries | float") -> "BiSeries":
        return self + (-1.0) * other if isinstance(other, BiSeries) else self + (-other)

    def __mul__(self, other: "BiSeries | float") -> "BiSeries":
        if not isinstance(other, BiSeries):
            return BiSeries(self.coef * other)
        out = np.zeros_like(self.coef)
        for (i, j) in KEYS:
            for (k, l) in KEYS:
                if _allowed(i + k, j + l):
                    out[i + k, j + l] += self.coef[i, j] * other.coef[k, l]
        return BiSeries(out)

    __rmul__ = __mul__

    def _nilpotent_sum(self, weights: list[float]) -> "BiSeries":
        """``sum_m weights[m] d**m`` where ``d`` is the non-constant part."""
        d = BiSeries(self.coef.copy())
        d.coef[0, 0] = 0.0
        out = BiSeries.const(weights[0])
        power = BiSeries.const(1.0)
        for w in weights[1:]:
            power = power * d
            out = out + power * w
        return out

    def recip(self) -> "BiSeries":
        a0 = self.coef[0, 0]
        return self._nilpotent_sum([(-1.0) ** m / a0 ** (m + 1) for m in range(TOTAL_MAX + 1)])

    def tanh(self) -> "BiSeries":
        t0 = math.tanh(self.coef[0, 0])
        e = (self * 2.0)._nilpotent_sum([1.0 / math.factorial(m) for m in range(TOTAL_MAX + 1)])
        e.coef[0, 0] = 1.0
        big_t = (e + (-1.0)) * (e + 1.0).recip()
        return (big_t + t0) * (big_t * t0 + 1.0).recip()


class MatSeries:
    """Truncated matrix-valued power series in ``(mu, eps)``."""

    def __init__(self, terms: dict[tuple[int, int], np.ndarray], n: int):
        self.terms = {k: v for k, v in terms.items() if _allowed(*k)}
        self.n = n

    def __getitem__(self, key: tuple[int, int]) -> np.ndarray:
        return self.terms.get(key, np.zeros((self.n, self.n), dtype=complex))

    def __add__(self, other: "MatSeries") -> "MatSeries":
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out[k] + v if k in out else v
        return MatSeries(out, self.n)

    def scale(self, s: complex) -> "MatSeries":
        return MatSeries({k: s * v for k, v in self.terms.items()}, self.n)

    def __matmul__(self, other: "MatSeries | np.ndarray") -> "MatSeries":
        if isinstance(other, np.ndarray):
            return MatSeries({k: v @ other for k, v in self.terms.items()}, self.n)
        out: dict[tuple[int, int], np.ndarray] = {}
        for (i, j), a in self.terms.items():
            for (k, l), b in other.terms.items():
                key = (i + k, j + l)
                if _allowed(*key):
                    out[key] = out[key] + a @ b if key in out else a @ b
        return MatSeries(out, self.n)

    def __rmatmul__(self, other: np.ndarray) -> "MatSeries":
        return MatSeries({k: other @ v for k, v in self.terms.items()}, self.n)

    def adjoint(self) -> "MatSeries":
        return MatSeries({k: v.conj().T for k, v in self.terms.items()}, self.n)


@dataclass(frozen=True)
class ModeBasis:
    """Index map for two-component exponential modes ``|k| <= K``."""

    K: int

    @property
    def size(self) -> int:
        return 2 * (2 * self.K + 1)

    @property
    def ks(self) -> np.ndarray:
        return np.arange(-self.K, self.K + 1)

    def idx(self, comp: int, k: int) -> int:
        return comp * (2 * self.K + 1) + k + self.K

    def real_vector(self, first: dict[str, dict[int, complex]], second: dict[str, dict[int, complex]]) -> np.ndarray:
        """Coefficient vector from ``{"cos": {k: A}, "sin": {k: B}}`` per component."""
        v = np.zeros(self.size, dtype=complex)
        for comp, spec in enumerate((first, second)):
            for kind, entries in spec.items():
                for k, amp in entries.items():
                    if k == 0:
                        if kind == "cos":
                            v[self.idx(comp, 0)] += amp
                        continue
                    if kind == "cos":
                        v[self.idx(comp, k)] += amp / 2.0
                        v[self.idx(comp, -k)] += amp / 2.0
                    else:
                        v[self.idx(comp, k)] += amp / 2j
                        v[self.idx(comp, -k)] -= amp / 2j
        return v

    def trig_coeffs(self, v: np.ndarray, comp: int, k: int) -> tuple[complex, complex]:
        """``(cos, sin)`` coefficients of harmonic ``k`` in component ``comp``."""
        up = v[self.idx(comp, k)]
        if k == 0:
            return up, 0.0
        um = v[self.idx(comp, -k)]
        return up + um, 1j * (up - um)


def _toeplitz(modes: np.ndarray, basis: ModeBasis) -> np.ndarray:
    """Multiplication by ``sum a_m cos(m x)`` on the exponential modes."""
    ks = basis.ks
    m = len(ks)
    hat = {0: modes[0]}
    for q in range(1, len(modes)):
        hat[q] = hat[-q] = modes[q] / 2.0
    T = np.zeros((m, m), dtype=complex)
    for r, k in enumerate(ks):
        for s, l in enumerate(ks):
            T[r, s] = hat.get(int(k - l), 0.0)
    return T


class PerturbationEngine:
    """Reduced-matrix expansion of the Bloch-Floquet operator around ``(0, 0)``."""

    def __init__(self, ctx: DepthContext, conj: ConjugationExpansion, K: int = 6):
        self.ctx = ctx
        self.conj = conj
        self.basis = ModeBasis(K)
        self.n = self.basis.size

    # ----- operator -----------------------------------------------------
    @cached_property
    def operator(self) -> MatSeries:
        """Series of the self-adjoint operator ``B`` (without the speed shift)."""
        b, c, h = self.basis, self.ctx.c, self.ctx.h
        m = 2 * b.K + 1
        ks = b.ks.astype(float)
        Dk = np.diag(1j * ks)
        I = np.eye(m)
        p_modes, a_modes = self.conj.p_modes(), self.conj.a_modes()
        terms: dict[tuple[int, int], np.ndarray] = {}

        def put(key: tuple[int, int], r: int, s: int, block: np.ndarray) -> None:
            if not _allowed(*key):
                return
            M = terms.setdefault(key, np.zeros((self.n, self.n), dtype=complex))
            M[r * m:(r + 1) * m, s * m:(s + 1) * m] += block

        put((0, 0), 0, 0, I)
        put((0, 0), 0, 1, -c * Dk)
        put((0, 0), 1, 0, c * Dk)
        for j in range(1, EPS_MAX + 1):
            Ta = _toeplitz(a_modes[j], b)
            Tp = _toeplitz(p_modes[j], b)
            put((0, j), 0, 0, Ta)
            put((0, j), 0, 1, -Tp @ Dk)
            put((1, j), 0, 1, -1j * Tp)
            put((0, j), 1, 0, Dk @ Tp)
            put((1, j), 1, 0, 1j * Tp)
        f = BiSeries()
        f.coef[0, 2], f.coef[0, 3], f.coef[0, 4] = self.conj.f2, self.conj.f3, self.conj.f4
        for r, k in enumerate(ks):
            xi = BiSeries.const(k)
            xi.coef[1, 0] = 1.0
            sym = xi * ((f + h) * xi).tanh()
            for (i, j) in KEYS:
                if sym.coef[i, j] != 0.0:
                    put((i, j), 1, 1, np.diag(np.eye(m)[r] * sym.coef[i, j]))
        return MatSeries(terms, self.n)

    @cached_property
    def J(self) -> np.ndarray:
        m = 2 * self.basis.K + 1
        J = np.zeros((self.n, self.n))
        J[:m, m:] = np.eye(m)
        J[m:, :m] = -np.eye(m)
        return J

    # ----- unperturbed resolvent ----------------------------------------
    @cached_property
    def _laurent(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Kernel projector, nilpotent part and reduced resolvent of ``J B_00``."""
        L0 = self.J @ self.operator[(0, 0)]
        Pi = np.zeros_like(L0)
        S = np.zeros_like(L0)
        b = self.basis
        for k in b.ks:
            ids = [b.idx(0, k), b.idx(1, k)]
            M = L0[np.ix_(ids, ids)]
            lam = np.linalg.eigvals(M)
            zero = np.abs(lam) < 1e-10
            if zero.all():
                Pk = np.eye(2)
                Sk = np.zeros((2, 2))
            elif zero.any():
                l2 = lam[~zero][0]
                Pk = (l2 * np.eye(2) - M) / l2
                Sk = (np.eye(2) - Pk) / l2
            else:
                Pk = np.zeros((2, 2))
                Sk = np.linalg.inv(M)
            Pi[np.ix_(ids, ids)] = Pk
            S[np.ix_(ids, ids)] = Sk
        return Pi, L0 @ Pi, S

    def _coeff(self, n: int) -> np.ndarray:
        """Coefficient of ``lambda**n`` in the Laurent series of ``(L0 - lambda)^-1``."""
        Pi, N, S = self._laurent
        if n == -2:
            return -N
        if n == -1:
            return -Pi
        return np.linalg.matrix_power(S, n + 1)

    # ----- projector and transformation ---------------------------------
    @cached_property
    def projector(self) -> MatSeries:
        """Series of the spectral projector onto the four-dimensional subspace."""
        B = self.operator
        V = MatSeries({k: self.J @ v for k, v in B.terms.items() if k != (0, 0)}, self.n)
        Pi = self._laurent[0]
        total = MatSeries({(0, 0): Pi.astype(complex)}, self.n)
        max_terms = TOTAL_MAX
        # partial[s]: series of C_{n0} V C_{n1} ... V C_{nt} with exponent sum s
        partial = {s: MatSeries({(0, 0): self._coeff(s).astype(complex)}, self.n)
                   for s in range(-2, 2 * max_terms)}
        for t in range(1, max_terms + 1):
            nxt: dict[int, MatSeries] = {}
            for s, A in partial.items():
                AV = A @ V
                if not AV.terms:
                    continue
                for nn in range(-2, 2 * max_terms):
                    s2 = s + nn
                    if s2 > -1 + 2 * (max_terms - t):
                        continue
                    term = AV @ self._coeff(nn)
                    nxt[s2] = nxt[s2] + term if s2 in nxt else term
            partial = nxt
            if -1 in partial:
                total = total + partial[-1].scale((-1.0) ** (t + 1))
        return total

    @cached_property
    def transformed_basis_map(self) -> MatSeries:
        """Series of ``U P0`` with ``U`` the Kato transformation operator."""
        P = self.projector
        Pi = self._laurent[0]
        D = P + MatSeries({(0, 0): -Pi.astype(complex)}, self.n)
        D2 = D @ D
        corr = MatSeries({(0, 0): np.eye(self.n, dtype=complex)}, self.n) + D2.scale(0.5) \
            + (D2 @ D2).scale(3.0 / 8.0)
        return corr @ (P @ Pi.astype(complex))

    @cached_property
    def reduced_operator(self) -> MatSeries:
        """Series of ``(U P0)^* B (U P0)``."""
        UP = self.transformed_basis_map
        return UP.adjoint() @ self.operator @ UP

    # ----- kernel basis --------------------------------------------------
    @cached_property
    def kernel_basis(self) -> dict[str, np.ndarray]:
        c = self.ctx.c
        rv = self.basis.real_vector
        sq = math.sqrt(c)
        return {
            "f1p": rv({"cos": {1: sq}}, {"sin": {1: 1.0 / sq}}),
            "f1m": rv({"sin": {1: -sq}}, {"cos": {1: 1.0 / sq}}),
            "f0p": rv({"cos": {0: 1.0}}, {}),
            "f0m": rv({}, {"cos": {0: 1.0}}),
            "fm1p": rv({"cos": {1: sq}}, {"sin": {1: -1.0 / sq}}),
            "fm1m": rv({"sin": {1: sq}}, {"cos": {1: 1.0 / sq}}),
        }

    def entry(self, key: tuple[int, int], f: str, g: str) -> complex:
        """Scalar product ``(B_key f, g)`` of the reduced-operator jet."""
        fb = self.kernel_basis
        return complex(fb[g].conj() @ self.reduced_operator[key] @ fb[f])

    def projector_action(self, key: tuple[int, int], f: str) -> np.ndarray:
        """Coefficient vector of the projector jet ``P_key`` applied to a basis vector."""
        return self.projector[key] @ self.kernel_basis[f]

    # ----- readouts -------------------------------------------------------
    def coefficients(self) -> BFCoefficients:
        """All thirteen reduced-matrix scalars read off the expansion.

        Sign conventions follow the closed forms: the zero-mode pair entry is
        read as ``G12 = -i gamma12 mu eps^2``.
        """
        e = self.entry
        return BFCoefficients(
            e11=e((0, 2), "f1p", "f1p").real,
            e12=2.0 * e((1, 0), "f1m", "f1p").imag,
            e22=-8.0 * e((2, 0), "f1m", "f1m").real,
            f11=e((0, 1), "f0p", "f1p").real,
            eta11=e((0, 4), "f1p", "f1p").real,
            eta12=e((1, 2), "f1m", "f1p").imag,
            gamma11=e((0, 2), "f0p", "f0p").real,
            gamma12=-e((1, 2), "f0m", "f0p").imag,
            gamma22=e((2, 2), "f0m", "f0m").real,
            phi11=e((0, 3), "f0p", "f1p").real,
            phi12=e((1, 3), "f0m", "f1p").imag,
            phi21=e((1, 1), "f0p", "f1m").imag,
            phi22=e((2, 1), "f0m", "f1m").real,
        )

    def vanishing_coefficients(self) -> dict[str, complex]:
        """Jets that must vanish identically by parity."""
        e = self.entry
        return {
            "eta11_tilde": e((0, 3), "f1p", "f1p"),
            "eta22_tilde": e((2, 1), "f1m", "f1m"),
            "gamma22_tilde": e((2, 1), "f0m", "f0m"),
            "phi12_tilde": e((1, 2), "f0m", "f1p"),
            "phi21_tilde": e((1, 2), "f0p", "f1m"),
            "phi22_tilde": e((2, 2), "f0m", "f1m"),
            "psi12_tilde": e((2, 1), "f0m", "f1p"),
        }
