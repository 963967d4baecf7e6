"""Truncated Fourier matrix of the Bloch-Floquet operator and its spectrum near zero."""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import linear_sum_assignment

from .conjugation import ConjugationExpansion, conjugation_closed_form
from .decoupling import decouple
from .depth import DepthContext, make_depth_context
from .errors import OutOfRange, PairingFailure, TruncationTooSmall
from .spectrum import predict, unstable_mu_window

M_MIN = 16
M_DEFAULT = 32
EPS_CAP = 0.05
MU_CAP = 0.5
PAIRING_TOL = 1e-10
ORDER = 4


@dataclass(frozen=True)
class FloquetMatrix:
    """Matrix of ``i c mu + J B`` on the modes ``|k| <= M``, first component first."""

    matrix: np.ndarray
    h: float
    mu: float
    eps: float
    M: int
    c: float
    orders: dict[str, int] = field(default_factory=dict)

    @property
    def size(self) -> int:
        return self.matrix.shape[0]

    def self_adjoint_part(self) -> np.ndarray:
        """Recover ``B`` by removing the speed shift and applying ``J^{-1}``."""
        m = 2 * self.M + 1
        L = self.matrix - 1j * self.c * self.mu * np.eye(self.size)
        # J^{-1} = -J with J = [[0, I], [-I, 0]]
        return np.block([[-L[m:, :m], -L[m:, m:]], [L[:m, :m], L[:m, m:]]])

    def hermitian_defect(self) -> float:
        B = self.self_adjoint_part()
        return float(np.max(np.abs(B - B.conj().T)))


def _toeplitz_cos(modes: np.ndarray, ks: np.ndarray) -> np.ndarray:
    hat = np.zeros(2 * len(modes) - 1)
    q = len(modes) - 1
    hat[q] = modes[0]
    hat[q + 1:] = modes[1:] / 2.0
    hat[:q] = modes[1:][::-1] / 2.0
    diff = ks[:, None] - ks[None, :]
    out = np.zeros(diff.shape)
    inside = np.abs(diff) <= q
    out[inside] = hat[diff[inside] + q]
    return out


def assemble_floquet(ctx: DepthContext, conj: ConjugationExpansion, eps: float, mu: float,
                     M: int = M_DEFAULT, strict: bool = True) -> FloquetMatrix:
    """Assemble the Floquet matrix from the order-four coefficient expansions.

    ``strict=False`` lifts the Brillouin restriction on ``mu`` so that the
    symmetry ``mu -> -mu`` and the 1-periodicity can be checked.
    """
    if M < M_MIN or M < ORDER:
        raise TruncationTooSmall(f"M = {M} below the minimum {M_MIN}")
    if not abs(eps) <= EPS_CAP:
        raise OutOfRange(f"|eps| = {abs(eps)!r} above {EPS_CAP}")
    if strict and not 0.0 <= mu < MU_CAP:
        raise OutOfRange(f"mu = {mu!r} outside [0, {MU_CAP})")
    ks = np.arange(-M, M + 1)
    m = len(ks)
    c, h = ctx.c, ctx.h
    a = sum(eps**j * np.pad(conj.a_modes()[j], (0, ORDER + 1 - len(conj.a_modes()[j])))
            for j in range(1, ORDER + 1))
    p = sum(eps**j * np.pad(conj.p_modes()[j], (0, ORDER + 1 - len(conj.p_modes()[j])))
            for j in range(1, ORDER + 1))
    f = conj.f2 * eps**2 + conj.f3 * eps**3 + conj.f4 * eps**4
    Ta, Tp = _toeplitz_cos(a, ks), _toeplitz_cos(p, ks)
    xi = ks + mu
    Dk = np.diag(1j * ks)
    Dxi = np.diag(1j * xi)
    B11 = np.eye(m) + Ta
    B12 = -c * Dk - Tp @ Dxi
    B21 = c * Dk + Dxi @ Tp
    B22 = np.diag(np.abs(xi) * np.tanh((h + f) * np.abs(xi)))
    # L = i c mu + J B with J = [[0, I], [-I, 0]]
    L = np.block([[B21, B22], [-B11, -B12]]).astype(complex)
    L += 1j * c * mu * np.eye(2 * m)
    return FloquetMatrix(matrix=L, h=h, mu=mu, eps=eps, M=M, c=c,
                         orders={"a": ORDER, "p": ORDER, "f": ORDER})


@dataclass(frozen=True)
class SpectrumNearZero:
    """Four eigenvalues closest to zero, closed under ``lam -> -conj(lam)``."""

    eigenvalues: np.ndarray
    pairing_mismatch: float
    max_real: float


def pairing_mismatch(lams: np.ndarray) -> float:
    """Largest defect of the best matching of ``lams`` with ``-conj(lams)``."""
    cost = np.abs(lams[:, None] + np.conj(lams)[None, :])
    r, s = linear_sum_assignment(cost)
    return float(cost[r, s].max())


def near_zero_spectrum(mat: FloquetMatrix, tol: float = PAIRING_TOL) -> SpectrumNearZero:
    """Dense eigensolve and selection of the four eigenvalues nearest zero."""
    lams = np.linalg.eigvals(mat.matrix)
    lams = lams[np.argsort(np.abs(lams))]
    best, best_set = math.inf, lams[:4]
    for width in (4, 5, 6):
        for combo in itertools.combinations(range(width), 4):
            cand = lams[list(combo)]
            mis = pairing_mismatch(cand)
            if mis < best:
                best, best_set = mis, cand
        if best <= tol:
            break
    if best > 10.0 * tol:
        raise PairingFailure(f"no Hamiltonian 4-set near zero (mismatch {best:.3e})")
    best_set = best_set[np.argsort(np.abs(best_set))]
    return SpectrumNearZero(eigenvalues=best_set, pairing_mismatch=best,
                            max_real=float(np.max(np.abs(best_set.real))))


@dataclass(frozen=True)
class ValidationRow:
    """Oracle eigenvalue matched to a predicted one."""

    h: float
    eps: float
    mu: float
    label: str
    re_pred: float
    re_oracle: float
    im_pred: float
    im_oracle: float
    rel_err: float


def compare_point(ctx: DepthContext, eps: float, mu: float, M: int = M_DEFAULT,
                  conj: ConjugationExpansion | None = None) -> list[ValidationRow]:
    """Match the oracle's four eigenvalues to the predictions at one point."""
    conj = conj if conj is not None else conjugation_closed_form(ctx)
    spec = near_zero_spectrum(assemble_floquet(ctx, conj, eps, mu, M))
    pred = predict(ctx, decouple(ctx), mu, eps)
    labels = ["lam1_plus", "lam1_minus", "lam0_plus", "lam0_minus"]
    P = np.array(pred.as_list())
    cost = np.abs(P[:, None] - spec.eigenvalues[None, :])
    r, s = linear_sum_assignment(cost)
    rows = []
    for i, j in zip(r, s):
        lp, lo = P[i], spec.eigenvalues[j]
        rel = abs(lo - lp) / abs(lp) if abs(lp) > 0.0 else abs(lo)
        rows.append(ValidationRow(h=ctx.h, eps=eps, mu=mu, label=labels[i], re_pred=lp.real,
                                  re_oracle=lo.real, im_pred=lp.imag, im_oracle=lo.imag,
                                  rel_err=float(rel)))
    return rows


@dataclass(frozen=True)
class ValidationReport:
    rows: list[ValidationRow]
    gate: float

    @property
    def violations(self) -> list[ValidationRow]:
        return [r for r in self.rows if r.rel_err > self.gate]

    @property
    def ok(self) -> bool:
        return not self.violations


def validate_predictions(depths: list[float], eps_list: list[float], mu_fractions: list[float],
                         M: int = M_DEFAULT, gate: float = 0.15,
                         workers: int = 1) -> ValidationReport:
    """Sweep oracle-vs-prediction comparisons.

    ``mu`` is a fraction of the unstable window when it is nonempty, and a
    fraction of ``eps**2`` otherwise.
    """
    points = []
    for h in depths:
        ctx = make_depth_context(h)
        dec = decouple(ctx)
        for eps in eps_list:
            mu_bar = unstable_mu_window(ctx, dec, eps)
            scale = mu_bar if mu_bar > 0.0 else eps**2
            points += [(ctx, eps, fr * scale) for fr in mu_fractions]

    def run(pt: tuple[DepthContext, float, float]) -> list[ValidationRow]:
        return compare_point(pt[0], pt[1], pt[2], M)

    with ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
        rows = [row for chunk in pool.map(run, points) for row in chunk]
    return ValidationReport(rows=rows, gate=gate)
