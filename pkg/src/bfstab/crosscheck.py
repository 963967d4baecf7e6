"""Two-route comparison records for every coefficient family."""

from __future__ import annotations

from dataclasses import dataclass

from .conjugation import conjugation_closed_form, conjugation_derive
from .decoupling import Precision, decouple, e_wb_closed_form, eta_wb_closed_form
from .depth import DepthContext
from .perturbation import PerturbationEngine
from .projector import projector_jets
from .reduced import BFCoefficients, bf_coefficients_assemble, bf_coefficients_closed_form
from .stokes import stokes_closed_form, stokes_derive


@dataclass(frozen=True)
class CoefficientRecord:
    group: str
    name: str
    closed: float
    assembled: float

    @property
    def abs_diff(self) -> float:
        return abs(self.closed - self.assembled)

    @property
    def rel_diff(self) -> float:
        scale = max(abs(self.closed), abs(self.assembled))
        return self.abs_diff / scale if scale > 0.0 else 0.0


def assembled_bf_coefficients(ctx: DepthContext) -> BFCoefficients:
    """Reduced-matrix scalars without closed forms.

    Stokes and conjugation data come from the order-by-order derivations, the
    quadratic block from the perturbation engine and the rest from the
    scalar-product reductions.
    """
    conj = conjugation_derive(ctx, stokes_derive(ctx))
    quadratic = PerturbationEngine(ctx, conj).coefficients()
    return bf_coefficients_assemble(ctx, conj, projector_jets(ctx, conj), quadratic)


def coefficient_records(ctx: DepthContext, precision: Precision = "extended") -> list[CoefficientRecord]:
    """Closed-form versus derived values for all coefficient families at one depth."""
    out: list[CoefficientRecord] = []
    st_c, st_d = stokes_closed_form(ctx), stokes_derive(ctx)
    for name, v in st_c.coefficients().items():
        out.append(CoefficientRecord("stokes", name, v, st_d.coefficients()[name]))
    cj_c, cj_d = conjugation_closed_form(ctx), conjugation_derive(ctx, st_d)
    for name, v in cj_c.coefficients().items():
        out.append(CoefficientRecord("conjugation", name, v, cj_d.coefficients()[name]))
    bf_c = bf_coefficients_closed_form(ctx)
    quadratic = PerturbationEngine(ctx, cj_d).coefficients()
    bf_a = bf_coefficients_assemble(ctx, cj_d, projector_jets(ctx, cj_d), quadratic)
    for name, v in bf_c.as_dict().items():
        out.append(CoefficientRecord("reduced", name, v, bf_a.as_dict()[name]))
    dec = decouple(ctx, bf_a)
    out.append(CoefficientRecord("decoupling", "e_wb", e_wb_closed_form(ctx), dec.e_wb))
    out.append(CoefficientRecord("decoupling", "eta_wb", eta_wb_closed_form(ctx, precision),
                                 dec.eta_wb))
    return out
