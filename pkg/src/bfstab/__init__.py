"""Benjamin-Feir stability analysis of finite-depth Stokes waves."""

from .conjugation import ConjugationExpansion, conjugation_closed_form, conjugation_derive
from .decoupling import (DecouplingData, critical_depth, decouple, e_wb_closed_form,
                         eta_wb_closed_form, sylvester_residuals)
from .depth import DepthContext, make_depth_context
from .errors import (BFError, BracketFailure, CompositionOverflow, EmptyWindow, OutOfRange,
                     PairingFailure, PreconditionError, SingularSylvester, SolvabilityViolation,
                     SolverError, TruncationTooSmall)
from .floquet import assemble_floquet, near_zero_spectrum, validate_predictions
from .perturbation import PerturbationEngine
from .projector import ProjectorJets, projector_assembly, projector_jets
from .reduced import BFCoefficients, bf_coefficients_assemble, bf_coefficients_closed_form
from .spectrum import (discriminant, figure8, predict, s_block_eigs, stability_region,
                       unstable_mu_window)
from .stokes import StokesExpansion, residual_norm, stokes_closed_form, stokes_derive

__all__ = [
    "BFCoefficients", "BFError", "BracketFailure", "CompositionOverflow", "ConjugationExpansion",
    "DecouplingData", "DepthContext", "EmptyWindow", "OutOfRange", "PairingFailure",
    "PerturbationEngine", "PreconditionError", "ProjectorJets", "SingularSylvester",
    "SolvabilityViolation", "SolverError", "StokesExpansion", "TruncationTooSmall",
    "assemble_floquet", "bf_coefficients_assemble", "bf_coefficients_closed_form",
    "conjugation_closed_form", "conjugation_derive", "critical_depth", "decouple",
    "discriminant", "e_wb_closed_form", "eta_wb_closed_form", "figure8", "make_depth_context",
    "near_zero_spectrum", "predict", "projector_assembly", "projector_jets", "residual_norm",
    "s_block_eigs", "stability_region", "stokes_closed_form", "stokes_derive",
    "sylvester_residuals", "unstable_mu_window", "validate_predictions",
]
