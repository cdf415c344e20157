"""Modular forms, p-adic spectral theory of U_p and triple-product L-data."""

__version__ = "0.1.0"

from .arith import Padic, padic_exp, padic_log, padic_valuation, quad_roots_padic, teichmuller
from .characters import DirichletCharacter, RootOfUnity
from .errors import (
    CongruenceViolation,
    DomainError,
    NoEigenvalueError,
    NotInGroundFieldError,
    PadicFormsError,
    PoleError,
    PrecisionError,
    UnsupportedMultiplicityError,
)
from .families import WeightDisc, WeightSpacePoint, continuity_defect, eis_family_coeff, eval_point, gap_power
from .garrett import (
    CriticalSet,
    Degree8Factor,
    TripleLocalData,
    TripleWeights,
    admissibility_H,
    critical_values,
    degree8_euler_factor,
    dirichlet_L_partial,
    functional_eq_reflect,
    gamma_normalization,
    is_balanced,
    triple_L_partial,
)
from .hecke import HeckeLocalData, atkin_U, frick_V, hecke_T, p_stabilize
from .newton import NewtonPolygon, newton_polygon
from .qseries import QSeries, delta_series, partition_series, series_mul, tau
from .spectral import PadicMatrix, fredholm_series, riesz_projector

__all__ = [
    "CongruenceViolation",
    "CriticalSet",
    "Degree8Factor",
    "DirichletCharacter",
    "DomainError",
    "HeckeLocalData",
    "NewtonPolygon",
    "NoEigenvalueError",
    "NotInGroundFieldError",
    "Padic",
    "PadicFormsError",
    "PadicMatrix",
    "PoleError",
    "PrecisionError",
    "QSeries",
    "RootOfUnity",
    "TripleLocalData",
    "TripleWeights",
    "UnsupportedMultiplicityError",
    "WeightDisc",
    "WeightSpacePoint",
    "admissibility_H",
    "atkin_U",
    "continuity_defect",
    "critical_values",
    "degree8_euler_factor",
    "delta_series",
    "dirichlet_L_partial",
    "eis_family_coeff",
    "eval_point",
    "fredholm_series",
    "frick_V",
    "functional_eq_reflect",
    "gamma_normalization",
    "gap_power",
    "hecke_T",
    "is_balanced",
    "newton_polygon",
    "p_stabilize",
    "padic_exp",
    "padic_log",
    "padic_valuation",
    "partition_series",
    "quad_roots_padic",
    "riesz_projector",
    "series_mul",
    "tau",
    "teichmuller",
    "triple_L_partial",
]
