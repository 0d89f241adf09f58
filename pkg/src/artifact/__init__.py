"""Exact hole correlations for lozenge tilings of the triangular lattice."""
from .correlation import build_M, omega1_balanced, omega_hat
from .coupling import p_exact, p_numeric
from .exactnum import CycloQ, FreeZeta, RingT, ring_eval_float
from .holes import E, W, HoleConfig, MultiholeSpec, Side2Hole, expand_even_triangle, mirror
from .predictions import SuperpositionPredictor, closed_form_single, ratio_experiment
from .ucoef import u_coef

__version__ = "0.1.0"

__all__ = [
    "CycloQ", "E", "FreeZeta", "HoleConfig", "MultiholeSpec", "RingT", "Side2Hole",
    "SuperpositionPredictor", "W", "build_M", "closed_form_single", "expand_even_triangle",
    "mirror", "omega1_balanced", "omega_hat", "p_exact", "p_numeric", "ratio_experiment",
    "ring_eval_float", "u_coef",
]
