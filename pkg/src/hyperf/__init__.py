"""Fourier analysis and Fourier inequalities on compact commutative hypergroups."""

from .conj_su2 import ConjSU2
from .core import (CharacterPolynomial, DualPoint, FourierCoefficients, HypergroupInstance,
                   QuadratureResolutionError, QuadratureRule, coefficients_of, convolve,
                   fourier_transform, gram_matrix, inverse_fourier, lp_norm)
from .dunkl_ramirez import DunklRamirez

__all__ = [
    "CharacterPolynomial", "ConjSU2", "DualPoint", "DunklRamirez", "FourierCoefficients",
    "HypergroupInstance", "QuadratureResolutionError", "QuadratureRule", "coefficients_of",
    "convolve", "fourier_transform", "gram_matrix", "inverse_fourier", "lp_norm",
]
