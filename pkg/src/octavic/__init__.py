"""Integral octaves, the spin group of the (2,10) lattice and its Siegel
embedding, level-two cusp values of second-kind theta series."""

from .octonion import IntegralOctave, Octave, enumerate_by_norm, oct_mul, oct_norm
from .cusps import build_cusp_matrix, enumerate_cusp_R, enumerate_isotropic
from .exactla import PrimeField, certify_rank, rank_mod_p

__version__ = "0.1.0"
