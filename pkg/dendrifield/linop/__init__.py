"""
Linear-operator module: the Neumann dendritic Laplacian, the implicit IMEX
matrix and its once-per-run LU factorisation.
"""

from .tridiag import (
    LinopConfig, TridiagonalMatrix, TridiagFactorization,
    build_laplacian, build_A, factorize, solve_in_place,
    inverse_inf_norm_bound, inverse_inf_norm
)

__all__ = [
    'LinopConfig',
    'TridiagonalMatrix',
    'TridiagFactorization',
    'build_laplacian',
    'build_A',
    'factorize',
    'solve_in_place',
    'inverse_inf_norm_bound',
    'inverse_inf_norm'
]
