"""
Grid module for the somato-dendritic discretisation.

Builds the periodic somatic nodes, the Neumann dendritic nodes and the
trapezium quadrature weights shared by every other module.
"""

from .base import Grid, GridConfig, QuadratureWeights, build_grid, build_weights, wrapped_distance

__all__ = [
    'Grid',
    'GridConfig',
    'QuadratureWeights',
    'build_grid',
    'build_weights',
    'wrapped_distance'
]
