from dataclasses import dataclass, field

import numpy as np

from ..errors import ValidationError


# Grid constants
class GridConfig:
    """Lower limits on node counts"""
    MIN_SOMATIC_NODES = 2
    MIN_DENDRITIC_NODES = 3  # the Neumann Laplacian stencil needs an interior node


@dataclass(frozen=True)
class Grid:
    """Evenly spaced somato-dendritic grid.

    Storage is 0-based: ``x_nodes[k]`` is x_{k+1} = -L_x + (k+1) h_x and
    ``xi_nodes[k]`` is xi_{k+1} = -L_xi + k h_xi. The somatic grid excludes
    -L_x and includes L_x; periodicity identifies the two.
    """
    n_x: int
    n_xi: int
    L_x: float
    L_xi: float
    h_x: float = field(init=False)
    h_xi: float = field(init=False)
    x_nodes: np.ndarray = field(init=False, repr=False, compare=False)
    xi_nodes: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        h_x = 2.0 * self.L_x / self.n_x
        h_xi = 2.0 * self.L_xi / (self.n_xi - 1)
        x_nodes = -self.L_x + h_x * np.arange(1, self.n_x + 1)
        xi_nodes = -self.L_xi + h_xi * np.arange(self.n_xi)
        # pin the endpoints exactly
        x_nodes[-1] = self.L_x
        xi_nodes[0] = -self.L_xi
        xi_nodes[-1] = self.L_xi
        x_nodes.flags.writeable = False
        xi_nodes.flags.writeable = False
        object.__setattr__(self, 'h_x', h_x)
        object.__setattr__(self, 'h_xi', h_xi)
        object.__setattr__(self, 'x_nodes', x_nodes)
        object.__setattr__(self, 'xi_nodes', xi_nodes)

    @property
    def shape(self) -> tuple:
        """Shape of a field matrix, (n_xi, n_x)"""
        return (self.n_xi, self.n_x)

    @property
    def measure(self) -> float:
        """Area of the closed domain, 4 L_x L_xi"""
        return 4.0 * self.L_x * self.L_xi

    def nearest_xi_index(self, xi: float) -> int:
        """Index of the dendritic node closest to ``xi``"""
        return int(np.argmin(np.abs(self.xi_nodes - xi)))

    def somatic_index(self) -> int:
        """Index of the dendritic row closest to the somatic layer xi = 0"""
        return self.nearest_xi_index(0.0)

    def is_nested_in(self, finer: 'Grid') -> bool:
        """True when every node of this grid is a node of ``finer``"""
        if self.L_x != finer.L_x or self.L_xi != finer.L_xi:
            return False
        if finer.n_x % self.n_x != 0 or (finer.n_xi - 1) % (self.n_xi - 1) != 0:
            return False
        return True


@dataclass(frozen=True, eq=False)
class QuadratureWeights:
    """Composite trapezium weights: rho (somatic, periodic) and sigma (dendritic)"""
    rho: np.ndarray
    sigma: np.ndarray

    def integrate(self, values: np.ndarray) -> float:
        """Apply the tensor-product rule to an (n_xi, n_x) field"""
        return float(self.sigma @ np.asarray(values) @ self.rho)


def build_grid(n_x: int, n_xi: int, L_x: float, L_xi: float) -> Grid:
    """Build the somato-dendritic grid, validating node counts and lengths"""
    if int(n_x) != n_x or n_x < GridConfig.MIN_SOMATIC_NODES:
        raise ValidationError(f"n_x must be an integer >= {GridConfig.MIN_SOMATIC_NODES}, got {n_x}")
    if int(n_xi) != n_xi or n_xi < GridConfig.MIN_DENDRITIC_NODES:
        raise ValidationError(f"n_xi must be >= {GridConfig.MIN_DENDRITIC_NODES}, got {n_xi}")
    if not L_x > 0:
        raise ValidationError(f"L_x must be positive, got {L_x}")
    if not L_xi > 0:
        raise ValidationError(f"L_xi must be positive, got {L_xi}")
    return Grid(n_x=int(n_x), n_xi=int(n_xi), L_x=float(L_x), L_xi=float(L_xi))


def build_weights(grid: Grid) -> QuadratureWeights:
    """Trapezium weights: rho_j = h_x, sigma halved at both dendritic ends"""
    rho = np.full(grid.n_x, grid.h_x)
    sigma = np.full(grid.n_xi, grid.h_xi)
    sigma[0] = sigma[-1] = 0.5 * grid.h_xi
    rho.flags.writeable = False
    sigma.flags.writeable = False
    return QuadratureWeights(rho=rho, sigma=sigma)


def wrapped_distance(grid: Grid, x_a, x_b):
    """Distance on the circle of circumference 2 L_x; accepts scalars or arrays"""
    period = 2.0 * grid.L_x
    d = np.mod(np.abs(np.asarray(x_a, dtype=float) - np.asarray(x_b, dtype=float)), period)
    d = np.minimum(d, period - d)
    return float(d) if np.ndim(d) == 0 else d
