"""
Tridiagonal dendritic operators.

The Neumann Laplacian D_xixi, the implicit matrix
A = (1 + gamma tau) I - tau nu D_xixi, its pivot-free LU factorisation and
the multi-column forward/backward substitution used at every IMEX step.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..errors import DimensionMismatchError, SingularFactorizationError, ValidationError
from ..grid import Grid


# LU constants
class LinopConfig:
    """Guards for the pivot-free factorisation"""
    PIVOT_TOLERANCE = 1e-14


@dataclass(frozen=True, eq=False)
class TridiagonalMatrix:
    """Band storage: lower (n-1), main (n), upper (n-1)"""
    lower: np.ndarray
    main: np.ndarray
    upper: np.ndarray

    def __post_init__(self):
        n = len(self.main)
        if len(self.lower) != n - 1 or len(self.upper) != n - 1:
            raise DimensionMismatchError(
                f"Off-diagonals must have length {n - 1}, got {len(self.lower)} and {len(self.upper)}"
            )

    @property
    def n(self) -> int:
        return len(self.main)

    def to_dense(self) -> np.ndarray:
        return np.diag(self.main) + np.diag(self.lower, -1) + np.diag(self.upper, 1)

    def matvec(self, X: np.ndarray) -> np.ndarray:
        """A @ X for a vector or a matrix of columns"""
        X = np.asarray(X, dtype=float)
        out = self.main.reshape((-1,) + (1,) * (X.ndim - 1)) * X
        shape = (-1,) + (1,) * (X.ndim - 1)
        out[:-1] += self.upper.reshape(shape) * X[1:]
        out[1:] += self.lower.reshape(shape) * X[:-1]
        return out

    def row_sums(self) -> np.ndarray:
        sums = self.main.copy()
        sums[:-1] += self.upper
        sums[1:] += self.lower
        return sums

    def dominance_margins(self) -> np.ndarray:
        """|a_ii| - sum_{j != i} |a_ij| for every row"""
        off = np.zeros(self.n)
        off[:-1] += np.abs(self.upper)
        off[1:] += np.abs(self.lower)
        return np.abs(self.main) - off


@dataclass(frozen=True, eq=False)
class TridiagFactorization:
    """A = L U with L unit lower bidiagonal and U upper bidiagonal.

    Three n-vectors: ``l`` (subdiagonal of L), ``u`` (diagonal of U) and
    ``c`` (superdiagonal of U, equal to that of A).
    """
    l: np.ndarray
    u: np.ndarray
    c: np.ndarray

    @property
    def n(self) -> int:
        return len(self.u)

    def reconstruct(self) -> TridiagonalMatrix:
        """L @ U in band storage"""
        main = self.u.copy()
        main[1:] += self.l * self.c
        return TridiagonalMatrix(lower=self.l * self.u[:-1], main=main, upper=self.c.copy())


def build_laplacian(grid: Grid) -> TridiagonalMatrix:
    """D_xixi = Delta / h_xi^2 with Neumann rows (-2, 2) and (2, -2)"""
    n = grid.n_xi
    scale = 1.0 / grid.h_xi ** 2
    main = np.full(n, -2.0)
    upper = np.ones(n - 1)
    lower = np.ones(n - 1)
    upper[0] = 2.0
    lower[-1] = 2.0
    return TridiagonalMatrix(lower=lower * scale, main=main * scale, upper=upper * scale)


def build_A(D: TridiagonalMatrix, gamma: float, nu: float, tau: float) -> TridiagonalMatrix:
    """A = (1 + gamma tau) I - tau nu D"""
    if not tau > 0:
        raise ValidationError(f"tau must be positive, got {tau}")
    return TridiagonalMatrix(
        lower=-tau * nu * D.lower,
        main=(1.0 + gamma * tau) - tau * nu * D.main,
        upper=-tau * nu * D.upper,
    )


def factorize(A: TridiagonalMatrix) -> TridiagFactorization:
    """Pivot-free LU; stable because A is strictly diagonally dominant"""
    n = A.n
    l = np.empty(n - 1)
    u = np.empty(n)
    u[0] = A.main[0]
    for i in range(1, n):
        if abs(u[i - 1]) < LinopConfig.PIVOT_TOLERANCE:
            raise SingularFactorizationError(f"Vanishing pivot at row {i - 1}: {u[i - 1]!r}")
        l[i - 1] = A.lower[i - 1] / u[i - 1]
        u[i] = A.main[i] - l[i - 1] * A.upper[i - 1]
    if abs(u[-1]) < LinopConfig.PIVOT_TOLERANCE:
        raise SingularFactorizationError(f"Vanishing pivot at row {n - 1}: {u[-1]!r}")
    return TridiagFactorization(l=l, u=u, c=A.upper.copy())


def solve_in_place(F: TridiagFactorization, B: np.ndarray, out: Optional[np.ndarray] = None) -> np.ndarray:
    """Solve A X = B column by column.

    Rows are swept in order and every column is updated with the same
    arithmetic, so the result does not depend on how many columns are passed.
    Writes into ``out`` when given (``out`` may be ``B`` itself).
    """
    B = np.asarray(B, dtype=float)
    if B.shape[0] != F.n:
        raise DimensionMismatchError(f"Right-hand side has {B.shape[0]} rows, expected {F.n}")
    X = np.array(B, copy=True) if out is None else out
    if out is not None and out is not B:
        X[...] = B
    n = F.n
    # forward substitution, L y = b
    for i in range(1, n):
        X[i] -= F.l[i - 1] * X[i - 1]
    # backward substitution, U x = y
    X[n - 1] /= F.u[n - 1]
    for i in range(n - 2, -1, -1):
        X[i] -= F.c[i] * X[i + 1]
        X[i] /= F.u[i]
    return X


def inverse_inf_norm_bound(gamma: float, tau: float) -> float:
    """Upper bound 1/(1 + gamma tau) on the infinity norm of A^{-1}"""
    if not gamma > 0 or not tau > 0:
        raise ValidationError(f"gamma and tau must be positive, got {gamma}, {tau}")
    return 1.0 / (1.0 + gamma * tau)


def inverse_inf_norm(F: TridiagFactorization) -> float:
    """Infinity norm of A^{-1}, from solving against the identity"""
    inverse = solve_in_place(F, np.eye(F.n))
    return float(np.max(np.sum(np.abs(inverse), axis=1)))
