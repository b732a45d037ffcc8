"""Exact elimination over Fraction-valued numpy object arrays."""
from fractions import Fraction
from typing import Sequence

import numpy as np

from services.errors import SingularSystem


def as_fraction_array(rows: Sequence[Sequence]) -> np.ndarray:
    rows = [[Fraction(x) for x in row] for row in rows]
    if not rows:
        return np.empty((0, 0), dtype=object)
    return np.array(rows, dtype=object).reshape(len(rows), len(rows[0]))


def solve(matrix: np.ndarray, rhs: Sequence) -> np.ndarray:
    """Gauss-Jordan on the augmented system; raises SingularSystem when no unique solution exists."""
    n = matrix.shape[0]
    if matrix.shape != (n, n) or len(rhs) != n:
        raise SingularSystem(f"system of shape {matrix.shape} with {len(rhs)} right-hand sides")
    if n == 0:
        return np.array([], dtype=object)

    X = np.concatenate(
        [as_fraction_array(matrix.tolist()), np.array([[Fraction(x)] for x in rhs], dtype=object)], axis=1
    )
    for i in range(n):
        for j in range(i, n):
            if X[j, i] != 0:
                if i != j:
                    X[[i, j]] = X[[j, i]]
                break
        else:
            raise SingularSystem("intersection matrix is singular")
        X[i, :] = X[i, :] / X[i, i]
        for j in range(n):
            if j != i and X[j, i] != 0:
                X[j, :] = X[j, :] - X[j, i] * X[i, :]
    return X[:, n]


def determinant(matrix: np.ndarray) -> Fraction:
    n = matrix.shape[0]
    X = as_fraction_array(matrix.tolist())
    det = Fraction(1)
    for i in range(n):
        pivot = next((j for j in range(i, n) if X[j, i] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != i:
            X[[i, pivot]] = X[[pivot, i]]
            det = -det
        det *= X[i, i]
        for j in range(i + 1, n):
            X[j, :] = X[j, :] - (X[j, i] / X[i, i]) * X[i, :]
    return Fraction(det)


def is_negative_definite(matrix: np.ndarray) -> bool:
    # -M positive definite iff elimination without pivoting meets only positive pivots
    n = matrix.shape[0]
    X = -as_fraction_array(matrix.tolist())
    for i in range(n):
        if X[i, i] <= 0:
            return False
        for j in range(i + 1, n):
            X[j, :] = X[j, :] - (X[j, i] / X[i, i]) * X[i, :]
    return True
