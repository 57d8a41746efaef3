"""Shared independent oracles for the test suite."""
from __future__ import annotations

import numpy as np
import pytest


def cofactor_det(m: np.ndarray) -> complex:
    """Determinant by cofactor expansion along the first row (oracle)."""
    m = np.asarray(m, dtype=complex)
    n = m.shape[0]
    if n == 1:
        return complex(m[0, 0])
    total = 0.0 + 0.0j
    for j in range(n):
        minor = np.delete(np.delete(m, 0, axis=0), j, axis=1)
        total += (-1.0) ** j * m[0, j] * cofactor_det(minor)
    return total


def elimination_rank(m: np.ndarray, tol: float = 1e-10) -> int:
    """Rank by Gaussian elimination with partial pivoting (oracle)."""
    a = np.array(m, dtype=complex)
    rows, cols = a.shape
    rank = 0
    row = 0
    for col in range(cols):
        if row >= rows:
            break
        pivot = row + int(np.argmax(np.abs(a[row:, col])))
        if abs(a[pivot, col]) <= tol:
            continue
        a[[row, pivot]] = a[[pivot, row]]
        a[row + 1:, col:] -= np.outer(a[row + 1:, col] / a[row, col], a[row, col:])
        row += 1
        rank += 1
    return rank


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20260809)
