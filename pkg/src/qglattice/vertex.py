"""Rotation-preferring vertex coupling and its on-shell scattering matrices.

The coupling on a degree-N vertex is defined by the cyclic shift matrix U
acting on edge boundary values through A Psi + B Psi' = 0 with A = U - I,
B = i(U + I).  Component-wise the matching conditions read

    (psi_{j+1} - psi_j) + i (psi'_{j+1} + psi'_j) = 0,   j mod N,

which single out a direction of circulation around the vertex: they are not
invariant under reversing the edge order.  The scattering matrix at momentum
k > 0 is the rational function S(k) = (k - 1 + (k + 1) U) / (k + 1 + (k - 1) U)
of U, so S is circulant, commutes with U, and fixes the constant vector.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "VertexCoupling",
    "BoundaryPair",
    "ScatteringMatrix",
    "cyclic_coupling",
    "boundary_pair",
    "s_matrix",
    "s_matrix_closed_form",
    "energy_limit",
]


@dataclass(frozen=True)
class VertexCoupling:
    """A unitary N x N matrix defining self-adjoint matching at a vertex."""

    degree: int
    u: np.ndarray


@dataclass(frozen=True)
class BoundaryPair:
    """Matrices (a, b) of the boundary form a Psi + b Psi' = 0."""

    a: np.ndarray
    b: np.ndarray


@dataclass(frozen=True)
class ScatteringMatrix:
    """On-shell N x N scattering matrix at momentum k > 0."""

    k: float
    s: np.ndarray

    def unitarity_residual(self) -> float:
        n = self.s.shape[0]
        return float(np.max(np.abs(self.s.conj().T @ self.s - np.eye(n))))


def cyclic_coupling(n: int) -> VertexCoupling:
    """The cyclic-shift coupling of degree n: row j has its 1 in column j+1 mod n.

    Degrees below 3 are rejected; the matching conditions collapse to nothing
    new for n < 3.
    """
    if n < 3:
        raise ValueError("cyclic coupling is non-trivial only for degree >= 3")
    u = np.zeros((n, n), dtype=complex)
    u[np.arange(n), (np.arange(n) + 1) % n] = 1.0
    return VertexCoupling(degree=n, u=u)


def boundary_pair(coupling: VertexCoupling) -> BoundaryPair:
    """Boundary matrices a = U - I and b = i (U + I) of the coupling."""
    eye = np.eye(coupling.degree, dtype=complex)
    return BoundaryPair(a=coupling.u - eye, b=1j * (coupling.u + eye))


def s_matrix(coupling: VertexCoupling, k: float) -> ScatteringMatrix:
    """Scattering matrix at momentum k, by solving the defining linear system.

    At k = 1 the matrix is U itself; that value is returned exactly rather
    than through the solver, since it is the designed maximum-rotation point.
    """
    if k <= 0.0:
        raise ValueError("momentum must be positive")
    n = coupling.degree
    if k == 1.0:
        return ScatteringMatrix(k=k, s=coupling.u.copy())
    eye = np.eye(n, dtype=complex)
    lhs = (k + 1.0) * eye + (k - 1.0) * coupling.u
    rhs = (k - 1.0) * eye + (k + 1.0) * coupling.u
    return ScatteringMatrix(k=k, s=np.linalg.solve(lhs, rhs))


def s_matrix_closed_form(n: int, k: float) -> ScatteringMatrix:
    """Entry-wise closed form of the scattering matrix.

    With eta = (1 - k) / (1 + k), the diagonal is -eta (1 - eta^(n-2)) /
    (1 - eta^n) and entry (i, j), i != j, is (1 - eta^2) eta^((j-i-1) mod n)
    / (1 - eta^n).  For k in (0, inf) we have |eta| < 1, so the expression
    is regular, including eta = 0 at k = 1.
    """
    if n < 3:
        raise ValueError("cyclic coupling is non-trivial only for degree >= 3")
    if k <= 0.0:
        raise ValueError("momentum must be positive")
    eta = (1.0 - k) / (1.0 + k)
    denom = 1.0 - eta**n
    s = np.empty((n, n), dtype=complex)
    diag = -eta * (1.0 - eta ** (n - 2)) / denom
    off = (1.0 - eta**2) / denom
    for i in range(n):
        for j in range(n):
            if i == j:
                s[i, j] = diag
            else:
                s[i, j] = off * eta ** ((j - i - 1) % n)
    return ScatteringMatrix(k=k, s=s)


def energy_limit(n: int, end: str) -> np.ndarray:
    """Limit of S(k) at the spectral ends, via spectral projections of U.

    Naive substitution into the closed form is 0/0 whenever +1 or -1 is an
    eigenvalue of U, so the limits are assembled from the projections:
    high end I - 2 P(-1) (P(-1) = 0 for odd n, hence the identity), low end
    -I + 2 P(+1) with P(+1) the rank-one projector onto the constant vector.
    """
    if n < 3:
        raise ValueError("cyclic coupling is non-trivial only for degree >= 3")
    eye = np.eye(n, dtype=complex)
    if end == "low":
        ones = np.ones((n, n), dtype=complex) / n
        return -eye + 2.0 * ones
    if end == "high":
        if n % 2 == 1:
            return eye.copy()
        w = np.array([(-1.0) ** j for j in range(n)], dtype=complex)
        p_minus = np.outer(w, w.conj()) / n
        return eye - 2.0 * p_minus
    raise ValueError("end must be 'low' or 'high'")
