"""Negative spectrum of the star graph with the cyclic coupling.

A decaying edge state c_j e^(-kappa x) satisfies the matching conditions
exactly when (kappa - i)^N + (-1)^(N-1) (kappa + i)^N = 0, whose positive
roots are kappa = tan(pi m / N); the graph Hamiltonian has the eigenvalues
-kappa^2.  The count is (N-1)/2 for odd N and N/2 - 1 for even N, so the
discrete spectrum is never empty for N >= 3.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .numerics import DEFAULT_TOL, Bracket, NumericError, ToleranceConfig, find_root

__all__ = ["StarSpectrum", "spectral_polynomial", "bound_states"]


@dataclass(frozen=True)
class StarSpectrum:
    degree: int
    kappas: tuple[float, ...]
    energies: tuple[float, ...]


def spectral_polynomial(n: int, kappa: float) -> float:
    """Real-valued reduction of the bound-state condition at decay rate kappa.

    (kappa - i)^N + (-1)^(N-1) (kappa + i)^N is purely real for odd N and
    purely imaginary for even N; the corresponding real component is
    returned so roots can be bracketed on the real line.
    """
    if n < 3:
        raise ValueError("degree must be at least 3")
    z = complex(kappa, 1.0) ** n
    return 2.0 * (z.real if n % 2 == 1 else z.imag)


def _root_count(n: int) -> int:
    return (n - 1) // 2 if n % 2 == 1 else n // 2 - 1


def bound_states(n: int, tol: ToleranceConfig = DEFAULT_TOL) -> StarSpectrum:
    """Bound-state decay rates and energies of the degree-n star graph.

    Each kappa is found twice: from the closed form tan(pi m / n) and by
    root-finding the spectral polynomial in a bracket around it.  The two
    must agree to 1e-10; kappa = 0 is a formal root of the polynomial but
    not a normalizable state, and the bracketing keeps it out.
    """
    if n < 3:
        raise ValueError("degree must be at least 3")
    count = _root_count(n)
    kappas: list[float] = []
    for m in range(1, count + 1):
        closed = math.tan(math.pi * m / n)
        if 2 * m + 1 < n:
            hi = math.tan(math.pi * (m + 0.5) / n)
        else:
            # the next half-point sits on the tan pole for odd n; any point
            # past the last root keeps the alternating sign
            hi = closed + 1.0
        lo = math.tan(math.pi * (m - 0.5) / n)
        bracket = Bracket(lo, hi, spectral_polynomial(n, lo), spectral_polynomial(n, hi))
        refined = find_root(lambda x: spectral_polynomial(n, x), bracket, tol)
        if abs(refined - closed) > 1e-10:
            raise NumericError(
                f"closed-form and refined bound states disagree for n={n}, m={m}: "
                f"{closed} vs {refined}"
            )
        if closed > tol.root_abs:
            kappas.append(closed)
    kappas.sort()
    return StarSpectrum(
        degree=n,
        kappas=tuple(kappas),
        energies=tuple(-k * k for k in kappas),
    )
