"""Asymmetric-SQUID transmon spectrum.

All energies are stored as frequency equivalents E/h in MHz and all fluxes
in units of the flux quantum, matching the usual device datasheets.  The
module provides the closed-form flux dependence of the Josephson energy,
the standard transmon asymptotic frequency, and an exact charge-basis
diagonalization that serves as the numerical oracle for everything built
on top.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import eigh_tridiagonal

__all__ = [
    "TransmonParams",
    "FluxPoint",
    "SpectrumResult",
    "TransmonRegimeError",
    "effective_ej",
    "f01_asymptotic",
    "diagonalize",
]

DEFAULT_BASIS_SIZE = 41

# |f01(N) - f01(N-4)| below this marks the diagonalization as converged
CONVERGENCE_TOL_MHZ = 1e-3


class TransmonRegimeError(ValueError):
    """Inputs outside the regime where the requested formula is meaningful."""


@dataclass(frozen=True)
class TransmonParams:
    """Charging energy and the two junction energies of a SQUID transmon.

    The constructor normalizes to e_j1 <= e_j2 and records whether the
    inputs were swapped.  Warns (does not fail) when e_j_sum/e_c < 20,
    i.e. outside the usual transmon regime.
    """

    e_c: float
    e_j1: float
    e_j2: float
    swapped: bool = field(default=False, compare=False)

    def __post_init__(self):
        if not (self.e_c > 0 and self.e_j1 > 0 and self.e_j2 > 0):
            raise ValueError(
                f"energies must be positive: e_c={self.e_c}, "
                f"e_j1={self.e_j1}, e_j2={self.e_j2}"
            )
        if self.e_j1 > self.e_j2:
            object.__setattr__(self, "swapped", True)
            ej1, ej2 = self.e_j2, self.e_j1
            object.__setattr__(self, "e_j1", ej1)
            object.__setattr__(self, "e_j2", ej2)
        if self.e_j_sum / self.e_c < 20.0:
            warnings.warn(
                f"e_j_sum/e_c = {self.e_j_sum / self.e_c:.1f} < 20: "
                "outside the transmon regime, asymptotic formulas degrade",
                stacklevel=2,
            )

    @property
    def e_j_sum(self) -> float:
        return self.e_j1 + self.e_j2

    @property
    def asymmetry(self) -> float:
        """d = (e_j2 - e_j1)/(e_j1 + e_j2), in [0, 1)."""
        return (self.e_j2 - self.e_j1) / self.e_j_sum


@dataclass(frozen=True)
class FluxPoint:
    """External flux (units of Phi0) and offset charge."""

    phi: float
    n_g: float = 0.0


@dataclass(frozen=True)
class SpectrumResult:
    f01: float
    f12: float
    anharmonicity: float
    basis_size: int
    converged: bool


def effective_ej(params: TransmonParams, phi: float) -> float:
    """Flux-dependent Josephson energy of the asymmetric SQUID (MHz).

    E_J(phi) = E_Jsum sqrt(cos^2(pi phi) + d^2 sin^2(pi phi)); 1-periodic
    and even in phi, maximal at phi = 0, minimal at phi = 0.5.
    """
    d = params.asymmetry
    c = math.cos(math.pi * phi)
    s = math.sin(math.pi * phi)
    return params.e_j_sum * math.sqrt(c * c + d * d * s * s)


def f01_asymptotic(params: TransmonParams, phi: float) -> float:
    """Leading-order transmon frequency sqrt(8 E_J E_C) - E_C (MHz)."""
    ej = effective_ej(params, phi)
    if ej <= params.e_c / 8.0:
        raise TransmonRegimeError(
            f"effective E_J = {ej:.3g} MHz at phi = {phi} is outside the "
            "transmon regime (degenerate SQUID near half flux?)"
        )
    return math.sqrt(8.0 * ej * params.e_c) - params.e_c


def _charge_basis_levels(e_c: float, ej: float, n_g: float, basis_size: int) -> np.ndarray:
    # H = 4 E_C (n - n_g)^2 - E_J/2 (|n><n+1| + h.c.) in the charge basis
    half = basis_size // 2
    n = np.arange(-half, half + 1, dtype=float)
    diag = 4.0 * e_c * (n - n_g) ** 2
    off = np.full(basis_size - 1, -0.5 * ej)
    return eigh_tridiagonal(diag, off, select="i", select_range=(0, 2))[0]


def diagonalize(
    params: TransmonParams,
    point: FluxPoint,
    basis_size: int = DEFAULT_BASIS_SIZE,
) -> SpectrumResult:
    """Exact spectrum of the charge-basis Hamiltonian at a flux point.

    Returns the two lowest transitions; convergence is assessed by
    re-diagonalizing with four fewer charge states.  Non-convergence is
    flagged in the result, not raised.
    """
    if basis_size < 11 or basis_size % 2 == 0:
        raise ValueError(f"basis_size must be odd and >= 11, got {basis_size}")
    ej = effective_ej(params, point.phi)
    levels = _charge_basis_levels(params.e_c, ej, point.n_g, basis_size)
    f01 = levels[1] - levels[0]
    f12 = levels[2] - levels[1]
    smaller = _charge_basis_levels(params.e_c, ej, point.n_g, basis_size - 4)
    converged = abs(f01 - (smaller[1] - smaller[0])) < CONVERGENCE_TOL_MHZ
    return SpectrumResult(
        f01=f01,
        f12=f12,
        anharmonicity=f12 - f01,
        basis_size=basis_size,
        converged=converged,
    )
