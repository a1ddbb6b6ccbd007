"""Two-qutrit states of the activation scenario.

Basis kets are ``|ij>`` with Alice's index ``i`` major, so ``|ij>`` is index
``3*i + j``.  ``sigma_plus`` and ``sigma_minus`` are the uniform mixtures of
``|i, i+1>`` and ``|i+1, i>`` (mod 3) respectively.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import InvalidInputError
from .linalg import DensityMatrix, StateVector, mix, pure

QUTRIT_DIMS = (3, 3)


def max_entangled(d: int = 3) -> StateVector:
    """(1/sqrt(d)) * sum_i |i>|i>."""
    if int(d) != d or d < 2:
        raise InvalidInputError(f"max_entangled needs an integer d >= 2, got {d!r}")
    d = int(d)
    amp = np.zeros(d * d, dtype=complex)
    amp[[i * d + i for i in range(d)]] = 1.0 / math.sqrt(d)
    return StateVector(amp, (d, d))


def psi_plus() -> DensityMatrix:
    """Projector onto the two-qutrit maximally entangled state."""
    return pure(max_entangled(3))


def _shift_mixture(offset_a: int, offset_b: int) -> DensityMatrix:
    m = np.zeros((9, 9), dtype=complex)
    for i in range(3):
        k = 3 * ((i + offset_a) % 3) + (i + offset_b) % 3
        m[k, k] = 1.0 / 3.0
    return DensityMatrix(m, QUTRIT_DIMS)


def sigma_plus() -> DensityMatrix:
    """(|01><01| + |12><12| + |20><20|) / 3."""
    return _shift_mixture(0, 1)


def sigma_minus() -> DensityMatrix:
    """(|10><10| + |21><21| + |02><02|) / 3."""
    return _shift_mixture(1, 0)


def check_fidelity(F) -> float:
    F = float(F)
    if not 0.0 < F < 1.0:
        raise InvalidInputError(f"fidelity must lie in the open interval (0, 1), got {F!r}")
    return F


def check_alpha(alpha) -> float:
    alpha = float(alpha)
    if not 2.0 <= alpha <= 5.0:
        raise InvalidInputError(f"alpha must lie in [2, 5], got {alpha!r}")
    return alpha


def rho_free(F: float) -> DensityMatrix:
    """F |Psi+><Psi+| + (1 - F) sigma_plus, for 0 < F < 1.

    Its overlap with Psi+ is exactly ``F`` because sigma_plus is supported on
    kets orthogonal to every ``|kk>``.
    """
    F = check_fidelity(F)
    return mix([F, 1.0 - F], [psi_plus(), sigma_plus()])


def rho_free_closed(F: float) -> DensityMatrix:
    """:func:`rho_free` extended to F = 1, where it is the pure Psi+ state."""
    if float(F) == 1.0:
        return psi_plus()
    return rho_free(F)


def sigma_alpha(alpha: float) -> DensityMatrix:
    """(2/7) |Psi+><Psi+| + (alpha/7) sigma_plus + ((5 - alpha)/7) sigma_minus.

    Separable for ``alpha <= 3``, PPT bound entangled for ``3 < alpha <= 4``,
    distillable for ``alpha > 4``.
    """
    alpha = check_alpha(alpha)
    return mix([2.0 / 7.0, alpha / 7.0, (5.0 - alpha) / 7.0],
               [psi_plus(), sigma_plus(), sigma_minus()])


def rho_one() -> DensityMatrix:
    """Equal mixture of Psi+, sigma_plus and sigma_minus (a separable state)."""
    return mix([1.0 / 3.0] * 3, [psi_plus(), sigma_plus(), sigma_minus()])


def swap_operator(d: int = 3) -> np.ndarray:
    """Unitary exchanging the two d-level factors."""
    s = np.zeros((d * d, d * d), dtype=complex)
    for i in range(d):
        for j in range(d):
            s[j * d + i, i * d + j] = 1.0
    return s
