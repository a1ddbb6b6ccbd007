"""
Entanglement diagnostics for the qutrit-pair states.

The PPT test can only separate the distillable region of ``sigma_alpha``
from the rest.  Whether a PPT member is separable or bound entangled is not
decided numerically here: :func:`classify_sigma_alpha` reads the region off
the known boundaries at alpha = 3 and alpha = 4, and then checks that the
answer agrees with the PPT spectrum.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np
from scipy.optimize import bisect

from .errors import DegenerateStateError, InvalidInputError, InvariantViolation
from .linalg import DensityMatrix, eig_hermitian, max_abs, partial_transpose, partial_transpose_matrix
from .states import check_alpha, rho_one, sigma_alpha, sigma_minus, sigma_plus

PPT_TOL = 1e-10
WITNESS_TRACE_TOL = 1e-12


class EntanglementClass(enum.Enum):
    SEPARABLE = "Separable"
    BOUND_ENTANGLED = "BoundEntangled"
    FREE_ENTANGLED = "FreeEntangled"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class PptReport:
    min_eigenvalue: float
    is_ppt: bool
    spectrum: tuple[float, ...]


def ppt_report(rho: DensityMatrix, tol: float = PPT_TOL) -> PptReport:
    """Spectrum of the partial transpose on the second subsystem.

    ``is_ppt`` is true when the smallest eigenvalue is at least ``-tol``.
    """
    if len(rho.dims) != 2:
        raise InvalidInputError(f"PPT test needs a bipartite state, got dims {rho.dims}")
    spectrum = eig_hermitian(partial_transpose(rho, 1))
    lam = float(spectrum[0])
    return PptReport(min_eigenvalue=lam, is_ppt=lam >= -tol, spectrum=tuple(float(x) for x in spectrum))


def sigma_alpha_min_pt_eigenvalue(alpha: float) -> float:
    return ppt_report(sigma_alpha(alpha)).min_eigenvalue


def ppt_boundary(lo: float = 3.0, hi: float = 5.0, xtol: float = 1e-12) -> float:
    """Locate the alpha at which sigma_alpha stops being PPT, by bisection."""
    return bisect(sigma_alpha_min_pt_eigenvalue, lo, hi, xtol=xtol)


def classify_sigma_alpha(alpha: float) -> EntanglementClass:
    """Region of ``sigma_alpha`` on [2, 5].

    Raises
    ------
    InvalidInputError
        For alpha outside [2, 5].
    InvariantViolation
        If the region disagrees with the numerical PPT test
        (FreeEntangled must be exactly the NPT members).
    """
    alpha = check_alpha(alpha)
    if alpha <= 3.0:
        cls = EntanglementClass.SEPARABLE
    elif alpha <= 4.0:
        cls = EntanglementClass.BOUND_ENTANGLED
    else:
        cls = EntanglementClass.FREE_ENTANGLED
    report = ppt_report(sigma_alpha(alpha))
    if report.is_ppt == (cls is EntanglementClass.FREE_ENTANGLED):
        raise InvariantViolation(
            f"alpha={alpha!r}: region {cls} but min PT eigenvalue {report.min_eigenvalue:.3g}")
    return cls


def _two_qubit_corner(rho: DensityMatrix) -> np.ndarray:
    # rows/cols |00>,|01>,|10>,|11> of the 3x3 basis
    idx = [0, 1, 3, 4]
    return np.asarray(rho.matrix)[np.ix_(idx, idx)]


def projection_witness(rho: DensityMatrix) -> float:
    """Minimum PT eigenvalue after projecting both qutrits onto span{|0>, |1>}.

    A negative return value certifies that ``rho`` is distillable.

    Raises
    ------
    DegenerateStateError
        If the projected operator has trace below 1e-12.
    """
    if rho.dims != (3, 3):
        raise InvalidInputError(f"projection_witness needs a two-qutrit state, got dims {rho.dims}")
    corner = _two_qubit_corner(rho)
    tr = float(np.trace(corner).real)
    if tr < WITNESS_TRACE_TOL:
        raise DegenerateStateError(f"projected trace {tr:.3g} is too small to renormalise")
    pt = partial_transpose_matrix(corner / tr, (2, 2), 1)
    return float(eig_hermitian(pt)[0])


def decomposition_residual(alpha: float) -> float:
    """Max-entry distance between sigma_alpha and its rho_one-based rewrite.

    The rewrite ``(6/7) rho_one + ((alpha-2)/7) sigma_plus + ((3-alpha)/7) sigma_minus``
    is a convex mixture of separable states only for alpha in [2, 3], but the
    identity itself holds on all of [2, 5].
    """
    alpha = check_alpha(alpha)
    rewrite = (6.0 / 7.0) * rho_one().matrix \
        + ((alpha - 2.0) / 7.0) * sigma_plus().matrix \
        + ((3.0 - alpha) / 7.0) * sigma_minus().matrix
    return max_abs(sigma_alpha(alpha).matrix - rewrite)
