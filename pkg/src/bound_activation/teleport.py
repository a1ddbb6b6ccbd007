"""
Standard qutrit teleportation through a mixed two-qutrit resource.

Alice holds the unknown input C and half A of the resource; Bob holds B.
Alice measures (C, A) in the generalised Bell basis

    |Phi_mn> = (1/sqrt(d)) sum_k w^(k n) |k>|k+m>,   w = exp(2 pi i / d)

and Bob applies ``Z^n X^-m`` for outcome (m, n), where X|k> = |k+1> and
Z|k> = w^k |k>.  With the maximally entangled resource this returns the input
exactly; the average over outcomes defines the channel ``Lambda_rho``.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidInputError, NonConvergenceError
from .linalg import DensityMatrix, StateVector, dagger
from .protocol import iterate
from .states import check_alpha, check_fidelity, rho_free_closed

D = 3


def shift(d: int = D) -> np.ndarray:
    return np.roll(np.eye(d, dtype=complex), 1, axis=0)


def clock(d: int = D) -> np.ndarray:
    return np.diag(np.exp(2j * np.pi * np.arange(d) / d))


@dataclass(frozen=True, eq=False)
class BellBasis:
    d: int
    vectors: dict  # (m, n) -> StateVector


@functools.lru_cache(maxsize=None)
def bell_basis(d: int = D) -> BellBasis:
    w = np.exp(2j * np.pi / d)
    vectors = {}
    for m in range(d):
        for n in range(d):
            amp = np.zeros(d * d, dtype=complex)
            for k in range(d):
                amp[k * d + (k + m) % d] = w ** (k * n) / math.sqrt(d)
            vectors[(m, n)] = StateVector(amp, (d, d))
    return BellBasis(d, vectors)


def correction(m: int, n: int, d: int = D) -> np.ndarray:
    """Bob's unitary for Bell outcome (m, n)."""
    return np.linalg.matrix_power(clock(d), n) @ np.linalg.matrix_power(shift(d), (-m) % d)


def _check_resource(rho):
    if not isinstance(rho, DensityMatrix) or rho.dims != (D, D):
        raise InvalidInputError("teleportation resource must be a two-qutrit DensityMatrix")


def _apply_channel(rho_matrix: np.ndarray, x: np.ndarray) -> np.ndarray:
    # x: operator on C; rho_matrix: operator on (A, B); returns operator on B
    r = rho_matrix.reshape(D, D, D, D)  # [a, b, a', b']
    out = np.zeros((D, D), dtype=complex)
    for (m, n), phi in bell_basis(D).vectors.items():
        v = phi.amplitudes.reshape(D, D)  # [c, a]
        # <Phi| (x (x) rho) |Phi> with B left open
        bob = np.einsum("ca,cd,abef,de->bf", np.conj(v), x, r, v)
        u = correction(m, n)
        out += u @ bob @ dagger(u)
    return out


def teleport_channel(rho: DensityMatrix, psi: StateVector) -> DensityMatrix:
    """Bob's outcome-averaged state after teleporting ``psi`` through ``rho``."""
    _check_resource(rho)
    if psi.dim != D:
        raise InvalidInputError(f"input must be a single qutrit, got dimension {psi.dim}")
    return DensityMatrix(_apply_channel(np.asarray(rho.matrix), psi.projector()), (D,))


def channel_matrix(rho: DensityMatrix) -> np.ndarray:
    """Lambda_rho as a d^2 x d^2 matrix acting on row-major vec(X)."""
    _check_resource(rho)
    m = np.asarray(rho.matrix)
    cols = []
    for i in range(D):
        for j in range(D):
            e = np.zeros((D, D), dtype=complex)
            e[i, j] = 1.0
            cols.append(_apply_channel(m, e).reshape(-1))
    return np.stack(cols, axis=1)


def random_pure_states(n: int, seed: int, d: int = D) -> np.ndarray:
    """``n`` Haar-random unit vectors (rows), from normalised complex Gaussians.

    Uses numpy's PCG64 generator seeded with ``seed``.
    """
    rng = np.random.default_rng(seed)
    z = rng.standard_normal((n, d)) + 1j * rng.standard_normal((n, d))
    return z / np.linalg.norm(z, axis=1, keepdims=True)


def sample_fidelities(rho: DensityMatrix, psis: np.ndarray) -> np.ndarray:
    """<psi|Lambda_rho(psi)|psi> for each row of ``psis``."""
    lam = channel_matrix(rho)
    proj = np.einsum("si,sj->sij", psis, np.conj(psis)).reshape(len(psis), -1)
    out = (proj @ lam.T).reshape(len(psis), D, D)
    f = np.einsum("si,sij,sj->s", np.conj(psis), out, psis)
    return f.real


@dataclass(frozen=True)
class TransferFidelityEstimate:
    mean: float
    std_error: float
    n_samples: int
    seed: int


def average_transfer_fidelity(rho: DensityMatrix, n_samples: int = 10_000, seed: int = 0) -> TransferFidelityEstimate:
    """Monte Carlo average of the teleportation fidelity over random pure inputs."""
    if int(n_samples) != n_samples or n_samples < 1:
        raise InvalidInputError(f"n_samples must be a positive integer, got {n_samples!r}")
    f = sample_fidelities(rho, random_pure_states(int(n_samples), seed))
    mean = float(np.mean(f))
    err = float(np.std(f, ddof=1) / math.sqrt(n_samples)) if n_samples > 1 else 0.0
    return TransferFidelityEstimate(mean=min(max(mean, 0.0), 1.0), std_error=err,
                                    n_samples=int(n_samples), seed=seed)


def fidelity_convergence_table(alpha: float, F0: float, rounds: int,
                               n_samples: int = 10_000, seed: int = 0):
    """Rows ``(n, F_n, estimate_n)`` along the closed-form iteration.

    Every row reuses the same input sample (same ``seed``), so differences
    between rows reflect the resource alone.
    """
    alpha, F0 = check_alpha(alpha), check_fidelity(F0)
    if alpha <= 3.0:
        raise NonConvergenceError(f"alpha={alpha} <= 3: the iteration does not raise fidelity")
    rows = iterate(F0, alpha, F_target=1.0, max_rounds=rounds)
    table = []
    for row in rows:
        rho = rho_free_closed(row.F_n)
        table.append((row.n, row.F_n, average_transfer_fidelity(rho, n_samples, seed)))
    return table
