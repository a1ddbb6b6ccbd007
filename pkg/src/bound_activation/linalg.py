"""
Dense complex linear algebra for small multipartite systems.

Matrices are plain ``numpy`` arrays of dtype ``complex128``.  Tensor indices
follow the row-major convention: the leftmost factor is the most significant,
so for dims ``[d0, d1, ...]`` the basis ket ``|i0 i1 ...>`` sits at index
``(...((i0 * d1) + i1) * d2 + ...)``.

Validated values (:class:`StateVector`, :class:`DensityMatrix`) keep a
read-only copy of their data and are safe to share between threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import InvalidInputError, NonConvergenceError

TRACE_TOL = 1e-12
HERMITIAN_TOL = 1e-12
PSD_TOL = 1e-10
NORM_TOL = 1e-12

JACOBI_TOL = 1e-14
JACOBI_MAX_SWEEPS = 100


def as_complex_matrix(a) -> np.ndarray:
    """Return ``a`` as a square, finite complex128 array (copying if needed)."""
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] == 0:
        raise InvalidInputError(f"expected a non-empty square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise InvalidInputError("matrix has non-finite entries")
    return m


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=complex, copy=True)
    a.setflags(write=False)
    return a


def _check_dims(dims: Sequence[int], size: int) -> tuple[int, ...]:
    dims = tuple(int(d) for d in dims)
    if not dims or any(d < 1 for d in dims):
        raise InvalidInputError(f"invalid subsystem dimensions {dims}")
    if math.prod(dims) != size:
        raise InvalidInputError(f"dims {dims} do not factor size {size}")
    return dims


def dagger(a: np.ndarray) -> np.ndarray:
    return np.conj(np.transpose(a))


def max_abs(a) -> float:
    """Max-entry norm."""
    return float(np.max(np.abs(a)))


def hermiticity_error(a) -> float:
    return max_abs(a - dagger(a))


@dataclass(frozen=True, eq=False)
class StateVector:
    """Unit-norm pure state with a declared tensor factorisation."""

    amplitudes: np.ndarray
    dims: tuple[int, ...]

    def __post_init__(self):
        amp = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        if not np.all(np.isfinite(amp)):
            raise InvalidInputError("state vector has non-finite amplitudes")
        dims = _check_dims(self.dims, amp.size)
        norm2 = float(np.vdot(amp, amp).real)
        if abs(norm2 - 1.0) > NORM_TOL:
            raise InvalidInputError(f"state vector not normalised (norm^2 = {norm2!r})")
        object.__setattr__(self, "amplitudes", _frozen(amp))
        object.__setattr__(self, "dims", dims)

    @classmethod
    def normalized(cls, amplitudes, dims=None) -> "StateVector":
        amp = np.asarray(amplitudes, dtype=complex).reshape(-1)
        norm = np.linalg.norm(amp)
        if norm == 0:
            raise InvalidInputError("cannot normalise the zero vector")
        return cls(amp / norm, dims if dims is not None else (amp.size,))

    @classmethod
    def basis(cls, index: int, dim: int) -> "StateVector":
        amp = np.zeros(dim, dtype=complex)
        amp[index] = 1.0
        return cls(amp, (dim,))

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    def projector(self) -> np.ndarray:
        return np.outer(self.amplitudes, np.conj(self.amplitudes))


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Trace-one, Hermitian, positive semidefinite operator on ``prod(dims)``.

    The invariants are checked on construction (PSD via :func:`eig_hermitian`),
    so build one only when the check is affordable; intermediate operators
    in larger spaces are handled as raw arrays.
    """

    matrix: np.ndarray
    dims: tuple[int, ...]

    def __post_init__(self):
        m = as_complex_matrix(self.matrix)
        dims = _check_dims(self.dims, m.shape[0])
        tr = np.trace(m)
        if abs(tr - 1.0) > TRACE_TOL:
            raise InvalidInputError(f"trace is {tr!r}, expected 1")
        herr = hermiticity_error(m)
        if herr > HERMITIAN_TOL:
            raise InvalidInputError(f"matrix not Hermitian (max deviation {herr:.3g})")
        lam_min = eig_hermitian(m)[0]
        if lam_min < -PSD_TOL:
            raise InvalidInputError(f"matrix not positive semidefinite (min eigenvalue {lam_min:.3g})")
        object.__setattr__(self, "matrix", _frozen(m))
        object.__setattr__(self, "dims", dims)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def __add__(self, other):
        raise TypeError("use mix() to form convex combinations of density matrices")


def pure(psi: StateVector) -> DensityMatrix:
    """|psi><psi|."""
    return DensityMatrix(psi.projector(), psi.dims)


def mix(weights: Sequence[float], states: Sequence[DensityMatrix]) -> DensityMatrix:
    """Convex combination ``sum_k w_k rho_k`` of states sharing dims."""
    if len(weights) != len(states) or not states:
        raise InvalidInputError("weights and states must be non-empty and of equal length")
    dims = states[0].dims
    if any(s.dims != dims for s in states):
        raise InvalidInputError("cannot mix states with different dims")
    if any(w < 0 for w in weights):
        raise InvalidInputError("mixture weights must be non-negative")
    m = sum(w * s.matrix for w, s in zip(weights, states))
    return DensityMatrix(m, dims)


def kron(a, b) -> np.ndarray:
    """Tensor product; entry ``(i*dB + k, j*dB + l)`` equals ``A[i,j] * B[k,l]``."""
    a = as_complex_matrix(a)
    b = as_complex_matrix(b)
    db = b.shape[0]
    out = a[:, None, :, None] * b[None, :, None, :]
    return out.reshape(a.shape[0] * db, a.shape[1] * db)


def permute_subsystems(matrix, dims: Sequence[int], perm: Sequence[int]) -> np.ndarray:
    """Reorder tensor factors so that new factor ``k`` is old factor ``perm[k]``."""
    m = as_complex_matrix(matrix)
    dims = _check_dims(dims, m.shape[0])
    perm = tuple(perm)
    if sorted(perm) != list(range(len(dims))):
        raise InvalidInputError(f"{perm} is not a permutation of {len(dims)} subsystems")
    n = len(dims)
    t = m.reshape(dims + dims)
    t = t.transpose(perm + tuple(p + n for p in perm))
    size = m.shape[0]
    return t.reshape(size, size)


def _normalise_keep(keep, n: int) -> tuple[int, ...]:
    if isinstance(keep, (int, np.integer)):
        keep = (int(keep),)
    keep = tuple(sorted(set(int(k) for k in keep)))
    if not keep:
        raise InvalidInputError("keep must name at least one subsystem")
    if keep[0] < 0 or keep[-1] >= n:
        raise InvalidInputError(f"subsystem index out of range for {n} subsystems: {keep}")
    return keep


def partial_trace_matrix(matrix, dims: Sequence[int], keep) -> np.ndarray:
    """Trace out every subsystem not listed in ``keep``; works on any operator."""
    m = as_complex_matrix(matrix)
    dims = _check_dims(dims, m.shape[0])
    n = len(dims)
    keep = _normalise_keep(keep, n)
    drop = [k for k in range(n) if k not in keep]
    t = m.reshape(dims + dims)
    # einsum subscripts: rows a.., columns b.., traced rows share a column label
    letters = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ"
    if 2 * n > len(letters):
        raise InvalidInputError("too many subsystems")
    rows = list(letters[:n])
    cols = list(letters[n:2 * n])
    for k in drop:
        cols[k] = rows[k]
    out = "".join(rows[k] for k in keep) + "".join(cols[k] for k in keep)
    kept = math.prod(dims[k] for k in keep)
    return np.einsum("".join(rows) + "".join(cols) + "->" + out, t).reshape(kept, kept)


def partial_trace(rho: DensityMatrix, keep) -> DensityMatrix:
    """Reduced state on the subsystems in ``keep`` (ordered as in ``rho.dims``).

    Raises :class:`InvalidInputError` for an empty or out-of-range ``keep``.
    """
    keep = _normalise_keep(keep, len(rho.dims))
    m = partial_trace_matrix(rho.matrix, rho.dims, keep)
    return DensityMatrix(m, tuple(rho.dims[k] for k in keep))


def partial_transpose_matrix(matrix, dims: Sequence[int], subsystem: int = 1) -> np.ndarray:
    m = as_complex_matrix(matrix)
    dims = _check_dims(dims, m.shape[0])
    n = len(dims)
    if not 0 <= subsystem < n:
        raise InvalidInputError(f"subsystem {subsystem} out of range for dims {dims}")
    t = m.reshape(dims + dims)
    t = np.swapaxes(t, subsystem, subsystem + n)
    return np.ascontiguousarray(t).reshape(m.shape)


def partial_transpose(rho: DensityMatrix, subsystem: int = 1) -> np.ndarray:
    """Transpose ``rho`` on one tensor factor (default: the second, Bob's).

    For dims ``[dA, dB]`` and ``subsystem=1``::

        rho^{T_B}[(i, j), (k, l)] = rho[(i, l), (k, j)]

    The result is Hermitian with unit trace but need not be positive, so it
    is returned as a bare matrix.
    """
    return partial_transpose_matrix(rho.matrix, rho.dims, subsystem)


def eig_hermitian(h, tol: float = JACOBI_TOL, max_sweeps: int = JACOBI_MAX_SWEEPS) -> np.ndarray:
    """Eigenvalues of a Hermitian matrix by cyclic complex Jacobi rotations.

    Each rotation first removes the phase of the pivot ``h[p, q]`` and then
    applies the real symmetric Jacobi rotation that annihilates it.  Sweeps
    stop once the off-diagonal Frobenius norm is at most ``tol`` times the
    Frobenius norm of ``h``.

    Parameters
    ----------
    h : array_like
        Square matrix, Hermitian to within 1e-10.
    tol : float
        Relative off-diagonal threshold.
    max_sweeps : int
        Upper bound on full cyclic sweeps.

    Returns
    -------
    numpy.ndarray
        Real eigenvalues in ascending order.

    Raises
    ------
    InvalidInputError
        If ``h`` is not Hermitian.
    NonConvergenceError
        If the threshold is not met within ``max_sweeps``.
    """
    a = as_complex_matrix(h)
    if hermiticity_error(a) > 1e-10:
        raise InvalidInputError("eig_hermitian requires a Hermitian matrix")
    a = 0.5 * (a + dagger(a))
    n = a.shape[0]
    scale = float(np.linalg.norm(a))
    if n == 1 or scale == 0.0:
        return np.sort(np.diag(a).real)
    threshold = tol * scale

    for _ in range(max_sweeps):
        off = float(np.linalg.norm(a - np.diag(np.diag(a))))
        if off <= threshold:
            return np.sort(np.diag(a).real)
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = abs(apq)
                if mag == 0.0:
                    continue
                phase = apq / mag
                theta = (a[q, q].real - a[p, p].real) / (2.0 * mag)
                t = 1.0 / (abs(theta) + math.sqrt(theta * theta + 1.0))
                if theta < 0.0:
                    t = -t
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                u = np.array([[c, s], [-s * np.conj(phase), c * np.conj(phase)]])
                idx = [p, q]
                a[:, idx] = a[:, idx] @ u
                a[idx, :] = dagger(u) @ a[idx, :]
                a[p, q] = a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
    raise NonConvergenceError(f"Jacobi eigensolver did not converge in {max_sweeps} sweeps")


def overlap(psi: StateVector, rho: DensityMatrix) -> float:
    """<psi|rho|psi> as a real number."""
    if psi.dim != rho.dim:
        raise InvalidInputError(f"dimension mismatch: vector {psi.dim}, matrix {rho.dim}")
    val = np.vdot(psi.amplitudes, rho.matrix @ psi.amplitudes)
    if abs(val.imag) > 1e-12:
        raise InvalidInputError(f"overlap has imaginary part {val.imag:.3g}")
    return float(val.real)
