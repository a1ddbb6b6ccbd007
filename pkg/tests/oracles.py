"""Brute-force reference computations, written with explicit index loops.

Nothing here imports the package's linear algebra; these are the independent
side of every dual-route check in the suite.
"""

import itertools
import math

import numpy as np


def digits(index, dims):
    out = []
    for d in reversed(dims):
        out.append(index % d)
        index //= d
    return tuple(reversed(out))


def undigits(ds, dims):
    index = 0
    for x, d in zip(ds, dims):
        index = index * d + x
    return index


def kron(a, b):
    a, b = np.asarray(a), np.asarray(b)
    n, m = a.shape[0], b.shape[0]
    out = np.zeros((n * m, n * m), dtype=complex)
    for i, j, k, l in itertools.product(range(n), range(n), range(m), range(m)):
        out[i * m + k, j * m + l] = a[i, j] * b[k, l]
    return out


def partial_trace(matrix, dims, keep):
    keep = sorted(keep)
    kept_dims = [dims[k] for k in keep]
    size = math.prod(kept_dims)
    out = np.zeros((size, size), dtype=complex)
    total = math.prod(dims)
    for r in range(total):
        dr = digits(r, dims)
        for c in range(total):
            dc = digits(c, dims)
            if any(dr[k] != dc[k] for k in range(len(dims)) if k not in keep):
                continue
            out[undigits([dr[k] for k in keep], kept_dims),
                undigits([dc[k] for k in keep], kept_dims)] += matrix[r, c]
    return out


def partial_transpose(matrix, dims, subsystem):
    total = math.prod(dims)
    out = np.zeros((total, total), dtype=complex)
    for r in range(total):
        dr = list(digits(r, dims))
        for c in range(total):
            dc = list(digits(c, dims))
            dr2, dc2 = dr.copy(), dc.copy()
            dr2[subsystem], dc2[subsystem] = dc[subsystem], dr[subsystem]
            out[r, c] = matrix[undigits(dr2, dims), undigits(dc2, dims)]
    return out


def ket(*ds, dims=None):
    dims = dims or [3] * len(ds)
    v = np.zeros(math.prod(dims), dtype=complex)
    v[undigits(ds, dims)] = 1.0
    return v


def psi_plus_matrix():
    v = sum(ket(i, i) for i in range(3)) / math.sqrt(3)
    return np.outer(v, v.conj())


def sigma_plus_matrix():
    return sum(np.outer(ket(i, (i + 1) % 3), ket(i, (i + 1) % 3)) for i in range(3)) / 3


def sigma_minus_matrix():
    return sum(np.outer(ket((i + 1) % 3, i), ket((i + 1) % 3, i)) for i in range(3)) / 3


def activation_round(source, target):
    """Round on (A1, B1, A2, B2) by explicit basis permutation and projectors."""
    dims = [3, 3, 3, 3]
    perm = np.zeros((81, 81))
    for i in range(81):
        a1, b1, a2, b2 = digits(i, dims)
        perm[undigits((a1, b1, (a2 + a1) % 3, (b2 + b1) % 3), dims), i] = 1.0
    joint = perm @ kron(source, target) @ perm.T
    kept = np.zeros((81, 81), dtype=complex)
    for a in range(3):
        proj = np.zeros((81, 81))
        for i in range(81):
            ds = digits(i, dims)
            if ds[2] == a and ds[3] == a:
                proj[i, i] = 1.0
        kept += proj @ joint @ proj
    p = np.trace(kept).real
    return p, partial_trace(kept, dims, [0, 1]) / p


def teleport(rho, psi):
    """Full 27-dimensional teleportation with projectors on (C, A) and corrections on B."""
    d = 3
    w = np.exp(2j * np.pi / d)
    state = kron(np.outer(psi, psi.conj()), rho)
    X = np.zeros((d, d))
    for k in range(d):
        X[(k + 1) % d, k] = 1.0
    Z = np.diag([w ** k for k in range(d)])
    out = np.zeros((d, d), dtype=complex)
    for m in range(d):
        for n in range(d):
            phi = sum(w ** (k * n) * ket(k, (k + m) % d) for k in range(d)) / math.sqrt(d)
            proj = kron(np.outer(phi, phi.conj()), np.eye(d))
            bob = partial_trace(proj @ state @ proj, [d, d, d], [2])
            u = np.linalg.matrix_power(Z, n) @ np.linalg.matrix_power(np.linalg.inv(X), m)
            out += u @ bob @ u.conj().T
    return out
