"""
One round of the activation protocol, simulated exactly, and its closed form.

A round acts on a source pair (A1, B1) and a target pair (A2, B2).  Alice
applies XOR with A1 as control and A2 as target, and Bob does the same with
B1 and B2.  Both then measure their target particle in the computational
basis.  If the outcomes agree the target pair is discarded and the source
pair kept; otherwise the round fails.

Run on ``rho_free(F)`` and ``sigma_alpha(alpha)``, the round returns
``rho_free(F')`` with success probability ``(2F + (1-F)(5-alpha)) / 7`` and
``F' = 2F / (2F + (1-F)(5-alpha))``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .errors import InvalidInputError, InvariantViolation, NonConvergenceError, PostSelectionError
from .linalg import DensityMatrix, dagger, kron, overlap, partial_trace_matrix, permute_subsystems
from .states import check_alpha, check_fidelity, max_entangled, rho_free, sigma_alpha

P_SUCCESS_TOL = 1e-12
SIMULATION_MATCH_TOL = 1e-10

# (A1, B1, A2, B2)
ROUND_DIMS = (3, 3, 3, 3)


@dataclass(frozen=True, eq=False)
class XorGate:
    N: int
    matrix: np.ndarray


def xor_gate(N: int) -> XorGate:
    """Permutation unitary |a>|b> -> |a>|(b + a) mod N> (control first)."""
    if int(N) != N or N < 2:
        raise InvalidInputError(f"XOR gate needs an integer N >= 2, got {N!r}")
    N = int(N)
    u = np.zeros((N * N, N * N), dtype=complex)
    for a in range(N):
        for b in range(N):
            u[a * N + (b + a) % N, a * N + b] = 1.0
    u.setflags(write=False)
    return XorGate(N, u)


def bilateral_xor(N: int = 3) -> np.ndarray:
    """XOR on (A1 -> A2) and (B1 -> B2), in the (A1, B1, A2, B2) ordering."""
    u = xor_gate(N).matrix
    # kron(u, u) acts on (A1, A2, B1, B2); conjugating by the reorder moves it
    return permute_subsystems(kron(u, u), (N, N, N, N), (0, 2, 1, 3))


@dataclass(frozen=True, eq=False)
class RoundOutcome:
    p_success: float
    post_state: DensityMatrix
    branch_probabilities: np.ndarray  # [a, b]: Alice saw a, Bob saw b


def _check_pair(rho, name):
    if not isinstance(rho, DensityMatrix) or rho.dims != (3, 3):
        raise InvalidInputError(f"{name} must be a two-qutrit DensityMatrix")


def activation_round(source: DensityMatrix, target: DensityMatrix) -> RoundOutcome:
    """Exact density-matrix simulation of one round.

    Raises
    ------
    PostSelectionError
        If the agreeing-outcome branch has probability below 1e-12.
    """
    _check_pair(source, "source")
    _check_pair(target, "target")
    u = bilateral_xor(3)
    joint = u @ kron(source.matrix, target.matrix) @ dagger(u)

    # diagonal in (A2, B2) of the reduced target-pair operator gives all 9 branch weights
    target_marginal = partial_trace_matrix(joint, ROUND_DIMS, (2, 3))
    branches = np.real(np.diag(target_marginal)).reshape(3, 3).copy()
    branches.setflags(write=False)

    t = joint.reshape((3,) * 8)
    # keep A2 = B2 = a on both bra and ket side, then sum over a
    kept = sum(t[:, :, a, a, :, :, a, a] for a in range(3)).reshape(9, 9)
    p = float(np.trace(kept).real)
    if p < P_SUCCESS_TOL:
        raise PostSelectionError(f"agreeing outcomes have probability {p:.3g}")
    return RoundOutcome(p_success=p, post_state=DensityMatrix(kept / p, (3, 3)),
                        branch_probabilities=branches)


def _success_weight(F, alpha):
    return 2.0 * F + (1.0 - F) * (5.0 - alpha)


def predicted_probability(F: float, alpha: float) -> float:
    """(2F + (1 - F)(5 - alpha)) / 7."""
    F, alpha = check_fidelity(F), check_alpha(alpha)
    return _success_weight(F, alpha) / 7.0


def predicted_fidelity(F: float, alpha: float) -> float:
    """2F / (2F + (1 - F)(5 - alpha)); above F iff alpha > 3."""
    F, alpha = check_fidelity(F), check_alpha(alpha)
    return 2.0 * F / _success_weight(F, alpha)


@dataclass(frozen=True)
class IterationRow:
    n: int
    F_n: float
    p_n: float       # success probability of the round taking F_n to F_{n+1}
    cum_p: float     # probability of having reached F_n: prod_{k<n} p_k
    p0_pow_n: float  # p_0 ** n, the fixed-base reading of the same quantity


Mode = Literal["closed_form", "full_simulation"]


def iterate(F0: float, alpha: float, F_target: float, max_rounds: int = 100,
            mode: Mode = "closed_form", strict: bool = False) -> list[IterationRow]:
    """Repeat successful rounds against fresh ``sigma_alpha`` target pairs.

    Rows run from ``n = 0`` until ``F_n >= F_target`` or ``n == max_rounds``.
    In ``full_simulation`` mode each step comes from :func:`activation_round`
    and is compared with the closed form to 1e-10.

    With ``strict=True`` a run that ends below ``F_target`` raises
    :class:`NonConvergenceError` carrying the rows; otherwise the rows are
    returned and the caller compares the last ``F_n`` itself.
    """
    F0, alpha = check_fidelity(F0), check_alpha(alpha)
    if mode not in ("closed_form", "full_simulation"):
        raise InvalidInputError(f"unknown mode {mode!r}")
    if int(max_rounds) != max_rounds or max_rounds < 0:
        raise InvalidInputError(f"max_rounds must be a non-negative integer, got {max_rounds!r}")
    if not 0.0 < F_target <= 1.0:
        raise InvalidInputError(f"target fidelity must lie in (0, 1], got {F_target!r}")

    target = sigma_alpha(alpha) if mode == "full_simulation" else None
    psi = max_entangled(3)
    state = rho_free(F0) if mode == "full_simulation" else None

    rows = []
    F, cum = F0, 1.0
    p0 = None
    n = 0
    while True:
        p_closed = _success_weight(F, alpha) / 7.0
        F_next = 2.0 * F / _success_weight(F, alpha)
        if state is not None:
            out = activation_round(state, target)
            p = out.p_success
            F_sim_next = overlap(psi, out.post_state)
            if abs(p - p_closed) > SIMULATION_MATCH_TOL or abs(F_sim_next - F_next) > SIMULATION_MATCH_TOL:
                raise InvariantViolation(
                    f"round {n}: simulation (p={p!r}, F'={F_sim_next!r}) vs closed form "
                    f"(p={p_closed!r}, F'={F_next!r})")
        else:
            p = p_closed
        if p0 is None:
            p0 = p
        rows.append(IterationRow(n=n, F_n=F, p_n=p, cum_p=cum, p0_pow_n=p0 ** n))
        if F >= F_target or n >= max_rounds:
            break
        if state is not None:
            state = out.post_state
            F = F_sim_next
        else:
            F = F_next
        cum *= p
        n += 1

    if strict and rows[-1].F_n < F_target:
        raise NonConvergenceError(
            f"F stayed below {F_target} after {rows[-1].n} rounds (alpha={alpha})", rows=rows)
    return rows


def odds(F: float) -> float:
    return F / (1.0 - F)


def min_rounds(F0: float, alpha: float, F_target: float) -> int:
    """Fewest successful rounds taking ``F0`` to at least ``F_target``.

    Each round multiplies the odds F/(1-F) by 2/(5-alpha).

    Raises
    ------
    NonConvergenceError
        For alpha <= 3, where rounds never raise the fidelity.
    """
    F0, alpha = check_fidelity(F0), check_alpha(alpha)
    if alpha <= 3.0:
        raise NonConvergenceError(f"alpha={alpha} <= 3: rounds do not increase fidelity")
    if not 0.0 < F_target < 1.0:
        raise InvalidInputError(f"target fidelity must lie in (0, 1), got {F_target!r}")
    if F0 >= F_target:
        return 0
    if alpha == 5.0:
        # no sigma_minus weight: one success lands exactly on F = 1
        return 1
    r0, rt = odds(F0), odds(F_target)
    growth = 2.0 / (5.0 - alpha)
    n = max(0, math.ceil(math.log(rt / r0) / math.log(growth)))
    # guard the ceiling against rounding in the logarithms
    while n > 0 and r0 * growth ** (n - 1) >= rt:
        n -= 1
    while r0 * growth ** n < rt:
        n += 1
    return n
