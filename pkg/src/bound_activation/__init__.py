"""Simulation of bound-entanglement activation on qutrit pairs."""

from .analysis import (EntanglementClass, PptReport, classify_sigma_alpha, decomposition_residual,
                       ppt_boundary, ppt_report, projection_witness)
from .linalg import (DensityMatrix, StateVector, eig_hermitian, kron, overlap, partial_trace,
                     partial_transpose)
from .protocol import (IterationRow, RoundOutcome, XorGate, activation_round, iterate, min_rounds,
                       predicted_fidelity, predicted_probability, xor_gate)
from .states import max_entangled, psi_plus, rho_free, rho_one, sigma_alpha, sigma_minus, sigma_plus
from .teleport import (TransferFidelityEstimate, average_transfer_fidelity, fidelity_convergence_table,
                       teleport_channel)

__version__ = "0.1.0"
