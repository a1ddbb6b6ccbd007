#!/usr/bin/env python3
"""Teleportation fidelity along a quasi-distillation run.

usage: python scripts/teleport_convergence.py [--alpha 3.5] [--fidelity 0.3] [--rounds 19]
                                              [--samples 10000] [--seed 0]
"""
import argparse

from bound_activation.teleport import fidelity_convergence_table

parser = argparse.ArgumentParser()
parser.add_argument("--alpha", type=float, default=3.5)
parser.add_argument("--fidelity", type=float, default=0.3)
parser.add_argument("--rounds", type=int, default=19)
parser.add_argument("--samples", type=int, default=10_000)
parser.add_argument("--seed", type=int, default=0)
args = parser.parse_args()

print("n,F_n,f_n,std_error,f_relation")
for n, F, est in fidelity_convergence_table(args.alpha, args.fidelity, args.rounds, args.samples, args.seed):
    # (3F+1)/4: the known average fidelity of standard qutrit teleportation, printed for comparison
    print(f"{n},{F:.17g},{est.mean:.17g},{est.std_error:.17g},{(3 * F + 1) / 4:.17g}")
