#!/usr/bin/env python3
"""Minimum partial-transpose eigenvalue of sigma_alpha across [2, 5], plus the bisected boundary."""
import sys

from bound_activation.analysis import ppt_boundary, ppt_report
from bound_activation.cli import grid
from bound_activation.states import sigma_alpha

step = float(sys.argv[1]) if len(sys.argv) > 1 else 0.1
print("alpha,min_pt_eig,is_ppt")
for alpha in grid(2.0, 5.0, step):
    r = ppt_report(sigma_alpha(alpha))
    print(f"{alpha:.17g},{r.min_eigenvalue:.17g},{str(r.is_ppt).lower()}")
print(f"boundary: {ppt_boundary():.17g}", file=sys.stderr)
