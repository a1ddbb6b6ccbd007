"""Command-line front end.

Subcommands write a CSV table (or a plain aligned table with
``--format human``) to stdout; diagnostics go to stderr.  Exit codes:
0 success, 2 invalid input, 3 target not reached, 4 simulation disagrees with
the closed form.
"""

from __future__ import annotations

import argparse
import csv
import sys
from dataclasses import dataclass, field

from . import analysis, protocol, states, teleport
from .errors import DegenerateStateError, InvalidInputError, InvariantViolation, PostSelectionError
from .linalg import max_abs, overlap

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_NOT_CONVERGED = 3
EXIT_INVARIANT = 4

ROUND_TOL = 1e-12


def fmt(x) -> str:
    if isinstance(x, bool):
        return str(x).lower()
    if isinstance(x, float):
        return format(x, ".17g")
    return str(x)


@dataclass
class RunConfig:
    subcommand: str
    fidelity: float | None = None
    alpha: float | None = None
    target: float | None = None
    max_rounds: int = 100
    mode: str = "closed_form"
    state: str | None = None
    samples: int = 10_000
    seed: int = 0
    grid: dict = field(default_factory=dict)
    format: str = "csv"

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "RunConfig":
        cfg = cls(subcommand=args.command, format=args.format)
        for name in ("fidelity", "alpha", "target", "max_rounds", "mode", "state", "samples", "seed"):
            if getattr(args, name, None) is not None:
                setattr(cfg, name, getattr(args, name))
        if args.command == "sweep":
            cfg.grid = {k: getattr(args, k) for k in
                        ("alpha_min", "alpha_max", "alpha_step", "f_min", "f_max", "f_step")}
        cfg.validate()
        return cfg

    def validate(self):
        if self.fidelity is not None:
            states.check_fidelity(self.fidelity)
        if self.alpha is not None:
            states.check_alpha(self.alpha)
        if self.target is not None and not 0.0 < self.target < 1.0:
            raise InvalidInputError(f"--target must lie in (0, 1), got {self.target}")
        if self.max_rounds < 0:
            raise InvalidInputError("--max-rounds must be non-negative")
        if self.samples < 1:
            raise InvalidInputError("--samples must be at least 1")
        if self.subcommand == "teleport":
            if self.state == "rho-free" and self.fidelity is None:
                raise InvalidInputError("--state rho-free needs --fidelity")
            if self.state == "sigma-alpha" and self.alpha is None:
                raise InvalidInputError("--state sigma-alpha needs --alpha")


class Table:
    def __init__(self, header, out=None):
        self.header = list(header)
        self.rows = []
        self.out = out or sys.stdout

    def add(self, *values):
        self.rows.append([fmt(v) for v in values])

    def write(self, style="csv"):
        if style == "csv":
            w = csv.writer(self.out, lineterminator="\n")
            w.writerow(self.header)
            w.writerows(self.rows)
            return
        widths = [max(len(h), *(len(r[i]) for r in self.rows)) if self.rows else len(h)
                  for i, h in enumerate(self.header)]
        print("  ".join(h.rjust(w) for h, w in zip(self.header, widths)), file=self.out)
        for r in self.rows:
            print("  ".join(v.rjust(w) for v, w in zip(r, widths)), file=self.out)


def cmd_classify(cfg: RunConfig) -> int:
    cls = analysis.classify_sigma_alpha(cfg.alpha)
    report = analysis.ppt_report(states.sigma_alpha(cfg.alpha))
    t = Table(["alpha", "class", "ppt_min_eig", "is_ppt", "decomposition_residual"])
    t.add(float(cfg.alpha), str(cls), report.min_eigenvalue, report.is_ppt,
          analysis.decomposition_residual(cfg.alpha))
    t.write(cfg.format)
    return EXIT_OK


def round_comparison(F: float, alpha: float) -> dict:
    """Simulated vs closed-form round on (rho_free(F), sigma_alpha(alpha))."""
    out = protocol.activation_round(states.rho_free(F), states.sigma_alpha(alpha))
    p_closed = protocol.predicted_probability(F, alpha)
    F_closed = protocol.predicted_fidelity(F, alpha)
    F_sim = overlap(states.max_entangled(3), out.post_state)
    expected = states.rho_free_closed(F_closed).matrix
    diff = max(abs(out.p_success - p_closed), abs(F_sim - F_closed),
               max_abs(out.post_state.matrix - expected))
    return dict(F=F, alpha=alpha, p_sim=out.p_success, p_closed=p_closed,
                F_sim=F_sim, F_closed=F_closed, max_abs_diff=diff)


def cmd_round(cfg: RunConfig) -> int:
    row = round_comparison(float(cfg.fidelity), float(cfg.alpha))
    t = Table(list(row))
    t.add(*row.values())
    t.write(cfg.format)
    if row["max_abs_diff"] > ROUND_TOL:
        print(f"simulation differs from closed form by {row['max_abs_diff']:.3g}", file=sys.stderr)
        return EXIT_INVARIANT
    return EXIT_OK


def cmd_iterate(cfg: RunConfig) -> int:
    rows = protocol.iterate(cfg.fidelity, cfg.alpha, cfg.target, cfg.max_rounds, mode=cfg.mode)
    t = Table(["n", "F_n", "p_n", "cum_p", "p0_pow_n"])
    for r in rows:
        t.add(r.n, r.F_n, r.p_n, r.cum_p, r.p0_pow_n)
    t.write(cfg.format)
    if rows[-1].F_n < cfg.target:
        print(f"target {cfg.target} not reached in {cfg.max_rounds} rounds", file=sys.stderr)
        return EXIT_NOT_CONVERGED
    return EXIT_OK


def _teleport_resource(cfg: RunConfig):
    if cfg.state == "psi-plus":
        return states.psi_plus()
    if cfg.state == "rho-free":
        return states.rho_free(cfg.fidelity)
    return states.sigma_alpha(cfg.alpha)


def cmd_teleport(cfg: RunConfig) -> int:
    est = teleport.average_transfer_fidelity(_teleport_resource(cfg), cfg.samples, cfg.seed)
    t = Table(["state", "mean", "std_error", "n_samples", "seed"])
    t.add(cfg.state, est.mean, est.std_error, est.n_samples, est.seed)
    t.write(cfg.format)
    return EXIT_OK


def grid(lo: float, hi: float, step: float) -> list[float]:
    """Inclusive arithmetic grid, rounded to 12 decimals to absorb step drift."""
    if step <= 0:
        raise InvalidInputError("grid step must be positive")
    if hi < lo:
        return []
    n = int(round((hi - lo) / step + 1e-9)) + 1
    values = [round(lo + i * step, 12) for i in range(n)]
    return [v for v in values if v <= hi + 1e-12]


def cmd_sweep(cfg: RunConfig) -> int:
    g = cfg.grid
    alphas = grid(g["alpha_min"], g["alpha_max"], g["alpha_step"])
    fids = grid(g["f_min"], g["f_max"], g["f_step"])
    for a in alphas:
        states.check_alpha(a)
    for F in fids:
        states.check_fidelity(F)
    if not alphas or not fids:
        raise InvalidInputError("sweep grid is empty")

    per_alpha = {a: (analysis.classify_sigma_alpha(a), analysis.ppt_report(states.sigma_alpha(a)))
                 for a in alphas}
    witness = {F: analysis.projection_witness(states.rho_free(F)) for F in fids}
    t = Table(["F", "alpha", "class", "ppt_min_eig", "p", "F_prime", "witness", "max_abs_diff"])
    worst = 0.0
    for a in alphas:
        cls, report = per_alpha[a]
        for F in fids:
            row = round_comparison(F, a)
            worst = max(worst, row["max_abs_diff"])
            t.add(F, a, str(cls), report.min_eigenvalue, row["p_sim"], row["F_sim"],
                  witness[F], row["max_abs_diff"])
    t.write(cfg.format)
    if worst > ROUND_TOL:
        print(f"simulation differs from closed form by {worst:.3g}", file=sys.stderr)
        return EXIT_INVARIANT
    return EXIT_OK


COMMANDS = {
    "classify": cmd_classify,
    "round": cmd_round,
    "iterate": cmd_iterate,
    "teleport": cmd_teleport,
    "sweep": cmd_sweep,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bound-activation",
                                     description="Bound-entanglement activation simulator")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["csv", "human"], default="csv")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[common], help="region and PPT spectrum of sigma_alpha")
    p.add_argument("--alpha", type=float, required=True)

    p = sub.add_parser("round", parents=[common], help="one round: simulation vs closed form")
    p.add_argument("--fidelity", type=float, required=True)
    p.add_argument("--alpha", type=float, required=True)

    p = sub.add_parser("iterate", parents=[common], help="repeat rounds until a target fidelity")
    p.add_argument("--fidelity", type=float, required=True)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--target", type=float, required=True)
    p.add_argument("--max-rounds", type=int, default=100)
    p.add_argument("--mode", choices=["closed_form", "full_simulation"], default="closed_form")

    p = sub.add_parser("teleport", parents=[common], help="average teleportation fidelity")
    p.add_argument("--state", choices=["psi-plus", "rho-free", "sigma-alpha"], required=True)
    p.add_argument("--fidelity", type=float)
    p.add_argument("--alpha", type=float)
    p.add_argument("--samples", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("sweep", parents=[common], help="grid over (F, alpha)")
    p.add_argument("--alpha-min", type=float, default=2.0)
    p.add_argument("--alpha-max", type=float, default=5.0)
    p.add_argument("--alpha-step", type=float, default=0.25)
    p.add_argument("--f-min", type=float, default=0.05)
    p.add_argument("--f-max", type=float, default=0.95)
    p.add_argument("--f-step", type=float, default=0.05)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = RunConfig.from_args(args)
        return COMMANDS[cfg.subcommand](cfg)
    except (InvalidInputError, DegenerateStateError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (InvariantViolation, PostSelectionError) as exc:
        print(f"numerical invariant violated: {exc}", file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
