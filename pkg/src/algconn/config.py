"""Numerical tolerances used across the package.

Every threshold that decides pass/fail lives here so it can be audited in
one place. Modules read ``TOLERANCES`` at call time; tests may build a
modified copy with :func:`dataclasses.replace`.
"""

from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    # FiedlerResult invariants
    unit_norm: float = 1e-12
    residual_per_degree: float = 1e-8      # residual <= this * (1 + max degree)
    orthogonality: float = 1e-10

    # eigen_full residual: ||M v - lam v|| <= this * (1 + ||M||_inf)
    eigen_residual: float = 1e-9

    # eigensolver iteration caps
    ql_sweeps: int = 60
    inverse_iteration_cap: int = 50

    # quotient vs dense agreement
    quotient_agreement: float = 1e-8

    # relaxation time: tau * mu == d, relative
    regular_relaxation: float = 1e-9

    # Fiedler structure checks
    sign_eps: float = 1e-9                 # relative to ||x||_inf
    cell_constancy: float = 1e-7           # relative to ||x||_inf
    degenerate_gap: float = 1e-8           # relative gap lambda3 - mu below which (c) is skipped

    # verification claims
    bracket: float = 0.15
    deflated_slack: float = 1e-10
    strict_margin_factor: float = 10.0     # strict inequality margin, in units of summed residuals
    sweep_final: float = 0.1
    perturbation_final: float = 0.05


TOLERANCES = Tolerances()
