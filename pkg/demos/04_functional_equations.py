"""
Solutions of the two functional equations
=========================================

The quotient equation ``a(x) = g(t x) - g(t (e - x))`` and the sum equation
``a1(x) + a2(t e) = g(t x) + g(t (e - x))`` hold for every ``0 < x < e`` and
every triangular ``t`` when ``g`` is built from ``log Delta_p``.  The residual
checks below draw random points, transforms and solution parameters.
"""
import numpy as np

from rieszlab.verify import (
    FuncEqSolution33,
    check_thm33,
    check_thm34,
    run_suite,
)

rng = np.random.default_rng(4)

for r in (2, 3, 5):
    print(check_thm33(None, 500, rng, r=r).to_json())
    print(check_thm34(None, 500, rng, r=r).to_json())

# Shifting the exponent used for a(x) breaks the identity: the check has teeth.
sol = FuncEqSolution33(np.array([1.0, 2.0, 0.5]))
print("perturbed:", check_thm33(sol, 200, rng, perturb=1e-3).to_json())

# The whole residual suite at one rank, as the `verify` subcommand runs it.
print()
for rep in run_suite(r=4, trials=100, seed=0):
    print(f"{rep.name:32s} {rep.max_residual:9.2e}  tol {rep.tolerance:.0e}  {'ok' if rep.passed else 'FAIL'}")
