"""
How hard is it to guess X from Y?
=================================

Given only the marginal of X and (upper bounds on) the principal
inertias, the package certifies a floor under the error of *any*
estimator.  This script sweeps a binary symmetric channel's crossover
and compares the certified floors with the exact Bayes error, then
shows the certificates on a skewed three-letter example.
"""

import numpy as np

from pibounds import (
    InertiaBoundInput,
    advantage_bound,
    bayes_error,
    decompose,
    inertia_bound,
    load_joint,
    maxcorr_bound,
    uniform_bound,
)

print("BSC sweep: exact error vs certified lower bounds")
print(f"{'eps':>6} {'bayes':>8} {'inertia':>8} {'maxcorr':>8} {'uniform-chi2':>12}")
for eps in (0.0, 0.05, 0.1, 0.2, 0.3, 0.4, 0.5):
    joint = load_joint([[0.5 * (1 - eps), 0.5 * eps],
                        [0.5 * eps, 0.5 * (1 - eps)]])
    exact = bayes_error(joint)
    inp = InertiaBoundInput.from_joint(joint)
    full = inertia_bound(inp).lower_bound
    lam1 = float(inp.lambdas[0])
    single = maxcorr_bound(inp.p, lam1).value
    chi2 = float(inp.lambdas.sum())
    uniform = uniform_bound(2, chi2, "chi2")
    print(f"{eps:6.2f} {exact:8.4f} {full:8.4f} {single:8.4f} {uniform:12.4f}")

# ---------------------------------------------------------------------
# A skewed source observed through a noisy channel.  The bound comes
# with its full certificate: the optimal threshold beta*, the crossover
# index and the inner LP value that produced it.
# ---------------------------------------------------------------------
joint = load_joint([
    [0.30, 0.18, 0.07],
    [0.05, 0.20, 0.05],
    [0.02, 0.03, 0.10],
])
inp = InertiaBoundInput.from_joint(joint)
result = inertia_bound(inp)
print("\nskewed 3x3 example")
print("  p_X sorted:      ", np.round(inp.p.values, 4))
print("  inertias:        ", np.round(inp.lambdas, 6))
print("  exact Bayes error:", round(bayes_error(joint), 6))
print("  certified floor:  ", round(result.lower_bound, 6))
print("  certificate: beta* =", round(result.beta_star, 6),
      " k* =", result.k_star,
      " alpha* =", round(result.alpha_star, 6),
      " lp value =", round(result.lp_value, 6))

rho = decompose(joint).maximal_correlation
print("  advantage over blind guessing is at most",
      round(advantage_bound(inp.p, rho**2), 6))
