"""Walk through the exact histogram machinery on four canonical cases.

Run: python demos/histogram_curves.py
"""

import numpy as np

from prd import (
    DiscreteDistribution,
    alpha_beta,
    decompose,
    max_precision,
    max_recall,
    membership_oracle,
    prd_curve,
    tv_distance,
)

# Four canonical reference/candidate pairs over two states:
#   (a) bimodal P, candidate captures one mode  -> precise but incomplete
#   (b) the mirror image                        -> complete but imprecise
#   (c) identical distributions                 -> perfect on both axes
#   (d) disjoint supports                       -> nothing attainable
cases = {
    "a: one mode captured": (DiscreteDistribution(np.array([0.5, 0.5])),
                             DiscreteDistribution(np.array([1.0, 0.0]))),
    "b: one mode invented": (DiscreteDistribution(np.array([1.0, 0.0])),
                             DiscreteDistribution(np.array([0.5, 0.5]))),
    "c: identical":         (DiscreteDistribution(np.array([0.5, 0.5])),
                             DiscreteDistribution(np.array([0.5, 0.5]))),
    "d: disjoint":          (DiscreteDistribution(np.array([1.0, 0.0])),
                             DiscreteDistribution(np.array([0.0, 1.0]))),
}

for name, (p, q) in cases.items():
    print(f"--- {name}")
    print(f"    max precision = {max_precision(p, q):.3f}, "
          f"max recall = {max_recall(p, q):.3f}")
    delta = tv_distance(p, q)
    at_one = alpha_beta(1.0, p, q)
    print(f"    total variation = {delta:.3f}; "
          f"curve at slope 1 = ({at_one.precision:.3f}, {at_one.recall:.3f}) "
          f"= 1 - tv on both axes")

# The trade-off curve for case (a): recall is pinned at 0.5 while precision
# climbs to 1 as the slope increases.
p, q = cases["a: one mode captured"]
curve = prd_curve(p, q, 11)
print("\ncase (a) curve (lambda, precision, recall):")
for lam, prec, rec in zip(curve.grid.lambdas, curve.precisions, curve.recalls):
    print(f"    {lam:8.3f}  {prec:.3f}  {rec:.3f}")

# The feasibility oracle agrees with the curve and rejects anything beyond it.
print("\noracle checks for case (a):")
print("    (1.00, 0.50) attainable?", membership_oracle(1.0, 0.5, p, q))
print("    (1.00, 0.51) attainable?", membership_oracle(1.0, 0.51, p, q))

# A witness decomposition at the boundary point (1, 0.5):
# P = 0.5 * mu + 0.5 * nu_p and Q = 1.0 * mu.
d = decompose(1.0, 0.5, p, q)
print("\nwitness at (1, 0.5):")
print("    mu   =", d.mu.weights)
print("    nu_p =", d.nu_p.weights)
print("    nu_q =", d.nu_q.weights)
