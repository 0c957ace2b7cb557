"""Distill curves into (max F8, max F1/8) pairs and watch the bias flip.

F8 leans toward recall, F1/8 toward precision, so a precision-biased candidate
scores F1/8 >> F8 and its mirror image does the opposite; identical inputs sit
on the diagonal.

Run: python demos/fbeta_tradeoffs.py
"""

import numpy as np

from prd import DiscreteDistribution, fbeta_summary, prd_curve

bimodal = DiscreteDistribution(np.array([0.2, 0.2, 0.2, 0.2, 0.2]))
narrow = DiscreteDistribution(np.array([1.0, 0.0, 0.0, 0.0, 0.0]))
wide = DiscreteDistribution(np.array([0.12, 0.22, 0.22, 0.22, 0.22]))

fixtures = {
    "precision-biased (1 of 5 modes)": (bimodal, narrow),
    "recall-biased (mirror)": (narrow, bimodal),
    "identical": (bimodal, bimodal),
    "mild imbalance": (bimodal, wide),
}

print(f"{'fixture':35s}  {'max F8':>8s}  {'max F1/8':>9s}   bias")
for name, (p, q) in fixtures.items():
    summary = fbeta_summary(prd_curve(p, q, 1001), 8.0)
    if abs(summary.f_beta_max - summary.f_beta_inv_max) < 1e-3:
        bias = "balanced"
    elif summary.f_beta_max > summary.f_beta_inv_max:
        bias = "recall"
    else:
        bias = "precision"
    print(f"{name:35s}  {summary.f_beta_max:8.3f}  {summary.f_beta_inv_max:9.3f}   {bias}")

# Swapping the two distributions swaps the summary pair (the duality of the
# attainable set), so mirrored fixtures land mirrored across the diagonal.
fwd = fbeta_summary(prd_curve(bimodal, narrow, 1001), 8.0)
bwd = fbeta_summary(prd_curve(narrow, bimodal, 1001), 8.0)
print("\nswap check:")
print(f"    (F8, F1/8) forward  = ({fwd.f_beta_max:.6f}, {fwd.f_beta_inv_max:.6f})")
print(f"    (F1/8, F8) swapped  = ({bwd.f_beta_inv_max:.6f}, {bwd.f_beta_max:.6f})")
