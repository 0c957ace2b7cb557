"""Reproduce the class add/drop sweep on synthetic labeled features.

The reference holds classes 1..5; candidate i holds classes 1..i. Dropping
classes costs recall, inventing classes costs precision, and the matched
candidate scores high on both.

Run: python demos/mode_sweep.py   (about half a minute)
"""

from prd import gaussian_blobs, mode_experiment

data = gaussian_blobs(n_classes=10, points_per_class=500, dim=16, seed=9)
results = mode_experiment(
    data, ref_classes=5, steps=10, k=20, runs=5, m=501, seed=42
)

print("step  classes  max_recall  max_precision   expectation")
for r in results:
    i = r.step
    expect = []
    if i <= 5:
        expect.append(f"recall ~ {i / 5:.1f}")
    if i >= 5:
        expect.append(f"precision ~ {5 / i:.2f}")
    print(
        f"{i:4d}  {len(r.classes):7d}  {r.result.max_recall:10.3f}  "
        f"{r.result.max_precision:13.3f}   {', '.join(expect)}"
    )
