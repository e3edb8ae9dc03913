"""
Choosing the histogram resolution without labels
================================================

In practice the truth is unknown, so ``n_bins`` is picked by maximizing
the Calinski-Harabasz score over a grid around ``0.2 n``. This demo
prints the CH curve next to the AMI the same labeling would get, showing
how far the label-free choice lands from the best achievable one.
"""

from crad.cluster import crad, robust_depth
from crad.metrics import ami
from crad.synthgen import GenSpec, generate
from crad.tuning import default_grid, sweep_nbin

X, truth = generate(GenSpec("mixture", seed=1))
D = robust_depth(X, seed=1)
grid = default_grid(len(X))
res = sweep_nbin(X, grid=grid, depth=D)

print(f"{'n_bins':>6} {'CH':>10} {'k':>4} {'AMI':>6}")
best_ami = 0.0
for (nb, step), score, k in zip(res.grid, res.scores, res.n_clusters):
    a = ami(truth, crad(X, (nb, step), depth=D))
    best_ami = max(best_ami, a)
    ch = "undefined" if score is None else f"{score:10.1f}"
    mark = "  <- CH choice" if (nb, step) == res.best else ""
    print(f"{nb:6d} {ch:>10} {k:4d} {a:6.3f}{mark}")

chosen = ami(truth, res.best_labels)
print(f"\nlabel-free choice AMI {chosen:.3f}, best on the grid {best_ami:.3f}, "
      f"ratio {chosen / best_ami:.2f}")
