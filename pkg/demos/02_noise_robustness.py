"""
Mixed shapes with background noise
==================================

The mixture benchmark combines banana lobes, spirals, two Gaussian blobs
of different spread and a uniform square. We compare the best achievable
AMI before and after scattering 2% uniform noise over the bounding box.
Noise points carry the ground-truth label 0.
"""

from pathlib import Path

from crad.cluster import crad, robust_depth
from crad.metrics import ami
from crad.plot import write_svg
from crad.synthgen import GenSpec, generate
from crad.tuning import wide_grid

out = Path(__file__).parent / "output"
out.mkdir(exist_ok=True)

for ratio in (0.0, 0.02):
    X, truth = generate(GenSpec("mixture", seed=0, noise_ratio=ratio))
    D = robust_depth(X, seed=0)
    # best-achievable mode: search the wide grid against the truth
    scored = [(ami(truth, crad(X, p, depth=D)), p) for p in wide_grid()]
    score, params = max(scored, key=lambda s: (s[0], -s[1][0]))
    labels = crad(X, params, depth=D)
    print(f"noise {ratio:4.0%}: n={len(X)}  best n_bins {params[0]}  AMI {score:.3f}  "
          f"clusters {labels.max()}  singletons {(labels == 0).sum()}")
    write_svg(out / f"mixture_noise{int(ratio * 100)}.svg", X, labels)
