"""Sampled lower bounds of holomorphic sectional, Ricci and scalar curvature.

    python scripts/curvature_bounds.py --cubic STU --samples 1000 --seed 0
"""

import argparse
import random
from dataclasses import dataclass

from amwp import catalog
from amwp.verify import sample_bounds


@dataclass(frozen=True)
class BoundsConfig:
    cubics: tuple = ("STU", "V16_11158", "V12_11136", "weierstrass(-1,0)")
    samples: int = 1000
    seed: int = 0


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--cubic", action="append")
    ap.add_argument("--samples", type=int, default=BoundsConfig.samples)
    ap.add_argument("--seed", type=int, default=BoundsConfig.seed)
    a = ap.parse_args()
    cfg = BoundsConfig(tuple(a.cubic) if a.cubic else BoundsConfig.cubics, a.samples, a.seed)
    print("cubic,r,samples,min_hsc,min_bisectional,min_ricci,min_scalar,ref_hsc,ref_ricci,ref_scalar")
    for name in cfg.cubics:
        f = catalog.get(name).cubic
        st = sample_bounds(f, random.Random(cfg.seed), cfg.samples)
        r = f.r
        print(f"{name},{r},{cfg.samples},{st.min_hsc:.6f},{st.min_bisectional:.6f},{st.min_ricci:.6f},"
              f"{st.min_scalar:.6f},-2,{-(r + 1)},{-r * (r + 1)}")


if __name__ == "__main__":
    main()
