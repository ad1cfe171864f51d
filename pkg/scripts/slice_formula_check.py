"""Gaussian curvature of the centro-affine slice: closed form vs. finite differences.

Also shows how the S-invariant term separates cubics with a Type II face
(S = 0, curvature identically -9/4) from the STU cubic.
"""

import argparse
import random
from dataclasses import dataclass

from amwp import catalog
from amwp.cubic import hessian_data, s_invariant
from amwp.metric import slice_curvature_formula, slice_curvature_numeric
from amwp.verify import random_cone_point


@dataclass(frozen=True)
class SliceConfig:
    cubics: tuple = ("STU", "V16_11158", "V12_11136")
    points: int = 10
    seed: int = 0


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--points", type=int, default=SliceConfig.points)
    ap.add_argument("--seed", type=int, default=SliceConfig.seed)
    a = ap.parse_args()
    cfg = SliceConfig(points=a.points, seed=a.seed)
    rng = random.Random(cfg.seed)
    print("cubic,S,y,formula,numeric,abs_error")
    for name in cfg.cubics:
        f = catalog.get(name).cubic
        S = s_invariant(f)
        for _ in range(cfg.points):
            y = random_cone_point(rng, f)
            if hessian_data(f).h.evaluate(y) == 0:
                continue
            exact = float(slice_curvature_formula(f, y))
            num = slice_curvature_numeric(f, y)
            ys = " ".join(str(v) for v in y)
            print(f"{name},{S},{ys},{exact:.10f},{num:.10f},{abs(exact - num):.2e}")


if __name__ == "__main__":
    main()
