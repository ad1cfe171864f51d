"""How fast quantum corrections to the prepotential stop mattering.

Prints metric and curvature deviations from the exact AMWP values along
t = i s y0 for a few tails, then the periodicity behaviour of an imaginary
linear coefficient under growing real shifts.
"""

import argparse
from dataclasses import dataclass

from amwp import catalog
from amwp.perturb import Prepotential, asymptotic_curvature_test, periodicity_test


@dataclass(frozen=True)
class AsymptoticsConfig:
    cubic: str = "STU"
    scales: tuple = (0.75, 1.0, 1.5, 2.0, 2.5)
    curvature: bool = True


TAILS = {
    "q1/100": (((1, 0, 0), 0.01),),
    "q2 q3/50 i": (((0, 1, 1), 0.02j),),
    "two modes": (((1, 0, 0), 0.01), ((0, 0, 2), -0.05)),
}


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--cubic", default=AsymptoticsConfig.cubic)
    ap.add_argument("--no-curvature", action="store_true")
    a = ap.parse_args()
    cfg = AsymptoticsConfig(a.cubic, curvature=not a.no_curvature)
    f = catalog.get(cfg.cubic).cubic
    ones = [1.0] * f.r
    print("tail,s,metric_deviation,curvature_deviation")
    for name, tail in TAILS.items():
        for row in asymptotic_curvature_test(Prepotential(f, tail=tail), [0.0] * f.r, ones, cfg.scales,
                                             curvature=cfg.curvature):
            cd = "" if row.curvature_deviation is None else f"{row.curvature_deviation:.3e}"
            print(f"{name},{row.s},{row.metric_deviation:.3e},{cd}")
    print()
    print("shift,deviation,max_entry  (linear coefficient i e_1)")
    bL = (1j,) + (0,) * (f.r - 1)
    t = [complex(0.3, 1.0)] * f.r
    rep = periodicity_test(Prepotential(f, bL=bL), t, [(10 ** k,) + (0,) * (f.r - 1) for k in range(7)])
    print(f"0,0,{rep.base_max_entry:.3e}")
    for n, dev, size in zip(rep.shifts, rep.deviations, rep.max_entries):
        print(f"{n[0]},{dev:.3e},{size:.3e}")


if __name__ == "__main__":
    main()
