"""Exact scalar curvature along rays toward the large-radius boundary.

    python scripts/blow_up_scan.py --cubic STU --ray "s^2,s,s" --samples 1,10,100,1000
"""

import argparse
from dataclasses import dataclass

from amwp import catalog
from amwp.exactalg import to_rational
from amwp.identities import blow_up_scan, parse_path, scan_csv


@dataclass(frozen=True)
class ScanConfig:
    cubic: str = "STU"
    ray: str = "s^2,s,s"
    samples: tuple = (1, 10, 100, 1000)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--cubic", default=ScanConfig.cubic)
    ap.add_argument("--ray", default=ScanConfig.ray)
    ap.add_argument("--samples", default=",".join(map(str, ScanConfig.samples)))
    a = ap.parse_args()
    cfg = ScanConfig(a.cubic, a.ray, tuple(to_rational(s) for s in a.samples.split(",")))
    rows = blow_up_scan(catalog.get(cfg.cubic).cubic, parse_path(cfg.ray), cfg.samples)
    print(scan_csv(rows, [f"cubic={cfg.cubic}", f"ray={cfg.ray}"]), end="")


if __name__ == "__main__":
    main()
