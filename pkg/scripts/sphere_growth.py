"""Print sphere sizes in the Bruhat-Tits tree of SL_2(Q_p) and compare with (p+1)p^(k-1)."""

import argparse
from dataclasses import dataclass

from bruhat_tits.tree import sphere_sizes, standard_vertex


@dataclass
class GrowthConfig:
    primes: tuple = (2, 3, 5)
    radius: int = 5


def expected(p, k):
    return 1 if k == 0 else (p + 1) * p ** (k - 1)


def main(cfg: GrowthConfig):
    ok = True
    for p in cfg.primes:
        sizes = sphere_sizes(standard_vertex(p), cfg.radius)
        want = [expected(p, k) for k in range(cfg.radius + 1)]
        ok &= sizes == want
        print(f"p={p}: {sizes}  {'ok' if sizes == want else 'MISMATCH ' + str(want)}")
    return ok


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--primes", type=int, nargs="+", default=[2, 3, 5])
    ap.add_argument("--radius", type=int, default=5)
    a = ap.parse_args()
    raise SystemExit(0 if main(GrowthConfig(tuple(a.primes), a.radius)) else 1)
