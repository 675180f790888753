"""Tabulate whether the fixed points of Galois on the building of Q_p(pi), pi^e = p, leave a gap."""

import argparse
from dataclasses import dataclass

from bruhat_tits.scalars import FieldConfig
from bruhat_tits.tree import galois_gap


@dataclass
class GapConfig:
    primes: tuple = (2, 3, 5, 7)
    degrees: tuple = (1, 2, 3, 4, 6)


def main(cfg: GapConfig):
    print("p \\ e " + "".join(f"{e:>8}" for e in cfg.degrees))
    for p in cfg.primes:
        row = []
        for e in cfg.degrees:
            gap, val = galois_gap(FieldConfig(p), e)
            row.append(f"{('gap' if gap else '-') + ' ' + str(val):>8}")
        print(f"{p:<6}" + "".join(row))


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--primes", type=int, nargs="+", default=[2, 3, 5, 7])
    ap.add_argument("--degrees", type=int, nargs="+", default=[1, 2, 3, 4, 6])
    a = ap.parse_args()
    main(GapConfig(tuple(a.primes), tuple(a.degrees)))
