"""Count the link of a vertex in the SL_3 building and check it against the projective plane over F_p."""

import argparse
from dataclasses import dataclass

from bruhat_tits.scalars import FieldConfig
from bruhat_tits.tree import link_counts_sl3, link_incidence


@dataclass
class LinkConfig:
    primes: tuple = (2, 3)


def main(cfg: LinkConfig):
    ok = True
    for p in cfg.primes:
        size, tri = link_counts_sl3(FieldConfig(p))
        lines, planes, edges = link_incidence(p)
        q = p * p + p + 1
        good = (size, tri) == (2 * q, p + 1) and len(edges) == q * (p + 1)
        ok &= good
        print(f"p={p}: link vertices {size} (lines {len(lines)}, planes {len(planes)}), "
              f"incidences {len(edges)}, triangles per edge {tri}  {'ok' if good else 'MISMATCH'}")
    return ok


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--primes", type=int, nargs="+", default=[2, 3])
    raise SystemExit(0 if main(LinkConfig(tuple(ap.parse_args().primes))) else 1)
