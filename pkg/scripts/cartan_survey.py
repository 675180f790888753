"""Decompose random matrices as g = U D W and tabulate the Cartan exponents that occur."""

import argparse
import random
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from bruhat_tits.building import cartan, cartan_diagonal
from bruhat_tits.linalg import ExactMatrix, det, is_unimodular
from bruhat_tits.scalars import FieldConfig


@dataclass
class SurveyConfig:
    p: int = 2
    n: int = 2
    samples: int = 200
    span: int = 2
    seed: int = 0


def random_matrix(rng, cfg: SurveyConfig):
    field = FieldConfig(cfg.p)
    while True:
        entries = [Fraction(rng.randint(-9, 9)) * Fraction(cfg.p) ** rng.randint(-cfg.span, cfg.span)
                   for _ in range(cfg.n * cfg.n)]
        g = ExactMatrix(cfg.n, cfg.n, entries, field)
        if det(g) != 0:
            return g


def main(cfg: SurveyConfig):
    rng = random.Random(cfg.seed)
    counts = Counter()
    for _ in range(cfg.samples):
        g = random_matrix(rng, cfg)
        U, e, W = cartan(g)
        assert U @ cartan_diagonal(e, g.config) @ W == g
        assert is_unimodular(U) and is_unimodular(W)
        counts[tuple(str(a) for a in e.deltas)] += 1
    for exps, c in counts.most_common(15):
        print(f"{c:5d}  ({', '.join(exps)})")
    print(f"{len(counts)} distinct exponent vectors over {cfg.samples} samples, all reconstructions exact")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    for name, default in vars(SurveyConfig()).items():
        ap.add_argument(f"--{name}", type=int, default=default)
    main(SurveyConfig(**vars(ap.parse_args())))
