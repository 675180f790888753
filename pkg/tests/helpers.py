"""Random generators and independent oracles shared by the test modules."""

import itertools
import math
import random
from fractions import Fraction

from bruhat_tits.building import BuildingPoint, eval_point
from bruhat_tits.linalg import ExactMatrix, det
from bruhat_tits.scalars import INF, ExtScalar, FieldConfig, vp


def rand_rational(rng, bound=1000, zero_ok=True):
    while True:
        x = Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
        if x or zero_ok:
            return x


def rand_padic_rational(rng, p, span=3):
    """Rational with a controlled p-adic valuation in [-span, span]."""
    while True:
        u = Fraction(rng.randint(-20, 20), rng.randint(1, 20))
        if u:
            return u * Fraction(p) ** rng.randint(-span, span)


def rand_ext(rng, cfg, bound=1000, zero_ok=True):
    while True:
        a = ExtScalar([rand_rational(rng, bound) for _ in range(cfg.m)], cfg)
        if zero_ok or not a.is_zero():
            return a


def rand_invertible(rng, n, cfg, bound=1000, sparse=0.0):
    while True:
        entries = []
        for _ in range(n * n):
            if sparse and rng.random() < sparse:
                entries.append(0)
            elif cfg.m == 1:
                entries.append(rand_rational(rng, bound))
            else:
                entries.append(rand_ext(rng, cfg, bound))
        M = ExactMatrix(n, n, entries, cfg)
        if not det(M).is_zero():
            return M


def rand_padic_invertible(rng, n, p, span=2):
    cfg = FieldConfig(p)
    while True:
        M = ExactMatrix(n, n, [rand_padic_rational(rng, p, span) if rng.random() < 0.8 else 0
                               for _ in range(n * n)], cfg)
        if not det(M).is_zero():
            return M


def rand_unimodular(rng, n, cfg, steps=6):
    """Product of integral elementary matrices, signed permutations and units."""
    rows = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    M = ExactMatrix.from_rows(rows, cfg)
    p = cfg.p
    for _ in range(steps):
        kind = rng.random()
        E = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
        if kind < 0.6 and n > 1:
            i, j = rng.sample(range(n), 2)
            E[i][j] = Fraction(rng.randint(-9, 9) * p ** rng.randint(0, 2), rng.choice([1, p + 1, 2 * p + 1]))
        elif kind < 0.8 and n > 1:
            i, j = rng.sample(range(n), 2)
            E[i], E[j] = E[j], E[i]
        else:
            i = rng.randrange(n)
            u = 0
            while u == 0 or vp(u, p) != 0:
                u = rng.randint(-20, 20)
            E[i][i] = Fraction(u, rng.choice([1, p + 1]))
        M = M @ ExactMatrix.from_rows(E, cfg)
    return M


def rand_weights(rng, n, den=1, bound=5, inf_prob=0.0):
    ws = []
    for _ in range(n):
        if inf_prob and rng.random() < inf_prob:
            ws.append(INF)
        else:
            ws.append(Fraction(rng.randint(-bound * den, bound * den), den))
    if all(w is INF for w in ws):
        ws[rng.randrange(n)] = Fraction(0)
    return ws


def rand_point(rng, n, p, den=1, bound=5, inf_prob=0.0, basis_bound=20):
    cfg = FieldConfig(p)
    B = rand_invertible(rng, n, cfg, bound=basis_bound, sparse=0.3)
    return BuildingPoint(B, rand_weights(rng, n, den, bound, inf_prob))


def rand_vector(rng, n, bound=50):
    return [rand_rational(rng, bound) for _ in range(n)]


def determinantal_exponents(M: ExactMatrix):
    """Smith exponents from minors only: the sum of the s smallest exponents is
    the minimal valuation of an s x s minor (valid over any DVR)."""
    n = M.rows
    mins = [Fraction(0)]
    for s in range(1, n + 1):
        best = INF
        for rows in itertools.combinations(range(n), s):
            for cols in itertools.combinations(range(n), s):
                v = det(M.submatrix(rows, cols)).val()
                if v < best:
                    best = v
        mins.append(best)
    return tuple(mins[s] - mins[s - 1] for s in range(1, n + 1))


def fixes_on_vectors(g, x, vectors):
    """A(g^-1 v) == A(v) == A(g v) on every given vector (g fixes x iff g^-1 does)."""
    ginv = g.inverse()
    for v in vectors:
        a = eval_point(x, list(v))
        if eval_point(x, ginv @ list(v)) != a or eval_point(x, g @ list(v)) != a:
            return False
    return True


def _images(g, x):
    cols = [list(x.basis.column(j)) for j in range(x.dim)]
    ginv = g.inverse()
    return ([eval_point(x, g @ c) for c in cols], [eval_point(x, ginv @ c) for c in cols])


def action_fixes(g, x, mode="norm"):
    """Decide g.x == x from the images of x's own basis vectors b_j.

    If A(g b_j) >= w_j - c and A(g^-1 b_j) >= w_j + c for all j, the
    ultrametric inequality gives A(g v) >= A(v) - c and A(g^-1 v) >= A(v) + c
    for every v, hence A(g^-1 v) = A(v) + c.  The converse is immediate, so
    this is a complete test (c = 0 for norms, free for classes).
    """
    fwd, bwd = _images(g, x)
    w = x.weights
    for j in x.kernel_indices:
        if fwd[j] is not INF or bwd[j] is not INF:
            return False
    fin = x.finite_indices
    if any(fwd[j] is INF or bwd[j] is INF for j in fin):
        return False
    lo = max(w[j] - fwd[j] for j in fin)
    hi = min(bwd[j] - w[j] for j in fin)
    if mode == "norm":
        return lo <= 0 <= hi
    return lo <= hi


def seeded(seed):
    return random.Random(seed)


def rand_unit(rng, p, bound=12):
    while True:
        u = Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
        if u and vp(u, p) == 0:
            return u


def rand_padic_vector(rng, n, p, span=3):
    return [rand_padic_rational(rng, p, span) if rng.random() < 0.85 else Fraction(0) for _ in range(n)]


def near_stabilizer(rng, x, slack=(-1, 0, 0, 0, 1, 2), zero_prob=0.3, scalar=0):
    """B h B^-1 with v(h_ij) close to the bound w_j - w_i (kernel rows free)."""

    p, n, w = x.p, x.dim, x.weights
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            if w[i] is INF or w[j] is INF:
                # kernel columns: mostly keep the kernel invariant
                if w[j] is INF and w[i] is not INF and rng.random() < 0.85:
                    row.append(Fraction(0))
                else:
                    row.append(rand_padic_rational(rng, p, 2) if i == j or rng.random() < 0.5 else Fraction(0))
                continue
            if i != j and rng.random() < zero_prob:
                row.append(Fraction(0))
                continue
            base = 0 if i == j else math.ceil(w[j] - w[i])
            e = base + (rng.choice(slack) if i != j or rng.random() < 0.3 else 0)
            row.append(rand_unit(rng, p) * Fraction(p) ** e)
        rows.append(row)
    h = ExactMatrix.from_rows(rows, x.config)
    if scalar:
        h = h.scale(Fraction(p) ** scalar)
    return x.basis @ h @ x.basis_inverse
