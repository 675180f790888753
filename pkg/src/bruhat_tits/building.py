"""Points of the building of SL(V) as diagonalized norms.

A point is a basis (the columns of an invertible matrix) together with one
weight per basis vector.  Its additive norm is

    A(x) = min_i ( v(l_i) + w_i ),   l = basis^-1 x,

i.e. ``-log_p`` of the max-norm ``max_i e^(c_i) |l_i|`` with
``c_i = -w_i log p`` (see :mod:`bruhat_tits.scalars` for the full table).
Weights may be ``INF``; such points are seminorms whose kernel is spanned by
the corresponding basis vectors (boundary points, see
:mod:`bruhat_tits.compactification`).  Points are compared up to homothety,
i.e. up to adding a constant to all weights.

Sign conventions fixed once here:

* ``g.A = A o g^-1``; on data, ``g.(B, w) = (g B, w)``.
* relative position ``relpos(x, y)`` is the sorted vector of ``w_y - w_x`` in
  a common adapted basis.
* the Cartan exponents of ``g`` are ascending, and equal
  ``sorted(-d for d in relpos(o, g.o))`` for the standard vertex ``o``.
* the stabilizer test for a norm reads ``v(h_ij) >= w_j - w_i`` for the matrix
  ``h`` of ``g`` in the point's own basis, together with ``v(det h) = 0``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .errors import DimensionMismatch, IndexOutOfRange, NotAVertex, SingularMatrix
from .linalg import ExactMatrix, det, inverse, snf_dvr
from .scalars import INF, ExtScalar, FieldConfig, Value, as_values, valuation


def _lcm_denominators(ws) -> int:
    m = 1
    for w in ws:
        if w is not INF:
            m = math.lcm(m, Fraction(w).denominator)
    return m


@dataclass(frozen=True)
class BuildingPoint:
    basis: ExactMatrix
    weights: tuple

    def __post_init__(self):
        object.__setattr__(self, "weights", as_values(self.weights))
        if not self.basis.is_square or self.basis.rows != len(self.weights):
            raise DimensionMismatch(f"{len(self.weights)} weights for a {self.basis.shape} basis")
        if all(w is INF for w in self.weights):
            raise ValueError("a point needs at least one finite weight")
        if det(self.basis).is_zero():
            raise SingularMatrix("basis is singular")

    @classmethod
    def standard(cls, weights: Sequence, p: int) -> "BuildingPoint":
        return cls(ExactMatrix.identity(len(weights), FieldConfig(p)), weights)

    @property
    def config(self) -> FieldConfig:
        return self.basis.config

    @property
    def p(self) -> int:
        return self.basis.config.p

    @property
    def dim(self) -> int:
        return len(self.weights)

    @property
    def is_norm(self) -> bool:
        return all(w is not INF for w in self.weights)

    @property
    def normalized(self) -> bool:
        return min(w for w in self.weights if w is not INF) == 0

    @property
    def finite_indices(self) -> list:
        return [i for i, w in enumerate(self.weights) if w is not INF]

    @property
    def kernel_indices(self) -> list:
        return [i for i, w in enumerate(self.weights) if w is INF]

    @cached_property
    def basis_inverse(self) -> ExactMatrix:
        return inverse(self.basis)

    def coordinates(self, vec: Sequence) -> list:
        if len(vec) != self.dim:
            raise DimensionMismatch(f"vector of length {len(vec)} in dimension {self.dim}")
        return self.basis_inverse @ vec

    def shift(self, t) -> "BuildingPoint":
        return BuildingPoint(self.basis, tuple(w if w is INF else w + t for w in self.weights))

    def same_norm(self, other: "BuildingPoint") -> bool:
        """Equal as norms (not only as classes); both must be norms."""
        return all(d == 0 for d in relpos(self, other).deltas)

    def same_class(self, other: "BuildingPoint") -> bool:
        return relpos(self, other).is_constant()

    def __repr__(self):
        ws = ", ".join(str(w) for w in self.weights)
        return f"BuildingPoint({self.basis!r}, ({ws}))"


@dataclass(frozen=True)
class Apartment:
    """All (semi)norm classes diagonalized by one basis."""

    basis: ExactMatrix

    def __post_init__(self):
        if det(self.basis).is_zero():
            raise SingularMatrix("apartment basis is singular")

    def point(self, weights: Sequence) -> BuildingPoint:
        return BuildingPoint(self.basis, weights)

    def contains(self, x: BuildingPoint) -> bool:
        """Is the norm x diagonalized by this basis?"""
        ws = [eval_point(x, self.basis.column(i)) for i in range(self.basis.cols)]
        return x.same_norm(BuildingPoint(self.basis, ws))


@dataclass(frozen=True)
class RelPos:
    deltas: tuple
    centered: bool = False

    def __post_init__(self):
        object.__setattr__(self, "deltas", tuple(Fraction(d) for d in self.deltas))
        if list(self.deltas) != sorted(self.deltas):
            raise ValueError("relative position must be sorted")

    def is_constant(self) -> bool:
        return len(set(self.deltas)) <= 1

    def mean(self) -> Fraction:
        return sum(self.deltas, Fraction(0)) / len(self.deltas)

    def centered_form(self) -> "RelPos":
        mu = self.mean()
        return RelPos(tuple(d - mu for d in self.deltas), centered=True)

    def gap(self) -> Fraction:
        return self.deltas[-1] - self.deltas[0]


# -- evaluation and homothety -------------------------------------------------

def eval_point(x: BuildingPoint, vec: Sequence) -> Value:
    lam = x.coordinates(vec)
    p = x.p
    best = INF
    for li, w in zip(lam, x.weights):
        if w is INF:
            continue
        v = valuation(li, p)
        if v is INF:
            continue
        t = v + w
        if t < best:
            best = t
    return best


def normalize(x: BuildingPoint) -> BuildingPoint:
    lo = min(w for w in x.weights if w is not INF)
    return x if lo == 0 else x.shift(-lo)


# -- group action -------------------------------------------------------------

def act(g: ExactMatrix, x: BuildingPoint, normalize_result: bool = True) -> BuildingPoint:
    """g.x with (g.A)(v) = A(g^-1 v)."""
    if not g.is_square or g.rows != x.dim:
        raise DimensionMismatch(f"{g.shape} acting in dimension {x.dim}")
    if det(g).is_zero():
        raise SingularMatrix("acting matrix is singular")
    y = BuildingPoint(g @ x.basis, x.weights)
    return normalize(y) if normalize_result else y


def elementary_unipotent(n: int, i: int, j: int, lam, config: FieldConfig) -> ExactMatrix:
    """id + lam E_ij."""
    if i == j or not (0 <= i < n and 0 <= j < n):
        raise IndexOutOfRange(f"bad index pair ({i}, {j}) in dimension {n}")
    rows = [[int(a == b) for b in range(n)] for a in range(n)]
    rows[i][j] = lam
    return ExactMatrix.from_rows(rows, config)


# -- relative position --------------------------------------------------------

def _unit_ball_basis(x: BuildingPoint, m: int) -> ExactMatrix:
    """basis . diag(theta^(-m w_i)) over k_m: generators of {A >= 0}."""
    cfg = x.config.with_m(math.lcm(m, x.config.m))
    B = x.basis.lift(cfg.m)
    scales = [ExtScalar.theta_power(int(-w * cfg.m), cfg) for w in x.weights]
    return B @ ExactMatrix.diag(scales, cfg)


def _require_norm(*pts):
    for x in pts:
        if not x.is_norm:
            raise ValueError("operation needs norms (no infinite weights)")


def common_basis(x: BuildingPoint, y: BuildingPoint):
    """A basis over k_m adapted to both x and y, with the weights of each.

    m is the lcm of the weight denominators (and of the bases' own
    ramification).  Columns are ordered by ascending ``wy - wx`` and scaled to
    be primitive (minimal entry valuation 0).
    """
    _require_norm(x, y)
    if x.dim != y.dim:
        raise DimensionMismatch("points of different dimensions")
    if x.p != y.p:
        raise ValueError("points over different primes")
    m = math.lcm(_lcm_denominators(x.weights + y.weights), x.config.m, y.config.m)
    Cx = _unit_ball_basis(x, m)
    Cy = _unit_ball_basis(y, m)
    res = snf_dvr(inverse(Cx) @ Cy)
    F = Cx @ res.U
    cfg = F.config
    cols = []
    for k, a in enumerate(res.exponents):
        col = F.column(k)
        lo = min(e.val() for e in col)
        shift = int(lo * cfg.m)
        col = [e * ExtScalar.theta_power(-shift, cfg) for e in col]
        # x has weight 0 on F_k and y has weight -a; scaling by theta^-shift adds -lo
        cols.append((-a, k, col, -lo, -lo - a))
    cols.sort(key=lambda t: (t[0], t[1]))
    basis = ExactMatrix.from_columns([c[2] for c in cols], cfg)
    return basis, tuple(c[3] for c in cols), tuple(c[4] for c in cols)


def relpos(x: BuildingPoint, y: BuildingPoint, centered: bool = False) -> RelPos:
    """Sorted w_y - w_x in a common adapted basis."""
    _require_norm(x, y)
    if x.dim != y.dim:
        raise DimensionMismatch("points of different dimensions")
    m = math.lcm(_lcm_denominators(x.weights + y.weights), x.config.m, y.config.m)
    res = snf_dvr(inverse(_unit_ball_basis(x, m)) @ _unit_ball_basis(y, m))
    rp = RelPos(tuple(sorted(-a for a in res.exponents)))
    return rp.centered_form() if centered else rp


def distance2(x: BuildingPoint, y: BuildingPoint) -> Fraction:
    """Squared distance in valuation units (l2 on weights modulo the diagonal)."""
    c = relpos(x, y, centered=True)
    return sum((d * d for d in c.deltas), Fraction(0))


# -- stabilizers, Cartan, folding ---------------------------------------------

def stabilizes(g: ExactMatrix, x: BuildingPoint, mode: str = "norm") -> bool:
    """Does g fix x, as a norm (mode="norm") or as a class (mode="class")?"""
    _require_norm(x)
    if mode == "class":
        return x.same_class(act(g, x, normalize_result=False))
    if mode != "norm":
        raise ValueError(f"unknown mode {mode!r}")
    h = x.basis_inverse @ g @ x.basis
    p = x.p
    w = x.weights
    n = x.dim
    for i in range(n):
        for j in range(n):
            if h[i, j].val() < w[j] - w[i]:
                return False
    return valuation(det(h), p) == 0


def cartan(g: ExactMatrix):
    """g = U diag(theta^(m a)) W with U, W unimodular over the valuation ring
    of k_m and a ascending in (1/m)Z."""
    cfg = g.config
    vals = [e.val() for e in g.entries]
    lo = min(vals)
    if lo is INF:
        raise SingularMatrix("zero matrix")
    s = -int(lo * cfg.m)
    # theta^s g is integral
    res = snf_dvr(g.scale(ExtScalar.theta_power(s, cfg)))
    exps = tuple(a - Fraction(s, cfg.m) for a in res.exponents)
    return res.U, RelPos(exps), res.W


def cartan_diagonal(exponents: RelPos, config: FieldConfig) -> ExactMatrix:
    return ExactMatrix.diag([ExtScalar.theta_power(int(a * config.m), config) for a in exponents.deltas], config)


def fold_fixed(i: int, j: int, lam, x: BuildingPoint) -> bool:
    """Does id + lam E_ij (in x's basis) fix the norm x?"""
    n = x.dim
    if i == j or not (0 <= i < n and 0 <= j < n):
        raise IndexOutOfRange(f"bad index pair ({i}, {j}) in dimension {n}")
    _require_norm(x)
    return valuation(lam, x.p) >= x.weights[j] - x.weights[i]


def fold_matrix(i: int, j: int, lam, x: BuildingPoint) -> ExactMatrix:
    """id + lam E_ij expressed in standard coordinates via x's basis."""
    cfg = x.config
    if isinstance(lam, ExtScalar):
        cfg = cfg.join(lam.config)
    u = elementary_unipotent(x.dim, i, j, lam, cfg)
    return x.basis @ u @ x.basis_inverse


# -- vertices -----------------------------------------------------------------

def vertex_type(x: BuildingPoint) -> int:
    """(v(det basis) - sum of weights) mod (d+1)."""
    y = normalize(x)
    if not y.is_norm or any(Fraction(w).denominator != 1 for w in y.weights):
        raise NotAVertex("weights are not all integral")
    v = valuation(det(y.basis), y.p)
    total = v - sum(y.weights)
    if Fraction(total).denominator != 1:
        raise NotAVertex("basis determinant has fractional valuation")
    return int(total) % y.dim


def is_vertex(x: BuildingPoint) -> bool:
    try:
        vertex_type(x)
    except NotAVertex:
        return False
    return True


def reduce_to_chamber(x: BuildingPoint, o: BuildingPoint) -> RelPos:
    """Representative of x in the closed Weyl chamber with tip o, as a sorted
    weight vector shifted so its first entry is 0; constant on Stab(o)-orbits
    of classes."""
    if not is_vertex(o):
        raise NotAVertex("chamber tip must be a vertex")
    r = relpos(o, x)
    lo = r.deltas[0]
    return RelPos(tuple(d - lo for d in r.deltas))
